#include "isokit/graph.hpp"

#include <algorithm>
#include <numeric>

namespace isokit {

int ColorTable::intern(const std::string& description) {
    auto it = ids_.find(description);
    if (it != ids_.end()) return it->second;
    int id = static_cast<int>(descriptions_.size());
    descriptions_.push_back(description);
    ids_.emplace(description, id);
    return id;
}

std::optional<int> ColorTable::lookup(const std::string& description) const {
    auto it = ids_.find(description);
    if (it == ids_.end()) return std::nullopt;
    return it->second;
}

ColoredGraph::ColoredGraph(int n, int color_count) : n_(n), color_count_(color_count) {
    if (n < 0 || n > kMaxVertices) throw contract_error("vertex count out of range");
    words_ = (n + 63) / 64;
    bits_.assign(static_cast<size_t>(n) * words_, 0);
    color_.assign(static_cast<size_t>(n), 0);
}

void ColoredGraph::add_edge(int u, int v) {
    if (u < 0 || v < 0 || u >= n_ || v >= n_) throw contract_error("edge endpoint out of range");
    if (u == v) throw contract_error("loops are not allowed");
    bits_[static_cast<size_t>(u) * words_ + (v >> 6)] |= std::uint64_t{1} << (v & 63);
    bits_[static_cast<size_t>(v) * words_ + (u >> 6)] |= std::uint64_t{1} << (u & 63);
}

void ColoredGraph::remove_edge(int u, int v) {
    bits_[static_cast<size_t>(u) * words_ + (v >> 6)] &= ~(std::uint64_t{1} << (v & 63));
    bits_[static_cast<size_t>(v) * words_ + (u >> 6)] &= ~(std::uint64_t{1} << (u & 63));
}

void ColoredGraph::set_color(int v, int c) {
    if (v < 0 || v >= n_) throw contract_error("vertex out of range");
    if (c < 0) throw contract_error("negative color id");
    color_[static_cast<size_t>(v)] = c;
    if (c >= color_count_) color_count_ = c + 1;
}

int ColoredGraph::degree(int v) const {
    int d = 0;
    const std::uint64_t* r = row(v);
    for (int w = 0; w < words_; ++w) d += __builtin_popcountll(r[w]);
    return d;
}

int ColoredGraph::edge_count() const {
    int total = 0;
    for (int v = 0; v < n_; ++v) total += degree(v);
    return total / 2;
}

std::vector<int> ColoredGraph::neighbors(int v) const {
    std::vector<int> out;
    const std::uint64_t* r = row(v);
    for (int w = 0; w < words_; ++w) {
        std::uint64_t bits = r[w];
        while (bits) {
            int b = __builtin_ctzll(bits);
            out.push_back(w * 64 + b);
            bits &= bits - 1;
        }
    }
    return out;
}

std::vector<std::pair<int, int>> ColoredGraph::edges() const {
    std::vector<std::pair<int, int>> out;
    for (int u = 0; u < n_; ++u)
        for (int v : neighbors(u))
            if (u < v) out.emplace_back(u, v);
    return out;
}

GraphFamily GraphFamily::disjoint_union(GraphFamily f, GraphFamily g) {
    GraphFamily r{Tag::DisjointUnion, 0, 0, {}, {}};
    r.parts.push_back(std::move(f));
    r.parts.push_back(std::move(g));
    return r;
}

GraphFamily GraphFamily::complement_of(GraphFamily f) {
    GraphFamily r{Tag::Complement, 0, 0, {}, {}};
    r.parts.push_back(std::move(f));
    return r;
}

ColoredGraph make_graph(int n, const std::vector<std::pair<int, int>>& edges,
                        const std::vector<std::string>* colors, ColorTable* table) {
    ColoredGraph g(n);
    for (auto [u, v] : edges) {
        if (u < 0 || v < 0 || u >= n || v >= n) throw contract_error("edge endpoint out of range");
        if (u == v) throw contract_error("loops are not allowed");
        if (g.adjacent(u, v)) throw contract_error("duplicate edge");
        g.add_edge(u, v);
    }
    if (colors && !colors->empty()) {
        if (static_cast<int>(colors->size()) != n)
            throw contract_error("color list length does not match vertex count");
        ColorTable local;
        ColorTable* t = table ? table : &local;
        for (int v = 0; v < n; ++v) g.set_color(v, t->intern((*colors)[static_cast<size_t>(v)]));
    }
    return g;
}

namespace {

ColoredGraph build_subdivided_star(const std::vector<int>& a) {
    // Parameters arrive as a_t, ..., a_1, a_0.
    int t = static_cast<int>(a.size()) - 1;
    if (t < 1) throw contract_error("subdivided star needs parameters a_t, ..., a_0 with t >= 1");
    if (a[0] <= 0) throw contract_error("subdivided star requires a_t > 0");
    for (int x : a)
        if (x < 0) throw contract_error("subdivided star parameters must be non-negative");
    int isolated = a[static_cast<size_t>(t)];
    int arms = 0, armlen_sum = 0;
    for (int i = 1; i <= t; ++i) {
        arms += a[static_cast<size_t>(t - i)];
        armlen_sum += i * a[static_cast<size_t>(t - i)];
    }
    ColoredGraph g(1 + armlen_sum + isolated);
    // Vertex 0 is the center; for arms < 3 this still realizes a path whose
    // leaves are at the specified distances from vertex 0.
    int next = 1;
    for (int i = t; i >= 1; --i) {
        for (int rep = 0; rep < a[static_cast<size_t>(t - i)]; ++rep) {
            int prev = 0;
            for (int step = 0; step < i; ++step) {
                g.add_edge(prev, next);
                prev = next;
                ++next;
            }
        }
    }
    return g;
}

} // namespace

ColoredGraph build_named(const GraphFamily& family) {
    using Tag = GraphFamily::Tag;
    switch (family.tag) {
    case Tag::Complete: {
        ColoredGraph g(family.a);
        for (int u = 0; u < family.a; ++u)
            for (int v = u + 1; v < family.a; ++v) g.add_edge(u, v);
        return g;
    }
    case Tag::Path: {
        ColoredGraph g(family.a);
        for (int v = 1; v < family.a; ++v) g.add_edge(v - 1, v);
        return g;
    }
    case Tag::Cycle: {
        if (family.a < 3) throw contract_error("cycle needs at least 3 vertices");
        ColoredGraph g(family.a);
        for (int v = 0; v < family.a; ++v) g.add_edge(v, (v + 1) % family.a);
        return g;
    }
    case Tag::Independent:
        return ColoredGraph(family.a);
    case Tag::Biclique: {
        ColoredGraph g(family.a + family.b);
        for (int u = 0; u < family.a; ++u)
            for (int v = 0; v < family.b; ++v) g.add_edge(u, family.a + v);
        return g;
    }
    case Tag::SubdividedStar:
        return build_subdivided_star(family.star);
    case Tag::DisjointUnion:
        return disjoint_union(build_named(family.parts.at(0)), build_named(family.parts.at(1)));
    case Tag::Complement:
        return complement(build_named(family.parts.at(0)));
    }
    throw contract_error("unknown graph family tag");
}

ColoredGraph complement(const ColoredGraph& g) {
    ColoredGraph out(g.size(), g.color_count());
    for (int v = 0; v < g.size(); ++v) out.set_color(v, g.color(v));
    for (int u = 0; u < g.size(); ++u)
        for (int v = u + 1; v < g.size(); ++v)
            if (!g.adjacent(u, v)) out.add_edge(u, v);
    return out;
}

ColoredGraph bipartite_complement(const ColoredGraph& g, const std::vector<int>& a,
                                  const std::vector<int>& b) {
    std::vector<int> side(static_cast<size_t>(g.size()), -1);
    for (int v : a) side.at(static_cast<size_t>(v)) = 0;
    for (int v : b) {
        if (side.at(static_cast<size_t>(v)) == 0) throw contract_error("A and B overlap");
        side[static_cast<size_t>(v)] = 1;
    }
    for (int v = 0; v < g.size(); ++v)
        if (side[static_cast<size_t>(v)] < 0) throw contract_error("A and B do not cover the graph");
    for (auto [u, v] : g.edges())
        if (side[static_cast<size_t>(u)] == side[static_cast<size_t>(v)])
            throw contract_error("edge inside a bipartition class");
    ColoredGraph out(g.size(), g.color_count());
    for (int v = 0; v < g.size(); ++v) out.set_color(v, g.color(v));
    for (int u : a)
        for (int v : b)
            if (!g.adjacent(u, v)) out.add_edge(u, v);
    return out;
}

ColoredGraph disjoint_union(const ColoredGraph& g1, const ColoredGraph& g2) {
    ColoredGraph out(g1.size() + g2.size(), std::max(g1.color_count(), g2.color_count()));
    for (int v = 0; v < g1.size(); ++v) out.set_color(v, g1.color(v));
    for (int v = 0; v < g2.size(); ++v) out.set_color(g1.size() + v, g2.color(v));
    for (auto [u, v] : g1.edges()) out.add_edge(u, v);
    for (auto [u, v] : g2.edges()) out.add_edge(g1.size() + u, g1.size() + v);
    return out;
}

ColoredGraph join_universal(const ColoredGraph& g, int k, int c) {
    if (k < 0) throw contract_error("cannot add a negative number of vertices");
    ColoredGraph out(g.size() + k, g.color_count());
    for (int v = 0; v < g.size(); ++v) out.set_color(v, g.color(v));
    for (int i = 0; i < k; ++i) out.set_color(g.size() + i, c);
    for (auto [u, v] : g.edges()) out.add_edge(u, v);
    for (int i = 0; i < k; ++i)
        for (int v = 0; v < g.size(); ++v) out.add_edge(g.size() + i, v);
    return out;
}

ColoredGraph induced_subgraph(const ColoredGraph& g, const std::vector<int>& vertices) {
    ColoredGraph out(static_cast<int>(vertices.size()), g.color_count());
    for (size_t i = 0; i < vertices.size(); ++i) out.set_color(static_cast<int>(i), g.color(vertices[i]));
    for (size_t i = 0; i < vertices.size(); ++i)
        for (size_t j = i + 1; j < vertices.size(); ++j)
            if (g.adjacent(vertices[i], vertices[j]))
                out.add_edge(static_cast<int>(i), static_cast<int>(j));
    return out;
}

ColoredGraph apply_permutation(const ColoredGraph& g, const std::vector<int>& image) {
    if (static_cast<int>(image.size()) != g.size()) throw contract_error("permutation degree mismatch");
    ColoredGraph out(g.size(), g.color_count());
    for (int v = 0; v < g.size(); ++v) out.set_color(image[static_cast<size_t>(v)], g.color(v));
    for (auto [u, v] : g.edges())
        out.add_edge(image[static_cast<size_t>(u)], image[static_cast<size_t>(v)]);
    return out;
}

namespace {

// Pattern vertex order for the containment search: start at the highest
// degree vertex, then grow connectivity-first so partial maps get pruned by
// adjacency constraints as early as possible.
std::vector<int> containment_order(const ColoredGraph& h) {
    int n = h.size();
    std::vector<int> order;
    std::vector<char> placed(static_cast<size_t>(n), 0);
    order.reserve(static_cast<size_t>(n));
    while (static_cast<int>(order.size()) < n) {
        int best = -1, best_attach = -1, best_deg = -1;
        for (int v = 0; v < n; ++v) {
            if (placed[static_cast<size_t>(v)]) continue;
            int attach = 0;
            for (int u : order)
                if (h.adjacent(u, v)) ++attach;
            if (attach > best_attach || (attach == best_attach && h.degree(v) > best_deg)) {
                best = v;
                best_attach = attach;
                best_deg = h.degree(v);
            }
        }
        order.push_back(best);
        placed[static_cast<size_t>(best)] = 1;
    }
    return order;
}

bool containment_search(const ColoredGraph& h, const ColoredGraph& g, const std::vector<int>& order,
                        size_t depth, std::vector<int>& map, std::vector<char>& used,
                        bool respect_colors, Budget* budget) {
    if (depth == order.size()) return true;
    int hv = order[depth];
    for (int gv = 0; gv < g.size(); ++gv) {
        if (used[static_cast<size_t>(gv)]) continue;
        if (respect_colors && h.color(hv) != g.color(gv)) continue;
        if (g.degree(gv) < h.degree(hv)) continue;
        if (budget) budget->tick("contains_induced");
        bool ok = true;
        for (size_t i = 0; i < depth && ok; ++i) {
            int hu = order[i];
            ok = h.adjacent(hu, hv) == g.adjacent(map[static_cast<size_t>(hu)], gv);
        }
        if (!ok) continue;
        map[static_cast<size_t>(hv)] = gv;
        used[static_cast<size_t>(gv)] = 1;
        if (containment_search(h, g, order, depth + 1, map, used, respect_colors, budget)) return true;
        used[static_cast<size_t>(gv)] = 0;
        map[static_cast<size_t>(hv)] = -1;
    }
    return false;
}

} // namespace

std::optional<std::vector<int>> contains_induced(const ColoredGraph& h, const ColoredGraph& g,
                                                 Budget* budget) {
    if (h.size() > g.size()) return std::nullopt;
    // An uncolored pattern (a single color over all of H) embeds regardless
    // of the host coloring; a colored pattern constrains the embedding.
    bool respect_colors = false;
    for (int v = 1; v < h.size(); ++v)
        if (h.color(v) != h.color(0)) respect_colors = true;
    if (h.empty()) return std::vector<int>{};
    std::vector<int> order = containment_order(h);
    std::vector<int> map(static_cast<size_t>(h.size()), -1);
    std::vector<char> used(static_cast<size_t>(g.size()), 0);
    if (containment_search(h, g, order, 0, map, used, respect_colors, budget)) return map;
    return std::nullopt;
}

bool is_in_class(const ColoredGraph& g, const std::vector<ColoredGraph>& forbidden, Budget* budget) {
    for (const auto& h : forbidden)
        if (contains_induced(h, g, budget)) return false;
    return true;
}

bool is_connected(const ColoredGraph& g) {
    return g.size() <= 1 || connected_components(g).size() == 1;
}

std::vector<std::vector<int>> connected_components(const ColoredGraph& g) {
    std::vector<std::vector<int>> components;
    std::vector<char> seen(static_cast<size_t>(g.size()), 0);
    for (int s = 0; s < g.size(); ++s) {
        if (seen[static_cast<size_t>(s)]) continue;
        std::vector<int> comp{s};
        seen[static_cast<size_t>(s)] = 1;
        for (size_t head = 0; head < comp.size(); ++head)
            for (int u : g.neighbors(comp[head]))
                if (!seen[static_cast<size_t>(u)]) {
                    seen[static_cast<size_t>(u)] = 1;
                    comp.push_back(u);
                }
        std::sort(comp.begin(), comp.end());
        components.push_back(std::move(comp));
    }
    return components;
}

} // namespace isokit
