#include "isokit/refine.hpp"

#include <algorithm>
#include <map>

namespace isokit {

namespace {

// One refinement round: signature of v = (current color, sorted multiset of
// neighbor colors). New ids are assigned in lexicographic signature order.
// Returns false once the partition stops splitting.
bool refine_round(const ColoredGraph& g, std::vector<int>& color) {
    int n = g.size();
    std::vector<std::pair<std::vector<std::pair<int, int>>, int>> keyed(static_cast<size_t>(n));
    for (int v = 0; v < n; ++v) {
        std::map<int, int> counts;
        for (int u : g.neighbors(v)) ++counts[color[static_cast<size_t>(u)]];
        std::vector<std::pair<int, int>> sig(counts.begin(), counts.end());
        sig.insert(sig.begin(), {-1, color[static_cast<size_t>(v)]});
        keyed[static_cast<size_t>(v)] = {std::move(sig), v};
    }
    std::vector<int> order(static_cast<size_t>(n));
    for (int v = 0; v < n; ++v) order[static_cast<size_t>(v)] = v;
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        return keyed[static_cast<size_t>(a)].first < keyed[static_cast<size_t>(b)].first;
    });
    int old_classes = 0;
    for (int v = 0; v < n; ++v) old_classes = std::max(old_classes, color[static_cast<size_t>(v)] + 1);
    int next = -1;
    std::vector<int> fresh(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        if (i == 0 || keyed[static_cast<size_t>(order[static_cast<size_t>(i)])].first !=
                          keyed[static_cast<size_t>(order[static_cast<size_t>(i - 1)])].first)
            ++next;
        fresh[static_cast<size_t>(order[static_cast<size_t>(i)])] = next;
    }
    color = std::move(fresh);
    return next + 1 != old_classes;
}

StableColoring finish(const ColoredGraph& g, std::vector<int> color) {
    StableColoring out;
    int classes = 0;
    for (int v = 0; v < g.size(); ++v) classes = std::max(classes, color[static_cast<size_t>(v)] + 1);
    out.cells.assign(static_cast<size_t>(classes), {});
    for (int v = 0; v < g.size(); ++v) out.cells[static_cast<size_t>(color[static_cast<size_t>(v)])].push_back(v);
    out.color = std::move(color);
    out.class_degree.assign(static_cast<size_t>(classes), std::vector<int>(static_cast<size_t>(classes), 0));
    for (int c = 0; c < classes; ++c) {
        int rep = out.cells[static_cast<size_t>(c)].front();
        for (int u : g.neighbors(rep)) ++out.class_degree[static_cast<size_t>(c)][static_cast<size_t>(out.color[static_cast<size_t>(u)])];
    }
    return out;
}

// Dense renumbering of the input colors in increasing id order, so refinement
// keys stay aligned with the session color order.
std::vector<int> normalized_start(const ColoredGraph& g) {
    std::vector<int> present;
    for (int v = 0; v < g.size(); ++v) present.push_back(g.color(v));
    std::sort(present.begin(), present.end());
    present.erase(std::unique(present.begin(), present.end()), present.end());
    std::vector<int> color(static_cast<size_t>(g.size()));
    for (int v = 0; v < g.size(); ++v)
        color[static_cast<size_t>(v)] = static_cast<int>(
            std::lower_bound(present.begin(), present.end(), g.color(v)) - present.begin());
    return color;
}

} // namespace

ColoredGraph StableColoring::recolored(const ColoredGraph& g) const {
    ColoredGraph out = g;
    for (int v = 0; v < g.size(); ++v) out.set_color(v, color[static_cast<size_t>(v)]);
    out.set_color_count(num_classes());
    return out;
}

StableColoring naive_refine(const ColoredGraph& g) {
    return refine_from(g, normalized_start(g));
}

StableColoring refine_from(const ColoredGraph& g, std::vector<int> start) {
    if (static_cast<int>(start.size()) != g.size())
        throw contract_error("refine_from: start coloring length mismatch");
    if (g.size() > 0)
        while (refine_round(g, start)) {
        }
    return finish(g, std::move(start));
}

bool is_stable(const ColoredGraph& g) {
    std::vector<int> classes(static_cast<size_t>(g.color_count()), -1);
    for (int v = 0; v < g.size(); ++v) {
        std::map<int, int> counts;
        for (int u : g.neighbors(v)) ++counts[g.color(u)];
        // compare against the class representative's counts
        for (int w = 0; w < v; ++w) {
            if (g.color(w) != g.color(v)) continue;
            std::map<int, int> ref;
            for (int u : g.neighbors(w)) ++ref[g.color(u)];
            if (ref != counts) return false;
            break;
        }
        (void)classes;
    }
    return true;
}

std::pair<ColoredGraph, ColoredGraph> joint_refine(const ColoredGraph& g1, const ColoredGraph& g2) {
    ColoredGraph both = disjoint_union(g1, g2);
    StableColoring stable = naive_refine(both);
    ColoredGraph out1 = g1, out2 = g2;
    for (int v = 0; v < g1.size(); ++v) out1.set_color(v, stable.color[static_cast<size_t>(v)]);
    for (int v = 0; v < g2.size(); ++v)
        out2.set_color(v, stable.color[static_cast<size_t>(g1.size() + v)]);
    out1.set_color_count(stable.num_classes());
    out2.set_color_count(stable.num_classes());
    return {std::move(out1), std::move(out2)};
}

ColoredGraph individualize(const ColoredGraph& g, int v) {
    if (v < 0 || v >= g.size()) throw contract_error("individualize: vertex out of range");
    ColoredGraph out = g;
    int bound = g.color_count();
    out.set_color(v, bound + g.color(v));
    out.set_color_count(2 * bound);
    return out;
}

ColoredGraph individualize_tuple(const ColoredGraph& g, const std::vector<int>& vs) {
    ColoredGraph out = g;
    int bound = g.color_count();
    for (size_t i = 0; i < vs.size(); ++i) {
        if (vs[i] < 0 || vs[i] >= g.size()) throw contract_error("individualize: vertex out of range");
        out.set_color(vs[i], bound + static_cast<int>(i));
    }
    out.set_color_count(bound + static_cast<int>(vs.size()));
    return out;
}

ColoredGraph refine_by_adjacency(const ColoredGraph& g, const std::vector<int>& s) {
    std::vector<int> in_s(static_cast<size_t>(g.size()), -1);
    std::vector<int> sorted_s = s;
    std::sort(sorted_s.begin(), sorted_s.end());
    for (size_t i = 0; i < sorted_s.size(); ++i) {
        if (sorted_s[i] < 0 || sorted_s[i] >= g.size())
            throw contract_error("refine_by_adjacency: vertex out of range");
        in_s[static_cast<size_t>(sorted_s[i])] = static_cast<int>(i);
    }
    // Key per vertex: S-members sort first by (old color, position in S);
    // outsiders by (old color, adjacency pattern towards S).
    std::vector<std::pair<std::vector<int>, int>> keyed(static_cast<size_t>(g.size()));
    for (int v = 0; v < g.size(); ++v) {
        std::vector<int> key;
        key.push_back(g.color(v));
        if (in_s[static_cast<size_t>(v)] >= 0) {
            key.push_back(0);
            key.push_back(in_s[static_cast<size_t>(v)]);
        } else {
            key.push_back(1);
            for (int x : sorted_s) key.push_back(g.adjacent(v, x) ? 1 : 0);
        }
        keyed[static_cast<size_t>(v)] = {std::move(key), v};
    }
    std::vector<int> order(static_cast<size_t>(g.size()));
    for (int v = 0; v < g.size(); ++v) order[static_cast<size_t>(v)] = v;
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        return keyed[static_cast<size_t>(a)].first < keyed[static_cast<size_t>(b)].first;
    });
    ColoredGraph out = g;
    int next = -1;
    for (size_t i = 0; i < order.size(); ++i) {
        if (i == 0 || keyed[static_cast<size_t>(order[i])].first != keyed[static_cast<size_t>(order[i - 1])].first)
            ++next;
        out.set_color(order[i], next);
    }
    out.set_color_count(g.size() == 0 ? 1 : next + 1);
    return out;
}

int color_valence(const ColoredGraph& g) {
    std::vector<std::vector<int>> cells(static_cast<size_t>(g.color_count()));
    for (int v = 0; v < g.size(); ++v) cells[static_cast<size_t>(g.color(v))].push_back(v);
    int worst = 0;
    for (int v = 0; v < g.size(); ++v) {
        for (const auto& cell : cells) {
            if (cell.empty()) continue;
            int nbrs = 0;
            for (int u : cell)
                if (u != v && g.adjacent(v, u)) ++nbrs;
            int size_without_v = static_cast<int>(cell.size());
            if (g.color(v) == g.color(cell.front())) --size_without_v;
            worst = std::max(worst, std::min(nbrs, size_without_v - nbrs));
        }
    }
    return worst;
}

bool is_gen_valence_at_most(const ColoredGraph& g, int k) {
    std::vector<std::vector<int>> cells(static_cast<size_t>(g.color_count()));
    for (int v = 0; v < g.size(); ++v) cells[static_cast<size_t>(g.color(v))].push_back(v);
    std::vector<int> keep;
    for (const auto& cell : cells)
        if (static_cast<int>(cell.size()) > k)
            for (int v : cell) keep.push_back(v);
    std::sort(keep.begin(), keep.end());
    ColoredGraph rest = induced_subgraph(g, keep);
    return color_valence(rest) <= k;
}

int min_gen_valence(const ColoredGraph& g) {
    for (int k = 0; k <= g.size(); ++k)
        if (is_gen_valence_at_most(g, k)) return k;
    return g.size();
}

} // namespace isokit
