#include "isokit/canon.hpp"

#include <algorithm>

namespace isokit {

namespace {

void put_u32(std::string& out, std::uint32_t x) {
    out.push_back(static_cast<char>(x >> 24));
    out.push_back(static_cast<char>(x >> 16));
    out.push_back(static_cast<char>(x >> 8));
    out.push_back(static_cast<char>(x));
}

// Node invariant of a stable partition: per cell, (size, input color of its
// members, degree counts towards every cell). Cells of a stable partition
// inherit a single input color because refinement only splits the input
// partition.
std::string node_invariant(const ColoredGraph& g, const StableColoring& s) {
    std::string out;
    put_u32(out, static_cast<std::uint32_t>(s.cells.size()));
    for (size_t c = 0; c < s.cells.size(); ++c) {
        put_u32(out, static_cast<std::uint32_t>(s.cells[c].size()));
        put_u32(out, static_cast<std::uint32_t>(g.color(s.cells[c].front())));
        for (int d : s.class_degree[c]) put_u32(out, static_cast<std::uint32_t>(d));
    }
    return out;
}

std::string leaf_bytes(const ColoredGraph& g, const std::vector<int>& position) {
    std::string out;
    int n = g.size();
    put_u32(out, static_cast<std::uint32_t>(n));
    std::vector<int> at(static_cast<size_t>(n));
    for (int v = 0; v < n; ++v) at[static_cast<size_t>(position[static_cast<size_t>(v)])] = v;
    for (int p = 0; p < n; ++p) put_u32(out, static_cast<std::uint32_t>(g.color(at[static_cast<size_t>(p)])));
    unsigned char acc = 0;
    int nbits = 0;
    for (int p = 0; p < n; ++p)
        for (int q = p + 1; q < n; ++q) {
            acc = static_cast<unsigned char>(acc << 1);
            if (g.adjacent(at[static_cast<size_t>(p)], at[static_cast<size_t>(q)])) acc |= 1;
            if (++nbits == 8) {
                out.push_back(static_cast<char>(acc));
                acc = 0;
                nbits = 0;
            }
        }
    if (nbits) out.push_back(static_cast<char>(acc << (8 - nbits)));
    return out;
}

struct LeafCert {
    std::vector<std::string> path; // node invariants, root first
    std::string leaf;
    Perm labeling;

    bool set = false;
};

int compare_cert(const std::vector<std::string>& a_path, const std::string& a_leaf,
                 const LeafCert& b) {
    for (size_t i = 0; i < std::min(a_path.size(), b.path.size()); ++i) {
        if (a_path[i] < b.path[i]) return -1;
        if (a_path[i] > b.path[i]) return 1;
    }
    if (a_path.size() != b.path.size()) return a_path.size() < b.path.size() ? -1 : 1;
    if (a_leaf != b.leaf) return a_leaf < b.leaf ? -1 : 1;
    return 0;
}

// Individualization-refinement search with two reference leaves: the first
// leaf anchors automorphism discovery, the best leaf is the canonical
// candidate. A subtree is cut when its invariant path already compares
// worse than the best leaf and has diverged from the first leaf.
class CanonSearch {
public:
    CanonSearch(const ColoredGraph& g, Budget* budget) : g_(g), budget_(budget) {}

    void run() {
        std::vector<int> start(static_cast<size_t>(g_.size()));
        for (int v = 0; v < g_.size(); ++v) start[static_cast<size_t>(v)] = g_.color(v);
        std::vector<std::string> path;
        descend(start, path, true, true);
    }

    const LeafCert& best() const { return best_; }
    const std::vector<Perm>& automorphism_generators() const { return aut_gens_; }

private:
    // state flags: on_first - every ancestor invariant matched the first
    // path; best_cmp - -1 if the path is already strictly smaller than the
    // best cert, 0 if equal so far.
    void descend(const std::vector<int>& colors, std::vector<std::string>& path, bool on_first,
                 bool best_equal) {
        if (budget_) budget_->tick("canonical search");
        StableColoring stable = refine_from(g_, colors);
        std::string inv = node_invariant(g_, stable);
        size_t depth = path.size();

        if (first_.set || !on_first) {
            // keep on_first only while matching the recorded first path
            on_first = on_first && depth < first_.path.size() && inv == first_.path[depth];
        }
        int best_cmp = 0;
        if (best_.set && best_equal) {
            if (depth < best_.path.size()) {
                if (inv < best_.path[depth]) best_cmp = -1;
                else if (inv > best_.path[depth]) best_cmp = 1;
            } else {
                best_cmp = 1; // longer path than the (equal-prefix) best leaf
            }
        } else if (best_.set) {
            best_cmp = -1; // an ancestor was already smaller
        }
        if (best_.set && best_cmp > 0 && !on_first) return;

        path.push_back(inv);
        if (stable.discrete()) {
            handle_leaf(stable, path);
        } else {
            int cell = -1;
            for (size_t c = 0; c < stable.cells.size(); ++c)
                if (stable.cells[c].size() > 1 &&
                    (cell < 0 || stable.cells[c].size() < stable.cells[static_cast<size_t>(cell)].size())) {
                    cell = static_cast<int>(c);
                }
            const std::vector<int>& candidates = stable.cells[static_cast<size_t>(cell)];
            std::vector<int> tried;
            for (int v : candidates) {
                if (pruned_by_orbit(v, tried, colors)) continue;
                tried.push_back(v);
                std::vector<int> child = stable.color;
                child[static_cast<size_t>(v)] = stable.num_classes();
                descend(child, path, on_first, best_.set ? best_cmp == 0 : true);
            }
        }
        path.pop_back();
    }

    void handle_leaf(const StableColoring& stable, std::vector<std::string>& path) {
        std::string leaf = leaf_bytes(g_, stable.color);
        Perm labeling(stable.color);
        if (!first_.set) {
            first_ = {path, leaf, labeling, true};
        } else if (compare_cert(path, leaf, first_) == 0) {
            record_automorphism(labeling, first_.labeling);
        }
        if (!best_.set || compare_cert(path, leaf, best_) < 0) {
            best_ = {path, leaf, labeling, true};
        } else if (compare_cert(path, leaf, best_) == 0 && compare_cert(path, leaf, first_) != 0) {
            record_automorphism(labeling, best_.labeling);
        }
    }

    void record_automorphism(const Perm& pi, const Perm& reference) {
        Perm a = compose(inverse(pi), reference);
        if (a.is_identity()) return;
        for (const Perm& g : aut_gens_)
            if (g == a) return;
        aut_gens_.push_back(a);
    }

    // Sibling pruning: v is skipped if some discovered automorphism that
    // fixes all currently individualized vertices maps a tried sibling to v.
    bool pruned_by_orbit(int v, const std::vector<int>& tried, const std::vector<int>& colors) {
        if (tried.empty() || aut_gens_.empty()) return false;
        std::vector<const Perm*> usable;
        for (const Perm& a : aut_gens_) {
            bool fixes = true;
            // individualized vertices are exactly those whose color id
            // exceeds the original bound; cheaper: a usable automorphism
            // must preserve the current coloring pointwise on singleton
            // marks, which we approximate by checking color equality under a
            for (int x = 0; x < g_.size() && fixes; ++x)
                if (colors[static_cast<size_t>(x)] != colors[static_cast<size_t>(a(x))]) fixes = false;
            if (fixes) usable.push_back(&a);
        }
        if (usable.empty()) return false;
        std::vector<char> seen(static_cast<size_t>(g_.size()), 0);
        std::vector<int> queue = tried;
        for (int t : tried) seen[static_cast<size_t>(t)] = 1;
        for (size_t head = 0; head < queue.size(); ++head)
            for (const Perm* a : usable) {
                int y = (*a)(queue[head]);
                if (!seen[static_cast<size_t>(y)]) {
                    seen[static_cast<size_t>(y)] = 1;
                    queue.push_back(y);
                }
            }
        return seen[static_cast<size_t>(v)];
    }

    const ColoredGraph& g_;
    Budget* budget_;
    LeafCert first_;
    LeafCert best_;
    std::vector<Perm> aut_gens_;
};

InvariantValue cert_to_value(const LeafCert& cert) {
    std::string bytes;
    put_u32(bytes, static_cast<std::uint32_t>(cert.path.size()));
    for (const std::string& p : cert.path) {
        put_u32(bytes, static_cast<std::uint32_t>(p.size()));
        bytes += p;
    }
    bytes += cert.leaf;
    return InvariantValue{std::move(bytes)};
}

} // namespace

CanonicalResult canonical_labeling(const ColoredGraph& g, Budget* budget) {
    if (g.size() == 0) return {InvariantValue{"empty"}, Perm(0)};
    CanonSearch search(g, budget);
    search.run();
    return {cert_to_value(search.best()), search.best().labeling};
}

InvariantValue canonical_form(const ColoredGraph& g, Budget* budget) {
    return canonical_labeling(g, budget).value;
}

PermutationGroup automorphism_group(const ColoredGraph& g, Budget* budget) {
    if (g.size() == 0) return PermutationGroup::from_generators(0, {});
    CanonSearch search(g, budget);
    search.run();
    return PermutationGroup::from_generators(g.size(), search.automorphism_generators());
}

bool is_isomorphism(const ColoredGraph& g1, const ColoredGraph& g2, const Perm& p) {
    if (g1.size() != g2.size() || p.degree() != g1.size()) return false;
    for (int v = 0; v < g1.size(); ++v)
        if (g1.color(v) != g2.color(p(v))) return false;
    for (int u = 0; u < g1.size(); ++u)
        for (int v = u + 1; v < g1.size(); ++v)
            if (g1.adjacent(u, v) != g2.adjacent(p(u), p(v))) return false;
    return true;
}

std::optional<Perm> ir_iso(const ColoredGraph& g1, const ColoredGraph& g2, Budget* budget) {
    if (g1.size() != g2.size()) return std::nullopt;
    if (g1.size() == 0) return Perm(0);
    std::vector<int> c1 = g1.colors(), c2 = g2.colors();
    std::sort(c1.begin(), c1.end());
    std::sort(c2.begin(), c2.end());
    if (c1 != c2) return std::nullopt;
    CanonicalResult r1 = canonical_labeling(g1, budget);
    CanonicalResult r2 = canonical_labeling(g2, budget);
    if (r1.value != r2.value) return std::nullopt;
    Perm witness = compose(inverse(r2.labeling), r1.labeling);
    if (!is_isomorphism(g1, g2, witness))
        throw std::logic_error("canonical labeling produced an invalid isomorphism witness");
    return witness;
}

IsoCoset iso_coset(const ColoredGraph& g1, const ColoredGraph& g2, Budget* budget) {
    return IsoCoset{ir_iso(g1, g2, budget), automorphism_group(g1, budget)};
}

namespace {

// Plain backtracking mapper, oblivious to refinement: the test oracle.
bool brute_extend(const ColoredGraph& g1, const ColoredGraph& g2, std::vector<int>& map,
                  std::vector<char>& used, int v, Budget* budget, std::uint64_t* count) {
    if (v == g1.size()) {
        if (count) {
            ++*count;
            return false; // keep enumerating
        }
        return true;
    }
    for (int w = 0; w < g2.size(); ++w) {
        if (used[static_cast<size_t>(w)]) continue;
        if (g1.color(v) != g2.color(w)) continue;
        if (g1.degree(v) != g2.degree(w)) continue;
        if (budget) budget->tick("brute force isomorphism");
        bool ok = true;
        for (int u = 0; u < v && ok; ++u) ok = g1.adjacent(u, v) == g2.adjacent(map[static_cast<size_t>(u)], w);
        if (!ok) continue;
        map[static_cast<size_t>(v)] = w;
        used[static_cast<size_t>(w)] = 1;
        if (brute_extend(g1, g2, map, used, v + 1, budget, count)) return true;
        used[static_cast<size_t>(w)] = 0;
        map[static_cast<size_t>(v)] = -1;
    }
    return false;
}

} // namespace

std::optional<Perm> brute_force_iso(const ColoredGraph& g1, const ColoredGraph& g2, Budget* budget,
                                    bool allow_large) {
    if (!allow_large && (g1.size() > 9 || g2.size() > 9))
        throw contract_error("brute_force_iso is guarded to 9 vertices; pass allow_large to override");
    if (g1.size() != g2.size()) return std::nullopt;
    std::vector<int> map(static_cast<size_t>(g1.size()), -1);
    std::vector<char> used(static_cast<size_t>(g2.size()), 0);
    if (brute_extend(g1, g2, map, used, 0, budget, nullptr)) return Perm(map);
    return std::nullopt;
}

std::uint64_t brute_force_automorphism_count(const ColoredGraph& g, Budget* budget, bool allow_large) {
    if (!allow_large && g.size() > 12)
        throw contract_error("brute_force_automorphism_count is guarded to 12 vertices");
    std::uint64_t count = 0;
    std::vector<int> map(static_cast<size_t>(g.size()), -1);
    std::vector<char> used(static_cast<size_t>(g.size()), 0);
    brute_extend(g, g, map, used, 0, budget, &count);
    return count;
}

} // namespace isokit
