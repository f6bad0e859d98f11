#include "isokit/moddecomp.hpp"

#include "isokit/refine.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace isokit {

bool ModuleFamily::any_nontrivial() const {
    return std::any_of(nontrivial.begin(), nontrivial.end(), [](bool b) { return b; });
}

bool is_colored_module(const ColoredGraph& g, const std::vector<int>& m) {
    std::vector<char> inside(static_cast<size_t>(g.size()), 0);
    for (int x : m) inside[static_cast<size_t>(x)] = 1;
    for (int v = 0; v < g.size(); ++v) {
        if (inside[static_cast<size_t>(v)]) continue;
        for (size_t i = 0; i < m.size(); ++i)
            for (size_t j = i + 1; j < m.size(); ++j) {
                if (g.color(m[i]) != g.color(m[j])) continue;
                if (g.adjacent(v, m[i]) != g.adjacent(v, m[j])) return false;
            }
    }
    return true;
}

bool is_nontrivial_module(const ColoredGraph& g, const std::vector<int>& m) {
    std::vector<char> inside(static_cast<size_t>(g.size()), 0);
    for (int x : m) inside[static_cast<size_t>(x)] = 1;
    for (size_t i = 0; i < m.size(); ++i)
        for (size_t j = i + 1; j < m.size(); ++j) {
            bool indistinguishable = true;
            for (int v = 0; v < g.size() && indistinguishable; ++v) {
                if (inside[static_cast<size_t>(v)]) continue;
                indistinguishable = g.adjacent(v, m[i]) == g.adjacent(v, m[j]);
            }
            if (indistinguishable) return true;
        }
    return false;
}

namespace {

ModuleFamily family_from_sets(const ColoredGraph& g, std::vector<std::vector<int>> sets) {
    ModuleFamily fam;
    for (auto& s : sets) {
        std::sort(s.begin(), s.end());
        fam.nontrivial.push_back(is_nontrivial_module(g, s));
        fam.modules.push_back(std::move(s));
    }
    return fam;
}

// Minimal uncolored module containing the seed, by splitter closure.
std::vector<int> minimal_module_containing(const ColoredGraph& g, std::vector<int> seed) {
    std::vector<char> inside(static_cast<size_t>(g.size()), 0);
    for (int x : seed) inside[static_cast<size_t>(x)] = 1;
    bool grew = true;
    while (grew) {
        grew = false;
        for (int w = 0; w < g.size(); ++w) {
            if (inside[static_cast<size_t>(w)]) continue;
            bool adj_any = false, nonadj_any = false;
            for (int x : seed) {
                if (g.adjacent(w, x)) adj_any = true;
                else nonadj_any = true;
            }
            if (adj_any && nonadj_any) {
                inside[static_cast<size_t>(w)] = 1;
                seed.push_back(w);
                grew = true;
            }
        }
    }
    std::sort(seed.begin(), seed.end());
    return seed;
}

} // namespace

ModuleFamily classical_functor(const ColoredGraph& g) {
    if (g.size() == 0) return {};
    auto components = connected_components(g);
    if (components.size() > 1) return family_from_sets(g, components);
    auto co_components = connected_components(complement(g));
    if (co_components.size() > 1) return family_from_sets(g, co_components);
    if (g.size() == 1) return family_from_sets(g, {{0}});

    // connected and co-connected: the maximal proper modules partition the
    // graph; the maximal module through v is the union of all proper
    // modules containing v
    std::vector<std::vector<int>> children;
    std::vector<char> placed(static_cast<size_t>(g.size()), 0);
    for (int v = 0; v < g.size(); ++v) {
        if (placed[static_cast<size_t>(v)]) continue;
        std::set<int> united{v};
        for (int u = 0; u < g.size(); ++u) {
            if (u == v) continue;
            auto mm = minimal_module_containing(g, {v, u});
            if (static_cast<int>(mm.size()) < g.size()) united.insert(mm.begin(), mm.end());
        }
        std::vector<int> child(united.begin(), united.end());
        for (int x : child) placed[static_cast<size_t>(x)] = 1;
        children.push_back(std::move(child));
    }
    return family_from_sets(g, children);
}

Replacement keep_one_per_adjacency_type(const ColoredGraph& g, const std::vector<int>& m) {
    std::vector<char> inside(static_cast<size_t>(g.size()), 0);
    for (int x : m) inside[static_cast<size_t>(x)] = 1;
    std::map<std::vector<int>, int> first_of_type;
    for (int x : m) {
        std::vector<int> type;
        for (int v = 0; v < g.size(); ++v)
            if (!inside[static_cast<size_t>(v)] && g.adjacent(x, v)) type.push_back(v);
        first_of_type.emplace(std::move(type), x);
    }
    Replacement r;
    for (auto& [type, x] : first_of_type) {
        r.kept.push_back(x);
        r.kept_color.push_back(g.color(x));
    }
    std::sort(r.kept.begin(), r.kept.end());
    r.kept_color.clear();
    for (int x : r.kept) r.kept_color.push_back(g.color(x));
    return r;
}

namespace {

std::vector<int> adjacency_type(const ColoredGraph& g, const std::vector<char>& inside, int x) {
    std::vector<int> type;
    for (int v = 0; v < g.size(); ++v)
        if (!inside[static_cast<size_t>(v)] && g.adjacent(x, v)) type.push_back(v);
    return type;
}

void check_family(const ColoredGraph& g, const ModuleFamily& fam, bool require_partition) {
    std::vector<char> seen(static_cast<size_t>(g.size()), 0);
    int covered = 0;
    for (const auto& m : fam.modules) {
        if (m.empty()) throw contract_error("empty module in family");
        for (int x : m) {
            if (x < 0 || x >= g.size()) throw contract_error("module vertex out of range");
            if (seen[static_cast<size_t>(x)]) throw contract_error("modules overlap");
            seen[static_cast<size_t>(x)] = 1;
            ++covered;
        }
        if (!is_colored_module(g, m))
            throw std::logic_error("functor returned a set that is not a colored module");
    }
    if (require_partition && covered != g.size())
        throw contract_error("module family does not partition the vertex set");
}

} // namespace

ColoredGraph quotient(const ColoredGraph& g, const ModuleFamily& fam, const ReplacementOperator& rep,
                      const ModuleInvariant& module_invariant, ColorTable& table) {
    check_family(g, fam, true);
    std::vector<char> inside(static_cast<size_t>(g.size()), 0);

    std::vector<int> kept_all;
    std::vector<int> kept_color(static_cast<size_t>(g.size()), -1);
    std::vector<int> module_of(static_cast<size_t>(g.size()), -1);
    std::vector<std::string> module_inv_hex(fam.size());

    for (size_t mi = 0; mi < fam.size(); ++mi)
        for (int x : fam.modules[mi]) module_of[static_cast<size_t>(x)] = static_cast<int>(mi);

    for (size_t mi = 0; mi < fam.size(); ++mi) {
        const auto& m = fam.modules[mi];
        InvariantValue inv = module_invariant(induced_subgraph(g, m));
        std::ostringstream hex;
        for (unsigned char c : inv.bytes) hex << std::hex << static_cast<int>(c) << ".";
        module_inv_hex[mi] = hex.str();

        Replacement r;
        if (fam.nontrivial[mi]) {
            r = rep(g, m);
            if (r.kept.empty() || r.kept.size() != r.kept_color.size())
                throw std::logic_error("replacement operator returned an invalid result");
            // at least one vertex per adjacency type must survive
            std::vector<char> mod_inside(static_cast<size_t>(g.size()), 0);
            for (int x : m) mod_inside[static_cast<size_t>(x)] = 1;
            std::set<std::vector<int>> all_types, kept_types;
            for (int x : m) all_types.insert(adjacency_type(g, mod_inside, x));
            for (int x : r.kept) kept_types.insert(adjacency_type(g, mod_inside, x));
            if (all_types != kept_types)
                throw std::logic_error("replacement operator dropped an adjacency type");
        } else {
            r.kept = m;
            for (int x : m) r.kept_color.push_back(g.color(x));
        }
        for (size_t i = 0; i < r.kept.size(); ++i) {
            kept_all.push_back(r.kept[i]);
            kept_color[static_cast<size_t>(r.kept[i])] = r.kept_color[i];
        }
    }
    std::sort(kept_all.begin(), kept_all.end());

    // recolor with the triple (replacement color, same-type original colors,
    // module invariant); the color list is sorted by color id
    ColoredGraph out = induced_subgraph(g, kept_all);
    for (size_t i = 0; i < kept_all.size(); ++i) {
        int x = kept_all[i];
        int mi = module_of[static_cast<size_t>(x)];
        const auto& m = fam.modules[static_cast<size_t>(mi)];
        std::vector<char> mod_inside(static_cast<size_t>(g.size()), 0);
        for (int y : m) mod_inside[static_cast<size_t>(y)] = 1;
        auto my_type = adjacency_type(g, mod_inside, x);
        std::vector<int> same_type_colors;
        for (int y : m)
            if (adjacency_type(g, mod_inside, y) == my_type) same_type_colors.push_back(g.color(y));
        std::sort(same_type_colors.begin(), same_type_colors.end());
        std::ostringstream desc;
        desc << "q|" << kept_color[static_cast<size_t>(x)] << "|";
        for (int c : same_type_colors) desc << c << ",";
        desc << "|" << module_inv_hex[static_cast<size_t>(mi)];
        out.set_color(static_cast<int>(i), table.intern(desc.str()));
    }
    out.set_color_count(table.size());
    return out;
}

InvariantValue decomposition_invariant(const ColoredGraph& g_in, const DecompositionFunctor& functor,
                                       const ReplacementOperator& rep, const ModuleInvariant& prime_inv,
                                       ColorTable& table, int* leaf_count) {
    // input colors live in their own namespace of the session table, so raw
    // ids can never collide with the interned quotient triples
    ColoredGraph g = g_in;
    for (int v = 0; v < g.size(); ++v)
        g.set_color(v, table.intern("raw|" + std::to_string(g_in.color(v))));
    g.set_color_count(table.size() == 0 ? 1 : table.size());

    ModuleFamily fam = functor(g);
    check_family(g, fam, true);
    if (!fam.any_nontrivial()) {
        if (leaf_count) ++*leaf_count;
        return prime_inv(g);
    }
    for (size_t mi = 0; mi < fam.size(); ++mi)
        if (fam.nontrivial[mi] && static_cast<int>(fam.modules[mi].size()) == g.size())
            throw std::logic_error("functor returned the whole graph as a non-trivial module");

    ModuleInvariant recursive = [&](const ColoredGraph& sub) {
        if (sub.size() == g.size())
            throw std::logic_error("decomposition recursion did not shrink");
        return decomposition_invariant(sub, functor, rep, prime_inv, table, leaf_count);
    };
    ColoredGraph q = quotient(g, fam, rep, recursive, table);

    ModuleFamily check = functor(q);
    if (check.any_nontrivial())
        throw std::logic_error("functor is not simple: quotient graph is not prime");
    if (leaf_count) ++*leaf_count;
    return prime_inv(q);
}

ReversibilityCase reversibility_case(const ColoredGraph& g, const ModuleFamily& fam,
                                     const ReplacementOperator& rep) {
    std::vector<size_t> nontrivial_ids;
    for (size_t i = 0; i < fam.size(); ++i)
        if (fam.nontrivial[i]) nontrivial_ids.push_back(i);
    if (nontrivial_ids.size() == 1) return ReversibilityCase::OneTrivial;

    bool all_singleton = true;
    for (size_t i : nontrivial_ids) {
        Replacement r = rep(g, fam.modules[i]);
        if (r.kept.size() != 1) {
            all_singleton = false;
            break;
        }
    }
    if (all_singleton) return ReversibilityCase::Singletons;

    bool connected_nonadjacent = true;
    for (size_t i : nontrivial_ids)
        if (!is_connected(induced_subgraph(g, fam.modules[i]))) connected_nonadjacent = false;
    for (size_t a = 0; a < nontrivial_ids.size() && connected_nonadjacent; ++a)
        for (size_t b = a + 1; b < nontrivial_ids.size() && connected_nonadjacent; ++b)
            for (int x : fam.modules[nontrivial_ids[a]])
                for (int y : fam.modules[nontrivial_ids[b]])
                    if (g.adjacent(x, y)) {
                        connected_nonadjacent = false;
                        break;
                    }
    if (connected_nonadjacent) return ReversibilityCase::ConnectedNonAdjacent;
    return ReversibilityCase::Unknown;
}

ModuleFamily degree_dependence_modules(const ColoredGraph& g, int c) {
    if (!is_stable(g))
        throw contract_error("degree dependence modules: coloring is not stable under naive refinement");
    int valence = color_valence(g);
    if (valence > c)
        throw contract_error("degree dependence modules: color valence " + std::to_string(valence) +
                             " exceeds " + std::to_string(c));
    std::vector<std::vector<int>> cells(static_cast<size_t>(g.color_count()));
    for (int v = 0; v < g.size(); ++v) cells[static_cast<size_t>(g.color(v))].push_back(v);
    for (const auto& cell : cells)
        if (!cell.empty() && static_cast<int>(cell.size()) <= 2 * c)
            throw contract_error("degree dependence modules: color class of size " +
                                 std::to_string(cell.size()) + " is at most 2c");

    // degree dependence of v' (in class C') with respect to a member v of S
    auto dependent = [&](int vp, const std::vector<int>& s_members) {
        const auto& cell = cells[static_cast<size_t>(g.color(vp))];
        for (int v : s_members) {
            int nbrs_in_class = 0;
            for (int u : cell)
                if (g.adjacent(v, u)) ++nbrs_in_class;
            if (g.adjacent(v, vp)) {
                if (nbrs_in_class <= c) return true;
            } else {
                if (static_cast<int>(cell.size()) - nbrs_in_class <= c) return true;
            }
        }
        return false;
    };

    std::set<std::vector<int>> family;
    for (int v = 0; v < g.size(); ++v) {
        std::vector<int> s{v};
        std::vector<char> inside(static_cast<size_t>(g.size()), 0);
        inside[static_cast<size_t>(v)] = 1;
        bool grew = true;
        while (grew) {
            grew = false;
            for (int vp = 0; vp < g.size(); ++vp) {
                if (inside[static_cast<size_t>(vp)]) continue;
                if (dependent(vp, s)) {
                    inside[static_cast<size_t>(vp)] = 1;
                    s.push_back(vp);
                    grew = true;
                }
            }
        }
        std::sort(s.begin(), s.end());
        family.insert(std::move(s));
    }

    ModuleFamily fam = family_from_sets(g, {family.begin(), family.end()});
    check_family(g, fam, true); // the lemma: minimal modules partition G
    return fam;
}

std::vector<int> nc_closure(const ColoredGraph& g, const std::vector<int>& side_a,
                            const std::vector<int>& side_b, int v) {
    std::vector<int> side(static_cast<size_t>(g.size()), -1);
    for (int x : side_a) side.at(static_cast<size_t>(x)) = 0;
    for (int x : side_b) {
        if (side.at(static_cast<size_t>(x)) == 0) throw contract_error("bipartition sides overlap");
        side[static_cast<size_t>(x)] = 1;
    }
    for (int x = 0; x < g.size(); ++x)
        if (side[static_cast<size_t>(x)] < 0) throw contract_error("bipartition does not cover the graph");
    for (auto [x, y] : g.edges())
        if (side[static_cast<size_t>(x)] == side[static_cast<size_t>(y)])
            throw contract_error("edge inside a bipartition side");
    if (side[static_cast<size_t>(v)] != 0) throw contract_error("closure seed must lie in side A");

    std::vector<char> in_s(static_cast<size_t>(g.size()), 0);
    std::vector<char> in_ns(static_cast<size_t>(g.size()), 0); // N(S) within B
    in_s[static_cast<size_t>(v)] = 1;
    for (int u : g.neighbors(v)) in_ns[static_cast<size_t>(u)] = 1;

    bool grew = true;
    while (grew) {
        grew = false;
        for (int vp : side_a) {
            if (in_s[static_cast<size_t>(vp)]) continue;
            bool meets = false;
            bool covers_all = true; // N(S) subseteq N(vp)
            for (int b : side_b) {
                if (!in_ns[static_cast<size_t>(b)]) continue;
                if (g.adjacent(vp, b)) meets = true;
                else covers_all = false;
            }
            if (!meets) continue;
            bool proper = covers_all && [&] {
                for (int b : g.neighbors(vp))
                    if (!in_ns[static_cast<size_t>(b)]) return true;
                return false;
            }();
            if (proper) continue; // N(S) properly inside N(vp): vp stays out
            in_s[static_cast<size_t>(vp)] = 1;
            for (int b : g.neighbors(vp)) in_ns[static_cast<size_t>(b)] = 1;
            grew = true;
        }
    }
    std::vector<int> out;
    for (int x : side_a)
        if (in_s[static_cast<size_t>(x)]) out.push_back(x);
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace isokit
