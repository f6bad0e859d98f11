#include <doctest.h>

#include "isokit/moddecomp.hpp"
#include "test_util.hpp"

using namespace isokit;
using namespace isokit::testutil;

namespace {

// the bipartite matching-pair construction: a colored module whose vertices
// avoid every proper non-trivial uncolored module
ColoredGraph matching_pair_instance() {
    ColoredGraph g(6, 2);
    for (int v = 0; v < 3; ++v) g.set_color(v, 0);
    for (int v = 3; v < 6; ++v) g.set_color(v, 1);
    g.add_edge(0, 3); // matching inside A' u B'
    g.add_edge(1, 4);
    g.add_edge(0, 5); // A' complete to B - B'
    g.add_edge(1, 5);
    g.add_edge(2, 3); // B' complete to A - A'
    g.add_edge(2, 4);
    g.add_edge(2, 5); // keeps it connected
    return g;
}

std::vector<std::vector<int>> sorted_modules(const ModuleFamily& fam) {
    auto out = fam.modules;
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace

TEST_SUITE("moddecomp") {

TEST_CASE("module predicates") {
    ColoredGraph k33 = build_named(GraphFamily::biclique(3, 3));
    CHECK(is_colored_module(k33, {0}));
    CHECK(!is_nontrivial_module(k33, {0}));
    CHECK(is_colored_module(k33, {0, 1, 2}));
    CHECK(is_nontrivial_module(k33, {0, 1, 2}));

    ColoredGraph g = matching_pair_instance();
    std::vector<int> m{0, 1, 3, 4};
    CHECK(is_colored_module(g, m));
    CHECK(is_nontrivial_module(g, m));
    for (const auto& module : uncolored_module_oracle(g))
        for (int x : module) CHECK((x == 2 || x == 5));
}

TEST_CASE("classical functor") {
    ColoredGraph two_k3 =
        disjoint_union(build_named(GraphFamily::complete(3)), build_named(GraphFamily::complete(3)));
    CHECK(sorted_modules(classical_functor(two_k3)) ==
          std::vector<std::vector<int>>{{0, 1, 2}, {3, 4, 5}});

    ColoredGraph k33 = build_named(GraphFamily::biclique(3, 3));
    CHECK(sorted_modules(classical_functor(k33)) ==
          std::vector<std::vector<int>>{{0, 1, 2}, {3, 4, 5}});

    ColoredGraph p4 = build_named(GraphFamily::path(4));
    CHECK(sorted_modules(classical_functor(p4)) ==
          std::vector<std::vector<int>>{{0}, {1}, {2}, {3}});
    CHECK(uncolored_module_oracle(p4).empty());
}

TEST_CASE("functor families are modules and isomorphism invariant") {
    std::mt19937 rng(101);
    for (int trial = 0; trial < 100; ++trial) {
        ColoredGraph g = random_graph(rng, 3 + static_cast<int>(rng() % 5), 0.45);
        ModuleFamily fam = classical_functor(g);
        for (const auto& m : fam.modules) CHECK(is_colored_module(g, m));

        Perm pi = random_perm(rng, g.size());
        ModuleFamily fam_pi = classical_functor(apply_permutation(g, pi.img));
        auto mapped = fam.modules;
        for (auto& m : mapped) {
            for (int& v : m) v = pi(v);
            std::sort(m.begin(), m.end());
        }
        std::sort(mapped.begin(), mapped.end());
        CHECK(mapped == sorted_modules(fam_pi));
    }
}

TEST_CASE("quotients") {
    ColorTable table;
    ModuleInvariant inv = [](const ColoredGraph& m) { return canonical_form(m); };

    // all-singleton family: the quotient is the graph re-interned
    ColoredGraph p4 = build_named(GraphFamily::path(4));
    ModuleFamily singletons = classical_functor(p4);
    ColoredGraph q = quotient(p4, singletons, keep_one_per_adjacency_type, inv, table);
    CHECK(q.size() == 4);
    CHECK(q.edges() == p4.edges());

    ColoredGraph k33 = build_named(GraphFamily::biclique(3, 3));
    ColoredGraph qk = quotient(k33, classical_functor(k33), keep_one_per_adjacency_type, inv, table);
    CHECK(qk.size() == 2);
    CHECK(qk.adjacent(0, 1));

    // complete tripartite: co-components shrink to a triangle
    ColoredGraph k222 = complement(disjoint_union(
        disjoint_union(build_named(GraphFamily::complete(2)), build_named(GraphFamily::complete(2))),
        build_named(GraphFamily::complete(2))));
    ColoredGraph qt = quotient(k222, classical_functor(k222), keep_one_per_adjacency_type, inv, table);
    CHECK(qt.size() == 3);
    CHECK(qt.edge_count() == 3);

    ModuleFamily broken;
    broken.modules = {{0}};
    broken.nontrivial = {false};
    CHECK_THROWS_AS(quotient(p4, broken, keep_one_per_adjacency_type, inv, table), contract_error);
}

TEST_CASE("decomposition invariant is complete on small graphs") {
    ColorTable table;
    ModuleInvariant prime_inv = [](const ColoredGraph& m) { return canonical_form(m); };

    // prime input goes straight to the prime invariant
    ColoredGraph p4 = build_named(GraphFamily::path(4));
    int leaves = 0;
    InvariantValue direct = decomposition_invariant(p4, classical_functor, keep_one_per_adjacency_type,
                                                    prime_inv, table, &leaves);
    CHECK(direct == canonical_form(p4));
    CHECK(leaves == 1);

    std::mt19937 rng(103);
    for (int trial = 0; trial < 120; ++trial) {
        int n = 2 + static_cast<int>(rng() % 6);
        ColoredGraph g1 = random_graph(rng, n, 0.5);
        ColoredGraph g2 = trial % 2 ? shuffled(rng, g1) : random_graph(rng, n, 0.5);
        int count = 0;
        InvariantValue v1 = decomposition_invariant(g1, classical_functor, keep_one_per_adjacency_type,
                                                    prime_inv, table, &count);
        InvariantValue v2 = decomposition_invariant(g2, classical_functor, keep_one_per_adjacency_type,
                                                    prime_inv, table, &count);
        CHECK((v1 == v2) == brute_force_iso(g1, g2).has_value());
        CHECK(count <= 2 * n * n);
    }
}

TEST_CASE("cograph catalog up to 5 vertices") {
    // exhaustive P4-free catalog; the invariant must separate exactly the
    // isomorphism classes
    ColoredGraph p4 = build_named(GraphFamily::path(4));
    std::vector<ColoredGraph> catalog;
    for (int n = 1; n <= 5; ++n) {
        int pairs = n * (n - 1) / 2;
        for (int mask = 0; mask < (1 << pairs); ++mask) {
            ColoredGraph g(n);
            int bit = 0;
            for (int u = 0; u < n; ++u)
                for (int v = u + 1; v < n; ++v, ++bit)
                    if (mask & (1 << bit)) g.add_edge(u, v);
            if (contains_induced(p4, g)) continue;
            bool duplicate = false;
            for (const auto& seen : catalog)
                if (seen.size() == n && brute_force_iso(seen, g).has_value()) duplicate = true;
            if (!duplicate) catalog.push_back(g);
        }
    }
    CHECK(catalog.size() == 1 + 2 + 4 + 10 + 24);

    ColorTable table;
    ModuleInvariant prime_inv = [](const ColoredGraph& m) { return canonical_form(m); };
    std::vector<InvariantValue> values;
    for (const auto& g : catalog)
        values.push_back(decomposition_invariant(g, classical_functor, keep_one_per_adjacency_type,
                                                 prime_inv, table));
    for (size_t i = 0; i < catalog.size(); ++i)
        for (size_t j = i + 1; j < catalog.size(); ++j) CHECK(values[i] != values[j]);
}

TEST_CASE("reversibility cases") {
    ColoredGraph k33 = build_named(GraphFamily::biclique(3, 3));
    ModuleFamily sides = classical_functor(k33);
    CHECK(reversibility_case(k33, sides, keep_one_per_adjacency_type) ==
          ReversibilityCase::Singletons);

    ModuleFamily one;
    one.modules = {{0, 1, 2}, {3}, {4}, {5}};
    one.nontrivial = {true, false, false, false};
    CHECK(reversibility_case(k33, one, keep_one_per_adjacency_type) == ReversibilityCase::OneTrivial);

    // two connected non-adjacent non-trivial modules kept whole
    ColoredGraph two_k3 =
        disjoint_union(build_named(GraphFamily::complete(3)), build_named(GraphFamily::complete(3)));
    ModuleFamily comps = classical_functor(two_k3);
    ReplacementOperator keep_whole = [](const ColoredGraph& g, const std::vector<int>& m) {
        Replacement r;
        r.kept = m;
        for (int x : m) r.kept_color.push_back(g.color(x));
        return r;
    };
    CHECK(reversibility_case(two_k3, comps, keep_whole) == ReversibilityCase::ConnectedNonAdjacent);
}

TEST_CASE("degree dependence modules") {
    // disjoint triangles, one class, c = 2
    ColoredGraph triangles = build_named(GraphFamily::complete(3));
    for (int i = 0; i < 2; ++i)
        triangles = disjoint_union(triangles, build_named(GraphFamily::complete(3)));
    ModuleFamily fam = degree_dependence_modules(triangles, 2);
    CHECK(sorted_modules(fam) ==
          std::vector<std::vector<int>>{{0, 1, 2}, {3, 4, 5}, {6, 7, 8}});
    for (const auto& m : fam.modules) CHECK(is_colored_module(triangles, m));

    // disjoint C5 copies, c = 2
    ColoredGraph pentagons = build_named(GraphFamily::cycle(5));
    for (int i = 0; i < 2; ++i) pentagons = disjoint_union(pentagons, build_named(GraphFamily::cycle(5)));
    ModuleFamily pf = degree_dependence_modules(pentagons, 2);
    CHECK(pf.size() == 3);
    for (const auto& m : pf.modules) CHECK(m.size() == 5);

    // wheel: not stable without refinement and has a small class afterwards
    ColoredGraph wheel = build_named(GraphFamily::cycle(6));
    wheel = join_universal(wheel, 1, 0);
    CHECK_THROWS_AS(degree_dependence_modules(wheel, 3), contract_error);
    ColoredGraph wheel_refined = naive_refine(wheel).recolored(wheel);
    CHECK_THROWS_AS(degree_dependence_modules(wheel_refined, 3), contract_error);
}

TEST_CASE("nc closure") {
    // v isolated on side A
    std::mt19937 rng(1);
    ColoredGraph g = random_bipartite(rng, 4, 4, 0.0);
    CHECK(nc_closure(g, {0, 1, 2, 3}, {4, 5, 6, 7}, 0) == std::vector<int>{0});

    // identical neighborhoods collapse into one closure
    ColoredGraph twins(5, 2);
    twins.set_color(3, 1);
    twins.set_color(4, 1);
    twins.add_edge(0, 3);
    twins.add_edge(1, 3);
    twins.add_edge(2, 3);
    twins.add_edge(0, 4);
    twins.add_edge(1, 4);
    twins.add_edge(2, 4);
    auto closure = nc_closure(twins, {0, 1, 2}, {3, 4}, 0);
    CHECK(closure == std::vector<int>{0, 1, 2});
}

TEST_CASE("nc closures are nested and isomorphism invariant") {
    std::mt19937 rng(107);
    for (int trial = 0; trial < 60; ++trial) {
        int a = 3 + static_cast<int>(rng() % 3), b = 3 + static_cast<int>(rng() % 3);
        ColoredGraph g = random_bipartite(rng, a, b, 0.4);
        std::vector<int> side_a, side_b;
        for (int v = 0; v < a; ++v) side_a.push_back(v);
        for (int v = 0; v < b; ++v) side_b.push_back(a + v);

        std::vector<std::vector<int>> closures;
        for (int v : side_a) closures.push_back(nc_closure(g, side_a, side_b, v));
        for (size_t i = 0; i < closures.size(); ++i)
            for (size_t j = i + 1; j < closures.size(); ++j) {
                std::vector<int> inter;
                std::set_intersection(closures[i].begin(), closures[i].end(), closures[j].begin(),
                                      closures[j].end(), std::back_inserter(inter));
                bool nested = inter.empty() ||
                              std::includes(closures[i].begin(), closures[i].end(),
                                            closures[j].begin(), closures[j].end()) ||
                              std::includes(closures[j].begin(), closures[j].end(),
                                            closures[i].begin(), closures[i].end());
                CHECK(nested);
            }

        // invariance under relabeling doubles as an order-independence check
        Perm pi = random_perm(rng, g.size());
        ColoredGraph h = apply_permutation(g, pi.img);
        std::vector<int> ha, hb;
        for (int v : side_a) ha.push_back(pi(v));
        for (int v : side_b) hb.push_back(pi(v));
        for (int v : side_a) {
            auto image = nc_closure(h, ha, hb, pi(v));
            auto direct = nc_closure(g, side_a, side_b, v);
            std::vector<int> mapped;
            for (int x : direct) mapped.push_back(pi(x));
            std::sort(mapped.begin(), mapped.end());
            CHECK(image == mapped);
        }
    }
}

} // TEST_SUITE
