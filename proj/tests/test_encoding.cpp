#include <doctest.h>

#include <sstream>

#include "isokit/encoding.hpp"
#include "test_util.hpp"

using namespace isokit;
using namespace isokit::testutil;

namespace {

// exhaustive oracle over all |J|^n maps
bool encodable_oracle(const ColoredGraph& g, const Encoding& enc) {
    int k = enc.labels();
    if (g.size() == 0) return true;
    if (k == 0) return false;
    std::vector<int> phi(static_cast<size_t>(g.size()), 0);
    while (true) {
        if (validate_encoding_map(g, enc, phi)) return true;
        int pos = 0;
        while (pos < g.size()) {
            if (++phi[static_cast<size_t>(pos)] < k) break;
            phi[static_cast<size_t>(pos)] = 0;
            ++pos;
        }
        if (pos == g.size()) return false;
    }
}

Encoding random_encoding(std::mt19937& rng, int k, bool allow_inf) {
    Encoding enc(k);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) {
            char l = rng() % 2 ? 'A' : 'N';
            int roll = static_cast<int>(rng() % (allow_inf ? 4 : 3));
            ExceptionBudget b = roll == 3 ? ExceptionBudget::inf() : ExceptionBudget::of(roll);
            enc.set(i, j, l, b);
        }
    return enc;
}

ColoredGraph two_k2_k1() {
    return disjoint_union(
        disjoint_union(build_named(GraphFamily::complete(2)), build_named(GraphFamily::complete(2))),
        ColoredGraph(1));
}

} // namespace

TEST_SUITE("encodings") {

TEST_CASE("builtin fixtures carry the documented tables") {
    // budgets run inf,1 / 1,2 along the label path in every fixture
    const Encoding* fig = builtin_encoding("x-2k2k1-k4");
    REQUIRE(fig);
    CHECK(fig->labels() == 3);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) CHECK(fig->L(i, j) == (i == j ? 'N' : 'A'));
    CHECK(fig->LN(0, 1).infinite);
    CHECK(fig->LN(1, 0) == ExceptionBudget::of(1));
    CHECK(fig->LN(1, 2) == ExceptionBudget::of(1));
    CHECK(fig->LN(2, 1) == ExceptionBudget::of(2));
    CHECK(fig->LN(0, 0) == ExceptionBudget::of(0));
    CHECK(fig->LN(2, 0) == ExceptionBudget::of(0));

    const Encoding* second = builtin_encoding("x-p6-p4p2-k4");
    REQUIRE(second);
    CHECK(second->L(0, 2) == 'A');
    CHECK(second->L(2, 0) == 'A');
    CHECK(second->L(0, 1) == 'N');
    CHECK(second->L(1, 2) == 'N');
    CHECK(second->L(0, 0) == 'N');

    const Encoding* third = builtin_encoding("x-h1030-k4");
    REQUIRE(third);
    CHECK(third->L(1, 2) == 'A');
    CHECK(third->L(0, 2) == 'A');
    CHECK(third->L(0, 1) == 'N');

    const Encoding* bip = builtin_encoding("x-bip-2p3k1");
    REQUIRE(bip);
    CHECK(bip->labels() == 4);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            bool cycle_pair = (i + 1 == j || j + 1 == i) || (i == 0 && j == 3) || (i == 3 && j == 0);
            CHECK(bip->L(i, j) == (i != j && cycle_pair ? 'A' : 'N'));
        }
    CHECK(bip->LN(0, 1).infinite);
    CHECK(bip->LN(3, 2) == ExceptionBudget::of(2));
    CHECK(bip->LN(2, 3) == ExceptionBudget::of(1));

    const Encoding* h1020 = builtin_encoding("x-h1020-k5");
    REQUIRE(h1020);
    CHECK(h1020->L(0, 1) == 'N');
    CHECK(h1020->L(2, 3) == 'N');
    CHECK(h1020->L(0, 2) == 'A');
    CHECK(h1020->L(0, 3) == 'A');
    CHECK(h1020->L(1, 2) == 'A');
    CHECK(h1020->L(1, 3) == 'A');
    CHECK(h1020->L(1, 1) == 'N');
}

TEST_CASE("encoding maps on the first fixture") {
    const Encoding& enc = *builtin_encoding("x-2k2k1-k4");
    CHECK(!find_encoding_map(build_named(GraphFamily::complete(4)), enc));
    CHECK(!find_encoding_map(two_k2_k1(), enc));
    auto k3_map = find_encoding_map(build_named(GraphFamily::complete(3)), enc);
    REQUIRE(k3_map);
    CHECK(validate_encoding_map(build_named(GraphFamily::complete(3)), enc, *k3_map));
    CHECK(encodable_oracle(build_named(GraphFamily::complete(3)), enc));
}

TEST_CASE("paper exclusion table") {
    auto check_excluded = [](const char* name, const ColoredGraph& h) {
        const Encoding* enc = builtin_encoding(name);
        REQUIRE(enc);
        CHECK(class_excludes(*enc, h));
    };
    check_excluded("x-2k2k1-k4", two_k2_k1());
    check_excluded("x-2k2k1-k4", build_named(GraphFamily::complete(4)));
    check_excluded("x-p6-p4p2-k4", build_named(GraphFamily::path(6)));
    check_excluded("x-p6-p4p2-k4",
                   disjoint_union(build_named(GraphFamily::path(4)), build_named(GraphFamily::path(2))));
    check_excluded("x-p6-p4p2-k4", build_named(GraphFamily::complete(4)));
    check_excluded("x-h1030-k4", build_named(GraphFamily::subdivided_star({1, 0, 3, 0})));
    check_excluded("x-h1030-k4", build_named(GraphFamily::complete(4)));
    check_excluded("x-bip-2p3k1",
                   disjoint_union(disjoint_union(build_named(GraphFamily::path(3)),
                                                 build_named(GraphFamily::path(3))),
                                  ColoredGraph(1)));
    check_excluded("x-h1020-k5", build_named(GraphFamily::subdivided_star({1, 0, 2, 0})));
    check_excluded("x-h1020-k5", build_named(GraphFamily::complete(5)));
}

TEST_CASE("search agrees with the exhaustive map oracle") {
    std::mt19937 rng(67);
    for (int trial = 0; trial < 60; ++trial) {
        int k = 2 + static_cast<int>(rng() % 2);
        Encoding enc = random_encoding(rng, k, true);
        ColoredGraph g = random_graph(rng, 3 + static_cast<int>(rng() % 4), 0.5);
        auto found = find_encoding_map(g, enc);
        CHECK(found.has_value() == encodable_oracle(g, enc));
        if (found) CHECK(validate_encoding_map(g, enc, *found));
    }
    for (const auto& ne : builtin_encodings()) {
        for (int trial = 0; trial < 10; ++trial) {
            ColoredGraph g = random_graph(rng, 5, 0.4);
            CHECK(find_encoding_map(g, ne.enc).has_value() == encodable_oracle(g, ne.enc));
        }
    }
}

TEST_CASE("simple path witnesses") {
    auto w = is_simple_path_encoding(*builtin_encoding("x-2k2k1-k4"));
    REQUIRE(w);
    CHECK(w->labels == std::vector<int>{0, 1, 2});

    Encoding zero(3);
    CHECK(!is_simple_path_encoding(zero));

    auto wb = is_simple_path_encoding(*builtin_encoding("x-bip-2p3k1"));
    REQUIRE(wb);
    CHECK(wb->labels == std::vector<int>{0, 1, 2, 3});

    auto w5 = is_simple_path_encoding(*builtin_encoding("x-h1020-k5"));
    REQUIRE(w5);
    CHECK(w5->labels == std::vector<int>{0, 1, 2, 3});

    Encoding asym(2);
    asym.set(0, 1, 'A', ExceptionBudget::inf());
    asym.set(1, 0, 'N', ExceptionBudget::of(2));
    CHECK(!is_simple_path_encoding(asym)); // L not symmetric
}

TEST_CASE("normalization reaches class C and fixes class-C graphs") {
    ColoredGraph i5(5);
    ColoredGraph n5 = normalize_for_reduction(i5);
    CHECK(class_c_check(n5));

    // a graph already in class C stays untouched
    ColoredGraph dense = n5;
    CHECK(normalize_for_reduction(dense) == dense);

    std::mt19937 rng(71);
    for (int trial = 0; trial < 10; ++trial) {
        ColoredGraph g = random_graph(rng, 4 + static_cast<int>(rng() % 4), 0.5);
        CHECK(class_c_check(normalize_for_reduction(g)));
    }
}

TEST_CASE("normalization is isomorphism faithful on small pairs") {
    std::mt19937 rng(73);
    for (int trial = 0; trial < 12; ++trial) {
        int n = 4 + static_cast<int>(rng() % 4);
        ColoredGraph g1 = random_graph(rng, n, 0.5);
        ColoredGraph g2 = trial % 2 ? shuffled(rng, g1) : random_graph(rng, n, 0.5);
        bool iso_in = brute_force_iso(g1, g2).has_value();
        bool iso_out = ir_iso(normalize_for_reduction(g1), normalize_for_reduction(g2)).has_value();
        CHECK(iso_in == iso_out);
    }
}

TEST_CASE("reduction output sizes and constructed map") {
    const Encoding& enc = *builtin_encoding("x-2k2k1-k4");
    PathWitness w = *is_simple_path_encoding(enc);
    std::mt19937 rng(79);
    for (int trial = 0; trial < 5; ++trial) {
        ColoredGraph g = normalize_for_reduction(random_graph(rng, 5, 0.5));
        int n = g.size(), m = g.edge_count();
        ColoredGraph reduced = reduce_into_class(g, enc, w); // validates its own map
        CHECK(reduced.size() == n + m + 2 * m * (static_cast<int>(w.labels.size()) - 2));
    }
}

TEST_CASE("reduced graphs are encodable, found by full search") {
    const Encoding& enc = *builtin_encoding("x-2k2k1-k4");
    PathWitness w = *is_simple_path_encoding(enc);
    ColoredGraph g = normalize_for_reduction(build_named(GraphFamily::complete(5)));
    ColoredGraph reduced = reduce_into_class(g, enc, w);
    Budget budget(20'000'000);
    auto phi = find_encoding_map(reduced, enc, &budget);
    REQUIRE(phi);
    CHECK(validate_encoding_map(reduced, enc, *phi));
}

TEST_CASE("reduction preserves and reflects isomorphism on samples") {
    const Encoding& enc = *builtin_encoding("x-2k2k1-k4");
    PathWitness w = *is_simple_path_encoding(enc);
    std::mt19937 rng(83);
    for (int trial = 0; trial < 6; ++trial) {
        int n = 4 + static_cast<int>(rng() % 3);
        ColoredGraph a = random_graph(rng, n, 0.5);
        ColoredGraph b = trial % 2 ? shuffled(rng, a) : random_graph(rng, n, 0.5);
        bool in_iso = brute_force_iso(a, b).has_value();
        ColoredGraph ra = reduce_into_class(normalize_for_reduction(a), enc, w);
        ColoredGraph rb = reduce_into_class(normalize_for_reduction(b), enc, w);
        CHECK(ir_iso(ra, rb).has_value() == in_iso);
    }
}

TEST_CASE("encoding file format round trip") {
    for (const auto& ne : builtin_encodings()) {
        std::ostringstream out;
        write_encoding(out, ne.enc);
        std::istringstream in(out.str());
        Encoding back = read_encoding(in);
        CHECK(back == ne.enc);
    }
    std::istringstream bad("labels 2\nlab 0 0 A 0\n");
    CHECK_THROWS_AS(read_encoding(bad), contract_error);
}

TEST_CASE("bounded ln isomorphism: single-label classes vs brute force") {
    std::mt19937 rng(89);
    for (char l : {'N', 'A'}) {
        Encoding enc(1);
        enc.set(0, 0, l, ExceptionBudget::of(2));
        int decided = 0;
        for (int trial = 0; trial < 60 && decided < 25; ++trial) {
            int n = 2 + static_cast<int>(rng() % 5);
            ColoredGraph g1 = random_graph(rng, n, l == 'N' ? 0.3 : 0.7);
            ColoredGraph g2 = trial % 2 ? shuffled(rng, g1) : random_graph(rng, n, l == 'N' ? 0.3 : 0.7);
            BoundedLnAnswer answer = bounded_ln_iso(g1, g2, enc);
            if (answer == BoundedLnAnswer::Undetermined) {
                CHECK(!find_encoding_map(g1, enc));
                CHECK(!find_encoding_map(g2, enc));
                continue;
            }
            ++decided;
            bool oracle = brute_force_iso(g1, g2).has_value();
            CHECK((answer == BoundedLnAnswer::Iso) == oracle);
        }
        CHECK(decided >= 10);
    }
}

TEST_CASE("bounded ln isomorphism: identical graphs and undetermined inputs") {
    Encoding enc(1);
    enc.set(0, 0, 'N', ExceptionBudget::of(2));
    ColoredGraph path = build_named(GraphFamily::path(6));
    CHECK(bounded_ln_iso(path, path, enc) == BoundedLnAnswer::Iso);

    ColoredGraph star = build_named(GraphFamily::biclique(1, 5));
    CHECK(bounded_ln_iso(star, star, enc) == BoundedLnAnswer::Undetermined);

    Encoding infinite(1);
    infinite.set(0, 0, 'N', ExceptionBudget::inf());
    CHECK_THROWS_AS(bounded_ln_iso(path, path, infinite), contract_error);
}

TEST_CASE("bounded ln isomorphism covers bounded-valence colorings") {
    // graphs built from c classes with valence <= c, tested through the
    // matching two-label encoding
    std::mt19937 rng(97);
    Encoding enc(2);
    enc.set(0, 0, 'N', ExceptionBudget::of(2));
    enc.set(1, 1, 'N', ExceptionBudget::of(2));
    enc.set(0, 1, 'N', ExceptionBudget::of(2));
    enc.set(1, 0, 'N', ExceptionBudget::of(2));
    int decided = 0;
    for (int trial = 0; trial < 50 && decided < 15; ++trial) {
        int n = 4 + static_cast<int>(rng() % 3);
        ColoredGraph g1 = random_graph(rng, n, 0.25);
        ColoredGraph g2 = trial % 2 ? shuffled(rng, g1) : random_graph(rng, n, 0.25);
        BoundedLnAnswer answer = bounded_ln_iso(g1, g2, enc);
        if (answer == BoundedLnAnswer::Undetermined) continue;
        ++decided;
        CHECK((answer == BoundedLnAnswer::Iso) == brute_force_iso(g1, g2).has_value());
    }
    CHECK(decided >= 8);
}

} // TEST_SUITE
