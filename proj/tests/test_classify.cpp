#include <doctest.h>

#include "isokit/classify.hpp"
#include "test_util.hpp"

using namespace isokit;
using namespace isokit::testutil;

namespace {

ColoredGraph units(std::initializer_list<GraphFamily> parts) {
    ColoredGraph out(0);
    for (const auto& f : parts) out = disjoint_union(out, build_named(f));
    return out;
}

Complexity status_of(const ColoredGraph& h1, const ColoredGraph& h2) {
    return classify(h1, h2).status;
}

} // namespace

TEST_SUITE("classifier") {

TEST_CASE("star forest recognition") {
    auto p5 = is_forest_of_subdivided_stars(build_named(GraphFamily::path(5)));
    REQUIRE(p5);
    CHECK(p5->components.size() == 1);
    CHECK(p5->isolated == 0);

    // K_{1,3} with one edge subdivided twice is the H(1,0,2,0) shape
    ColoredGraph sub = make_graph(6, {{0, 1}, {0, 2}, {0, 3}, {3, 4}, {4, 5}});
    auto shape = is_forest_of_subdivided_stars(sub);
    REQUIRE(shape);
    REQUIRE(shape->components.size() == 1);
    CHECK(shape->components[0].leaves_at_distance.at(1) == 2);
    CHECK(shape->components[0].leaves_at_distance.at(3) == 1);
    CHECK(brute_force_iso(shape->reconstruct(),
                          build_named(GraphFamily::subdivided_star({1, 0, 2, 0})))
              .has_value());

    CHECK(!is_forest_of_subdivided_stars(build_named(GraphFamily::cycle(4))));
    CHECK(!is_forest_of_subdivided_stars(units({GraphFamily::cycle(5), GraphFamily::path(3)})));

    // two branch vertices in one component
    ColoredGraph twobranch =
        make_graph(8, {{0, 1}, {0, 2}, {0, 3}, {3, 4}, {4, 5}, {4, 6}, {6, 7}});
    CHECK(!is_forest_of_subdivided_stars(twobranch));
}

TEST_CASE("shape reconstruction round trips") {
    std::mt19937 rng(157);
    for (int trial = 0; trial < 30; ++trial) {
        ColoredGraph h(0);
        int comps = 1 + static_cast<int>(rng() % 2);
        for (int i = 0; i < comps; ++i) {
            std::vector<int> a{1 + static_cast<int>(rng() % 2), static_cast<int>(rng() % 3),
                               static_cast<int>(rng() % 2)};
            h = disjoint_union(h, build_named(GraphFamily::subdivided_star(a)));
        }
        ColoredGraph shuffled_h = shuffled(rng, h);
        auto shape = is_forest_of_subdivided_stars(shuffled_h);
        REQUIRE(shape);
        CHECK(ir_iso(shape->reconstruct(), shuffled_h).has_value());
    }
}

TEST_CASE("spot table from the case analysis") {
    // the headline rows
    CHECK(status_of(units({GraphFamily::complete(2), GraphFamily::complete(2),
                           GraphFamily::independent(1)}),
                    build_named(GraphFamily::complete(4))) == Complexity::GIComplete);
    CHECK(status_of(build_named(GraphFamily::path(5)), build_named(GraphFamily::complete(6))) ==
          Complexity::PolyTime);
    CHECK(status_of(units({GraphFamily::biclique(1, 3), GraphFamily::biclique(1, 3)}),
                    build_named(GraphFamily::complete(5))) == Complexity::PolyTime);
    CHECK(status_of(build_named(GraphFamily::subdivided_star({1, 0, 2, 0})),
                    build_named(GraphFamily::complete(5))) == Complexity::GIComplete);
    CHECK(status_of(build_named(GraphFamily::cycle(5)), build_named(GraphFamily::cycle(7))) ==
          Complexity::GIComplete);

    // ten more hand-traced rows
    CHECK(status_of(build_named(GraphFamily::path(6)), build_named(GraphFamily::complete(4))) ==
          Complexity::GIComplete);
    CHECK(status_of(build_named(GraphFamily::subdivided_star({1, 0, 3, 0})),
                    build_named(GraphFamily::complete(4))) == Complexity::GIComplete);
    CHECK(status_of(units({GraphFamily::biclique(1, 2), GraphFamily::biclique(1, 2),
                           GraphFamily::independent(1)}),
                    build_named(GraphFamily::complete(3))) == Complexity::GIComplete);
    CHECK(status_of(units({GraphFamily::biclique(1, 4), GraphFamily::complete(2)}),
                    build_named(GraphFamily::complete(3))) == Complexity::PolyTime);
    CHECK(status_of(build_named(GraphFamily::subdivided_star({1, 4, 0})),
                    build_named(GraphFamily::complete(5))) == Complexity::PolyTime);
    CHECK(status_of(build_named(GraphFamily::path(4)), build_named(GraphFamily::complete(8))) ==
          Complexity::PolyTime);
    CHECK(status_of(units({GraphFamily::complete(2), GraphFamily::complete(2),
                           GraphFamily::complete(2)}),
                    build_named(GraphFamily::complete(4))) == Complexity::GIComplete);
    CHECK(status_of(units({GraphFamily::path(4), GraphFamily::independent(1)}),
                    build_named(GraphFamily::complete(5))) == Complexity::GIComplete);
    CHECK(status_of(build_named(GraphFamily::biclique(1, 3)), build_named(GraphFamily::complete(4))) ==
          Complexity::PolyTime);
    CHECK(status_of(build_named(GraphFamily::cycle(4)), build_named(GraphFamily::path(7))) ==
          Complexity::External);
}

TEST_CASE("verdicts carry citations") {
    Verdict v = classify(units({GraphFamily::complete(2), GraphFamily::complete(2),
                                GraphFamily::independent(1)}),
                         build_named(GraphFamily::complete(4)));
    REQUIRE(!v.trail.empty());
    CHECK(v.trail.back().cite.find("x-2k2k1-k4") != std::string::npos);

    Verdict p5v = classify(build_named(GraphFamily::path(5)), build_named(GraphFamily::complete(6)));
    CHECK(p5v.trail.back().cite.find("p5") != std::string::npos);

    Verdict ext = classify(build_named(GraphFamily::cycle(5)), build_named(GraphFamily::cycle(7)));
    CHECK(ext.trail.back().cite.find("KratschS12") != std::string::npos);
}

TEST_CASE("classification is symmetric") {
    std::mt19937 rng(163);
    std::vector<std::pair<ColoredGraph, ColoredGraph>> pairs;
    pairs.emplace_back(build_named(GraphFamily::path(5)), build_named(GraphFamily::complete(6)));
    pairs.emplace_back(build_named(GraphFamily::complete(4)),
                       units({GraphFamily::complete(2), GraphFamily::complete(2),
                              GraphFamily::independent(1)}));
    pairs.emplace_back(build_named(GraphFamily::cycle(5)), build_named(GraphFamily::cycle(7)));
    pairs.emplace_back(build_named(GraphFamily::complete(3)), build_named(GraphFamily::complete(5)));
    pairs.emplace_back(build_named(GraphFamily::biclique(1, 3)),
                       build_named(GraphFamily::complete(4)));
    for (auto& [a, b] : pairs) {
        Verdict ab = classify(a, b);
        Verdict ba = classify(b, a);
        CHECK(ab.status == ba.status);
        // trails agree up to the orientation marker
        auto strip = [](const Verdict& v) {
            std::vector<std::string> rules;
            for (const auto& step : v.trail)
                if (step.rule.rfind("orient", 0) != 0) rules.push_back(step.rule);
            return rules;
        };
        CHECK(strip(ab) == strip(ba));
    }
}

TEST_CASE("degenerate and open inputs") {
    CHECK_THROWS_AS(classify(ColoredGraph(0), build_named(GraphFamily::complete(3))), contract_error);
    CHECK(status_of(ColoredGraph(1), build_named(GraphFamily::cycle(9))) == Complexity::PolyTime);
    CHECK(status_of(build_named(GraphFamily::complete(2)), build_named(GraphFamily::complete(9))) ==
          Complexity::PolyTime);
    CHECK(status_of(build_named(GraphFamily::complete(3)), build_named(GraphFamily::complete(3))) ==
          Complexity::GIComplete);
    // (P4 u K1, K3): genuinely open in this analysis
    CHECK(status_of(units({GraphFamily::path(4), GraphFamily::independent(1)}),
                    build_named(GraphFamily::complete(3))) == Complexity::OpenFinite);
    // (H(1,0,2,0), K4): below the size where the reductions engage
    CHECK(status_of(build_named(GraphFamily::subdivided_star({1, 0, 2, 0})),
                    build_named(GraphFamily::complete(4))) == Complexity::OpenFinite);
}

} // TEST_SUITE
