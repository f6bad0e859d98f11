#ifndef ISOKIT_CLASSIFY_HPP
#define ISOKIT_CLASSIFY_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "isokit/graph.hpp"

namespace isokit {

enum class Complexity { PolyTime, GIComplete, External, OpenFinite };

std::string to_string(Complexity c);

struct TrailStep {
    std::string rule; // executable test that fired
    std::string cite; // solver / reduction in this repo, or literature
};

// Classification outcome for the class of graphs excluding both inputs.
// PolyTime / GIComplete carry the deciding rule chain; External marks cases
// resolved only relative to the literature; OpenFinite marks the finitely
// many shapes the case analysis leaves unresolved.
struct Verdict {
    Complexity status;
    std::vector<TrailStep> trail;
};

// One subdivided-star component: leaves_at_distance[d] leaves at distance d
// from the center (d >= 1).
struct StarComponentShape {
    std::map<int, int> leaves_at_distance;

    int max_distance() const;
    int center_degree() const;
    std::vector<int> star_parameters() const; // a_t ... a_1, a_0 = 0
};

struct StarForestShape {
    std::vector<StarComponentShape> components; // components with >= 2 vertices
    int isolated = 0;

    ColoredGraph reconstruct() const;
};

// Parses a forest of subdivided stars: every component acyclic with at most
// one vertex of degree >= 3. Colors are ignored.
std::optional<StarForestShape> is_forest_of_subdivided_stars(const ColoredGraph& h);

Verdict classify(const ColoredGraph& h1, const ColoredGraph& h2);

} // namespace isokit

#endif
