#ifndef ISOKIT_REFINE_HPP
#define ISOKIT_REFINE_HPP

#include <utility>
#include <vector>

#include "isokit/graph.hpp"

namespace isokit {

// Stable coloring produced by naive vertex refinement. Class ids double as
// color ids; classes are listed in the canonical order derived from sorting
// (previous color, neighbor-color signature) lexicographically, which makes
// the ids deterministic and isomorphism invariant.
struct StableColoring {
    std::vector<int> color;              // per-vertex class id
    std::vector<std::vector<int>> cells; // sorted vertex lists, index = class id

    // d(C, C'): neighbors any C-vertex has in C'. Stability means this is
    // well defined.
    std::vector<std::vector<int>> class_degree;

    int num_classes() const { return static_cast<int>(cells.size()); }
    bool discrete() const { return cells.size() == color.size(); }

    // The graph recolored by the stable class ids.
    ColoredGraph recolored(const ColoredGraph& g) const;
};

StableColoring naive_refine(const ColoredGraph& g);

// Refinement from an explicit start coloring (class ids, not necessarily
// dense). Used by the search engines, which split cells themselves.
StableColoring refine_from(const ColoredGraph& g, std::vector<int> start);

bool is_stable(const ColoredGraph& g);

// Refines the disjoint union and projects back, so the two colorings share
// one color space. Both outputs carry the joint color_count.
std::pair<ColoredGraph, ColoredGraph> joint_refine(const ColoredGraph& g1, const ColoredGraph& g2);

// Gives v a fresh color derived from its old color plus the graph's color
// bound, so graphs refined into a shared color space individualize
// same-colored vertices identically.
ColoredGraph individualize(const ColoredGraph& g, int v);

// Individualizes a tuple position by position; the i-th vertex of both
// tuples receives the same fresh color in the two-graph pipelines.
ColoredGraph individualize_tuple(const ColoredGraph& g, const std::vector<int>& vs);

// Singleton colors for S; outside S the new color is (old color, adjacency
// pattern towards S). Deliberately not followed by naive refinement.
ColoredGraph refine_by_adjacency(const ColoredGraph& g, const std::vector<int>& s);

// max over (v, C) of min(|N(v) cap C - v|, |C - N(v) - v|).
int color_valence(const ColoredGraph& g);

// Generalized color valence: delete all color classes of size <= k, then
// test color valence <= k on what remains.
bool is_gen_valence_at_most(const ColoredGraph& g, int k);
int min_gen_valence(const ColoredGraph& g);

} // namespace isokit

#endif
