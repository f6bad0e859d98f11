#ifndef ISOKIT_CANON_HPP
#define ISOKIT_CANON_HPP

#include <optional>

#include "isokit/graph.hpp"
#include "isokit/group.hpp"
#include "isokit/refine.hpp"

namespace isokit {

// Isomorphism coset from g1 to g2: a representative together with Aut(g1).
// Every element representative * a is an isomorphism g1 -> g2.
struct IsoCoset {
    std::optional<Perm> representative;
    PermutationGroup automorphisms;

    bool empty() const { return !representative.has_value(); }
};

// Individualization-refinement search. Colors are respected throughout;
// graphs compared across calls must live in a shared color space.
struct CanonicalResult {
    InvariantValue value;
    Perm labeling; // vertex -> canonical position
};

CanonicalResult canonical_labeling(const ColoredGraph& g, Budget* budget = nullptr);
InvariantValue canonical_form(const ColoredGraph& g, Budget* budget = nullptr);

PermutationGroup automorphism_group(const ColoredGraph& g, Budget* budget = nullptr);

std::optional<Perm> ir_iso(const ColoredGraph& g1, const ColoredGraph& g2, Budget* budget = nullptr);
IsoCoset iso_coset(const ColoredGraph& g1, const ColoredGraph& g2, Budget* budget = nullptr);

// Exhaustive backtracking without refinement; the universal test oracle.
// Guarded to small sizes unless allow_large is set.
std::optional<Perm> brute_force_iso(const ColoredGraph& g1, const ColoredGraph& g2,
                                    Budget* budget = nullptr, bool allow_large = false);

// Enumeration-based automorphism count over the same backtracking; oracle
// for group sizes on small graphs.
std::uint64_t brute_force_automorphism_count(const ColoredGraph& g, Budget* budget = nullptr,
                                             bool allow_large = false);

bool is_isomorphism(const ColoredGraph& g1, const ColoredGraph& g2, const Perm& p);

} // namespace isokit

#endif
