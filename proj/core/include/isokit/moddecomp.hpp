#ifndef ISOKIT_MODDECOMP_HPP
#define ISOKIT_MODDECOMP_HPP

#include <functional>
#include <vector>

#include "isokit/graph.hpp"

namespace isokit {

// Disjoint modules covering (a subset of) the vertex set, with a
// non-triviality flag per module.
struct ModuleFamily {
    std::vector<std::vector<int>> modules; // sorted vertex lists
    std::vector<bool> nontrivial;

    size_t size() const { return modules.size(); }
    bool any_nontrivial() const;
};

// Every outside vertex sees same-colored members of m uniformly.
bool is_colored_module(const ColoredGraph& g, const std::vector<int>& m);

// Contains two vertices no outside vertex distinguishes.
bool is_nontrivial_module(const ColoredGraph& g, const std::vector<int>& m);

using DecompositionFunctor = std::function<ModuleFamily(const ColoredGraph&)>;

// Components / co-components / maximal proper modules of the underlying
// uncolored graph, computed by the naive pairwise-splitter closure.
ModuleFamily classical_functor(const ColoredGraph& g);

// Replacement: kept vertices of a module plus their (possibly new) colors.
struct Replacement {
    std::vector<int> kept;       // subset of the module
    std::vector<int> kept_color; // parallel to kept
};

using ReplacementOperator = std::function<Replacement(const ColoredGraph&, const std::vector<int>&)>;

// Keeps the first vertex of each outside-adjacency type, colors unchanged.
Replacement keep_one_per_adjacency_type(const ColoredGraph& g, const std::vector<int>& m);

using ModuleInvariant = std::function<InvariantValue(const ColoredGraph&)>;

// Simultaneous replacement of the non-trivial modules followed by the
// recoloring of every remaining vertex with the triple (replacement color,
// colors of same-adjacency-type module mates, module invariant), interned
// through the session table.
ColoredGraph quotient(const ColoredGraph& g, const ModuleFamily& fam, const ReplacementOperator& rep,
                      const ModuleInvariant& module_invariant, ColorTable& table);

// The recursive complete invariant over a simple decomposition functor with
// a reversible replacement operator. prime_inv supplies the invariant for
// functor-prime colored graphs; leaf_count, when given, accumulates the
// number of prime leaves of the recursion tree.
InvariantValue decomposition_invariant(const ColoredGraph& g, const DecompositionFunctor& functor,
                                       const ReplacementOperator& rep, const ModuleInvariant& prime_inv,
                                       ColorTable& table, int* leaf_count = nullptr);

enum class ReversibilityCase { OneTrivial, Singletons, ConnectedNonAdjacent, Unknown };

// Which sufficient reversibility condition the (family, replacement) pair
// satisfies; pipelines require a non-Unknown answer before trusting
// decomposition_invariant.
ReversibilityCase reversibility_case(const ColoredGraph& g, const ModuleFamily& fam,
                                     const ReplacementOperator& rep);

// Minimal c-degree dependence modules of a stable colored graph of color
// valence at most c without color classes of size at most 2c. The violated
// precondition is named in the error.
ModuleFamily degree_dependence_modules(const ColoredGraph& g, int c);

// Fixpoint closure N_c[v] on side A of a bipartite graph: grow S by
// vertices sharing a neighbor with S whose neighborhood does not properly
// contain N(S).
std::vector<int> nc_closure(const ColoredGraph& g, const std::vector<int>& side_a,
                            const std::vector<int>& side_b, int v);

} // namespace isokit

#endif
