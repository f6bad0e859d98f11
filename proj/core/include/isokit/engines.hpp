#ifndef ISOKIT_ENGINES_HPP
#define ISOKIT_ENGINES_HPP

#include <cstdint>
#include <functional>
#include <vector>

#include "isokit/canon.hpp"
#include "isokit/graph.hpp"
#include "isokit/group.hpp"
#include "isokit/moddecomp.hpp"
#include "isokit/refine.hpp"

namespace isokit {

// Simulates a complete invariant within one run, given only an isomorphism
// decider: the first graph of every isomorphism class queried becomes the
// class representative. Total decider calls stay quadratic in the number of
// queries.
class InvariantSession {
public:
    using Decider = std::function<bool(const ColoredGraph&, const ColoredGraph&)>;

    explicit InvariantSession(Decider decider) : decider_(std::move(decider)) {}

    InvariantValue query(const ColoredGraph& g);
    std::uint64_t decider_calls() const { return calls_; }
    size_t representative_count() const { return representatives_.size(); }

private:
    Decider decider_;
    std::vector<ColoredGraph> representatives_;
    std::uint64_t calls_ = 0;
};

// Exact isomorphism for jointly-refined graphs of color valence at most c,
// extending an isomorphism coset class prefix by class prefix.
bool bounded_color_valence_iso(const ColoredGraph& g1, const ColoredGraph& g2, int c,
                               Budget* budget = nullptr);

// Exact automorphism group of a graph of generalized color valence at most
// c: small color classes are handled by the iterated stabilizer
// construction over degree-dependence module congruences, the rest by the
// lifted kernel.
PermutationGroup gen_color_valence_aut(const ColoredGraph& g, int c, Budget* budget = nullptr);

// Reduction of isomorphism to one automorphism computation on the combined
// graph (universal apexes, joint refinement, cross edges between dense
// class pairs) of generalized color valence at most 2c.
bool gen_color_valence_iso(const ColoredGraph& g1, const ColoredGraph& g2, int c,
                           Budget* budget = nullptr);

// Knobs for the class solvers. The proofs only assert that bounded
// constants exist; the concrete caps are ours.
struct ClassSolverConfig {
    int individualize_cap = 4; // double-star: largest individualization set
    int valence_cap = 8;       // double-star: accepted generalized valence
    int dominating_cap = 6;    // p5: largest dominating set searched
    bool allow_ir_fallback = true;
};

struct ClassSolverStats {
    bool used_fallback = false;
    int individualized = 0;
};

// (K_{1,s} u K_{1,s}, K_t)-free solver: individualization sets searched in
// lockstep on both graphs, then the generalized-color-valence engine.
bool double_star_kt_iso(const ColoredGraph& g1, const ColoredGraph& g2, int s, int t,
                        Budget* budget = nullptr, const ClassSolverConfig& config = {},
                        ClassSolverStats* stats = nullptr);

// (P5, K_t)-free solver: dominating set, refinement by adjacency, module
// components, recursion on clique number, quotient, bounded color valence.
bool p5_kt_iso(const ColoredGraph& g1, const ColoredGraph& g2, int t, Budget* budget = nullptr,
               const ClassSolverConfig& config = {});

// (H(1,b,0), K_s)-free solver: double-star-free inputs go to the
// double-star engine, the rest through the classical-functor decomposition
// invariant with the double-star engine on prime graphs.
bool h1b0_ks_iso(const ColoredGraph& g1, const ColoredGraph& g2, int b, int s,
                 Budget* budget = nullptr, const ClassSolverConfig& config = {});

// Tuple-ordered variant of refinement by adjacency: singleton colors and
// adjacency-pattern bits follow tuple positions, so corresponding tuples on
// two graphs land in one color space.
ColoredGraph refine_by_adjacency_tuple(const ColoredGraph& g, const std::vector<int>& tuple);

} // namespace isokit

#endif
