#ifndef ISOKIT_ENCODING_HPP
#define ISOKIT_ENCODING_HPP

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "isokit/graph.hpp"

namespace isokit {

// Exception budget: a natural number or infinity. Infinity is a flag, never
// a large integer, so budget arithmetic cannot overflow silently.
struct ExceptionBudget {
    bool infinite = false;
    long long value = 0;

    static ExceptionBudget inf() { return {true, 0}; }
    static ExceptionBudget of(long long v) {
        if (v < 0) throw contract_error("exception budget must be non-negative");
        return {false, v};
    }
    bool operator==(const ExceptionBudget&) const = default;
    bool at_least(long long v) const { return infinite || value >= v; }
};

// Labeled generalized graph (J, L, LN). L assigns A/N to ordered label
// pairs; LN bounds the number of adjacency exceptions per vertex.
class Encoding {
public:
    Encoding() = default;
    explicit Encoding(int labels);

    int labels() const { return k_; }
    char L(int i, int j) const { return l_[static_cast<size_t>(i * k_ + j)]; }
    const ExceptionBudget& LN(int i, int j) const { return ln_[static_cast<size_t>(i * k_ + j)]; }
    void set(int i, int j, char l, ExceptionBudget ln);
    void set_L(int i, int j, char l);
    void set_LN(int i, int j, ExceptionBudget ln);

    bool symmetric_L() const;
    bool all_finite() const;
    long long max_finite_LN() const;

    // Encoding on a label subset, preserving subset order.
    Encoding restricted(const std::vector<int>& keep) const;

    bool operator==(const Encoding&) const = default;

private:
    int k_ = 0;
    std::vector<char> l_;
    std::vector<ExceptionBudget> ln_;
};

using EncodingMap = std::vector<int>; // vertex -> label

struct PathWitness {
    std::vector<int> labels; // p_1 ... p_t, t >= 2
};

// True iff phi satisfies both budget conditions of the encoded-class
// definition.
bool validate_encoding_map(const ColoredGraph& g, const Encoding& enc, const EncodingMap& phi);

// Exhaustive backtracking search for a valid map; nullopt is an absence
// certificate. search_nodes, when given, receives the node count.
std::optional<EncodingMap> find_encoding_map(const ColoredGraph& g, const Encoding& enc,
                                             Budget* budget = nullptr,
                                             std::uint64_t* search_nodes = nullptr);

bool class_excludes(const Encoding& enc, const ColoredGraph& h, Budget* budget = nullptr);

// Shortest label path (p_1..p_t), no repeats, with LN(p1,p2) infinite,
// LN(pt,pt-1) >= 2 and >= 1 along the path in both directions. Requires L
// symmetric.
std::optional<PathWitness> is_simple_path_encoding(const Encoding& enc);

// Class-C membership for the hardness reduction: m >= 5n, min degree >= 4
// and min co-degree >= 4.
bool class_c_check(const ColoredGraph& g);

// Iso-invariant augmentation into class C: disjoint I5 followed by rounds
// of six universal vertices. A graph already in C is returned unchanged.
ColoredGraph normalize_for_reduction(const ColoredGraph& g);

// The gadget reduction along a simple-path witness. The constructed label
// map is re-validated on the output.
ColoredGraph reduce_into_class(const ColoredGraph& g, const Encoding& enc, const PathWitness& w);

enum class BoundedLnAnswer { Iso, NonIso, Undetermined };

// Isomorphism for classes with all-finite exception budgets. Correct
// whenever at least one input is encodable; Undetermined only when neither
// is.
BoundedLnAnswer bounded_ln_iso(const ColoredGraph& g1, const ColoredGraph& g2, const Encoding& enc,
                               Budget* budget = nullptr);

struct NamedEncoding {
    std::string name;
    Encoding enc;
};

// The five built-in fixtures used by the exclusion suites.
const std::vector<NamedEncoding>& builtin_encodings();
const Encoding* builtin_encoding(const std::string& name);

// File format: `labels k` then k^2 lines `lab <i> <j> <A|N> <budget|inf>`.
Encoding read_encoding(std::istream& in);
Encoding read_encoding_file(const std::string& path);
void write_encoding(std::ostream& out, const Encoding& enc);

} // namespace isokit

#endif
