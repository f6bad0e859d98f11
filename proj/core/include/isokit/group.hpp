#ifndef ISOKIT_GROUP_HPP
#define ISOKIT_GROUP_HPP

#include <boost/multiprecision/cpp_int.hpp>
#include <optional>
#include <vector>

#include "isokit/perm.hpp"

namespace isokit {

using BigInt = boost::multiprecision::cpp_int;

// Permutation group with a base and strong generating set built by the
// deterministic Schreier-Sims procedure. Membership and order are exact.
class PermutationGroup {
public:
    explicit PermutationGroup(int degree) : degree_(degree) {}
    static PermutationGroup from_generators(int degree, const std::vector<Perm>& generators);

    int degree() const { return degree_; }
    const std::vector<Perm>& generators() const { return generators_; }
    const std::vector<int>& base() const { return base_; }
    const std::vector<Perm>& strong_generators() const { return strong_; }

    BigInt order() const;
    bool contains(const Perm& p) const;
    bool is_trivial() const { return base_.empty(); }

    std::vector<int> orbit(int point) const;

    // All orbits of the natural action, sorted.
    std::vector<std::vector<int>> orbits() const;

    // {g in G : g(S) = S}, by backtracking over the stabilizer chain.
    PermutationGroup set_stabilizer(const std::vector<int>& s) const;

    // Subgroup preserving point_color setwise on every color.
    PermutationGroup color_stabilizer(const std::vector<int>& point_color) const;

    // Some element mapping `from` to `to` within the orbit, if one exists.
    std::optional<Perm> transporter(int from, int to) const;

private:
    struct Level {
        int point = -1;
        // transversal[p] = index into words of an element mapping point -> p,
        // or -1 when p is outside the orbit.
        std::vector<int> transversal;
        std::vector<Perm> words;
        std::vector<Perm> gens; // strong generators fixing the base prefix
    };

    void rebuild();
    std::optional<Perm> find_violation() const;
    Perm partial_strip(const Perm& p) const;
    Perm transversal_element(size_t level, int point) const;
    std::optional<Perm> strip(const Perm& p) const;
    void stabilizer_descend(size_t level, const Perm& word, const std::vector<char>& in_s,
                            PermutationGroup& found) const;

    int degree_;
    std::vector<Perm> generators_;
    std::vector<Perm> strong_;
    std::vector<int> base_;
    std::vector<Level> levels_;
};

// Exhaustive closure of a generator list; test oracle for small degrees.
std::vector<Perm> brute_force_closure(int degree, const std::vector<Perm>& generators,
                                      size_t limit = 2'000'000);

} // namespace isokit

#endif
