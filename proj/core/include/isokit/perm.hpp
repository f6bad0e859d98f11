#ifndef ISOKIT_PERM_HPP
#define ISOKIT_PERM_HPP

#include <string>
#include <vector>

#include "isokit/common.hpp"

namespace isokit {

// Permutation of {0..n-1} stored as its image array.
struct Perm {
    std::vector<int> img;

    Perm() = default;
    explicit Perm(int degree) : img(static_cast<size_t>(degree)) {
        for (int i = 0; i < degree; ++i) img[static_cast<size_t>(i)] = i;
    }
    explicit Perm(std::vector<int> image) : img(std::move(image)) {}

    int degree() const { return static_cast<int>(img.size()); }
    int operator()(int p) const { return img[static_cast<size_t>(p)]; }
    bool is_identity() const {
        for (int i = 0; i < degree(); ++i)
            if (img[static_cast<size_t>(i)] != i) return false;
        return true;
    }
    bool operator==(const Perm& other) const = default;
    bool operator<(const Perm& other) const { return img < other.img; }

    bool valid() const;
};

// (a * b)(x) = a(b(x))
Perm compose(const Perm& a, const Perm& b);
Perm inverse(const Perm& a);

std::string to_cycle_string(const Perm& p);
Perm perm_from_cycle_string(const std::string& text, int degree);

} // namespace isokit

#endif
