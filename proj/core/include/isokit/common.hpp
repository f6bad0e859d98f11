#ifndef ISOKIT_COMMON_HPP
#define ISOKIT_COMMON_HPP

#include <cstdint>
#include <stdexcept>
#include <string>

namespace isokit {

// Thrown when an input violates a documented precondition. The CLI maps
// this to exit code 2.
class contract_error : public std::invalid_argument {
public:
    explicit contract_error(const std::string& what) : std::invalid_argument(what) {}
};

// Thrown when a backtracking search runs out of its node budget. Callers
// that catch it must treat the computation as unanswered, never as "no".
class budget_exhausted : public std::runtime_error {
public:
    explicit budget_exhausted(const std::string& where)
        : std::runtime_error("search budget exhausted in " + where) {}
};

// Cooperative node-count budget shared by the long-running searches.
// A default-constructed budget is effectively unlimited.
class Budget {
public:
    Budget() = default;
    explicit Budget(std::uint64_t nodes) : remaining_(nodes) {}

    void tick(const char* where) {
        ++used_;
        if (remaining_ == 0) throw budget_exhausted(where);
        --remaining_;
    }
    std::uint64_t used() const { return used_; }

private:
    std::uint64_t remaining_ = UINT64_MAX;
    std::uint64_t used_ = 0;
};

inline constexpr std::uint64_t kDefaultBudget = 200'000'000;

// Canonical byte string; equal bytes certify isomorphic inputs for whatever
// produced the value (a complete invariant, or a session-local simulation).
struct InvariantValue {
    std::string bytes;
    auto operator<=>(const InvariantValue&) const = default;
};

} // namespace isokit

#endif
