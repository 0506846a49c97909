#pragma once

#include <optional>
#include <stdexcept>
#include <string>

namespace posetpack {

/// Malformed input: bad labels, cycles, violated preconditions.
class InvalidInput : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A documented size cap (ground set, poset size, table size) was exceeded.
class CapExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A search ran out of its explicit node or time budget.  Carries whatever
/// bounds were established before giving up.
class BudgetExceeded : public std::runtime_error {
public:
    BudgetExceeded(const std::string& what, std::optional<long long> lower,
                   std::optional<long long> upper)
        : std::runtime_error(what), lower_(lower), upper_(upper) {}

    [[nodiscard]] std::optional<long long> lower() const { return lower_; }
    [[nodiscard]] std::optional<long long> upper() const { return upper_; }

private:
    std::optional<long long> lower_;
    std::optional<long long> upper_;
};

}  // namespace posetpack
