#pragma once

#include <stdexcept>
#include <string>

namespace betaforge {

struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Invalid subdivision polynomial input (negative, all-zero, or trivial x^i - 1).
struct invalid_polynomial_error : error {
    using error::error;
};

// Sturm counting was asked to evaluate at an endpoint where the polynomial vanishes.
struct endpoint_root_error : error {
    using error::error;
};

struct context_mismatch_error : error {
    using error::error;
};

struct division_by_zero_error : error {
    using error::error;
};

struct dimension_mismatch_error : error {
    using error::error;
};

struct enumeration_cap_error : error {
    using error::error;
};

struct no_cycle_error : error {
    using error::error;
};

struct unsupported_subring_error : error {
    using error::error;
};

struct invalid_arrangement_error : error {
    using error::error;
};

// A partition admits no realizing tree within the given depth bound. Carries the
// leftmost breakpoint that could not be realized, formatted as a coefficient vector.
struct unrepresentable_error : error {
    explicit unrepresentable_error(const std::string& what, std::string breakpoint)
        : error(what), offending_breakpoint(std::move(breakpoint)) {}
    std::string offending_breakpoint;
};

struct refinement_budget_error : error {
    using error::error;
};

struct no_common_refinement_error : error {
    using error::error;
};

struct indivisible_leg_error : error {
    using error::error;
};

struct not_tree_pair_definable_error : error {
    using error::error;
};

struct parse_error : error {
    using error::error;
};

} // namespace betaforge
