#pragma once

#include <optional>
#include <string>
#include <vector>

#include "betaforge/field.hpp"

namespace betaforge {

/// Ordered leg lengths of one caret. For a context with polynomial
/// sum a_i x^i - 1 the leg multiset holds exactly a_i legs of length i;
/// a leg of length L subdivides off a child cell of relative length beta^L.
struct CaretShape {
    std::vector<unsigned> legs;

    size_t leg_count() const { return legs.size(); }
    bool operator==(const CaretShape& rhs) const { return legs == rhs.legs; }
    bool operator<(const CaretShape& rhs) const { return legs < rhs.legs; }
    std::string to_string() const;
};

constexpr size_t kDefaultCaretCap = 10000;

/// Number of distinct caret shapes: the multinomial (sum a_i)! / prod(a_i!).
BigInt caret_count(const SubdivisionPolynomial& p);

/// All distinct orderings of the leg multiset, lexicographically sorted.
/// Throws enumeration_cap_error when the count exceeds `cap`.
std::vector<CaretShape> enumerate_carets(const BetaContext& ctx, size_t cap = kDefaultCaretCap);

/// Tree-pair definability test for a quadratic ax^2 + bx - 1: true iff a <= b.
bool quadratic_tree_pair_defined(const BigInt& a, const BigInt& b);

/// k = gcd of the exponents carrying nonzero coefficients, and the base Q with
/// p(x) = Q(x^k).
struct ExponentGcd {
    unsigned k;
    SubdivisionPolynomial base;
};
ExponentGcd exponent_gcd(const SubdivisionPolynomial& p);

/// The unique positive root when it is rational (necessarily 1/n for a
/// divisor n of the leading coefficient), otherwise nullopt. Checked exactly.
std::optional<BigRational> rational_root(const SubdivisionPolynomial& p);

/// Outcome of a symbolic exclusion argument, with the derivation spelled out.
struct ExclusionReport {
    bool excluded = false;
    std::vector<std::string> steps;
    std::string conclusion;
};

/// Decides whether sqrt(beta) = c + d*beta is solvable over the rationals for
/// beta the root of ax^2 + bx - 1. Matching coefficients gives the system
/// c^2 + d^2/a = 0 and 2cd - d^2 b/a = 1; the first equation forces c = d = 0
/// by nonnegativity of squares and the second then reads 0 = 1, so the report
/// always concludes "no solution".
ExclusionReport sqrt_membership_quadratic(const BigInt& a, const BigInt& b);

/// Excludes the 2n-th root of beta from Z[beta]: the ring is closed under
/// multiplication, so membership of the 2n-th root would put its n-th power
/// sqrt(beta) in the ring, contradicting sqrt_membership_quadratic.
ExclusionReport even_root_exclusion(const BigInt& a, const BigInt& b, unsigned n);

} // namespace betaforge
