#pragma once

#include <memory>
#include <vector>

#include "betaforge/polynomial.hpp"

namespace betaforge {

/// Rational interval (lo, hi) in [0,1] isolating a single root of the
/// polynomial it was produced for.
struct RootInterval {
    BigRational lo;
    BigRational hi;

    BigRational width() const { return hi - lo; }
    BigRational midpoint() const { return (lo + hi) / 2; }
    bool contains(const BigRational& x) const { return lo < x && x < hi; }
};

/// a_n x^n + ... + a_1 x - 1 with nonnegative integer coefficients a_i,
/// at least two of them counted with multiplicity (sum >= 2), leading
/// coefficient positive. The constant term is fixed at -1 and not stored.
class SubdivisionPolynomial {
  public:
    // coeffs[i] is a_{i+1}. Trailing zeros are trimmed; rejects negative
    // coefficients, the all-zero list, and the trivial single-1 case whose
    // root would be 1.
    explicit SubdivisionPolynomial(std::vector<BigInt> coeffs);

    size_t degree() const { return coeffs_.size(); }
    // a_i for 1 <= i <= degree.
    const BigInt& coeff(size_t i) const { return coeffs_.at(i - 1); }
    const std::vector<BigInt>& coeffs() const { return coeffs_; }

    RatPoly to_poly() const;
    std::string to_string() const;

    bool operator==(const SubdivisionPolynomial& rhs) const { return coeffs_ == rhs.coeffs_; }

  private:
    std::vector<BigInt> coeffs_;
};

class BetaContext;
using ContextPtr = std::shared_ptr<const BetaContext>;

/// A validated subdivision polynomial together with an isolating interval for
/// its unique root beta in (0,1) and the reciprocal relation
/// lambda^n = a_1 lambda^{n-1} + a_2 lambda^{n-2} + ... + a_n for lambda = 1/beta.
/// Immutable after construction; share freely across threads.
class BetaContext {
  public:
    static ContextPtr create(SubdivisionPolynomial p);
    static ContextPtr create(std::vector<BigInt> coeffs);

    const SubdivisionPolynomial& subdivision() const { return subdiv_; }
    const RatPoly& poly() const { return poly_; }
    const std::vector<RatPoly>& poly_sturm_chain() const { return chain_; }
    size_t degree() const { return subdiv_.degree(); }
    const RootInterval& root_interval() const { return interval_; }
    // Coefficients (a_1, ..., a_n) of the reciprocal relation.
    const std::vector<BigInt>& reciprocal_relation() const { return subdiv_.coeffs(); }

    bool same_group(const BetaContext& rhs) const { return subdiv_ == rhs.subdiv_; }

    /// One bisection step on the context polynomial; the cut point is nudged
    /// away from any root of the polynomials in `avoid` (halving the nudge on
    /// each retry) so Sturm counting at the new endpoint stays well defined.
    RootInterval refine_step(const RootInterval& iv,
                             const std::vector<const RatPoly*>& avoid = {}) const;

    RootInterval refine(RootInterval iv, const BigRational& width) const;

  private:
    explicit BetaContext(SubdivisionPolynomial p);

    SubdivisionPolynomial subdiv_;
    RatPoly poly_;
    std::vector<RatPoly> chain_;
    RootInterval interval_;
};

/// Isolating interval in (0,1) for the unique positive root of a validated
/// subdivision polynomial, shrunk below `width` when one is given.
RootInterval isolate_positive_root(const SubdivisionPolynomial& p);
RootInterval isolate_positive_root(const SubdivisionPolynomial& p, const BigRational& width);

} // namespace betaforge
