#pragma once

#include "betaforge/context.hpp"

namespace betaforge {

/// Exact element of Q[x]/(P) evaluated at the context's distinguished root
/// beta, stored as a rational coefficient vector in the power basis
/// 1, beta, ..., beta^{n-1} (always reduced modulo P).
///
/// P need not be irreducible; equality and sign are decided at the isolated
/// root without factoring. The zero test runs a Sturm count on gcd(d, P) over
/// the isolating interval; a nonzero sign comes from refining the interval
/// until d has no root inside it and evaluating at a rational endpoint.
class FieldElem {
  public:
    FieldElem(ContextPtr ctx, std::vector<BigRational> reduced_coeffs);

    static FieldElem from_poly(ContextPtr ctx, const RatPoly& p);
    static FieldElem rational(ContextPtr ctx, const BigRational& q);
    static FieldElem integer(ContextPtr ctx, long v);
    static FieldElem zero(ContextPtr ctx);
    static FieldElem one(ContextPtr ctx);
    /// The root itself as a field element.
    static FieldElem beta(ContextPtr ctx);

    const ContextPtr& ctx() const { return ctx_; }
    const std::vector<BigRational>& coeffs() const { return coeffs_; }
    RatPoly to_poly() const { return RatPoly(coeffs_); }

    FieldElem operator-() const;
    FieldElem operator+(const FieldElem& rhs) const;
    FieldElem operator-(const FieldElem& rhs) const;
    FieldElem operator*(const FieldElem& rhs) const;
    FieldElem operator/(const FieldElem& rhs) const;

    /// Multiplicative inverse of a value that is nonzero at the root. Works in
    /// reducible contexts by stripping common factors from P before the
    /// extended Euclidean step; the result is one representative of the value.
    FieldElem inverse() const;
    FieldElem pow(long e) const;

    /// Sign of the real number this element evaluates to at the root.
    int sign() const;
    bool is_zero() const { return sign() == 0; }

    /// If the value is rational (coefficients of beta^k vanish for k >= 1),
    /// returns it.
    bool is_rational() const;
    const BigRational& rational_value() const;

    /// Rational enclosure of the real value, of width at most `width`.
    RootInterval approx(const BigRational& width) const;
    double to_double() const;

    bool operator==(const FieldElem& rhs) const;
    bool operator!=(const FieldElem& rhs) const { return !(*this == rhs); }
    bool operator<(const FieldElem& rhs) const { return cmp(*this, rhs) < 0; }
    bool operator>(const FieldElem& rhs) const { return cmp(*this, rhs) > 0; }
    bool operator<=(const FieldElem& rhs) const { return cmp(*this, rhs) <= 0; }
    bool operator>=(const FieldElem& rhs) const { return cmp(*this, rhs) >= 0; }

    friend int cmp(const FieldElem& a, const FieldElem& b) { return (a - b).sign(); }

    std::string to_string() const;

  private:
    ContextPtr ctx_;
    std::vector<BigRational> coeffs_;
};

int sign_at_root(const FieldElem& d);

// Shared-context check; returns the common context or throws.
const ContextPtr& require_same_context(const FieldElem& a, const FieldElem& b);

} // namespace betaforge
