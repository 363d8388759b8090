#pragma once

#include <vector>

#include "betaforge/rational.hpp"

namespace betaforge {

/// Univariate polynomial with exact rational coefficients, stored in ascending
/// degree with no trailing zeros. The zero polynomial has an empty coefficient
/// vector and degree -1.
class RatPoly {
  public:
    RatPoly() = default;
    explicit RatPoly(std::vector<BigRational> coeffs);

    static RatPoly constant(const BigRational& c);
    static RatPoly monomial(const BigRational& c, size_t degree);

    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const { return coeffs_.empty(); }

    // Coefficient of x^k; zero beyond the stored degree.
    const BigRational& coeff(size_t k) const;
    const std::vector<BigRational>& coeffs() const { return coeffs_; }
    const BigRational& leading() const;

    BigRational eval(const BigRational& x) const;

    RatPoly derivative() const;
    RatPoly monic() const;

    RatPoly operator-() const;
    RatPoly operator+(const RatPoly& rhs) const;
    RatPoly operator-(const RatPoly& rhs) const;
    RatPoly operator*(const RatPoly& rhs) const;
    RatPoly operator*(const BigRational& s) const;

    bool operator==(const RatPoly& rhs) const { return coeffs_ == rhs.coeffs_; }

    std::string to_string(const std::string& var = "x") const;

  private:
    std::vector<BigRational> coeffs_;
    void trim();
};

// Quotient and remainder over Q; divisor must be nonzero.
struct DivRem {
    RatPoly quot;
    RatPoly rem;
};
DivRem poly_divrem(const RatPoly& num, const RatPoly& den);

// Monic gcd over Q (constant 1 for coprime inputs); gcd(0,0) is 0.
RatPoly poly_gcd(RatPoly a, RatPoly b);

// g = u*a + v*b with g the monic gcd.
struct ExtGcd {
    RatPoly g, u, v;
};
ExtGcd poly_ext_gcd(const RatPoly& a, const RatPoly& b);

// Canonical Sturm chain p, p', -rem(...), each scaled primitive-positive.
std::vector<RatPoly> sturm_chain(const RatPoly& p);

// Sign variations of the chain evaluated at x (zeros skipped).
int sign_variations(const std::vector<RatPoly>& chain, const BigRational& x);

/// Number of distinct real roots of p in the open interval (lo, hi).
/// Requires p nonzero, lo < hi, and p nonvanishing at both endpoints;
/// an endpoint root raises endpoint_root_error for the caller to perturb.
int sturm_count(const RatPoly& p, const BigRational& lo, const BigRational& hi);
int sturm_count(const std::vector<RatPoly>& chain, const RatPoly& p, const BigRational& lo,
                const BigRational& hi);

} // namespace betaforge
