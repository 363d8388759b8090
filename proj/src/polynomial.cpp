#include "betaforge/polynomial.hpp"

#include <sstream>

#include "betaforge/errors.hpp"

namespace betaforge {

namespace {
const BigRational kZero(0);
}

RatPoly::RatPoly(std::vector<BigRational> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

void RatPoly::trim() {
    while (!coeffs_.empty() && coeffs_.back() == 0)
        coeffs_.pop_back();
}

RatPoly RatPoly::constant(const BigRational& c) {
    return RatPoly(std::vector<BigRational>{c});
}

RatPoly RatPoly::monomial(const BigRational& c, size_t degree) {
    std::vector<BigRational> v(degree + 1, kZero);
    v[degree] = c;
    return RatPoly(std::move(v));
}

const BigRational& RatPoly::coeff(size_t k) const {
    if (k >= coeffs_.size())
        return kZero;
    return coeffs_[k];
}

const BigRational& RatPoly::leading() const {
    if (is_zero())
        throw error("leading coefficient of zero polynomial");
    return coeffs_.back();
}

BigRational RatPoly::eval(const BigRational& x) const {
    BigRational acc(0);
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it)
        acc = acc * x + *it;
    return acc;
}

RatPoly RatPoly::derivative() const {
    if (coeffs_.size() <= 1)
        return RatPoly();
    std::vector<BigRational> d(coeffs_.size() - 1);
    for (size_t k = 1; k < coeffs_.size(); ++k)
        d[k - 1] = coeffs_[k] * BigRational(static_cast<long>(k));
    return RatPoly(std::move(d));
}

RatPoly RatPoly::monic() const {
    if (is_zero())
        return *this;
    return *this * make_rational(leading().get_den(), leading().get_num());
}

RatPoly RatPoly::operator-() const {
    std::vector<BigRational> v(coeffs_.size());
    for (size_t k = 0; k < coeffs_.size(); ++k)
        v[k] = -coeffs_[k];
    return RatPoly(std::move(v));
}

RatPoly RatPoly::operator+(const RatPoly& rhs) const {
    std::vector<BigRational> v(std::max(coeffs_.size(), rhs.coeffs_.size()), kZero);
    for (size_t k = 0; k < v.size(); ++k)
        v[k] = coeff(k) + rhs.coeff(k);
    return RatPoly(std::move(v));
}

RatPoly RatPoly::operator-(const RatPoly& rhs) const { return *this + (-rhs); }

RatPoly RatPoly::operator*(const RatPoly& rhs) const {
    if (is_zero() || rhs.is_zero())
        return RatPoly();
    std::vector<BigRational> v(coeffs_.size() + rhs.coeffs_.size() - 1, kZero);
    for (size_t i = 0; i < coeffs_.size(); ++i)
        for (size_t j = 0; j < rhs.coeffs_.size(); ++j)
            v[i + j] += coeffs_[i] * rhs.coeffs_[j];
    return RatPoly(std::move(v));
}

RatPoly RatPoly::operator*(const BigRational& s) const {
    std::vector<BigRational> v(coeffs_.size());
    for (size_t k = 0; k < coeffs_.size(); ++k)
        v[k] = coeffs_[k] * s;
    return RatPoly(std::move(v));
}

std::string RatPoly::to_string(const std::string& var) const {
    if (is_zero())
        return "0";
    std::ostringstream out;
    bool first = true;
    for (size_t k = coeffs_.size(); k-- > 0;) {
        const BigRational& c = coeffs_[k];
        if (c == 0)
            continue;
        BigRational a = c;
        if (!first)
            out << (sign_of(c) < 0 ? " - " : " + ");
        else if (sign_of(c) < 0)
            out << "-";
        if (first)
            first = false;
        a = abs(a);
        if (k == 0 || a != 1)
            out << format_rational(a);
        if (k > 0) {
            if (a != 1)
                out << "*";
            out << var;
            if (k > 1)
                out << "^" << k;
        }
    }
    return out.str();
}

DivRem poly_divrem(const RatPoly& num, const RatPoly& den) {
    if (den.is_zero())
        throw division_by_zero_error("polynomial division by zero");
    RatPoly rem = num;
    std::vector<BigRational> quot;
    int dd = den.degree();
    if (rem.degree() >= dd)
        quot.assign(rem.degree() - dd + 1, BigRational(0));
    while (!rem.is_zero() && rem.degree() >= dd) {
        size_t shift = rem.degree() - dd;
        BigRational factor = rem.leading() / den.leading();
        quot[shift] = factor;
        rem = rem - RatPoly::monomial(factor, shift) * den;
    }
    return {RatPoly(std::move(quot)), std::move(rem)};
}

RatPoly poly_gcd(RatPoly a, RatPoly b) {
    while (!b.is_zero()) {
        RatPoly r = poly_divrem(a, b).rem;
        a = std::move(b);
        b = std::move(r);
    }
    return a.is_zero() ? a : a.monic();
}

ExtGcd poly_ext_gcd(const RatPoly& a, const RatPoly& b) {
    RatPoly r0 = a, r1 = b;
    RatPoly u0 = RatPoly::constant(BigRational(1)), u1;
    RatPoly v0, v1 = RatPoly::constant(BigRational(1));
    while (!r1.is_zero()) {
        DivRem qr = poly_divrem(r0, r1);
        RatPoly r2 = qr.rem;
        RatPoly u2 = u0 - qr.quot * u1;
        RatPoly v2 = v0 - qr.quot * v1;
        r0 = std::move(r1);
        r1 = std::move(r2);
        u0 = std::move(u1);
        u1 = std::move(u2);
        v0 = std::move(v1);
        v1 = std::move(v2);
    }
    if (r0.is_zero())
        return {r0, u0, v0};
    BigRational scale = make_rational(r0.leading().get_den(), r0.leading().get_num());
    return {r0 * scale, u0 * scale, v0 * scale};
}

namespace {

// Positive rescale keeping signs intact; clears denominators and the content.
RatPoly primitive_positive(const RatPoly& p) {
    if (p.is_zero())
        return p;
    BigInt den_lcm(1);
    for (const auto& c : p.coeffs())
        mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den().get_mpz_t());
    BigInt content(0);
    for (const auto& c : p.coeffs()) {
        BigInt scaled = c.get_num() * (den_lcm / c.get_den());
        mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), scaled.get_mpz_t());
    }
    if (content == 0)
        content = 1;
    return p * make_rational(den_lcm, content);
}

} // namespace

std::vector<RatPoly> sturm_chain(const RatPoly& p) {
    std::vector<RatPoly> chain;
    if (p.is_zero())
        return chain;
    chain.push_back(primitive_positive(p));
    RatPoly d = p.derivative();
    if (d.is_zero())
        return chain;
    chain.push_back(primitive_positive(d));
    while (true) {
        RatPoly rem = poly_divrem(chain[chain.size() - 2], chain.back()).rem;
        if (rem.is_zero())
            break;
        chain.push_back(primitive_positive(-rem));
    }
    return chain;
}

int sign_variations(const std::vector<RatPoly>& chain, const BigRational& x) {
    int count = 0;
    int prev = 0;
    for (const auto& q : chain) {
        int s = sign_of(q.eval(x));
        if (s == 0)
            continue;
        if (prev != 0 && s != prev)
            ++count;
        prev = s;
    }
    return count;
}

int sturm_count(const std::vector<RatPoly>& chain, const RatPoly& p, const BigRational& lo,
                const BigRational& hi) {
    if (p.is_zero())
        throw error("sturm_count on zero polynomial");
    if (!(lo < hi))
        throw error("sturm_count needs lo < hi");
    if (p.eval(lo) == 0)
        throw endpoint_root_error("polynomial vanishes at lower endpoint " + format_rational(lo));
    if (p.eval(hi) == 0)
        throw endpoint_root_error("polynomial vanishes at upper endpoint " + format_rational(hi));
    return sign_variations(chain, lo) - sign_variations(chain, hi);
}

int sturm_count(const RatPoly& p, const BigRational& lo, const BigRational& hi) {
    return sturm_count(sturm_chain(p), p, lo, hi);
}

} // namespace betaforge
