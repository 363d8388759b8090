#include "betaforge/field.hpp"

#include <sstream>

#include "betaforge/errors.hpp"

namespace betaforge {

namespace {

constexpr int kMaxRefineSteps = 20000;

std::vector<BigRational> reduce_mod(const ContextPtr& ctx, const RatPoly& p) {
    RatPoly r = p.degree() >= static_cast<int>(ctx->degree())
                    ? poly_divrem(p, ctx->poly()).rem
                    : p;
    std::vector<BigRational> out(ctx->degree(), BigRational(0));
    for (size_t k = 0; k < out.size(); ++k)
        out[k] = r.coeff(k);
    return out;
}

// Closed interval product.
struct Iv {
    BigRational lo, hi;
};

Iv iv_mul(const Iv& a, const Iv& b) {
    BigRational c1 = a.lo * b.lo, c2 = a.lo * b.hi, c3 = a.hi * b.lo, c4 = a.hi * b.hi;
    return {std::min(std::min(c1, c2), std::min(c3, c4)),
            std::max(std::max(c1, c2), std::max(c3, c4))};
}

Iv iv_eval(const RatPoly& p, const Iv& x) {
    Iv acc{BigRational(0), BigRational(0)};
    for (auto it = p.coeffs().rbegin(); it != p.coeffs().rend(); ++it) {
        acc = iv_mul(acc, x);
        acc.lo += *it;
        acc.hi += *it;
    }
    return acc;
}

} // namespace

FieldElem::FieldElem(ContextPtr ctx, std::vector<BigRational> reduced_coeffs)
    : ctx_(std::move(ctx)), coeffs_(std::move(reduced_coeffs)) {
    if (!ctx_)
        throw error("field element without context");
    if (coeffs_.size() != ctx_->degree())
        throw dimension_mismatch_error("coefficient vector has wrong length");
}

FieldElem FieldElem::from_poly(ContextPtr ctx, const RatPoly& p) {
    auto coeffs = reduce_mod(ctx, p);
    return FieldElem(std::move(ctx), std::move(coeffs));
}

FieldElem FieldElem::rational(ContextPtr ctx, const BigRational& q) {
    std::vector<BigRational> c(ctx->degree(), BigRational(0));
    c[0] = q;
    return FieldElem(std::move(ctx), std::move(c));
}

FieldElem FieldElem::integer(ContextPtr ctx, long v) {
    return rational(std::move(ctx), BigRational(v));
}

FieldElem FieldElem::zero(ContextPtr ctx) { return rational(std::move(ctx), BigRational(0)); }
FieldElem FieldElem::one(ContextPtr ctx) { return rational(std::move(ctx), BigRational(1)); }

FieldElem FieldElem::beta(ContextPtr ctx) {
    return from_poly(std::move(ctx), RatPoly::monomial(BigRational(1), 1));
}

const ContextPtr& require_same_context(const FieldElem& a, const FieldElem& b) {
    if (!a.ctx()->same_group(*b.ctx()))
        throw context_mismatch_error("field elements from different contexts");
    return a.ctx();
}

FieldElem FieldElem::operator-() const {
    std::vector<BigRational> c(coeffs_.size());
    for (size_t k = 0; k < c.size(); ++k)
        c[k] = -coeffs_[k];
    return FieldElem(ctx_, std::move(c));
}

FieldElem FieldElem::operator+(const FieldElem& rhs) const {
    require_same_context(*this, rhs);
    std::vector<BigRational> c(coeffs_.size());
    for (size_t k = 0; k < c.size(); ++k)
        c[k] = coeffs_[k] + rhs.coeffs_[k];
    return FieldElem(ctx_, std::move(c));
}

FieldElem FieldElem::operator-(const FieldElem& rhs) const { return *this + (-rhs); }

FieldElem FieldElem::operator*(const FieldElem& rhs) const {
    require_same_context(*this, rhs);
    return from_poly(ctx_, to_poly() * rhs.to_poly());
}

FieldElem FieldElem::operator/(const FieldElem& rhs) const { return *this * rhs.inverse(); }

FieldElem FieldElem::inverse() const {
    if (sign() == 0)
        throw division_by_zero_error("inverse of zero field value");
    RatPoly d = to_poly();
    // Strip the factors of P shared with d. The root survives: any common
    // factor is nonzero at the root because d is.
    RatPoly m = ctx_->poly();
    while (true) {
        RatPoly g = poly_gcd(d, m);
        if (g.degree() <= 0)
            break;
        m = poly_divrem(m, g).quot;
    }
    ExtGcd e = poly_ext_gcd(d, m);
    if (e.g.degree() != 0)
        throw error("inverse: unexpected nontrivial gcd");
    // e.u * d == 1 (mod m) and m vanishes at the root, so e.u evaluates to 1/d.
    RatPoly u = e.u * make_rational(e.g.coeff(0).get_den(), e.g.coeff(0).get_num());
    return from_poly(ctx_, u);
}

FieldElem FieldElem::pow(long e) const {
    if (e < 0)
        return inverse().pow(-e);
    FieldElem acc = one(ctx_);
    FieldElem base = *this;
    unsigned long n = static_cast<unsigned long>(e);
    while (n > 0) {
        if (n & 1)
            acc = acc * base;
        base = base * base;
        n >>= 1;
    }
    return acc;
}

int FieldElem::sign() const {
    RatPoly d = to_poly();
    if (d.is_zero())
        return 0;
    if (d.degree() == 0)
        return sign_of(d.coeff(0));

    const RootInterval& iv0 = ctx_->root_interval();
    // Zero test: d vanishes at the root iff gcd(d, P) keeps a root inside the
    // isolating interval. gcd divides P, so it cannot vanish at the endpoints.
    RatPoly g = poly_gcd(d, ctx_->poly());
    if (g.degree() >= 1 && sturm_count(g, iv0.lo, iv0.hi) == 1)
        return 0;

    // Nonzero: shrink the interval until d has no root inside, then any
    // rational point of the interval carries the sign of d at the root.
    auto chain = sturm_chain(d);
    RootInterval iv = iv0;
    for (int step = 0; step < kMaxRefineSteps; ++step) {
        if (d.eval(iv.lo) != 0 && d.eval(iv.hi) != 0 &&
            sturm_count(chain, d, iv.lo, iv.hi) == 0)
            return sign_of(d.eval(iv.lo));
        iv = ctx_->refine_step(iv, {&d});
    }
    throw error("sign refinement did not converge");
}

int sign_at_root(const FieldElem& d) { return d.sign(); }

bool FieldElem::is_rational() const {
    for (size_t k = 1; k < coeffs_.size(); ++k)
        if (coeffs_[k] != 0)
            return false;
    return true;
}

const BigRational& FieldElem::rational_value() const {
    if (!is_rational())
        throw error("field value is not rational");
    return coeffs_[0];
}

RootInterval FieldElem::approx(const BigRational& width) const {
    if (width <= 0)
        throw error("approx needs positive width");
    RatPoly d = to_poly();
    RootInterval iv = ctx_->root_interval();
    for (int step = 0; step < kMaxRefineSteps; ++step) {
        Iv v = iv_eval(d, Iv{iv.lo, iv.hi});
        if (v.hi - v.lo <= width)
            return {v.lo, v.hi};
        iv = ctx_->refine_step(iv);
    }
    throw error("approx refinement did not converge");
}

double FieldElem::to_double() const {
    RootInterval enc = approx(make_rational(1, BigInt(1) << 60));
    return betaforge::to_double(enc.midpoint());
}

bool FieldElem::operator==(const FieldElem& rhs) const {
    if (!ctx_->same_group(*rhs.ctx_))
        return false;
    if (coeffs_ == rhs.coeffs_)
        return true;
    return (*this - rhs).sign() == 0;
}

std::string FieldElem::to_string() const { return to_poly().to_string("b"); }

} // namespace betaforge
