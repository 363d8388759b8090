#include "betaforge/context.hpp"

#include <sstream>

#include "betaforge/errors.hpp"

namespace betaforge {

SubdivisionPolynomial::SubdivisionPolynomial(std::vector<BigInt> coeffs)
    : coeffs_(std::move(coeffs)) {
    while (!coeffs_.empty() && coeffs_.back() == 0)
        coeffs_.pop_back();
    if (coeffs_.empty())
        throw invalid_polynomial_error("all coefficients are zero");
    BigInt total(0);
    for (const auto& a : coeffs_) {
        if (a < 0)
            throw invalid_polynomial_error("negative coefficient in subdivision polynomial");
        total += a;
    }
    // Sum 1 means exactly one a_i = 1: the polynomial x^i - 1 with root 1.
    if (total < 2)
        throw invalid_polynomial_error("trivial subdivision polynomial " + to_string() +
                                       " has root 1");
}

RatPoly SubdivisionPolynomial::to_poly() const {
    std::vector<BigRational> c(coeffs_.size() + 1);
    c[0] = BigRational(-1);
    for (size_t i = 0; i < coeffs_.size(); ++i)
        c[i + 1] = BigRational(coeffs_[i]);
    return RatPoly(std::move(c));
}

std::string SubdivisionPolynomial::to_string() const {
    std::ostringstream out;
    for (size_t i = coeffs_.size(); i-- > 0;) {
        if (coeffs_[i] == 0)
            continue;
        if (out.tellp() > 0)
            out << " + ";
        if (coeffs_[i] != 1)
            out << coeffs_[i].get_str() << "*";
        out << "x";
        if (i + 1 > 1)
            out << "^" << (i + 1);
    }
    out << " - 1";
    return out.str();
}

RootInterval isolate_positive_root(const SubdivisionPolynomial& p) {
    // P(0) = -1 and P(1) = sum(a_i) - 1 > 0 for every validated polynomial, so
    // (0,1) brackets the unique positive root with nonvanishing endpoints.
    RatPoly poly = p.to_poly();
    RootInterval iv{BigRational(0), BigRational(1)};
    int roots = sturm_count(poly, iv.lo, iv.hi);
    if (roots != 1)
        throw error("expected exactly one root in (0,1), Sturm count " + std::to_string(roots));
    return iv;
}

RootInterval isolate_positive_root(const SubdivisionPolynomial& p, const BigRational& width) {
    ContextPtr ctx = BetaContext::create(p);
    return ctx->refine(ctx->root_interval(), width);
}

BetaContext::BetaContext(SubdivisionPolynomial p)
    : subdiv_(std::move(p)), poly_(subdiv_.to_poly()), chain_(sturm_chain(poly_)),
      interval_(isolate_positive_root(subdiv_)) {}

ContextPtr BetaContext::create(SubdivisionPolynomial p) {
    return ContextPtr(new BetaContext(std::move(p)));
}

ContextPtr BetaContext::create(std::vector<BigInt> coeffs) {
    return create(SubdivisionPolynomial(std::move(coeffs)));
}

RootInterval BetaContext::refine_step(const RootInterval& iv,
                                      const std::vector<const RatPoly*>& avoid) const {
    BigRational width = iv.width();
    BigRational cut = iv.midpoint();
    // Deterministic nudge schedule: mid + width/8, mid + width/16, ...
    BigRational nudge = width / 8;
    auto is_clean = [&](const BigRational& x) {
        if (poly_.eval(x) == 0)
            return false;
        for (const RatPoly* q : avoid)
            if (!q->is_zero() && q->eval(x) == 0)
                return false;
        return true;
    };
    while (!is_clean(cut)) {
        cut = iv.midpoint() + nudge;
        nudge /= 2;
    }
    // The invariant P(lo) < 0 < P(hi) holds from construction, so the sign at
    // the cut tells which half keeps the root.
    if (sign_of(poly_.eval(cut)) < 0)
        return {cut, iv.hi};
    return {iv.lo, cut};
}

RootInterval BetaContext::refine(RootInterval iv, const BigRational& width) const {
    while (iv.width() > width)
        iv = refine_step(iv);
    return iv;
}

} // namespace betaforge
