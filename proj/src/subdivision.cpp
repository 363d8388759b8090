#include "betaforge/subdivision.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "betaforge/errors.hpp"

namespace betaforge {

std::string CaretShape::to_string() const {
    std::ostringstream out;
    out << "(";
    for (size_t i = 0; i < legs.size(); ++i)
        out << (i ? "," : "") << legs[i];
    out << ")";
    return out.str();
}

BigInt caret_count(const SubdivisionPolynomial& p) {
    unsigned long total = 0;
    for (const auto& a : p.coeffs()) {
        if (!a.fits_ulong_p())
            throw enumeration_cap_error("coefficient too large for caret counting");
        total += a.get_ui();
    }
    BigInt count = factorial(total);
    for (const auto& a : p.coeffs())
        count /= factorial(a.get_ui());
    return count;
}

std::vector<CaretShape> enumerate_carets(const BetaContext& ctx, size_t cap) {
    const SubdivisionPolynomial& p = ctx.subdivision();
    BigInt count = caret_count(p);
    if (count > static_cast<unsigned long>(cap))
        throw enumeration_cap_error("caret count " + count.get_str() + " exceeds cap " +
                                    std::to_string(cap));
    std::vector<unsigned> legs;
    for (size_t i = 1; i <= p.degree(); ++i)
        for (BigInt c = 0; c < p.coeff(i); ++c)
            legs.push_back(static_cast<unsigned>(i));
    std::sort(legs.begin(), legs.end());
    std::vector<CaretShape> shapes;
    do {
        shapes.push_back(CaretShape{legs});
    } while (std::next_permutation(legs.begin(), legs.end()));
    return shapes;
}

bool quadratic_tree_pair_defined(const BigInt& a, const BigInt& b) {
    if (a < 1 || b < 0)
        throw invalid_polynomial_error("quadratic needs a >= 1, b >= 0");
    SubdivisionPolynomial check({b, a}); // rejects the trivial x^2 - 1
    return a <= b;
}

ExponentGcd exponent_gcd(const SubdivisionPolynomial& p) {
    unsigned k = 0;
    for (size_t i = 1; i <= p.degree(); ++i)
        if (p.coeff(i) != 0)
            k = std::gcd(k, static_cast<unsigned>(i));
    std::vector<BigInt> base(p.degree() / k);
    for (size_t j = 1; j <= base.size(); ++j)
        base[j - 1] = p.coeff(j * k);
    return {k, SubdivisionPolynomial(std::move(base))};
}

std::optional<BigRational> rational_root(const SubdivisionPolynomial& p) {
    // A rational root of a_n x^n + ... + a_1 x - 1 in lowest terms q/r has
    // q | 1 and r | a_n; the positive root in (0,1) is therefore 1/r with
    // r >= 2 a divisor of the leading coefficient.
    RatPoly poly = p.to_poly();
    const BigInt& lead = p.coeff(p.degree());
    for (BigInt r = 2; r * r <= lead; ++r) {
        if (lead % r != 0)
            continue;
        for (const BigInt& div : {BigInt(r), BigInt(lead / r)}) {
            BigRational cand = make_rational(1, div);
            if (poly.eval(cand) == 0)
                return cand;
        }
    }
    if (lead >= 2 && poly.eval(make_rational(1, lead)) == 0)
        return make_rational(1, lead);
    return std::nullopt;
}

ExclusionReport sqrt_membership_quadratic(const BigInt& a, const BigInt& b) {
    SubdivisionPolynomial quad({b, a});
    if (quad.degree() != 2)
        throw invalid_polynomial_error("not a quadratic subdivision polynomial");
    ExclusionReport rep;
    BigRational inv_a = make_rational(1, a);
    BigRational b_over_a = make_rational(b, a);
    rep.steps.push_back("suppose sqrt(beta) = c + d*beta with rational c, d");
    rep.steps.push_back("square both sides: beta = c^2 + 2cd*beta + d^2*beta^2");
    rep.steps.push_back("substitute beta^2 = " + format_rational(inv_a) + " - " +
                        format_rational(b_over_a) + "*beta from " + quad.to_string() + " = 0");
    rep.steps.push_back("match coefficients: c^2 + d^2/" + a.get_str() + " = 0   and   2cd - " +
                        format_rational(b_over_a) + "*d^2 = 1");
    rep.steps.push_back("c^2 >= 0 and d^2/" + a.get_str() +
                        " >= 0 since a > 0, so the first equation forces c = d = 0");
    rep.steps.push_back("with c = d = 0 the second equation reads 0 = 1");
    rep.excluded = true;
    rep.conclusion = "no rational solution: sqrt(beta) is not in Z[beta] for " + quad.to_string();
    return rep;
}

ExclusionReport even_root_exclusion(const BigInt& a, const BigInt& b, unsigned n) {
    if (n < 1)
        throw error("even_root_exclusion needs n >= 1");
    ExclusionReport inner = sqrt_membership_quadratic(a, b);
    ExclusionReport rep;
    rep.steps.push_back("suppose the 2n-th root of beta lies in Z[beta], n = " +
                        std::to_string(n));
    rep.steps.push_back("Z[beta] is closed under multiplication, so its n-th power "
                        "sqrt(beta) would lie in Z[beta] too");
    rep.steps.insert(rep.steps.end(), inner.steps.begin(), inner.steps.end());
    rep.excluded = inner.excluded;
    rep.conclusion = "the 2n-th root of beta (n = " + std::to_string(n) +
                     ") is not in Z[beta]: " + inner.conclusion;
    return rep;
}

} // namespace betaforge
