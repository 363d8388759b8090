#include "betaforge/rational.hpp"

namespace betaforge {

BigRational make_rational(const BigInt& num, const BigInt& den) {
    if (den == 0)
        throw division_by_zero_error("rational with zero denominator");
    BigRational q(num, den);
    q.canonicalize();
    return q;
}

BigRational parse_rational(const std::string& text) {
    auto slash = text.find('/');
    try {
        if (slash == std::string::npos)
            return BigRational(BigInt(text));
        BigInt num(text.substr(0, slash));
        BigInt den(text.substr(slash + 1));
        return make_rational(num, den);
    } catch (const std::invalid_argument&) {
        throw parse_error("not a rational: '" + text + "'");
    }
}

BigInt parse_integer(const std::string& text) {
    try {
        return BigInt(text);
    } catch (const std::invalid_argument&) {
        throw parse_error("not an integer: '" + text + "'");
    }
}

std::string format_rational(const BigRational& q) {
    if (q.get_den() == 1)
        return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

int sign_of(const BigRational& q) { return sgn(q); }
int sign_of(const BigInt& z) { return sgn(z); }

BigRational rational_pow(const BigRational& base, long exp) {
    if (exp == 0)
        return BigRational(1);
    bool invert = exp < 0;
    unsigned long e = invert ? static_cast<unsigned long>(-exp) : static_cast<unsigned long>(exp);
    BigInt num, den;
    mpz_pow_ui(num.get_mpz_t(), base.get_num().get_mpz_t(), e);
    mpz_pow_ui(den.get_mpz_t(), base.get_den().get_mpz_t(), e);
    if (invert) {
        if (num == 0)
            throw division_by_zero_error("0 raised to negative power");
        std::swap(num, den);
    }
    return make_rational(num, den);
}

BigInt int_pow(const BigInt& base, unsigned long exp) {
    BigInt r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exp);
    return r;
}

BigInt isqrt(const BigInt& z) {
    if (z < 0)
        throw error("isqrt of negative value");
    BigInt r;
    mpz_sqrt(r.get_mpz_t(), z.get_mpz_t());
    return r;
}

BigInt binomial(unsigned long n, unsigned long k) {
    BigInt r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

BigInt factorial(unsigned long n) {
    BigInt r;
    mpz_fac_ui(r.get_mpz_t(), n);
    return r;
}

double to_double(const BigRational& q) { return q.get_d(); }

} // namespace betaforge
