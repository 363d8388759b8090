#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "betaforge/errors.hpp"
#include "betaforge/field.hpp"
#include "oracle.hpp"

using namespace betaforge;

namespace {

RatPoly poly_from(std::vector<long> coeffs) {
    std::vector<BigRational> v;
    v.reserve(coeffs.size());
    for (long c : coeffs)
        v.emplace_back(c);
    return RatPoly(std::move(v));
}

ContextPtr tau_ctx() { return BetaContext::create({BigInt(1), BigInt(1)}); }
ContextPtr quartic_ctx() {
    return BetaContext::create({BigInt(0), BigInt(1), BigInt(0), BigInt(1)});
}

FieldElem rnd_elem(const ContextPtr& ctx, std::mt19937_64& rng) {
    std::vector<BigRational> c(ctx->degree());
    for (auto& x : c) {
        long num = static_cast<long>(rng() % 21) - 10;
        long den = 1 + static_cast<long>(rng() % 4);
        x = make_rational(num, den);
    }
    return FieldElem(ctx, std::move(c));
}

} // namespace

TEST_CASE("rational parsing and formatting") {
    CHECK(format_rational(parse_rational("6/4")) == "3/2");
    CHECK(format_rational(parse_rational("-6/4")) == "-3/2");
    CHECK(format_rational(parse_rational("7")) == "7");
    CHECK(parse_rational("1/3") + parse_rational("1/6") == parse_rational("1/2"));
    CHECK_THROWS_AS(parse_rational("x"), parse_error);
    CHECK_THROWS_AS(make_rational(1, 0), division_by_zero_error);
}

TEST_CASE("polynomial arithmetic basics") {
    RatPoly p = poly_from({-1, 1, 1}); // x^2 + x - 1
    CHECK(p.degree() == 2);
    CHECK(p.eval(BigRational(1)) == 1);
    CHECK(p.eval(make_rational(1, 2)) == make_rational(-1, 4));
    CHECK(p.derivative() == poly_from({1, 2}));
    CHECK((p * p).degree() == 4);

    auto [q, r] = poly_divrem(poly_from({0, 0, 0, 0, 1}), p); // x^4 mod x^2+x-1
    CHECK((q * p + r) == poly_from({0, 0, 0, 0, 1}));
    CHECK(r.degree() <= 1);

    RatPoly g = poly_gcd(p * poly_from({1, 1}), p * poly_from({2, 1}));
    CHECK(g == p.monic());
}

TEST_CASE("extended gcd identity") {
    RatPoly a = poly_from({-1, 1, 1});
    RatPoly b = poly_from({2, 0, 1});
    ExtGcd e = poly_ext_gcd(a, b);
    CHECK(e.g == RatPoly::constant(BigRational(1)));
    CHECK((e.u * a + e.v * b) == e.g);
}

TEST_CASE("sturm_count on reference intervals") {
    RatPoly p = poly_from({-1, 1, 1}); // root tau = 0.6180339887... by bisection oracle
    double tau = oracle::subdivision_root({1, 1});
    CHECK(tau == doctest::Approx(0.6180339887).epsilon(1e-9));
    CHECK(sturm_count(p, BigRational(0), BigRational(1)) == 1);
    CHECK(sturm_count(p, BigRational(0), make_rational(1, 2)) == 0);
    CHECK(sturm_count(poly_from({-1, 2}), BigRational(0), BigRational(1)) == 1);
    // counts are for distinct roots even with multiplicity
    RatPoly sq = p * p;
    CHECK(sturm_count(sq, BigRational(0), BigRational(1)) == 1);
    CHECK_THROWS_AS(sturm_count(poly_from({-1, 2}), make_rational(1, 2), BigRational(1)),
                    endpoint_root_error);
}

TEST_CASE("isolate_positive_root encloses the oracle root") {
    struct Case {
        std::vector<long> coeffs;
        double root;
    };
    // Frozen from the bisection oracle: tau, sqrt(2)-1, sqrt(tau).
    std::vector<Case> cases{{{1, 1}, 0.6180339887498949},
                            {{2, 1}, 0.41421356237309515},
                            {{0, 1, 0, 1}, 0.7861513777574233}};
    for (const auto& c : cases) {
        CHECK(oracle::subdivision_root(c.coeffs) == doctest::Approx(c.root).epsilon(1e-12));
        std::vector<BigInt> coeffs(c.coeffs.begin(), c.coeffs.end());
        SubdivisionPolynomial p(coeffs);
        RootInterval iv = isolate_positive_root(p, make_rational(1, 1 << 20));
        CHECK(oracle::encloses(iv, c.root));
        CHECK(sturm_count(p.to_poly(), iv.lo, iv.hi) == 1);
    }
    // sqrt(tau) squared is tau
    double g = oracle::subdivision_root({0, 1, 0, 1});
    CHECK(g * g == doctest::Approx(0.618034).epsilon(1e-6));
}

TEST_CASE("field arithmetic against defining relations") {
    auto tau = tau_ctx();
    FieldElem b = FieldElem::beta(tau);
    CHECK(b * b == FieldElem::one(tau) - b); // tau^2 = 1 - tau

    auto quartic = quartic_ctx();
    FieldElem g = FieldElem::beta(quartic);
    CHECK(g.pow(2) * g.pow(2) == FieldElem::one(quartic) - g.pow(2)); // g^4 = 1 - g^2

    // (1 - tau)^2 = 2 - 3*tau, about 0.14590 by the numeric oracle
    FieldElem one_minus = FieldElem::one(tau) - b;
    FieldElem sq = one_minus * one_minus;
    FieldElem expected(tau, {BigRational(2), BigRational(-3)});
    CHECK(sq == expected);
    double numeric = 1.0 - oracle::subdivision_root({1, 1});
    CHECK(to_double(sq.approx(make_rational(1, 1 << 30)).midpoint()) ==
          doctest::Approx(numeric * numeric).epsilon(1e-8));
}

TEST_CASE("sign_at_root decides reference signs") {
    auto tau = tau_ctx();
    FieldElem b = FieldElem::beta(tau);
    CHECK(sign_at_root(FieldElem::one(tau) - b) == 1);        // tau < 1
    CHECK(sign_at_root(b * b + b - FieldElem::one(tau)) == 0); // defining polynomial
    CHECK(sign_at_root(b + b - FieldElem::one(tau)) == 1);     // tau > 1/2
    CHECK(sign_at_root(FieldElem::zero(tau)) == 0);
    CHECK(sign_at_root(-b) == -1);
}

TEST_CASE("sign works in a reducible context") {
    // 2x^2 + x - 1 = (2x - 1)(x + 1): the interval pins the root 1/2.
    auto ctx = BetaContext::create({BigInt(1), BigInt(2)});
    FieldElem b = FieldElem::beta(ctx);
    CHECK(b == FieldElem::rational(ctx, make_rational(1, 2)));
    CHECK(sign_at_root(b - FieldElem::rational(ctx, make_rational(1, 3))) == 1);
    CHECK(sign_at_root(b - FieldElem::rational(ctx, make_rational(2, 3))) == -1);
    // Division by a value that shares a factor with the polynomial still works.
    FieldElem shifted = b + FieldElem::one(ctx); // value 3/2, a root of the cofactor... not zero
    FieldElem inv = shifted.inverse();
    CHECK(inv * shifted == FieldElem::one(ctx));
}

TEST_CASE("approx intervals enclose reference values") {
    auto tau = tau_ctx();
    BigRational width = make_rational(1, 1000000);
    RootInterval iv = FieldElem::beta(tau).approx(width);
    CHECK(iv.width() <= width);
    CHECK(oracle::encloses(iv, 0.6180339887498949));

    RootInterval z = FieldElem::zero(tau).approx(width);
    CHECK(z.lo <= 0);
    CHECK(z.hi >= 0);

    auto quartic = quartic_ctx();
    RootInterval g = FieldElem::beta(quartic).approx(width);
    CHECK(oracle::encloses(g, 0.7861513777574233));
}

TEST_CASE("field ops satisfy ring axioms on random triples") {
    std::mt19937_64 rng(20240811);
    for (const auto& ctx : {tau_ctx(), quartic_ctx()}) {
        for (int trial = 0; trial < 25; ++trial) {
            FieldElem x = rnd_elem(ctx, rng), y = rnd_elem(ctx, rng), z = rnd_elem(ctx, rng);
            CHECK((x + y) + z == x + (y + z));
            CHECK((x * y) * z == x * (y * z));
            CHECK(x * (y + z) == x * y + x * z);
            CHECK(x + FieldElem::zero(ctx) == x);
            CHECK(x * FieldElem::one(ctx) == x);
            CHECK(x * y == y * x);
        }
    }
}

TEST_CASE("approx of product overlaps interval product") {
    std::mt19937_64 rng(7);
    auto ctx = quartic_ctx();
    for (int trial = 0; trial < 10; ++trial) {
        FieldElem x = rnd_elem(ctx, rng), y = rnd_elem(ctx, rng);
        for (long denpow : {10L, 20L, 30L}) {
            BigRational w = make_rational(1, BigInt(1) << denpow);
            RootInterval ix = x.approx(w), iy = y.approx(w), ixy = (x * y).approx(w);
            BigRational lo = std::min(std::min(ix.lo * iy.lo, ix.lo * iy.hi),
                                      std::min(ix.hi * iy.lo, ix.hi * iy.hi));
            BigRational hi = std::max(std::max(ix.lo * iy.lo, ix.lo * iy.hi),
                                      std::max(ix.hi * iy.lo, ix.hi * iy.hi));
            CHECK(ixy.hi >= lo);
            CHECK(ixy.lo <= hi);
        }
    }
}

TEST_CASE("comparisons agree with refined approximations") {
    std::mt19937_64 rng(99);
    auto ctx = tau_ctx();
    for (int trial = 0; trial < 40; ++trial) {
        FieldElem x = rnd_elem(ctx, rng), y = rnd_elem(ctx, rng);
        int s = sign_at_root(x - y);
        BigRational w = make_rational(1, BigInt(1) << 40);
        RootInterval ix = x.approx(w), iy = y.approx(w);
        if (ix.hi < iy.lo)
            CHECK(s == -1);
        else if (iy.hi < ix.lo)
            CHECK(s == 1);
    }
}

TEST_CASE("division and powers") {
    auto tau = tau_ctx();
    FieldElem b = FieldElem::beta(tau);
    CHECK(b.pow(-1) * b == FieldElem::one(tau));
    CHECK(b.pow(-1) == FieldElem::one(tau) + b); // 1/tau = 1 + tau
    CHECK(b.pow(0) == FieldElem::one(tau));
    CHECK(b.pow(4) == b * b * b * b);
    CHECK_THROWS_AS(FieldElem::zero(tau).inverse(), division_by_zero_error);
    FieldElem x(tau, {make_rational(3, 2), make_rational(-5, 7)});
    CHECK(x / x == FieldElem::one(tau));
}

TEST_CASE("sign resolves hair-thin differences exactly") {
    // Continued-fraction convergents of the golden section alternate sides:
    // F_k/F_{k+1} < tau for even k, > tau for odd k, at distance ~ 1/F_{k+1}^2.
    auto tau = tau_ctx();
    FieldElem b = FieldElem::beta(tau);
    long fib[44];
    fib[1] = fib[2] = 1;
    for (int k = 3; k <= 43; ++k)
        fib[k] = fib[k - 1] + fib[k - 2];
    for (int k = 38; k <= 42; ++k) {
        FieldElem convergent = FieldElem::rational(tau, make_rational(fib[k], fib[k + 1]));
        CHECK(sign_at_root(b - convergent) == (k % 2 == 0 ? 1 : -1));
    }
    // ... while exact equality still reads as zero.
    CHECK(sign_at_root(b - b) == 0);
}

TEST_CASE("approx reaches extreme precision") {
    auto quartic = quartic_ctx();
    BigRational width = make_rational(1, int_pow(BigInt(10), 60));
    RootInterval iv = FieldElem::beta(quartic).approx(width);
    CHECK(iv.width() <= width);
    CHECK(oracle::encloses(iv, 0.7861513777574233));
}

TEST_CASE("context mismatch is rejected") {
    FieldElem a = FieldElem::beta(tau_ctx());
    FieldElem b = FieldElem::beta(quartic_ctx());
    CHECK_THROWS_AS(a + b, context_mismatch_error);
    CHECK(a != b);
}

TEST_CASE("subdivision polynomial validation") {
    CHECK_THROWS_AS(SubdivisionPolynomial({}), invalid_polynomial_error);
    CHECK_THROWS_AS(SubdivisionPolynomial({BigInt(0), BigInt(0)}), invalid_polynomial_error);
    CHECK_THROWS_AS(SubdivisionPolynomial({BigInt(1)}), invalid_polynomial_error); // x - 1
    CHECK_THROWS_AS(SubdivisionPolynomial({BigInt(0), BigInt(1)}), invalid_polynomial_error);
    CHECK_THROWS_AS(SubdivisionPolynomial({BigInt(-1), BigInt(2)}), invalid_polynomial_error);
    CHECK(SubdivisionPolynomial({BigInt(2)}).degree() == 1);       // 2x - 1 fine
    CHECK(SubdivisionPolynomial({BigInt(1), BigInt(1), BigInt(0)}).degree() == 2);
}
