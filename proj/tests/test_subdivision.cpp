#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "betaforge/errors.hpp"
#include "betaforge/subdivision.hpp"
#include "oracle.hpp"

using namespace betaforge;

namespace {
ContextPtr ctx_of(std::vector<long> coeffs) {
    std::vector<BigInt> c(coeffs.begin(), coeffs.end());
    return BetaContext::create(std::move(c));
}
} // namespace

TEST_CASE("context carries the reciprocal relation") {
    auto quartic = ctx_of({0, 1, 0, 1}); // x^4 + x^2 - 1, lambda^4 = lambda^2 + 1
    std::vector<BigInt> rel{BigInt(0), BigInt(1), BigInt(0), BigInt(1)};
    CHECK(quartic->reciprocal_relation() == rel);
    CHECK(oracle::encloses(quartic->root_interval(), 0.7861513777574233));

    auto tau = ctx_of({1, 1});
    std::vector<BigInt> tau_rel{BigInt(1), BigInt(1)};
    CHECK(tau->reciprocal_relation() == tau_rel); // lambda^2 = lambda + 1
    CHECK(oracle::encloses(tau->root_interval(), 0.6180339887498949));
}

TEST_CASE("caret enumeration matches figures") {
    auto tau = ctx_of({1, 1});
    auto shapes = enumerate_carets(*tau);
    REQUIRE(shapes.size() == 2);
    CHECK(shapes[0].legs == std::vector<unsigned>{1, 2});
    CHECK(shapes[1].legs == std::vector<unsigned>{2, 1});

    CHECK(enumerate_carets(*ctx_of({2, 1})).size() == 3); // x^2 + 2x - 1

    auto cubic = enumerate_carets(*ctx_of({1, 0, 1})); // x^3 + x - 1
    REQUIRE(cubic.size() == 2);
    CHECK(cubic[0].legs == std::vector<unsigned>{1, 3});
    CHECK(cubic[1].legs == std::vector<unsigned>{3, 1});
}

TEST_CASE("caret count equals the multinomial coefficient") {
    // Independent big-integer computation of (sum a_i)! / prod a_i!.
    auto reference = [](const std::vector<long>& coeffs) {
        unsigned long total = 0;
        for (long a : coeffs)
            total += static_cast<unsigned long>(a);
        BigInt r = factorial(total);
        for (long a : coeffs)
            r /= factorial(static_cast<unsigned long>(a));
        return r;
    };
    for (std::vector<long> coeffs :
         {std::vector<long>{1, 1}, {2, 1}, {1, 2}, {3, 2}, {2, 2, 2}, {1, 0, 1}, {0, 5}}) {
        std::vector<BigInt> c(coeffs.begin(), coeffs.end());
        SubdivisionPolynomial p(c);
        CHECK(caret_count(p) == reference(coeffs));
        if (caret_count(p) < 500) {
            auto ctx = BetaContext::create(p);
            CHECK(BigInt(enumerate_carets(*ctx).size()) == caret_count(p));
        }
    }
}

TEST_CASE("enumeration cap guards the explosion") {
    auto big = ctx_of({10, 10}); // C(20,10) = 184756 shapes
    CHECK_THROWS_AS(enumerate_carets(*big, 1000), enumeration_cap_error);
    CHECK(enumerate_carets(*big, 200000).size() == 184756);
}

TEST_CASE("each caret's leg powers sum to one") {
    for (auto ctx : {ctx_of({1, 1}), ctx_of({2, 1}), ctx_of({1, 0, 1}), ctx_of({0, 1, 0, 1})}) {
        FieldElem beta = FieldElem::beta(ctx);
        for (const auto& shape : enumerate_carets(*ctx)) {
            FieldElem total = FieldElem::zero(ctx);
            for (unsigned leg : shape.legs)
                total = total + beta.pow(leg);
            CHECK(sign_at_root(total - FieldElem::one(ctx)) == 0);
        }
    }
}

TEST_CASE("quadratic tree-pair definability") {
    CHECK(quadratic_tree_pair_defined(1, 1));
    CHECK(quadratic_tree_pair_defined(1, 2));
    CHECK_FALSE(quadratic_tree_pair_defined(3, 1));
    CHECK_FALSE(quadratic_tree_pair_defined(2, 1));
}

TEST_CASE("exponent gcd and roundtrip") {
    auto check_roundtrip = [](std::vector<long> coeffs) {
        std::vector<BigInt> c(coeffs.begin(), coeffs.end());
        SubdivisionPolynomial p(c);
        ExponentGcd eg = exponent_gcd(p);
        // Substituting x^k into the base must reproduce p coefficient-for-coefficient.
        std::vector<BigInt> rebuilt(p.degree(), BigInt(0));
        for (size_t j = 1; j <= eg.base.degree(); ++j)
            rebuilt[j * eg.k - 1] = eg.base.coeff(j);
        CHECK(SubdivisionPolynomial(rebuilt) == p);
        return eg;
    };

    ExponentGcd quartic = check_roundtrip({0, 1, 0, 1});
    CHECK(quartic.k == 2);
    CHECK(quartic.base == SubdivisionPolynomial({BigInt(1), BigInt(1)}));

    ExponentGcd cubic = check_roundtrip({1, 0, 1});
    CHECK(cubic.k == 1);
    CHECK(cubic.base == SubdivisionPolynomial({BigInt(1), BigInt(0), BigInt(1)}));

    // a x^{2n} + b x^n - 1 reduces to a x^2 + b x - 1
    for (unsigned n : {2u, 3u, 5u}) {
        std::vector<long> coeffs(2 * n, 0);
        coeffs[n - 1] = 7;
        coeffs[2 * n - 1] = 4;
        ExponentGcd eg = check_roundtrip(coeffs);
        CHECK(eg.k == n);
        CHECK(eg.base == SubdivisionPolynomial({BigInt(7), BigInt(4)}));
    }
}

TEST_CASE("rational root detection") {
    auto root = rational_root(SubdivisionPolynomial({BigInt(1), BigInt(2)})); // 2x^2 + x - 1
    REQUIRE(root.has_value());
    CHECK(*root == make_rational(1, 2));

    CHECK_FALSE(rational_root(SubdivisionPolynomial({BigInt(1), BigInt(1)})).has_value());
    CHECK_FALSE(rational_root(SubdivisionPolynomial({BigInt(1), BigInt(3)})).has_value());

    // (n-1)n x^2 + x - 1 = (nx - 1)((n-1)x + 1) has root 1/n
    for (long n = 2; n <= 7; ++n) {
        auto r = rational_root(SubdivisionPolynomial({BigInt(1), BigInt((n - 1) * n)}));
        REQUIRE(r.has_value());
        CHECK(*r == make_rational(1, n));
    }
}

TEST_CASE("quadratics with rational roots have a > b") {
    for (long a = 1; a <= 50; ++a)
        for (long b = 0; b <= 50; ++b) {
            if (a + b < 2)
                continue;
            SubdivisionPolynomial p({BigInt(b), BigInt(a)});
            auto r = rational_root(p);
            if (!r)
                continue;
            CHECK(p.to_poly().eval(*r) == 0);
            CHECK(a > b);
        }
}

TEST_CASE("square-root exclusion reports") {
    ExclusionReport rep = sqrt_membership_quadratic(1, 1);
    CHECK(rep.excluded);
    CHECK(rep.steps.size() >= 4);
    CHECK(sqrt_membership_quadratic(1, 2).excluded);
    CHECK(sqrt_membership_quadratic(2, 1).excluded);

    CHECK(even_root_exclusion(1, 1, 1).excluded);
    CHECK(even_root_exclusion(1, 1, 2).excluded);
    CHECK(even_root_exclusion(2, 3, 1).excluded);
    CHECK_THROWS_AS(sqrt_membership_quadratic(0, 2), invalid_polynomial_error);
}
