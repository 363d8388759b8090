#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "betaforge/errors.hpp"
#include "betaforge/representability.hpp"
#include "betaforge/serialize.hpp"
#include "oracle.hpp"

using namespace betaforge;

namespace {

ContextPtr quartic_ctx() {
    return BetaContext::create({BigInt(0), BigInt(1), BigInt(0), BigInt(1)});
}

IntMatrix rows(std::vector<std::vector<long>> r) {
    IntMatrix m(r.size());
    for (size_t i = 0; i < r.size(); ++i)
        for (size_t j = 0; j < r.size(); ++j)
            m.at(i, j) = r[i][j];
    return m;
}

CoeffVector vec(std::vector<long> v) { return CoeffVector(v.begin(), v.end()); }

// Real value of a coefficient vector: sum of entries times lambda^(n-1-i) for
// lambda the reciprocal root.
double value_of(const ContextPtr& ctx, const CoeffVector& v) {
    double lambda = 1.0 / oracle::midpoint(ctx->refine(ctx->root_interval(),
                                                       make_rational(1, BigInt(1) << 40)));
    double acc = 0;
    for (size_t i = 0; i < v.size(); ++i)
        acc += to_double(BigRational(v[i])) * std::pow(lambda, double(v.size() - 1 - i));
    return acc;
}

} // namespace

TEST_CASE("substitution matrix for the quartic counterexample") {
    SubstitutionMatrix A = build_matrix(quartic_ctx());
    CHECK(A.matrix() == rows({{0, 1, 0, 0}, {1, 0, 1, 0}, {0, 0, 0, 1}, {1, 0, 0, 0}}));

    CHECK(betaforge::apply(A, vec({-1, 0, 1, 1})) == vec({0, 0, 1, -1}));
    CHECK(betaforge::apply(A, vec({0, 0, 0, 0})) == vec({0, 0, 0, 0}));

    CHECK(matrix_power(A, 4) == rows({{2, 0, 1, 0}, {0, 2, 0, 1}, {1, 0, 1, 0}, {0, 1, 0, 1}}));
    CHECK(matrix_power(A, 0) == IntMatrix::identity(4));

    // Repeated application of A to e4 extracts the first column of A^4.
    CoeffVector e4 = vec({0, 0, 0, 1});
    CoeffVector v = e4;
    for (int i = 0; i < 4; ++i)
        v = betaforge::apply(A, v);
    IntMatrix a4 = matrix_power(A, 4);
    for (size_t r = 0; r < 4; ++r)
        CHECK(v[r] == a4.at(r, 3));
}

TEST_CASE("matrices for the golden-ratio and linear contexts") {
    auto tau = BetaContext::create({BigInt(1), BigInt(1)});
    SubstitutionMatrix At = build_matrix(tau);
    CHECK(At.matrix() == rows({{1, 1}, {1, 0}})); // lambda^2 = lambda + 1

    auto linear = BetaContext::create({BigInt(2)});
    SubstitutionMatrix Al = build_matrix(linear);
    CHECK(Al.matrix() == rows({{2}})); // lambda = 2
}

TEST_CASE("general even quartic follows the reciprocal derivation") {
    // For a x^4 + b x^2 - 1 the reciprocal relation is lambda^4 = b lambda^2 + a,
    // giving first column (0, b, 0, a).
    for (long a = 1; a <= 5; ++a)
        for (long b = 1; b <= 5; ++b) {
            auto ctx = BetaContext::create({BigInt(0), BigInt(b), BigInt(0), BigInt(a)});
            SubstitutionMatrix A = build_matrix(ctx);
            CHECK(A.matrix() == rows({{0, 1, 0, 0}, {b, 0, 1, 0}, {0, 0, 0, 1}, {a, 0, 0, 0}}));
            // A^4 keeps the alternating zero placement of the a = b = 1 case.
            IntMatrix a4 = matrix_power(A, 4);
            for (size_t i = 0; i < 4; ++i)
                for (size_t j = 0; j < 4; ++j)
                    CHECK((a4.at(i, j) == 0) == ((i + j) % 2 == 1));
        }
}

TEST_CASE("applying A multiplies the represented value by lambda") {
    std::mt19937_64 rng(41);
    for (auto ctx : {quartic_ctx(), BetaContext::create({BigInt(1), BigInt(1)}),
                     BetaContext::create({BigInt(3), BigInt(2), BigInt(1)})}) {
        SubstitutionMatrix A = build_matrix(ctx);
        double lambda =
            1.0 / oracle::midpoint(ctx->refine(ctx->root_interval(),
                                               make_rational(1, BigInt(1) << 40)));
        for (int trial = 0; trial < 20; ++trial) {
            CoeffVector v(ctx->degree());
            for (auto& e : v)
                e = static_cast<long>(rng() % 19) - 9;
            double before = value_of(ctx, v);
            double after = value_of(ctx, betaforge::apply(A, v));
            CHECK(after == doctest::Approx(lambda * before).epsilon(1e-9));
        }
    }
}

TEST_CASE("matrix powers multiply exactly") {
    std::mt19937_64 rng(17);
    SubstitutionMatrix A = build_matrix(quartic_ctx());
    for (int trial = 0; trial < 10; ++trial) {
        unsigned long m = rng() % 9, n = rng() % 9;
        CHECK(matrix_power(A, m + n) == matrix_power(A, m) * matrix_power(A, n));
    }
}

TEST_CASE("boolean powers track exact zero patterns") {
    for (auto ctx : {quartic_ctx(), BetaContext::create({BigInt(1), BigInt(1)}),
                     BetaContext::create({BigInt(0), BigInt(2), BigInt(5)})}) {
        SubstitutionMatrix A = build_matrix(ctx);
        BoolMatrix base = BoolMatrix::pattern_of(A.matrix());
        BoolMatrix cur = base;
        for (unsigned long n = 2; n <= 20; ++n) {
            cur = cur * base;
            CHECK(cur == BoolMatrix::pattern_of(matrix_power(A, n)));
        }
    }
}

TEST_CASE("boolean cycle detection") {
    CycleInfo quartic = boolean_cycle(build_matrix(quartic_ctx()), 64);
    CHECK(quartic.start == 4);
    CHECK(quartic.period == 2);

    // The golden-ratio companion matrix is primitive: all-ones pattern, period 1.
    CycleInfo tau = boolean_cycle(build_matrix(BetaContext::create({BigInt(1), BigInt(1)})), 64);
    CHECK(tau.period == 1);
    CHECK(tau.start <= 3);

    CycleInfo linear = boolean_cycle(build_matrix(BetaContext::create({BigInt(3)})), 64);
    CHECK(linear.start == 1);
    CHECK(linear.period == 1);

    CHECK_THROWS_AS(boolean_cycle(build_matrix(quartic_ctx()), 2), no_cycle_error);
}

TEST_CASE("decide_nonneg: the flagship impossibility") {
    auto ctx = quartic_ctx();
    CoeffVector p = vec({-1, 0, 1, 1});
    Certificate cert = decide_nonneg(ctx, p, 256);
    REQUIRE(cert.kind == Certificate::Kind::impossible);
    CHECK(cert.cycle_length == 2);
    CHECK(verify_certificate(ctx, p, cert));

    // Alternating support patterns over the cycle.
    REQUIRE(cert.pos_support.size() == 2);
    CHECK(cert.pos_support[0] != cert.pos_support[1]);
    CHECK(cert.neg_support[0] != cert.neg_support[1]);
    for (size_t m = 0; m < 2; ++m)
        for (size_t i = 0; i < 4; ++i)
            CHECK((cert.pos_support[m][i] & cert.neg_support[m][i]) == 0);

    // Direct iteration: some entry stays negative for every N <= 50.
    SubstitutionMatrix A = build_matrix(ctx);
    CoeffVector v = p;
    for (int n = 0; n <= 50; ++n) {
        CHECK_FALSE(all_nonneg(v));
        v = betaforge::apply(A, v);
    }
}

TEST_CASE("decide_nonneg: witnesses") {
    auto ctx = quartic_ctx();
    Certificate c0 = decide_nonneg(ctx, vec({0, 0, 0, 1}), 256);
    REQUIRE(c0.kind == Certificate::Kind::witness);
    CHECK(c0.witness_n == 0);
    CHECK(verify_certificate(ctx, vec({0, 0, 0, 1}), c0));

    auto tau = BetaContext::create({BigInt(1), BigInt(1)});
    // lambda - 1 = 1/tau - 1 = tau > 0: one application lands at (0, 1).
    Certificate c1 = decide_nonneg(tau, vec({1, -1}), 256);
    REQUIRE(c1.kind == Certificate::Kind::witness);
    CHECK(c1.witness_n == 1);
    CHECK(c1.witness_vector == vec({0, 1}));
    CHECK(verify_certificate(tau, vec({1, -1}), c1));
}

TEST_CASE("decide_nonneg: inconclusive under a tiny bound") {
    auto ctx = quartic_ctx();
    Certificate cert = decide_nonneg(ctx, vec({-1, 0, 1, 1}), 1);
    CHECK(cert.kind == Certificate::Kind::inconclusive);
    CHECK(cert.bound == 1);
    CHECK(verify_certificate(ctx, vec({-1, 0, 1, 1}), cert));
}

TEST_CASE("tampered certificates are rejected") {
    auto ctx = quartic_ctx();
    CoeffVector p = vec({0, 0, 0, 1});
    Certificate good = decide_nonneg(ctx, p, 16);
    Certificate bad = good;
    bad.witness_n = 1;
    CHECK_FALSE(verify_certificate(ctx, p, bad));
    bad = good;
    bad.witness_vector[0] = 5;
    CHECK_FALSE(verify_certificate(ctx, p, bad));

    CoeffVector q = vec({-1, 0, 1, 1});
    Certificate imp = decide_nonneg(ctx, q, 256);
    Certificate tampered = imp;
    tampered.cycle_length = 1;
    tampered.pos_support.resize(1);
    tampered.neg_support.resize(1);
    CHECK_FALSE(verify_certificate(ctx, q, tampered));
    tampered = imp;
    tampered.pos_support[0][0] ^= 1;
    CHECK_FALSE(verify_certificate(ctx, q, tampered));
    // A witness claim for a vector that is never nonnegative must fail.
    Certificate fake;
    fake.kind = Certificate::Kind::witness;
    fake.witness_n = 3;
    fake.witness_vector = q;
    CHECK_FALSE(verify_certificate(ctx, q, fake));
}

TEST_CASE("decide and verify agree on random inputs") {
    std::mt19937_64 rng(2718);
    std::vector<ContextPtr> ctxs{quartic_ctx(), BetaContext::create({BigInt(1), BigInt(1)}),
                                 BetaContext::create({BigInt(2), BigInt(0), BigInt(1)})};
    for (int trial = 0; trial < 60; ++trial) {
        const auto& ctx = ctxs[trial % ctxs.size()];
        CoeffVector p(ctx->degree());
        bool nonzero = false;
        for (auto& e : p) {
            e = static_cast<long>(rng() % 7) - 3;
            nonzero = nonzero || e != 0;
        }
        if (!nonzero)
            p[0] = 1;
        Certificate cert = decide_nonneg(ctx, p, 64);
        CHECK(verify_certificate(ctx, p, cert));
        if (cert.kind == Certificate::Kind::impossible) {
            SubstitutionMatrix A = build_matrix(ctx);
            CoeffVector v = p;
            for (int n = 0; n <= 30; ++n) {
                CHECK_FALSE(all_nonneg(v));
                v = betaforge::apply(A, v);
            }
        }
    }
}

TEST_CASE("certificates stay sound across random contexts and vectors") {
    std::mt19937_64 rng(987654321);
    int impossible = 0, witness = 0;
    for (int trial = 0; trial < 600; ++trial) {
        size_t deg = 1 + rng() % 5;
        std::vector<BigInt> coeffs(deg);
        for (auto& c : coeffs)
            c = rng() % 4;
        if (coeffs.back() == 0)
            coeffs.back() = 1;
        ContextPtr ctx;
        try {
            ctx = BetaContext::create(coeffs);
        } catch (const invalid_polynomial_error&) {
            continue;
        }
        CoeffVector p(deg);
        bool nonzero = false;
        for (auto& e : p) {
            e = static_cast<long>(rng() % 9) - 4;
            nonzero = nonzero || e != 0;
        }
        if (!nonzero)
            p[0] = 1;
        Certificate cert = decide_nonneg(ctx, p, 48);
        REQUIRE(verify_certificate(ctx, p, cert));
        SubstitutionMatrix A = build_matrix(ctx);
        if (cert.kind == Certificate::Kind::impossible) {
            ++impossible;
            CoeffVector v = p;
            for (int n = 0; n <= 60; ++n) {
                REQUIRE_FALSE(all_nonneg(v));
                v = betaforge::apply(A, v);
            }
        } else if (cert.kind == Certificate::Kind::witness) {
            ++witness;
        }
    }
    // Both outcomes must actually occur for the sweep to mean anything.
    CHECK(impossible > 50);
    CHECK(witness > 50);
}

TEST_CASE("certificate JSON round trip") {
    auto ctx = quartic_ctx();
    CoeffVector p = vec({-1, 0, 1, 1});
    Certificate cert = decide_nonneg(ctx, p, 256);
    json j = certificate_to_json(ctx, p, cert);
    CHECK(j.at("kind") == "impossible");
    CertificateBundle back = certificate_from_json(j);
    CHECK(back.vector == p);
    CHECK(back.cert.cycle_length == cert.cycle_length);
    CHECK(back.cert.cycle_start == cert.cycle_start);
    CHECK(verify_certificate(back.ctx, back.vector, back.cert));

    Certificate w = decide_nonneg(ctx, vec({0, 0, 0, 1}), 16);
    CertificateBundle wb = certificate_from_json(certificate_to_json(ctx, vec({0, 0, 0, 1}), w));
    CHECK(verify_certificate(wb.ctx, wb.vector, wb.cert));
}

TEST_CASE("dimension mismatches are rejected") {
    auto ctx = quartic_ctx();
    SubstitutionMatrix A = build_matrix(ctx);
    CHECK_THROWS_AS(betaforge::apply(A, vec({1, 2})), dimension_mismatch_error);
    CHECK_THROWS_AS(decide_nonneg(ctx, vec({1, 2}), 8), dimension_mismatch_error);
}
