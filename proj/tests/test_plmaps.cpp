#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "betaforge/errors.hpp"
#include "betaforge/plmap.hpp"
#include "betaforge/serialize.hpp"
#include "oracle.hpp"

using namespace betaforge;

namespace {

ContextPtr f_ctx() { return BetaContext::create({BigInt(2)}); }

FieldElem q(const ContextPtr& ctx, long num, long den) {
    return FieldElem::rational(ctx, make_rational(num, den));
}

PLMap x01_map(const ContextPtr& ctx) {
    Partition domain(ctx, {q(ctx, 0, 1), q(ctx, 1, 4), q(ctx, 1, 2), q(ctx, 1, 1)});
    Partition codomain(ctx, {q(ctx, 0, 1), q(ctx, 1, 2), q(ctx, 3, 4), q(ctx, 1, 1)});
    return PLMap::from_partition_pair({domain, codomain});
}

// Random dyadic-breakpoint map: a chain of random refinements on both sides.
PLMap random_map(const ContextPtr& ctx, std::mt19937_64& rng) {
    auto random_partition = [&](size_t cuts) {
        std::vector<BigRational> pts{BigRational(0), BigRational(1)};
        for (size_t i = 0; i < cuts; ++i) {
            size_t cell = rng() % (pts.size() - 1);
            pts.insert(pts.begin() + cell + 1, (pts[cell] + pts[cell + 1]) / 2);
        }
        std::vector<FieldElem> out;
        for (const auto& p : pts)
            out.push_back(FieldElem::rational(ctx, p));
        return out;
    };
    size_t cuts = rng() % 4 + 1;
    Partition domain(ctx, random_partition(cuts));
    Partition codomain(ctx, random_partition(cuts));
    return PLMap::from_partition_pair({domain, codomain});
}

} // namespace

TEST_CASE("from_partition_pair reproduces the reference element") {
    auto ctx = f_ctx();
    PLMap f = x01_map(ctx);
    REQUIRE(f.vertices().size() == 4);
    CHECK(f.vertices()[1].first == q(ctx, 1, 4));
    CHECK(f.vertices()[1].second == q(ctx, 1, 2));
    CHECK(f.vertices()[2].first == q(ctx, 1, 2));
    CHECK(f.vertices()[2].second == q(ctx, 3, 4));

    // identical partitions collapse to the identity
    Partition p(ctx, {q(ctx, 0, 1), q(ctx, 1, 4), q(ctx, 1, 1)});
    CHECK(PLMap::from_partition_pair({p, p}) == PLMap::identity(ctx));
}

TEST_CASE("redundant breakpoints are removed in canonical form") {
    auto ctx = f_ctx();
    // Extra breakpoint at 1/8 -> 1/4 lies on the first segment of slope 2.
    Partition domain(ctx, {q(ctx, 0, 1), q(ctx, 1, 8), q(ctx, 1, 4), q(ctx, 1, 2), q(ctx, 1, 1)});
    Partition codomain(ctx, {q(ctx, 0, 1), q(ctx, 1, 4), q(ctx, 1, 2), q(ctx, 3, 4), q(ctx, 1, 1)});
    PLMap f = PLMap::from_partition_pair({domain, codomain});
    CHECK(f == x01_map(ctx));
    for (size_t i = 0; i + 1 < f.slopes().size(); ++i)
        CHECK_FALSE(f.slopes()[i] == f.slopes()[i + 1]);
}

TEST_CASE("evaluation is exact piecewise interpolation") {
    auto ctx = f_ctx();
    PLMap f = x01_map(ctx);
    CHECK(f.eval(q(ctx, 0, 1)) == q(ctx, 0, 1));
    CHECK(f.eval(q(ctx, 1, 8)) == q(ctx, 1, 4));
    CHECK(f.eval(q(ctx, 1, 4)) == q(ctx, 1, 2));
    CHECK(f.eval(q(ctx, 3, 8)) == q(ctx, 5, 8));
    CHECK(f.eval(q(ctx, 3, 4)) == q(ctx, 7, 8));
    CHECK(f.eval(q(ctx, 1, 1)) == q(ctx, 1, 1));
    CHECK_THROWS_AS(f.eval(q(ctx, 3, 2)), error);
}

TEST_CASE("composition matches hand-derived values") {
    auto ctx = f_ctx();
    PLMap f = x01_map(ctx);

    CHECK(compose(f, f.inverse()) == PLMap::identity(ctx));
    CHECK(compose(f.inverse(), f) == PLMap::identity(ctx));
    CHECK(compose(PLMap::identity(ctx), f) == f);
    CHECK(compose(f, PLMap::identity(ctx)) == f);

    PLMap ff = compose(f, f);
    REQUIRE(ff.vertices().size() == 5);
    CHECK(ff.vertices()[1].first == q(ctx, 1, 8));
    CHECK(ff.vertices()[1].second == q(ctx, 1, 2));
    CHECK(ff.vertices()[2].first == q(ctx, 1, 4));
    CHECK(ff.vertices()[2].second == q(ctx, 3, 4));
    CHECK(ff.vertices()[3].first == q(ctx, 1, 2));
    CHECK(ff.vertices()[3].second == q(ctx, 7, 8));
}

TEST_CASE("inversion swaps coordinates") {
    auto ctx = f_ctx();
    PLMap f = x01_map(ctx);
    PLMap inv = f.inverse();
    CHECK(inv.vertices()[1].first == q(ctx, 1, 2));
    CHECK(inv.vertices()[1].second == q(ctx, 1, 4));
    CHECK(inv.vertices()[2].first == q(ctx, 3, 4));
    CHECK(inv.vertices()[2].second == q(ctx, 1, 2));
    CHECK(PLMap::identity(ctx).inverse() == PLMap::identity(ctx));
}

TEST_CASE("canonical form still evaluates like the raw partition pair") {
    std::mt19937_64 rng(5150);
    auto ctx = f_ctx();
    for (int trial = 0; trial < 10; ++trial) {
        PLMap f = random_map(ctx, rng);
        // Rebuild the map from its own vertex list with extra redundant points
        // and evaluate both at the midpoints of every cell.
        std::vector<PLMap::Vertex> verts = f.vertices();
        PLMap rebuilt = PLMap::from_vertices(ctx, verts);
        CHECK(rebuilt == f);
        for (size_t i = 0; i + 1 < verts.size(); ++i) {
            FieldElem mid =
                (verts[i].first + verts[i + 1].first) * q(ctx, 1, 2);
            FieldElem expected = verts[i].second +
                                 (mid - verts[i].first) *
                                     (verts[i + 1].second - verts[i].second) /
                                     (verts[i + 1].first - verts[i].first);
            CHECK(f.eval(mid) == expected);
        }
    }
}

TEST_CASE("group axioms on random maps") {
    std::mt19937_64 rng(1234);
    auto ctx = f_ctx();
    for (int trial = 0; trial < 15; ++trial) {
        PLMap a = random_map(ctx, rng), b = random_map(ctx, rng), c = random_map(ctx, rng);
        CHECK(compose(compose(a, b), c) == compose(a, compose(b, c)));
        CHECK(compose(a, a.inverse()) == PLMap::identity(ctx));
        CHECK(compose(a.inverse(), a) == PLMap::identity(ctx));
        CHECK(compose(a, PLMap::identity(ctx)) == a);
    }
}

TEST_CASE("membership of the reference element in the dyadic group") {
    PLMap f = x01_map(f_ctx());
    MembershipReport rep = validate_membership(f, MembershipTarget::own_group);
    CHECK(rep.verdict);
    REQUIRE(rep.slopes.size() == 3);
    CHECK(rep.slopes[0].exponent == -1); // slope 2 = beta^-1 for beta = 1/2
    CHECK(rep.slopes[1].exponent == 0);
    CHECK(rep.slopes[2].exponent == 1);
}

TEST_CASE("membership rejects non-dyadic data") {
    auto ctx = f_ctx();
    // Slope 3/2 on [0, 1/3]: neither slope nor breakpoint is dyadic.
    PLMap f = PLMap::from_vertices(
        ctx, {{q(ctx, 0, 1), q(ctx, 0, 1)}, {q(ctx, 1, 3), q(ctx, 1, 2)}, {q(ctx, 1, 1), q(ctx, 1, 1)}});
    MembershipReport rep = validate_membership(f, MembershipTarget::own_group);
    CHECK_FALSE(rep.verdict);
    CHECK_FALSE(rep.slopes_ok);
    CHECK_FALSE(rep.breakpoints_ok);
    REQUIRE(rep.first_offending_breakpoint.has_value());
    CHECK(*rep.first_offending_breakpoint == q(ctx, 1, 3));
}

TEST_CASE("unsupported subrings are reported") {
    auto ctx = BetaContext::create({BigInt(1), BigInt(2)}); // 2x^2 + x - 1, non-monic
    PLMap id = PLMap::identity(ctx);
    CHECK_THROWS_AS(validate_membership(id, MembershipTarget::own_group),
                    unsupported_subring_error);
    CHECK_THROWS_AS(validate_membership(PLMap::identity(tau_context()),
                                        MembershipTarget::square_root_base),
                    unsupported_subring_error);
}

TEST_CASE("tau generators have the derived vertices") {
    auto ctx = tau_context();
    FieldElem t = FieldElem::beta(ctx);
    FieldElem one = FieldElem::one(ctx);

    PLMap x0 = ftau_generator(GeneratorKind::x, 0);
    REQUIRE(x0.vertices().size() == 4);
    CHECK(x0.vertices()[1].first == t.pow(4));
    CHECK(x0.vertices()[1].second == t.pow(2));
    CHECK(x0.vertices()[2].first == t.pow(2)); // 1 - tau = tau^2
    CHECK(x0.vertices()[2].second == t);

    PLMap y0 = ftau_generator(GeneratorKind::y, 0);
    REQUIRE(y0.vertices().size() == 3);
    CHECK(y0.vertices()[1].first == t.pow(2));
    CHECK(y0.vertices()[1].second == t);
    auto y0_slopes = y0.slopes();
    CHECK(y0_slopes[0] == t.pow(-1));
    CHECK(y0_slopes[1] == t);

    // x_i fixes [0, 1 - tau^i] pointwise.
    PLMap x3 = ftau_generator(GeneratorKind::x, 3);
    FieldElem cutoff = one - t.pow(3);
    CHECK(x3.eval(FieldElem::zero(ctx)) == FieldElem::zero(ctx));
    CHECK(x3.eval(cutoff) == cutoff);
    CHECK(x3.eval(cutoff * FieldElem::rational(ctx, make_rational(1, 2))) ==
          cutoff * FieldElem::rational(ctx, make_rational(1, 2)));
}

TEST_CASE("tau generators: continuity, slopes, membership") {
    auto ctx = tau_context();
    FieldElem t = FieldElem::beta(ctx);
    std::vector<FieldElem> allowed{t.pow(-2), t.pow(-1), FieldElem::one(ctx), t};
    for (unsigned i = 0; i <= 4; ++i) {
        for (GeneratorKind kind : {GeneratorKind::x, GeneratorKind::y}) {
            PLMap g = ftau_generator(kind, i);
            for (const auto& s : g.slopes()) {
                bool found = false;
                for (const auto& a : allowed)
                    found = found || s == a;
                CHECK(found);
            }
            MembershipReport rep = validate_membership(g, MembershipTarget::own_group);
            CHECK(rep.verdict);
            // Inverse composes to the identity.
            CHECK(compose(g, g.inverse()) == PLMap::identity(ctx));
        }
    }
}

TEST_CASE("counterexample map reproduces the reference construction") {
    PLMap f = counterexample_map(1, 1);
    const ContextPtr& ctx = f.ctx();
    FieldElem g = FieldElem::beta(ctx);

    REQUIRE(f.vertices().size() == 4);
    CHECK(f.vertices()[1].first == g.pow(3));  // tau^(3/2)
    CHECK(f.vertices()[1].second == g.pow(5)); // tau^(5/2)
    CHECK(f.vertices()[2].first == g);         // sqrt(tau)
    CHECK(f.vertices()[2].second == g);

    auto slopes = f.slopes();
    REQUIRE(slopes.size() == 3);
    CHECK(slopes[0] == g.pow(2));  // tau
    CHECK(slopes[1] == g.pow(-2)); // tau^-1
    CHECK(slopes[2] == FieldElem::one(ctx));

    CHECK(validate_membership(f, MembershipTarget::own_group).verdict);
    MembershipReport base = validate_membership(f, MembershipTarget::square_root_base);
    CHECK_FALSE(base.verdict);
    bool sqrt_offends = false;
    for (const auto& bp : base.breakpoints)
        sqrt_offends = sqrt_offends || (!bp.ok && bp.point == g);
    CHECK(sqrt_offends);
}

TEST_CASE("counterexample arrangements are validated") {
    CHECK_THROWS_AS(counterexample_map(1, 1, CellArrangement{{3, 5, 0}, {3, 5, 0}}),
                    invalid_arrangement_error);
    CHECK_THROWS_AS(counterexample_map(1, 1, CellArrangement{{3, 0, 5}, {5, 3, 0}}),
                    invalid_arrangement_error);
    CHECK_THROWS_AS(counterexample_map(1, 1, CellArrangement{{3, 3, 0}, {5, 3, 0}}),
                    invalid_arrangement_error);

    // (1,2): all slopes even powers of gamma, sqrt(beta) still a breakpoint.
    PLMap f = counterexample_map(1, 2);
    MembershipReport own = validate_membership(f, MembershipTarget::own_group);
    CHECK(own.verdict);
    MembershipReport base = validate_membership(f, MembershipTarget::square_root_base);
    for (const auto& s : base.slopes) {
        REQUIRE(s.exponent.has_value());
        CHECK(*s.exponent % 2 == 0);
        CHECK(s.ok);
    }
    CHECK_FALSE(base.verdict);
}

TEST_CASE("PL map JSON round trip") {
    auto ctx = f_ctx();
    PLMap f = x01_map(ctx);
    PLMap back = plmap_from_json(plmap_to_json(f));
    CHECK(back == f);

    PLMap c = counterexample_map(2, 3);
    CHECK(plmap_from_json(plmap_to_json(c)) == c);
}
