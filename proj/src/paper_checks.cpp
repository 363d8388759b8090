#include "betaforge/paper_checks.hpp"

#include <random>
#include <sstream>

#include "betaforge/errors.hpp"
#include "betaforge/treepair.hpp"

namespace betaforge::paper {

namespace {

using Runner = std::function<std::string()>; // returns "" on pass, reason on fail

CheckResult run_one(int id, const std::string& name, const Runner& body) {
    try {
        std::string reason = body();
        return {id, name, reason.empty(), reason};
    } catch (const std::exception& e) {
        return {id, name, false, std::string("exception: ") + e.what()};
    }
}

std::string fmt_vector(const CoeffVector& v) {
    std::ostringstream out;
    out << "(";
    for (size_t i = 0; i < v.size(); ++i)
        out << (i ? "," : "") << v[i].get_str();
    out << ")";
    return out.str();
}

IntMatrix matrix_from_rows(const std::vector<std::vector<long>>& rows) {
    IntMatrix m(rows.size());
    for (size_t i = 0; i < rows.size(); ++i)
        for (size_t j = 0; j < rows.size(); ++j)
            m.at(i, j) = rows[i][j];
    return m;
}

ContextPtr quartic_context(long a, long b) {
    return BetaContext::create({BigInt(0), BigInt(b), BigInt(0), BigInt(a)});
}

// --- criterion 1 -----------------------------------------------------------

std::string check_matrix_fidelity(const CheckOptions& opts) {
    ContextPtr ctx = quartic_context(1, 1);
    SubstitutionMatrix A = build_matrix(ctx);
    IntMatrix built = A.matrix();
    if (opts.corrupt_matrix)
        built.at(0, 0) += 1;
    IntMatrix expected = matrix_from_rows({{0, 1, 0, 0}, {1, 0, 1, 0}, {0, 0, 0, 1}, {1, 0, 0, 0}});
    if (!(built == expected))
        return "substitution matrix differs from the reference entries";
    CoeffVector p{BigInt(-1), BigInt(0), BigInt(1), BigInt(1)};
    CoeffVector ap = betaforge::apply(A, p);
    CoeffVector ap_expected{BigInt(0), BigInt(0), BigInt(1), BigInt(-1)};
    if (ap != ap_expected)
        return "A*p = " + fmt_vector(ap) + ", expected (0,0,1,-1)";
    IntMatrix a4 = matrix_power(A, 4);
    IntMatrix a4_expected =
        matrix_from_rows({{2, 0, 1, 0}, {0, 2, 0, 1}, {1, 0, 1, 0}, {0, 1, 0, 1}});
    if (!(a4 == a4_expected))
        return "A^4 differs from the reference entries";
    return "";
}

// --- criterion 2 -----------------------------------------------------------

std::string check_impossibility_certificate(const CheckOptions& opts) {
    ContextPtr ctx = quartic_context(1, 1);
    CoeffVector p{BigInt(-1), BigInt(0), BigInt(1), BigInt(1)};
    Certificate cert = decide_nonneg(ctx, p, opts.max_n);
    if (cert.kind != Certificate::Kind::impossible)
        return "expected an impossibility certificate, got a different outcome";
    if (cert.cycle_length != 2)
        return "expected cycle period 2, got " + std::to_string(cert.cycle_length);
    if (!verify_certificate(ctx, p, cert))
        return "certificate failed independent verification";
    SubstitutionMatrix A = build_matrix(ctx);
    CoeffVector v = p;
    for (int n = 0; n <= 50; ++n) {
        if (all_nonneg(v))
            return "A^" + std::to_string(n) + " p unexpectedly nonnegative";
        v = betaforge::apply(A, v);
    }
    return "";
}

// --- criterion 3 -----------------------------------------------------------

std::string check_family_sweep(const CheckOptions& opts) {
    // Reference checkerboard pattern taken from the a = b = 1 matrix.
    SubstitutionMatrix ref = build_matrix(quartic_context(1, 1));
    BoolMatrix even_pattern = BoolMatrix::pattern_of(matrix_power(ref, 4));
    for (long a = 1; a <= 5; ++a)
        for (long b = 1; b <= 5; ++b) {
            ContextPtr ctx = quartic_context(a, b);
            SubstitutionMatrix A = build_matrix(ctx);
            CycleInfo cycle = boolean_cycle(A, 64);
            if (cycle.period != 2)
                return "a=" + std::to_string(a) + " b=" + std::to_string(b) +
                       ": expected pattern period 2, got " + std::to_string(cycle.period);
            BoolMatrix p4 = BoolMatrix::pattern_of(matrix_power(A, 4));
            if (!(p4 == even_pattern))
                return "a=" + std::to_string(a) + " b=" + std::to_string(b) +
                       ": A^4 zero pattern is not the alternating reference pattern";
            CoeffVector p{BigInt(-1), BigInt(0), BigInt(b), BigInt(a)};
            Certificate cert = decide_nonneg(ctx, p, opts.max_n);
            if (cert.kind != Certificate::Kind::impossible)
                return "a=" + std::to_string(a) + " b=" + std::to_string(b) +
                       ": expected impossibility for p = " + fmt_vector(p);
            if (!verify_certificate(ctx, p, cert))
                return "a=" + std::to_string(a) + " b=" + std::to_string(b) +
                       ": certificate failed verification";
        }
    return "";
}

// --- criterion 4 -----------------------------------------------------------

std::string check_sqrt_exclusion(const CheckOptions&) {
    for (long a = 1; a <= 10; ++a)
        for (long b = 1; b <= 10; ++b) {
            if (!sqrt_membership_quadratic(a, b).excluded)
                return "sqrt exclusion failed for a=" + std::to_string(a) +
                       " b=" + std::to_string(b);
            for (unsigned n = 1; n <= 4; ++n)
                if (!even_root_exclusion(a, b, n).excluded)
                    return "even-root exclusion failed for a=" + std::to_string(a) + " b=" +
                           std::to_string(b) + " n=" + std::to_string(n);
        }
    return "";
}

// --- criterion 5 -----------------------------------------------------------

std::string check_counterexample_map(const CheckOptions&) {
    PLMap f = counterexample_map(1, 1);
    const ContextPtr& ctx = f.ctx();
    FieldElem gamma = FieldElem::beta(ctx);
    FieldElem zero = FieldElem::zero(ctx), one = FieldElem::one(ctx);
    std::vector<PLMap::Vertex> expected{
        {zero, zero}, {gamma.pow(3), gamma.pow(5)}, {gamma, gamma}, {one, one}};
    if (f.vertices().size() != expected.size())
        return "expected 4 vertices, got " + std::to_string(f.vertices().size());
    for (size_t i = 0; i < expected.size(); ++i)
        if (!(f.vertices()[i].first == expected[i].first) ||
            !(f.vertices()[i].second == expected[i].second))
            return "vertex " + std::to_string(i) + " differs from the reference map";
    std::vector<FieldElem> slopes = f.slopes();
    if (slopes.size() != 3 || !(slopes[0] == gamma.pow(2)) || !(slopes[1] == gamma.pow(-2)) ||
        !(slopes[2] == one))
        return "slopes differ from (beta, beta^-1, 1)";
    MembershipReport own = validate_membership(f, MembershipTarget::own_group);
    if (!own.verdict)
        return "map should belong to the group of its own context";
    MembershipReport base = validate_membership(f, MembershipTarget::square_root_base);
    if (base.verdict)
        return "map must not belong to the base group";
    bool sqrt_flagged = false;
    for (const auto& bp : base.breakpoints)
        if (!bp.ok && bp.point == gamma)
            sqrt_flagged = true;
    if (!sqrt_flagged)
        return "sqrt(beta) was not flagged as an offending breakpoint";
    return "";
}

// --- criterion 6 -----------------------------------------------------------

std::string check_treepair_obstruction(const CheckOptions&) {
    ContextPtr ctx = quartic_context(1, 1);
    FieldElem gamma = FieldElem::beta(ctx);
    Partition target(ctx, {FieldElem::zero(ctx), gamma, FieldElem::one(ctx)});
    bool threw = false;
    try {
        partition_to_tree(target, 12);
    } catch (const unrepresentable_error& e) {
        threw = true;
        if (e.offending_breakpoint != gamma.to_string())
            return "offending breakpoint reported as " + e.offending_breakpoint;
    }
    if (!threw)
        return "partition with sqrt(beta) breakpoint was unexpectedly realized";
    std::vector<CaretShape> shapes = enumerate_carets(*ctx);
    size_t seen = 0;
    std::string bad;
    for_each_tree(shapes, 12, [&](const Tree& t) {
        ++seen;
        for (unsigned d : leaf_depths(t))
            if (d % 2 != 0 && bad.empty())
                bad = "tree with odd leaf depth " + std::to_string(d);
    });
    if (!bad.empty())
        return bad;
    if (seen < 1000)
        return "enumeration looks truncated: only " + std::to_string(seen) + " trees";
    return "";
}

// --- criterion 7 -----------------------------------------------------------

std::string check_tau_relation_family(const CheckOptions&) {
    RelationReport rep = check_ftau_relations(4);
    if (!rep.consistent_order)
        return "no single composition order satisfies the whole relation family";
    for (const auto& c : rep.checks) {
        bool holds = rep.consistent_order == ComposeOrder::left_to_right
                         ? c.holds_left_to_right
                         : c.holds_right_to_left;
        if (!holds)
            return "relation " + c.rel.to_string() + " fails under the recorded order";
    }
    return "";
}

// --- criterion 8 -----------------------------------------------------------

std::string check_f_sanity(const CheckOptions&) {
    ContextPtr ctx = BetaContext::create({BigInt(2)});
    auto q = [&](long num, long den) {
        return FieldElem::rational(ctx, make_rational(num, den));
    };
    Partition domain(ctx, {q(0, 1), q(1, 4), q(1, 2), q(1, 1)});
    Partition codomain(ctx, {q(0, 1), q(1, 2), q(3, 4), q(1, 1)});
    PLMap f = PLMap::from_partition_pair({domain, codomain});
    PLMap ff = compose(f, f);
    std::vector<PLMap::Vertex> expected{{q(0, 1), q(0, 1)},
                                        {q(1, 8), q(1, 2)},
                                        {q(1, 4), q(3, 4)},
                                        {q(1, 2), q(7, 8)},
                                        {q(1, 1), q(1, 1)}};
    if (ff.vertices().size() != expected.size())
        return "f*f has " + std::to_string(ff.vertices().size()) + " vertices, expected 5";
    for (size_t i = 0; i < expected.size(); ++i)
        if (!(ff.vertices()[i].first == expected[i].first) ||
            !(ff.vertices()[i].second == expected[i].second))
            return "f*f vertex " + std::to_string(i) + " differs from the hand-derived map";

    CaretShape caret{{1, 1}};
    Tree left = Tree::node(caret, {Tree::node(caret, {Tree::leaf(), Tree::leaf()}), Tree::leaf()});
    Tree right = Tree::node(caret, {Tree::leaf(), Tree::node(caret, {Tree::leaf(), Tree::leaf()})});
    TreePair tp(ctx, left, right);
    if (!(treepair_to_plmap(tp) == f))
        return "tree pair does not map to the expected element";
    TreePair composed = compose_pairs(tp, tp);
    if (!(treepair_to_plmap(composed) == ff))
        return "tree-pair composition does not match PL-map composition";
    return "";
}

// --- criterion 9 -----------------------------------------------------------

std::string check_caret_combinatorics(const CheckOptions&) {
    for (long a = 1; a <= 12; ++a)
        for (long b = 0; a + b <= 12; ++b) {
            if (a + b < 2)
                continue;
            SubdivisionPolynomial quad({BigInt(b), BigInt(a)});
            if (caret_count(quad) != binomial(a + b, a))
                return "caret count mismatch for a=" + std::to_string(a) +
                       " b=" + std::to_string(b);
            ContextPtr ctx = BetaContext::create(quad);
            if (caret_count(quad) <= 10000) {
                auto shapes = enumerate_carets(*ctx);
                if (BigInt(shapes.size()) != caret_count(quad))
                    return "enumerated shape count mismatch for a=" + std::to_string(a) +
                           " b=" + std::to_string(b);
            }
        }

    ContextPtr tau = tau_context();
    CaretShape s21{{2, 1}}, s12{{1, 2}};
    Tree t1 = Tree::node(s21, {Tree::leaf(), Tree::node(s21, {Tree::leaf(), Tree::leaf()})});
    Tree t2 = Tree::node(s12, {Tree::node(s12, {Tree::leaf(), Tree::leaf()}), Tree::leaf()});
    std::vector<unsigned> expected_depths{2, 3, 2};
    if (leaf_depths(t1) != expected_depths || leaf_depths(t2) != expected_depths)
        return "equivalent-tree leaf depths are not (2,3,2)";
    if (!(tree_to_partition(t1, tau) == tree_to_partition(t2, tau)))
        return "equivalent trees do not cut the same partition";

    ContextPtr cubic = BetaContext::create({BigInt(1), BigInt(0), BigInt(1)});
    CaretShape s31{{3, 1}}, s13{{1, 3}};
    Tree L = Tree::node(
        s31, {Tree::leaf(),
              Tree::node(s31, {Tree::node(s13, {Tree::leaf(), Tree::leaf()}),
                               Tree::node(s31, {Tree::leaf(), Tree::leaf()})})});
    Tree R = Tree::node(
        s13, {Tree::node(s13, {Tree::node(s13, {Tree::leaf(), Tree::leaf()}),
                               Tree::node(s31, {Tree::leaf(), Tree::leaf()})}),
              Tree::leaf()});
    std::vector<unsigned> cubic_depths{3, 5, 7, 5, 3};
    if (leaf_depths(L) != cubic_depths || leaf_depths(R) != cubic_depths)
        return "cubic relation trees do not both have depths (3,5,7,5,3)";
    if (!(tree_to_partition(L, cubic) == tree_to_partition(R, cubic)))
        return "cubic relation trees do not cut the same partition";
    return "";
}

// --- criterion 10 ----------------------------------------------------------

Tree grow_random(Tree t, const std::vector<CaretShape>& shapes, size_t insertions,
                 std::mt19937_64& rng) {
    for (size_t k = 0; k < insertions; ++k) {
        size_t leaves = t.leaf_count();
        size_t target = rng() % leaves;
        const CaretShape& shape = shapes[rng() % shapes.size()];
        // Replace the target leaf with a fresh caret.
        std::function<Tree(const Tree&, size_t&)> insert = [&](const Tree& node,
                                                               size_t& index) -> Tree {
            if (node.is_leaf()) {
                if (index++ == target)
                    return Tree::node(shape, std::vector<Tree>(shape.legs.size()));
                return node;
            }
            std::vector<Tree> children;
            children.reserve(node.children().size());
            for (const auto& c : node.children())
                children.push_back(insert(c, index));
            return Tree::node(node.caret(), std::move(children));
        };
        size_t index = 0;
        t = insert(t, index);
    }
    return t;
}

std::string check_power_functors(const CheckOptions&) {
    ContextPtr tau = tau_context();
    std::vector<CaretShape> shapes = enumerate_carets(*tau);
    std::mt19937_64 rng(0x5eed);
    for (int trial = 0; trial < 200; ++trial) {
        size_t inserts = rng() % 5;
        Tree left = grow_random(Tree::leaf(), shapes, inserts, rng);
        Tree right = grow_random(Tree::leaf(), shapes, inserts, rng);
        TreePair tp(tau, left, right);
        TreePair round = power_map_down(power_map_up(tp, 2), 2);
        if (!(round.left == tp.left) || !(round.right == tp.right))
            return "up/down round trip changed the pair on trial " + std::to_string(trial);
    }
    for (unsigned k : {2u, 3u}) {
        std::vector<BigInt> up_coeffs(2 * k, BigInt(0));
        up_coeffs[k - 1] = 1;
        up_coeffs[2 * k - 1] = 1;
        ContextPtr up_ctx = BetaContext::create(std::move(up_coeffs));
        auto up_shapes = enumerate_carets(*up_ctx);
        auto base_shapes = enumerate_carets(*tau);
        if (up_shapes.size() != base_shapes.size())
            return "caret sets differ in size for k=" + std::to_string(k);
        for (size_t i = 0; i < up_shapes.size(); ++i) {
            CaretShape mapped;
            for (unsigned leg : up_shapes[i].legs) {
                if (leg % k != 0)
                    return "indivisible leg in k=" + std::to_string(k) + " caret";
                mapped.legs.push_back(leg / k);
            }
            if (!(mapped == base_shapes[i]))
                return "caret bijection broken for k=" + std::to_string(k);
        }
    }
    return "";
}

// --- criterion 11 ----------------------------------------------------------

std::string check_root_isolation(const CheckOptions&) {
    BigInt scale = int_pow(BigInt(10), 40);
    BigInt scale2 = scale * scale;
    BigRational tau_ref = make_rational(isqrt(5 * scale2) - scale, 2 * scale);
    BigRational sqrt2_ref = make_rational(isqrt(2 * scale2) - scale, scale);
    // gamma = sqrt(tau): with tau ~ tnum/tden, gamma ~ isqrt(tnum*tden)/tden.
    BigRational gamma_ref =
        make_rational(isqrt(tau_ref.get_num() * tau_ref.get_den()), tau_ref.get_den());

    BigRational tolerance = make_rational(1, int_pow(BigInt(10), 12));
    BigRational width = make_rational(1, int_pow(BigInt(10), 14));
    struct Case {
        std::vector<BigInt> coeffs;
        BigRational ref;
        const char* name;
    };
    std::vector<Case> cases{{{BigInt(1), BigInt(1)}, tau_ref, "x^2+x-1"},
                            {{BigInt(2), BigInt(1)}, sqrt2_ref, "x^2+2x-1"},
                            {{BigInt(0), BigInt(1), BigInt(0), BigInt(1)}, gamma_ref, "x^4+x^2-1"}};
    for (const auto& c : cases) {
        ContextPtr ctx = BetaContext::create(c.coeffs);
        RootInterval enc = FieldElem::beta(ctx).approx(width);
        BigRational err = abs(enc.midpoint() - c.ref);
        if (err > tolerance)
            return std::string("root of ") + c.name + " misses reference by " +
                   format_rational(err);
    }

    // The square of the quartic root is exactly the quadratic root under the
    // even-coordinate identification.
    ContextPtr quartic = quartic_context(1, 1);
    FieldElem gamma_sq = FieldElem::beta(quartic).pow(2);
    const auto& coeffs = gamma_sq.coeffs();
    if (coeffs[1] != 0 || coeffs[3] != 0)
        return "gamma^2 has odd coordinates";
    ContextPtr tau = tau_context();
    FieldElem mapped(tau, {coeffs[0], coeffs[2]});
    if (!(mapped == FieldElem::beta(tau)))
        return "gamma^2 does not map to tau exactly";
    return "";
}

// --- criterion 12 ----------------------------------------------------------

std::string check_presentation_emission(const CheckOptions&) {
    std::vector<Relation> rels = emit_presentation(1, 1, 3);
    if (rels.empty())
        return "no relations emitted";
    RelationReport rep = check_tau_relations(rels);
    for (const auto& c : rep.checks)
        if (!c.holds_left_to_right && !c.holds_right_to_left)
            return "relation " + c.rel.to_string() + " holds under neither reading order";
    bool threw = false;
    try {
        emit_presentation(2, 1, 2);
    } catch (const not_tree_pair_definable_error&) {
        threw = true;
    }
    if (!threw)
        return "emit_presentation(2,1,...) did not raise the definability error";
    return "";
}

} // namespace

std::vector<CheckResult> run_paper_checks(const CheckOptions& opts) {
    std::vector<CheckResult> results;
    results.push_back(run_one(1, "matrix fidelity", [&] { return check_matrix_fidelity(opts); }));
    results.push_back(run_one(2, "impossibility certificate",
                              [&] { return check_impossibility_certificate(opts); }));
    results.push_back(run_one(3, "quartic family sweep", [&] { return check_family_sweep(opts); }));
    results.push_back(
        run_one(4, "square-root exclusion", [&] { return check_sqrt_exclusion(opts); }));
    results.push_back(
        run_one(5, "counterexample map", [&] { return check_counterexample_map(opts); }));
    results.push_back(
        run_one(6, "tree-pair obstruction", [&] { return check_treepair_obstruction(opts); }));
    results.push_back(
        run_one(7, "tau relation family", [&] { return check_tau_relation_family(opts); }));
    results.push_back(run_one(8, "dyadic sanity", [&] { return check_f_sanity(opts); }));
    results.push_back(
        run_one(9, "caret combinatorics", [&] { return check_caret_combinatorics(opts); }));
    results.push_back(run_one(10, "power functors", [&] { return check_power_functors(opts); }));
    results.push_back(run_one(11, "root isolation", [&] { return check_root_isolation(opts); }));
    results.push_back(
        run_one(12, "presentation emission", [&] { return check_presentation_emission(opts); }));
    return results;
}

bool all_passed(const std::vector<CheckResult>& results) {
    for (const auto& r : results)
        if (!r.pass)
            return false;
    return true;
}

} // namespace betaforge::paper
