#include "betaforge/plmap.hpp"

#include <algorithm>
#include <cmath>

#include "betaforge/errors.hpp"

namespace betaforge {

Partition::Partition(ContextPtr ctx, std::vector<FieldElem> points)
    : ctx_(std::move(ctx)), pts_(std::move(points)) {
    if (pts_.size() < 2)
        throw error("partition needs at least the two endpoints");
    for (const auto& p : pts_)
        if (!p.ctx()->same_group(*ctx_))
            throw context_mismatch_error("partition point from a different context");
    if (!(pts_.front() == FieldElem::zero(ctx_)))
        throw error("partition must start at 0");
    if (!(pts_.back() == FieldElem::one(ctx_)))
        throw error("partition must end at 1");
    for (size_t i = 0; i + 1 < pts_.size(); ++i)
        if (!(pts_[i] < pts_[i + 1]))
            throw error("partition breakpoints must strictly increase");
}

bool Partition::operator==(const Partition& rhs) const {
    if (!ctx_->same_group(*rhs.ctx_) || pts_.size() != rhs.pts_.size())
        return false;
    for (size_t i = 0; i < pts_.size(); ++i)
        if (!(pts_[i] == rhs.pts_[i]))
            return false;
    return true;
}

namespace {

// Slope equality of segments (a,b) and (b,c) by cross multiplication, no division.
bool collinear(const PLMap::Vertex& a, const PLMap::Vertex& b, const PLMap::Vertex& c) {
    FieldElem lhs = (b.second - a.second) * (c.first - b.first);
    FieldElem rhs = (c.second - b.second) * (b.first - a.first);
    return (lhs - rhs).sign() == 0;
}

std::vector<PLMap::Vertex> canonicalize(std::vector<PLMap::Vertex> verts) {
    // Drop exact duplicates (degenerate pieces), then collapse collinear runs.
    std::vector<PLMap::Vertex> dedup;
    for (auto& v : verts) {
        if (!dedup.empty() && dedup.back().first == v.first && dedup.back().second == v.second)
            continue;
        dedup.push_back(std::move(v));
    }
    if (dedup.size() <= 2)
        return dedup;
    std::vector<PLMap::Vertex> out;
    out.push_back(dedup.front());
    for (size_t i = 1; i + 1 < dedup.size(); ++i) {
        if (!collinear(out.back(), dedup[i], dedup[i + 1]))
            out.push_back(dedup[i]);
    }
    out.push_back(dedup.back());
    return out;
}

} // namespace

PLMap::PLMap(ContextPtr ctx, std::vector<Vertex> verts)
    : ctx_(std::move(ctx)), verts_(std::move(verts)) {
    if (verts_.size() < 2)
        throw error("PL map needs at least the endpoints");
    if (!(verts_.front().first == FieldElem::zero(ctx_)) ||
        !(verts_.front().second == FieldElem::zero(ctx_)))
        throw error("PL map must fix 0");
    if (!(verts_.back().first == FieldElem::one(ctx_)) ||
        !(verts_.back().second == FieldElem::one(ctx_)))
        throw error("PL map must fix 1");
    for (size_t i = 0; i + 1 < verts_.size(); ++i) {
        if (!(verts_[i].first < verts_[i + 1].first) ||
            !(verts_[i].second < verts_[i + 1].second))
            throw error("PL map vertices must strictly increase in both coordinates");
    }
}

PLMap PLMap::identity(ContextPtr ctx) {
    std::vector<Vertex> v;
    v.emplace_back(FieldElem::zero(ctx), FieldElem::zero(ctx));
    v.emplace_back(FieldElem::one(ctx), FieldElem::one(ctx));
    return PLMap(std::move(ctx), std::move(v));
}

PLMap PLMap::from_partition_pair(const PartitionPair& pp) {
    if (!pp.domain.ctx()->same_group(*pp.codomain.ctx()))
        throw context_mismatch_error("partition pair spans two contexts");
    if (pp.domain.points().size() != pp.codomain.points().size())
        throw error("partition pair needs equal breakpoint counts");
    std::vector<Vertex> verts;
    verts.reserve(pp.domain.points().size());
    for (size_t i = 0; i < pp.domain.points().size(); ++i)
        verts.emplace_back(pp.domain.points()[i], pp.codomain.points()[i]);
    return PLMap(pp.domain.ctx(), canonicalize(std::move(verts)));
}

PLMap PLMap::from_vertices(ContextPtr ctx, std::vector<Vertex> verts) {
    return PLMap(std::move(ctx), canonicalize(std::move(verts)));
}

FieldElem PLMap::eval(const FieldElem& t) const {
    FieldElem zero = FieldElem::zero(ctx_);
    FieldElem one = FieldElem::one(ctx_);
    if (t < zero || t > one)
        throw error("evaluation point outside [0,1]");
    size_t i = 0;
    while (i + 2 < verts_.size() && !(t < verts_[i + 1].first)) {
        if (t == verts_[i + 1].first)
            return verts_[i + 1].second;
        ++i;
    }
    const Vertex& a = verts_[i];
    const Vertex& b = verts_[i + 1];
    if (t == a.first)
        return a.second;
    if (t == b.first)
        return b.second;
    return a.second + (t - a.first) * (b.second - a.second) / (b.first - a.first);
}

PLMap PLMap::inverse() const {
    std::vector<Vertex> v;
    v.reserve(verts_.size());
    for (const auto& [x, y] : verts_)
        v.emplace_back(y, x);
    return PLMap(ctx_, std::move(v));
}

std::vector<FieldElem> PLMap::slopes() const {
    std::vector<FieldElem> out;
    out.reserve(segment_count());
    for (size_t i = 0; i + 1 < verts_.size(); ++i)
        out.push_back((verts_[i + 1].second - verts_[i].second) /
                      (verts_[i + 1].first - verts_[i].first));
    return out;
}

bool PLMap::operator==(const PLMap& rhs) const {
    if (!ctx_->same_group(*rhs.ctx_) || verts_.size() != rhs.verts_.size())
        return false;
    for (size_t i = 0; i < verts_.size(); ++i)
        if (!(verts_[i].first == rhs.verts_[i].first) ||
            !(verts_[i].second == rhs.verts_[i].second))
            return false;
    return true;
}

PLMap compose(const PLMap& f, const PLMap& g) {
    if (!f.ctx()->same_group(*g.ctx()))
        throw context_mismatch_error("composing maps from different contexts");
    PLMap finv = f.inverse();
    std::vector<FieldElem> xs;
    for (const auto& [x, y] : f.vertices())
        xs.push_back(x);
    for (const auto& [x, y] : g.vertices())
        xs.push_back(finv.eval(x));
    std::sort(xs.begin(), xs.end(), [](const FieldElem& a, const FieldElem& b) { return a < b; });
    xs.erase(std::unique(xs.begin(), xs.end(),
                         [](const FieldElem& a, const FieldElem& b) { return a == b; }),
             xs.end());
    std::vector<PLMap::Vertex> verts;
    verts.reserve(xs.size());
    for (const auto& x : xs)
        verts.emplace_back(x, g.eval(f.eval(x)));
    return PLMap::from_vertices(f.ctx(), std::move(verts));
}

std::optional<long> power_of_root_exponent(const FieldElem& value, long window) {
    if (value.sign() <= 0)
        return std::nullopt;
    const ContextPtr& ctx = value.ctx();
    FieldElem root = FieldElem::beta(ctx);
    BigRational width = make_rational(1, BigInt(1) << 48);
    double v = betaforge::to_double(value.approx(width).midpoint());
    double r = betaforge::to_double(root.approx(width).midpoint());
    if (v <= 0 || r <= 0 || r == 1)
        return std::nullopt;
    long k0 = std::lround(std::log(v) / std::log(r));
    for (long dk = 0; dk <= 3; ++dk)
        for (long k : {k0 + dk, k0 - dk}) {
            if (k < -window || k > window)
                continue;
            if ((value - root.pow(k)).sign() == 0)
                return k;
        }
    return std::nullopt;
}

namespace {

bool denominator_divides_power(BigInt den, const BigInt& base) {
    while (den > 1) {
        BigInt g;
        mpz_gcd(g.get_mpz_t(), den.get_mpz_t(), base.get_mpz_t());
        if (g == 1)
            return false;
        den /= g;
    }
    return true;
}

enum class RingRule { n_adic, integer_coords, even_integer_coords };

bool point_in_ring(const FieldElem& p, RingRule rule, const BigInt& linear_n) {
    switch (rule) {
    case RingRule::n_adic:
        return denominator_divides_power(p.coeffs()[0].get_den(), linear_n);
    case RingRule::integer_coords:
        for (const auto& c : p.coeffs())
            if (c.get_den() != 1)
                return false;
        return true;
    case RingRule::even_integer_coords:
        for (size_t k = 0; k < p.coeffs().size(); ++k) {
            if (k % 2 == 1 && p.coeffs()[k] != 0)
                return false;
            if (k % 2 == 0 && p.coeffs()[k].get_den() != 1)
                return false;
        }
        return true;
    }
    return false;
}

} // namespace

MembershipReport validate_membership(const PLMap& f, MembershipTarget target,
                                     long exponent_window) {
    const ContextPtr& ctx = f.ctx();
    const SubdivisionPolynomial& sub = ctx->subdivision();
    bool monic = sub.coeff(sub.degree()) == 1;

    RingRule rule;
    BigInt linear_n(0);
    bool require_even_exponent = false;
    if (target == MembershipTarget::own_group) {
        if (ctx->degree() == 1) {
            rule = RingRule::n_adic;
            linear_n = sub.coeff(1);
        } else if (monic) {
            rule = RingRule::integer_coords;
        } else {
            throw unsupported_subring_error(
                "no membership oracle for non-monic context " + sub.to_string());
        }
    } else {
        if (!monic || ctx->degree() % 2 != 0 || ctx->degree() < 2)
            throw unsupported_subring_error(
                "square-root-base test needs a monic even-degree context, got " +
                sub.to_string());
        for (size_t i = 1; i <= sub.degree(); i += 2)
            if (sub.coeff(i) != 0)
                throw unsupported_subring_error(
                    "square-root-base test needs even exponents only, got " + sub.to_string());
        rule = RingRule::even_integer_coords;
        require_even_exponent = true;
    }

    MembershipReport rep;
    for (const auto& slope : f.slopes()) {
        auto k = power_of_root_exponent(slope, exponent_window);
        bool ok = k.has_value() && (!require_even_exponent || *k % 2 == 0);
        rep.slopes.push_back({slope, k, ok});
        rep.slopes_ok = rep.slopes_ok && ok;
    }
    // Interior vertex coordinates on both sides: the map and its inverse must
    // break inside the ring.
    for (size_t i = 1; i + 1 < f.vertices().size(); ++i) {
        for (const FieldElem& p : {f.vertices()[i].first, f.vertices()[i].second}) {
            bool ok = point_in_ring(p, rule, linear_n);
            rep.breakpoints.push_back({p, ok});
            rep.breakpoints_ok = rep.breakpoints_ok && ok;
            if (!ok && !rep.first_offending_breakpoint)
                rep.first_offending_breakpoint = p;
        }
    }
    rep.verdict = rep.slopes_ok && rep.breakpoints_ok;
    return rep;
}

const ContextPtr& tau_context() {
    static const ContextPtr ctx = BetaContext::create({BigInt(1), BigInt(1)});
    return ctx;
}

PLMap ftau_generator(GeneratorKind kind, unsigned index) {
    const ContextPtr& ctx = tau_context();
    FieldElem one = FieldElem::one(ctx);
    FieldElem tau = FieldElem::beta(ctx);
    long i = static_cast<long>(index);
    std::vector<PLMap::Vertex> verts;
    verts.emplace_back(FieldElem::zero(ctx), FieldElem::zero(ctx));
    FieldElem fixed_end = one - tau.pow(i);
    verts.emplace_back(fixed_end, fixed_end);
    if (kind == GeneratorKind::x) {
        verts.emplace_back(fixed_end + tau.pow(i + 4), fixed_end + tau.pow(i + 2));
        verts.emplace_back(one - tau.pow(i + 1), one - tau.pow(i + 2));
    } else {
        verts.emplace_back(one - tau.pow(i + 1), one - tau.pow(i + 2));
    }
    verts.emplace_back(one, one);
    return PLMap::from_vertices(ctx, std::move(verts));
}

CellArrangement standard_arrangement(unsigned long a, unsigned long b) {
    CellArrangement arr;
    arr.domain.insert(arr.domain.end(), b, 3);
    arr.domain.insert(arr.domain.end(), a, 5);
    arr.domain.push_back(0);
    arr.codomain.insert(arr.codomain.end(), a, 5);
    arr.codomain.insert(arr.codomain.end(), b, 3);
    arr.codomain.push_back(0);
    return arr;
}

namespace {

std::vector<FieldElem> arrangement_breakpoints(const ContextPtr& ctx,
                                               const std::vector<int>& cells) {
    FieldElem gamma = FieldElem::beta(ctx);
    FieldElem acc = FieldElem::zero(ctx);
    std::vector<FieldElem> pts{acc};
    for (int c : cells) {
        switch (c) {
        case 5: acc = acc + gamma.pow(5); break;
        case 3: acc = acc + gamma.pow(3); break;
        case 0: acc = acc + (FieldElem::one(ctx) - gamma); break;
        default:
            throw invalid_arrangement_error("unknown cell code " + std::to_string(c));
        }
        pts.push_back(acc);
    }
    return pts;
}

void check_arrangement(const CellArrangement& arr, unsigned long a, unsigned long b) {
    auto count_check = [&](const std::vector<int>& cells, const char* side) {
        unsigned long fives = 0, threes = 0, longs = 0;
        for (int c : cells) {
            if (c == 5)
                ++fives;
            else if (c == 3)
                ++threes;
            else if (c == 0)
                ++longs;
            else
                throw invalid_arrangement_error("unknown cell code " + std::to_string(c));
        }
        if (fives != a || threes != b || longs != 1)
            throw invalid_arrangement_error(std::string(side) + " ordering must contain " +
                                            std::to_string(a) + " long-leg cells, " +
                                            std::to_string(b) +
                                            " short-leg cells and one tail cell");
    };
    count_check(arr.domain, "domain");
    count_check(arr.codomain, "codomain");
    size_t li = std::find(arr.domain.begin(), arr.domain.end(), 0) - arr.domain.begin();
    size_t lj = std::find(arr.codomain.begin(), arr.codomain.end(), 0) - arr.codomain.begin();
    if (li != lj)
        throw invalid_arrangement_error("the tail cell must sit at the same index on both sides");
    if (arr.domain == arr.codomain)
        throw invalid_arrangement_error("the two orderings must differ");
}

} // namespace

PLMap counterexample_map(const BigInt& a, const BigInt& b, const CellArrangement& arrangement) {
    SubdivisionPolynomial quad({b, a}); // validates ax^2 + bx - 1
    if (!a.fits_ulong_p() || !b.fits_ulong_p())
        throw error("coefficients too large for counterexample construction");
    unsigned long au = a.get_ui(), bu = b.get_ui();
    check_arrangement(arrangement, au, bu);
    ContextPtr ctx = BetaContext::create({BigInt(0), b, BigInt(0), a});
    Partition domain(ctx, arrangement_breakpoints(ctx, arrangement.domain));
    Partition codomain(ctx, arrangement_breakpoints(ctx, arrangement.codomain));
    return PLMap::from_partition_pair({std::move(domain), std::move(codomain)});
}

PLMap counterexample_map(const BigInt& a, const BigInt& b) {
    if (!a.fits_ulong_p() || !b.fits_ulong_p())
        throw error("coefficients too large for counterexample construction");
    return counterexample_map(a, b, standard_arrangement(a.get_ui(), b.get_ui()));
}

} // namespace betaforge
