#include "betaforge/representability.hpp"

#include <map>

#include "betaforge/errors.hpp"

namespace betaforge {

IntMatrix IntMatrix::identity(size_t n) {
    IntMatrix m(n);
    for (size_t i = 0; i < n; ++i)
        m.at(i, i) = 1;
    return m;
}

IntMatrix IntMatrix::operator*(const IntMatrix& rhs) const {
    if (n_ != rhs.n_)
        throw dimension_mismatch_error("matrix product dimension mismatch");
    IntMatrix out(n_);
    for (size_t i = 0; i < n_; ++i)
        for (size_t k = 0; k < n_; ++k) {
            const BigInt& a = at(i, k);
            if (a == 0)
                continue;
            for (size_t j = 0; j < n_; ++j)
                out.at(i, j) += a * rhs.at(k, j);
        }
    return out;
}

std::vector<BigInt> IntMatrix::operator*(const std::vector<BigInt>& v) const {
    if (v.size() != n_)
        throw dimension_mismatch_error("matrix-vector dimension mismatch");
    std::vector<BigInt> out(n_, BigInt(0));
    for (size_t i = 0; i < n_; ++i)
        for (size_t j = 0; j < n_; ++j)
            out[i] += at(i, j) * v[j];
    return out;
}

BoolMatrix BoolMatrix::pattern_of(const IntMatrix& m) {
    BoolMatrix out(m.dim());
    for (size_t i = 0; i < m.dim(); ++i)
        for (size_t j = 0; j < m.dim(); ++j)
            out.at(i, j) = m.at(i, j) != 0;
    return out;
}

BoolMatrix BoolMatrix::operator*(const BoolMatrix& rhs) const {
    if (n_ != rhs.n_)
        throw dimension_mismatch_error("matrix product dimension mismatch");
    BoolMatrix out(n_);
    for (size_t i = 0; i < n_; ++i)
        for (size_t k = 0; k < n_; ++k)
            if (at(i, k))
                for (size_t j = 0; j < n_; ++j)
                    out.at(i, j) |= rhs.at(k, j);
    return out;
}

std::vector<uint8_t> BoolMatrix::operator*(const std::vector<uint8_t>& v) const {
    if (v.size() != n_)
        throw dimension_mismatch_error("matrix-vector dimension mismatch");
    std::vector<uint8_t> out(n_, 0);
    for (size_t i = 0; i < n_; ++i)
        for (size_t j = 0; j < n_; ++j)
            out[i] |= at(i, j) & v[j];
    return out;
}

SubstitutionMatrix build_matrix(const ContextPtr& ctx) {
    size_t n = ctx->degree();
    const std::vector<BigInt>& rel = ctx->reciprocal_relation();
    IntMatrix m(n);
    // lambda * lambda^k = lambda^{k+1} shifts coordinates up; the top power
    // folds back through lambda^n = a_1 lambda^{n-1} + ... + a_n. In the
    // descending basis that is a superdiagonal of ones plus (a_1, ..., a_n)
    // down the first column.
    for (size_t r = 0; r + 1 < n; ++r)
        m.at(r, r + 1) = 1;
    for (size_t r = 0; r < n; ++r)
        m.at(r, 0) += rel[r];
    return SubstitutionMatrix(ctx, std::move(m));
}

CoeffVector apply(const SubstitutionMatrix& A, const CoeffVector& v) {
    return A.matrix() * v;
}

IntMatrix matrix_power(const SubstitutionMatrix& A, unsigned long N) {
    IntMatrix acc = IntMatrix::identity(A.dim());
    IntMatrix base = A.matrix();
    while (N > 0) {
        if (N & 1)
            acc = acc * base;
        base = base * base;
        N >>= 1;
    }
    return acc;
}

CycleInfo boolean_cycle(const SubstitutionMatrix& A, size_t max_n) {
    if (max_n < 1)
        throw error("boolean_cycle needs max_n >= 1");
    BoolMatrix base = BoolMatrix::pattern_of(A.matrix());
    BoolMatrix cur = base;
    std::map<std::vector<uint8_t>, size_t> seen;
    seen[cur.bits()] = 1;
    for (size_t n = 2; n <= max_n; ++n) {
        cur = cur * base;
        auto [it, fresh] = seen.emplace(cur.bits(), n);
        if (!fresh)
            return {it->second, n - it->second};
    }
    throw no_cycle_error("no pattern cycle within " + std::to_string(max_n) + " powers");
}

void split_parts(const CoeffVector& v, CoeffVector& pos, CoeffVector& neg) {
    pos.assign(v.size(), BigInt(0));
    neg.assign(v.size(), BigInt(0));
    for (size_t i = 0; i < v.size(); ++i) {
        if (v[i] > 0)
            pos[i] = v[i];
        else if (v[i] < 0)
            neg[i] = -v[i];
    }
}

std::vector<uint8_t> support_of(const CoeffVector& v) {
    std::vector<uint8_t> s(v.size());
    for (size_t i = 0; i < v.size(); ++i)
        s[i] = v[i] != 0;
    return s;
}

bool all_nonneg(const CoeffVector& v) {
    for (const auto& e : v)
        if (e < 0)
            return false;
    return true;
}

namespace {

bool disjoint_and_neg_nonempty(const std::vector<uint8_t>& pos, const std::vector<uint8_t>& neg) {
    bool any_neg = false;
    for (size_t i = 0; i < pos.size(); ++i) {
        if (pos[i] && neg[i])
            return false;
        any_neg |= neg[i] != 0;
    }
    return any_neg;
}

// Support-pair evolution from the split vector q: returns an impossibility
// cycle if one exists within max_steps steps, with start relative to q.
struct SupportCycle {
    size_t start_rel;
    size_t period;
    std::vector<std::vector<uint8_t>> pos, neg;
};

std::optional<SupportCycle> find_disjoint_cycle(const BoolMatrix& pattern, const CoeffVector& q,
                                                size_t max_steps) {
    CoeffVector qpos, qneg;
    split_parts(q, qpos, qneg);
    std::vector<uint8_t> sp = support_of(qpos);
    std::vector<uint8_t> sn = support_of(qneg);
    std::map<std::pair<std::vector<uint8_t>, std::vector<uint8_t>>, size_t> seen;
    std::vector<std::pair<std::vector<uint8_t>, std::vector<uint8_t>>> trail;
    for (size_t k = 0; k <= max_steps; ++k) {
        auto key = std::make_pair(sp, sn);
        auto [it, fresh] = seen.emplace(key, k);
        if (!fresh) {
            size_t start = it->second;
            size_t period = k - start;
            SupportCycle cyc{start, period, {}, {}};
            for (size_t m = start; m < k; ++m) {
                if (!disjoint_and_neg_nonempty(trail[m].first, trail[m].second))
                    return std::nullopt;
                cyc.pos.push_back(trail[m].first);
                cyc.neg.push_back(trail[m].second);
            }
            return cyc;
        }
        trail.push_back(key);
        sp = pattern * sp;
        sn = pattern * sn;
    }
    return std::nullopt;
}

} // namespace

Certificate decide_nonneg(const ContextPtr& ctx, const CoeffVector& p, unsigned long max_n) {
    if (p.size() != ctx->degree())
        throw dimension_mismatch_error("coefficient vector length does not match context degree");
    if (support_of(p) == std::vector<uint8_t>(p.size(), 0))
        throw error("decide_nonneg needs a nonzero vector");
    if (max_n < 1)
        throw error("decide_nonneg needs max_n >= 1");

    SubstitutionMatrix A = build_matrix(ctx);
    BoolMatrix pattern = BoolMatrix::pattern_of(A.matrix());

    // Exact forward iterates v_N = A^N p, N = 0..max_n: any nonnegative one is
    // a witness and takes precedence.
    std::vector<CoeffVector> iterates;
    iterates.reserve(max_n + 1);
    iterates.push_back(p);
    for (unsigned long n = 0; n <= max_n; ++n) {
        if (all_nonneg(iterates[n])) {
            Certificate cert;
            cert.kind = Certificate::Kind::witness;
            cert.witness_n = n;
            cert.witness_vector = iterates[n];
            return cert;
        }
        if (n < max_n)
            iterates.push_back(betaforge::apply(A, iterates[n]));
    }

    // No witness: look for a split point whose positive/negative parts evolve
    // into a support cycle with uncancellable negative entries. The parts of a
    // later iterate can separate even when those of p itself merge.
    for (unsigned long split = 0; split <= max_n; ++split) {
        auto cyc = find_disjoint_cycle(pattern, iterates[split], max_n);
        if (!cyc)
            continue;
        Certificate cert;
        cert.kind = Certificate::Kind::impossible;
        cert.split = split;
        cert.cycle_start = split + cyc->start_rel;
        cert.cycle_length = cyc->period;
        cert.pos_support = std::move(cyc->pos);
        cert.neg_support = std::move(cyc->neg);
        return cert;
    }

    Certificate cert;
    cert.kind = Certificate::Kind::inconclusive;
    cert.bound = max_n;
    return cert;
}

bool verify_certificate(const ContextPtr& ctx, const CoeffVector& p, const Certificate& cert) {
    if (p.size() != ctx->degree())
        return false;
    SubstitutionMatrix A = build_matrix(ctx);

    switch (cert.kind) {
    case Certificate::Kind::witness: {
        CoeffVector v = matrix_power(A, cert.witness_n) * p;
        return v == cert.witness_vector && all_nonneg(v);
    }
    case Certificate::Kind::impossible: {
        if (cert.cycle_length == 0 || cert.split > cert.cycle_start)
            return false;
        if (cert.pos_support.size() != cert.cycle_length ||
            cert.neg_support.size() != cert.cycle_length)
            return false;

        // Every iterate before the cycle must already carry a negative entry.
        CoeffVector v = p;
        for (unsigned long n = 0; n < cert.cycle_start; ++n) {
            if (all_nonneg(v))
                return false;
            v = betaforge::apply(A, v);
        }

        // Recompute the split vector and its support evolution exactly; the
        // boolean patterns must agree with the exact supports step by step
        // (the no-cancellation induction for nonnegative matrices).
        CoeffVector q = matrix_power(A, cert.split) * p;
        CoeffVector qpos, qneg;
        split_parts(q, qpos, qneg);
        BoolMatrix pattern = BoolMatrix::pattern_of(A.matrix());
        size_t start_rel = cert.cycle_start - cert.split;
        std::vector<uint8_t> sp = support_of(qpos);
        std::vector<uint8_t> sn = support_of(qneg);
        CoeffVector epos = qpos, eneg = qneg;
        for (size_t k = 0; k < start_rel; ++k) {
            sp = pattern * sp;
            sn = pattern * sn;
            epos = betaforge::apply(A, epos);
            eneg = betaforge::apply(A, eneg);
            if (sp != support_of(epos) || sn != support_of(eneg))
                return false;
        }
        for (size_t m = 0; m < cert.cycle_length; ++m) {
            if (sp != cert.pos_support[m] || sn != cert.neg_support[m])
                return false;
            if (sp != support_of(epos) || sn != support_of(eneg))
                return false;
            if (!disjoint_and_neg_nonempty(sp, sn))
                return false;
            sp = pattern * sp;
            sn = pattern * sn;
            epos = betaforge::apply(A, epos);
            eneg = betaforge::apply(A, eneg);
        }
        // Cycle closure: one full period returns to the starting pair.
        return sp == cert.pos_support[0] && sn == cert.neg_support[0];
    }
    case Certificate::Kind::inconclusive:
        return cert.bound >= 1;
    }
    return false;
}

} // namespace betaforge
