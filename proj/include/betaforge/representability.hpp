#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "betaforge/context.hpp"

namespace betaforge {

/// Square matrix of exact integers, row-major.
class IntMatrix {
  public:
    IntMatrix(size_t n, BigInt fill = BigInt(0)) : n_(n), e_(n * n, std::move(fill)) {}
    static IntMatrix identity(size_t n);

    size_t dim() const { return n_; }
    BigInt& at(size_t r, size_t c) { return e_[r * n_ + c]; }
    const BigInt& at(size_t r, size_t c) const { return e_[r * n_ + c]; }

    IntMatrix operator*(const IntMatrix& rhs) const;
    std::vector<BigInt> operator*(const std::vector<BigInt>& v) const;
    bool operator==(const IntMatrix& rhs) const { return n_ == rhs.n_ && e_ == rhs.e_; }

  private:
    size_t n_;
    std::vector<BigInt> e_;
};

/// Zero/nonzero pattern of a nonnegative matrix. Multiplication is boolean:
/// sound for patterns of products of nonnegative matrices because no
/// cancellation can occur.
class BoolMatrix {
  public:
    explicit BoolMatrix(size_t n) : n_(n), e_(n * n, 0) {}
    static BoolMatrix pattern_of(const IntMatrix& m);

    size_t dim() const { return n_; }
    uint8_t& at(size_t r, size_t c) { return e_[r * n_ + c]; }
    uint8_t at(size_t r, size_t c) const { return e_[r * n_ + c]; }

    BoolMatrix operator*(const BoolMatrix& rhs) const;
    std::vector<uint8_t> operator*(const std::vector<uint8_t>& v) const;
    bool operator==(const BoolMatrix& rhs) const { return n_ == rhs.n_ && e_ == rhs.e_; }
    const std::vector<uint8_t>& bits() const { return e_; }

  private:
    size_t n_;
    std::vector<uint8_t> e_;
};

/// Entries of a ring element in descending powers of lambda = 1/beta:
/// index 0 holds the coefficient of lambda^{n-1}, index n-1 the constant.
using CoeffVector = std::vector<BigInt>;

/// Multiplication by lambda in the descending power basis, reduced by the
/// reciprocal relation lambda^n = a_1 lambda^{n-1} + ... + a_n. The matrix is
/// the superdiagonal of ones plus the relation coefficients down the first
/// column; all entries are nonnegative.
class SubstitutionMatrix {
  public:
    SubstitutionMatrix(ContextPtr ctx, IntMatrix m) : ctx_(std::move(ctx)), m_(std::move(m)) {}

    const ContextPtr& ctx() const { return ctx_; }
    size_t dim() const { return m_.dim(); }
    const IntMatrix& matrix() const { return m_; }
    const BigInt& at(size_t r, size_t c) const { return m_.at(r, c); }

  private:
    ContextPtr ctx_;
    IntMatrix m_;
};

SubstitutionMatrix build_matrix(const ContextPtr& ctx);

/// Exact matrix-vector product; dimensions must match.
CoeffVector apply(const SubstitutionMatrix& A, const CoeffVector& v);

/// Exact A^N by repeated squaring, N >= 0.
IntMatrix matrix_power(const SubstitutionMatrix& A, unsigned long N);

/// First recurrence of the zero/nonzero pattern of A^N: the smallest
/// (start, period) with pattern(A^{start+period}) = pattern(A^start),
/// start >= 1. A repeat proves the pattern cycles forever.
struct CycleInfo {
    size_t start;
    size_t period;
};
CycleInfo boolean_cycle(const SubstitutionMatrix& A, size_t max_n);

/// Decision outcome for "is A^N p entrywise nonnegative for some N".
///
/// Witness: v = A^n p with all entries >= 0.
/// Impossible: from step `split` on, the supports of A^k q+ and A^k q- for
///   q = A^split p settle into a verified cycle in which the negative support
///   stays nonempty and disjoint from the positive one, so the negative part
///   can never be cancelled; cycle_start is in absolute steps of A on p.
/// Inconclusive: neither outcome within the iteration bound.
struct Certificate {
    enum class Kind { witness, impossible, inconclusive };
    Kind kind;

    // witness
    unsigned long witness_n = 0;
    CoeffVector witness_vector;

    // impossible
    unsigned long split = 0;
    unsigned long cycle_start = 0; // absolute: A^cycle_start p is in the cycle
    unsigned long cycle_length = 0;
    std::vector<std::vector<uint8_t>> pos_support; // one per step of the cycle
    std::vector<std::vector<uint8_t>> neg_support;

    // inconclusive
    unsigned long bound = 0;
};

constexpr unsigned long kDefaultMaxIterations = 256;

Certificate decide_nonneg(const ContextPtr& ctx, const CoeffVector& p,
                          unsigned long max_n = kDefaultMaxIterations);

/// Recomputes everything the certificate claims: the witness vector, or the
/// support cycle (closure, disjointness, nonemptiness, agreement of boolean
/// patterns with exact supports) plus a negative entry in every A^N p before
/// the cycle starts. Returns false on any mismatch.
bool verify_certificate(const ContextPtr& ctx, const CoeffVector& p, const Certificate& cert);

// Entrywise positive/negative parts: v = pos - neg with disjoint supports.
void split_parts(const CoeffVector& v, CoeffVector& pos, CoeffVector& neg);
std::vector<uint8_t> support_of(const CoeffVector& v);
bool all_nonneg(const CoeffVector& v);

} // namespace betaforge
