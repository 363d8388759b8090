#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "betaforge/field.hpp"

namespace betaforge {

/// Strictly increasing breakpoints from exactly 0 to exactly 1; monotonicity
/// is verified symbolically at construction.
class Partition {
  public:
    Partition(ContextPtr ctx, std::vector<FieldElem> points);

    const ContextPtr& ctx() const { return ctx_; }
    const std::vector<FieldElem>& points() const { return pts_; }
    size_t cell_count() const { return pts_.size() - 1; }

    bool operator==(const Partition& rhs) const;

  private:
    ContextPtr ctx_;
    std::vector<FieldElem> pts_;
};

struct PartitionPair {
    Partition domain;
    Partition codomain;
};

/// Orientation-preserving piecewise-linear bijection of [0,1] with exact
/// breakpoint coordinates, kept in canonical form: vertices (0,0) ... (1,1),
/// both coordinate sequences strictly increasing, and no interior vertex whose
/// two adjacent segments share a slope.
class PLMap {
  public:
    using Vertex = std::pair<FieldElem, FieldElem>;

    static PLMap identity(ContextPtr ctx);
    /// The unique map sending the i-th domain cell linearly onto the i-th
    /// codomain cell; redundant breakpoints are removed.
    static PLMap from_partition_pair(const PartitionPair& pp);
    static PLMap from_vertices(ContextPtr ctx, std::vector<Vertex> verts);

    const ContextPtr& ctx() const { return ctx_; }
    const std::vector<Vertex>& vertices() const { return verts_; }
    size_t segment_count() const { return verts_.size() - 1; }

    FieldElem eval(const FieldElem& t) const;
    PLMap inverse() const;
    std::vector<FieldElem> slopes() const;

    bool is_identity() const { return verts_.size() == 2; }
    bool operator==(const PLMap& rhs) const;
    bool operator!=(const PLMap& rhs) const { return !(*this == rhs); }

  private:
    PLMap(ContextPtr ctx, std::vector<Vertex> verts);

    ContextPtr ctx_;
    std::vector<Vertex> verts_;
};

/// Left-to-right composition: (f*g)(t) = g(f(t)). Chosen so the relation
/// families of the tree-pair presentations come out as written; the relation
/// checker exercises both reading orders regardless.
PLMap compose(const PLMap& f, const PLMap& g);

enum class ComposeOrder { left_to_right, right_to_left };

/// Which subring/slope group a map is tested against.
///  - own_group: breakpoints in Z[beta], slopes in <beta> for the map's own
///    context root beta. Supported for linear contexts (n-adic rationals) and
///    monic contexts (integer power-basis coordinates).
///  - square_root_base: the map lives in a monic context whose polynomial has
///    only even exponents (root gamma); tested against the group of
///    beta = gamma^2, i.e. Z[gamma^2] breakpoints (even coordinates integer,
///    odd coordinates zero) and slopes in <gamma^2> (even exponents).
enum class MembershipTarget { own_group, square_root_base };

struct MembershipReport {
    struct SlopeEntry {
        FieldElem slope;
        std::optional<long> exponent; // k with slope = root^k, when found
        bool ok;
    };
    struct PointEntry {
        FieldElem point;
        bool ok;
    };

    std::vector<SlopeEntry> slopes;
    std::vector<PointEntry> breakpoints;
    bool slopes_ok = true;
    bool breakpoints_ok = true;
    bool verdict = false;
    std::optional<FieldElem> first_offending_breakpoint;
};

constexpr long kDefaultExponentWindow = 64;

MembershipReport validate_membership(const PLMap& f, MembershipTarget target,
                                     long exponent_window = kDefaultExponentWindow);

/// Exponent k with value = root^k, searched over |k| <= window via a numeric
/// magnitude estimate and confirmed exactly; nullopt when no power matches.
std::optional<long> power_of_root_exponent(const FieldElem& value, long window);

/// Shared immutable context for x^2 + x - 1 (root tau).
const ContextPtr& tau_context();

enum class GeneratorKind { x, y };

/// The standard generators of the tau group as exact PL maps:
/// x_i is identity up to 1 - tau^i, then slopes tau^-2, 1, tau;
/// y_i is identity up to 1 - tau^i, then slopes tau^-1, tau.
/// Degenerate pieces at i = 0 are dropped.
PLMap ftau_generator(GeneratorKind kind, unsigned index);

/// Orderings of the subdivided cells for the two partitions of a
/// counterexample map: entries are 5 (a cell of length beta^2*sqrt(beta) =
/// gamma^5), 3 (length beta*sqrt(beta) = gamma^3) and 0 (the single long cell
/// [sqrt(beta), 1]).
struct CellArrangement {
    std::vector<int> domain;
    std::vector<int> codomain;
};

/// The arrangement used throughout: domain b short cells then a long-leg
/// cells then the tail, codomain with the two blocks swapped.
CellArrangement standard_arrangement(unsigned long a, unsigned long b);

/// PL map in the context of a*x^4 + b*x^2 - 1 (root gamma = sqrt(beta)) whose
/// two partitions subdivide [0, sqrt(beta)] differently; all slopes lie in
/// <beta> while sqrt(beta) itself is a breakpoint. The two orderings must
/// differ and must place the long cell at the same index.
PLMap counterexample_map(const BigInt& a, const BigInt& b, const CellArrangement& arrangement);
PLMap counterexample_map(const BigInt& a, const BigInt& b);

} // namespace betaforge
