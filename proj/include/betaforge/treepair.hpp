#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "betaforge/plmap.hpp"
#include "betaforge/subdivision.hpp"

namespace betaforge {

/// Rooted tree built from carets. A node holds one caret shape and one child
/// per leg; a leaf holds nothing. The depth of a leaf is the sum of the leg
/// lengths along its root path, and a leaf of depth d represents a cell of
/// length beta^d.
class Tree {
  public:
    Tree() = default; // leaf
    static Tree leaf() { return Tree(); }
    static Tree node(CaretShape caret, std::vector<Tree> children);

    bool is_leaf() const { return children_.empty(); }
    const CaretShape& caret() const { return caret_; }
    const std::vector<Tree>& children() const { return children_; }

    size_t leaf_count() const;
    unsigned max_leaf_depth() const;

    bool operator==(const Tree& rhs) const;

  private:
    CaretShape caret_;
    std::vector<Tree> children_;
};

/// Left-to-right leaf depths. Their powers beta^d sum to exactly 1.
std::vector<unsigned> leaf_depths(const Tree& t);

/// Checks every caret in the tree draws its legs from the context's multiset.
void validate_tree(const Tree& t, const BetaContext& ctx);

/// Breakpoints of the partition the tree's leaves cut out of [0,1].
Partition tree_to_partition(const Tree& t, const ContextPtr& ctx);

struct PartitionTreeResult {
    Tree tree;
    /// Leaves whose right edge is not a breakpoint of the input partition:
    /// the tree refines the partition there.
    std::vector<size_t> extra_leaves;
};

/// Finds a tree whose leaf partition refines or equals p, trying caret shapes
/// in lexicographic order, leaf depths bounded by depth_bound. Throws
/// unrepresentable_error (carrying the offending breakpoint) when no tree
/// within the bound realizes the partition.
PartitionTreeResult partition_to_tree(const Partition& p, unsigned depth_bound);

/// Two caret trees with equal leaf counts; the represented map sends the i-th
/// leaf cell of `left` linearly onto the i-th leaf cell of `right`.
struct TreePair {
    TreePair(ContextPtr context, Tree left_tree, Tree right_tree);

    ContextPtr ctx;
    Tree left;
    Tree right;

    size_t leaf_count() const { return left.leaf_count(); }
};

PLMap treepair_to_plmap(const TreePair& tp);

/// Removes matching all-leaf carets sitting at the same leaf position with the
/// same shape in both trees until none remain. Idempotent; preserves the
/// represented map.
TreePair reduce(const TreePair& tp);

/// Tree pairs are equivalent iff after reduction the left leaf-depth
/// sequences agree and the right ones agree.
bool equivalent(const TreePair& a, const TreePair& b);

constexpr size_t kDefaultRefinementBudget = 10000;

/// Composite pair for "apply a, then b": grows both pairs by redundant caret
/// insertions (breadth-first, cheapest first) until the right tree of `a` and
/// the left tree of `b` cut the same partition, then splices. Throws
/// refinement_budget_error past `budget` insertions and
/// no_common_refinement_error when the search space is exhausted.
TreePair compose_pairs(const TreePair& a, const TreePair& b,
                       size_t budget = kDefaultRefinementBudget);

/// Caret-wise leg rescaling between the contexts of P(x) and P(x^k),
/// preserving adjacency. Down divides every leg by k (indivisible_leg_error
/// if impossible); up multiplies. down(up(tp)) is the identity.
TreePair power_map_down(const TreePair& tp, unsigned k);
TreePair power_map_up(const TreePair& tp, unsigned k);

/// All trees over the given shapes whose leaf depths stay within depth_bound
/// (the bare leaf included), in a deterministic order.
void for_each_tree(const std::vector<CaretShape>& shapes, unsigned depth_bound,
                   const std::function<void(const Tree&)>& fn);
size_t count_trees(const std::vector<CaretShape>& shapes, unsigned depth_bound);

// ---------------------------------------------------------------------------
// Presentations
// ---------------------------------------------------------------------------

struct GenSymbol {
    char letter; // 'x' or 'y'
    unsigned index;
    bool operator==(const GenSymbol& rhs) const = default;
    std::string to_string() const { return letter + std::to_string(index); }
};

using Word = std::vector<GenSymbol>;

struct Relation {
    Word lhs;
    Word rhs;
    std::string to_string() const;
};

/// Infinite-presentation relations for the group of ax^2 + bx - 1 with
/// a <= b, instantiated up to max_index:
///   R1: f_j g_i = g_i f_{j+a+b-1}        for f,g in {x,y}, i < j
///   R2: x_{i+a} ... x_{i+2a-1} x_i = y_i ... y_{i+a-1} y_i
/// Throws not_tree_pair_definable_error when a > b.
std::vector<Relation> emit_presentation(const BigInt& a, const BigInt& b, unsigned max_index);

struct RelationCheck {
    Relation rel;
    bool holds_left_to_right = false;
    bool holds_right_to_left = false;
};

struct RelationReport {
    std::vector<RelationCheck> checks;
    /// Set iff exactly one reading order satisfies every relation.
    std::optional<ComposeOrder> consistent_order;
    /// True when each relation holds under at least one reading order.
    bool each_holds_somewhere() const;
};

/// Instantiates relations over the tau generators as exact PL maps and tests
/// them under both composition orders.
RelationReport check_tau_relations(const std::vector<Relation>& relations);

/// The classic tau relation family up to max_i: all R1 samples with
/// i < j <= max_i over letters {x,y}, plus x_i x_{i+1} = y_i^2 for i <= max_i.
RelationReport check_ftau_relations(unsigned max_i);

PLMap eval_word(const Word& w, ComposeOrder order);

} // namespace betaforge
