#include "betaforge/treepair.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <sstream>

#include "betaforge/errors.hpp"

namespace betaforge {

Tree Tree::node(CaretShape caret, std::vector<Tree> children) {
    if (caret.legs.empty())
        throw error("caret needs at least one leg");
    if (caret.legs.size() != children.size())
        throw error("child count must equal leg count");
    Tree t;
    t.caret_ = std::move(caret);
    t.children_ = std::move(children);
    return t;
}

size_t Tree::leaf_count() const {
    if (is_leaf())
        return 1;
    size_t n = 0;
    for (const auto& c : children_)
        n += c.leaf_count();
    return n;
}

unsigned Tree::max_leaf_depth() const {
    if (is_leaf())
        return 0;
    unsigned m = 0;
    for (size_t i = 0; i < children_.size(); ++i)
        m = std::max(m, caret_.legs[i] + children_[i].max_leaf_depth());
    return m;
}

bool Tree::operator==(const Tree& rhs) const {
    return caret_ == rhs.caret_ && children_ == rhs.children_;
}

namespace {

void collect_depths(const Tree& t, unsigned base, std::vector<unsigned>& out) {
    if (t.is_leaf()) {
        out.push_back(base);
        return;
    }
    for (size_t i = 0; i < t.children().size(); ++i)
        collect_depths(t.children()[i], base + t.caret().legs[i], out);
}

} // namespace

std::vector<unsigned> leaf_depths(const Tree& t) {
    std::vector<unsigned> out;
    collect_depths(t, 0, out);
    return out;
}

void validate_tree(const Tree& t, const BetaContext& ctx) {
    if (t.is_leaf())
        return;
    std::vector<unsigned> sorted = t.caret().legs;
    std::sort(sorted.begin(), sorted.end());
    std::vector<unsigned> expected;
    for (size_t i = 1; i <= ctx.degree(); ++i)
        for (BigInt c = 0; c < ctx.subdivision().coeff(i); ++c)
            expected.push_back(static_cast<unsigned>(i));
    if (sorted != expected)
        throw error("caret " + t.caret().to_string() + " does not match context " +
                    ctx.subdivision().to_string());
    for (const auto& c : t.children())
        validate_tree(c, ctx);
}

Partition tree_to_partition(const Tree& t, const ContextPtr& ctx) {
    validate_tree(t, *ctx);
    FieldElem beta = FieldElem::beta(ctx);
    FieldElem acc = FieldElem::zero(ctx);
    std::vector<FieldElem> pts{acc};
    for (unsigned d : leaf_depths(t)) {
        acc = acc + beta.pow(d);
        pts.push_back(acc);
    }
    // The last prefix sum reduces to exactly 1: each caret's leg sum is the
    // defining relation, so the total telescopes modulo the polynomial.
    return Partition(ctx, std::move(pts));
}

// ---------------------------------------------------------------------------
// partition_to_tree
// ---------------------------------------------------------------------------

namespace {

struct TreeSearch {
    const std::vector<CaretShape>& shapes;
    const FieldElem& beta;
    unsigned bound;
    std::optional<FieldElem> first_failure;

    void note_failure(const FieldElem& target) {
        if (!first_failure)
            first_failure = target;
    }

    // Targets are strictly inside the cell starting at `lo` of a node at
    // `depth`; cell boundaries are exact, so membership tests are symbolic.
    // Among the shapes that admit a realization the one yielding the fewest
    // leaves wins, ties broken by lexicographic shape order.
    std::optional<Tree> build(const FieldElem& lo, unsigned depth,
                              const std::vector<FieldElem>& targets) {
        if (targets.empty())
            return Tree::leaf();
        std::optional<Tree> best;
        for (const CaretShape& shape : shapes) {
            unsigned deepest = *std::max_element(shape.legs.begin(), shape.legs.end());
            if (depth + deepest > bound)
                continue;
            // Cut points of this caret, then distribute targets to subcells.
            std::vector<FieldElem> cuts{lo};
            for (unsigned leg : shape.legs)
                cuts.push_back(cuts.back() + beta.pow(depth + leg));
            std::vector<std::vector<FieldElem>> child_targets(shape.legs.size());
            for (const FieldElem& t : targets) {
                size_t cell = 0;
                bool consumed = false;
                while (cell < shape.legs.size()) {
                    if (t == cuts[cell + 1]) {
                        consumed = true; // the caret realizes this breakpoint
                        break;
                    }
                    if (t < cuts[cell + 1])
                        break;
                    ++cell;
                }
                if (!consumed)
                    child_targets[cell].push_back(t);
            }
            std::vector<Tree> children;
            children.reserve(shape.legs.size());
            bool all_built = true;
            for (size_t j = 0; j < shape.legs.size(); ++j) {
                auto child = build(cuts[j], depth + shape.legs[j], child_targets[j]);
                if (!child) {
                    all_built = false;
                    break;
                }
                children.push_back(std::move(*child));
            }
            if (!all_built)
                continue;
            Tree candidate = Tree::node(shape, std::move(children));
            if (!best || candidate.leaf_count() < best->leaf_count())
                best = std::move(candidate);
        }
        if (!best)
            note_failure(targets.front());
        return best;
    }
};

} // namespace

PartitionTreeResult partition_to_tree(const Partition& p, unsigned depth_bound) {
    const ContextPtr& ctx = p.ctx();
    std::vector<CaretShape> shapes = enumerate_carets(*ctx);
    FieldElem beta = FieldElem::beta(ctx);
    std::vector<FieldElem> targets(p.points().begin() + 1, p.points().end() - 1);
    TreeSearch search{shapes, beta, depth_bound, std::nullopt};
    auto tree = search.build(FieldElem::zero(ctx), 0, targets);
    if (!tree) {
        const FieldElem& off = *search.first_failure;
        throw unrepresentable_error("no tree within depth bound " +
                                        std::to_string(depth_bound) +
                                        " realizes breakpoint " + off.to_string(),
                                    off.to_string());
    }
    PartitionTreeResult result{std::move(*tree), {}};
    Partition realized = tree_to_partition(result.tree, ctx);
    for (size_t leaf = 0; leaf + 1 < realized.points().size(); ++leaf) {
        const FieldElem& right_edge = realized.points()[leaf + 1];
        bool in_input = false;
        for (const FieldElem& q : p.points())
            if (right_edge == q) {
                in_input = true;
                break;
            }
        if (!in_input)
            result.extra_leaves.push_back(leaf);
    }
    return result;
}

// ---------------------------------------------------------------------------
// Tree pairs
// ---------------------------------------------------------------------------

TreePair::TreePair(ContextPtr context, Tree left_tree, Tree right_tree)
    : ctx(std::move(context)), left(std::move(left_tree)), right(std::move(right_tree)) {
    validate_tree(left, *ctx);
    validate_tree(right, *ctx);
    if (left.leaf_count() != right.leaf_count())
        throw error("tree pair needs equal leaf counts, got " +
                    std::to_string(left.leaf_count()) + " and " +
                    std::to_string(right.leaf_count()));
}

PLMap treepair_to_plmap(const TreePair& tp) {
    return PLMap::from_partition_pair(
        {tree_to_partition(tp.left, tp.ctx), tree_to_partition(tp.right, tp.ctx)});
}

namespace {

struct FringeNode {
    size_t leaf_start;
    CaretShape shape;
    std::vector<size_t> path;
};

void collect_fringe(const Tree& t, size_t leaf_base, std::vector<size_t>& path,
                    std::vector<FringeNode>& out) {
    if (t.is_leaf())
        return;
    bool all_leaves = true;
    for (const auto& c : t.children())
        all_leaves = all_leaves && c.is_leaf();
    if (all_leaves) {
        out.push_back({leaf_base, t.caret(), path});
        return;
    }
    size_t offset = 0;
    for (size_t i = 0; i < t.children().size(); ++i) {
        path.push_back(i);
        collect_fringe(t.children()[i], leaf_base + offset, path, out);
        path.pop_back();
        offset += t.children()[i].leaf_count();
    }
}

Tree replace_at(const Tree& t, const std::vector<size_t>& path, size_t pos, Tree replacement) {
    if (pos == path.size())
        return replacement;
    std::vector<Tree> children = t.children();
    children[path[pos]] = replace_at(children[path[pos]], path, pos + 1, std::move(replacement));
    return Tree::node(t.caret(), std::move(children));
}

} // namespace

TreePair reduce(const TreePair& tp) {
    Tree left = tp.left, right = tp.right;
    while (true) {
        std::vector<FringeNode> lf, rf;
        std::vector<size_t> path;
        collect_fringe(left, 0, path, lf);
        collect_fringe(right, 0, path, rf);
        const FringeNode* lpick = nullptr;
        const FringeNode* rpick = nullptr;
        for (const auto& l : lf) {
            for (const auto& r : rf) {
                if (l.leaf_start == r.leaf_start && l.shape == r.shape) {
                    if (!lpick || l.leaf_start < lpick->leaf_start) {
                        lpick = &l;
                        rpick = &r;
                    }
                }
            }
        }
        if (!lpick)
            break;
        left = replace_at(left, lpick->path, 0, Tree::leaf());
        right = replace_at(right, rpick->path, 0, Tree::leaf());
    }
    return TreePair(tp.ctx, std::move(left), std::move(right));
}

bool equivalent(const TreePair& a, const TreePair& b) {
    if (!a.ctx->same_group(*b.ctx))
        return false;
    TreePair ra = reduce(a), rb = reduce(b);
    return leaf_depths(ra.left) == leaf_depths(rb.left) &&
           leaf_depths(ra.right) == leaf_depths(rb.right);
}

// ---------------------------------------------------------------------------
// Composition by common refinement of leaf-depth sequences
// ---------------------------------------------------------------------------

namespace {

struct PendingCell {
    unsigned depth;
    size_t origin; // leaf index in the original tree
    std::vector<size_t> path;
};

struct AlignState {
    std::deque<PendingCell> q1, q2;
    std::vector<Tree> plan1, plan2; // grown subtree per original leaf
    size_t insertions = 0;
};

// Matching heads are consumed eagerly; branching happens only when one head
// cell is longer (shallower) and must be subdivided.
void settle(AlignState& s) {
    while (!s.q1.empty() && !s.q2.empty() && s.q1.front().depth == s.q2.front().depth) {
        s.q1.pop_front();
        s.q2.pop_front();
    }
}

std::deque<PendingCell> initial_cells(const Tree& t) {
    std::deque<PendingCell> q;
    std::vector<unsigned> depths = leaf_depths(t);
    for (size_t i = 0; i < depths.size(); ++i)
        q.push_back({depths[i], i, {}});
    return q;
}

void split_head(AlignState& s, bool side1, const CaretShape& shape) {
    auto& q = side1 ? s.q1 : s.q2;
    auto& plan = side1 ? s.plan1 : s.plan2;
    PendingCell cell = q.front();
    q.pop_front();
    std::vector<Tree> leaves(shape.legs.size());
    plan[cell.origin] =
        replace_at(plan[cell.origin], cell.path, 0, Tree::node(shape, std::move(leaves)));
    for (size_t j = shape.legs.size(); j-- > 0;) {
        std::vector<size_t> path = cell.path;
        path.push_back(j);
        q.push_front({cell.depth + shape.legs[j], cell.origin, std::move(path)});
    }
    ++s.insertions;
}

Tree attach_plans(const Tree& t, const std::vector<Tree>& plans, size_t& next_leaf) {
    if (t.is_leaf())
        return plans[next_leaf++];
    std::vector<Tree> children;
    children.reserve(t.children().size());
    for (const auto& c : t.children())
        children.push_back(attach_plans(c, plans, next_leaf));
    return Tree::node(t.caret(), std::move(children));
}

} // namespace

namespace {

// The search future depends only on the pending cell depths; seeing the same
// configuration again (necessarily with at least as many insertions) cannot
// lead to a new outcome.
std::pair<std::vector<unsigned>, std::vector<unsigned>> state_key(const AlignState& s) {
    std::pair<std::vector<unsigned>, std::vector<unsigned>> key;
    for (const auto& c : s.q1)
        key.first.push_back(c.depth);
    for (const auto& c : s.q2)
        key.second.push_back(c.depth);
    return key;
}

} // namespace

TreePair compose_pairs(const TreePair& a, const TreePair& b, size_t budget) {
    if (!a.ctx->same_group(*b.ctx))
        throw context_mismatch_error("composing pairs from different contexts");
    std::vector<CaretShape> shapes = enumerate_carets(*a.ctx);

    AlignState start;
    start.q1 = initial_cells(a.right);
    start.q2 = initial_cells(b.left);
    start.plan1.assign(a.right.leaf_count(), Tree::leaf());
    start.plan2.assign(b.left.leaf_count(), Tree::leaf());
    settle(start);

    std::set<std::pair<std::vector<unsigned>, std::vector<unsigned>>> seen{state_key(start)};
    std::deque<AlignState> queue{std::move(start)};
    size_t spent = 0;
    while (!queue.empty()) {
        AlignState state = std::move(queue.front());
        queue.pop_front();
        if (state.q1.empty() && state.q2.empty()) {
            size_t k = 0;
            Tree grown_a_left = attach_plans(a.left, state.plan1, k);
            k = 0;
            Tree grown_a_right = attach_plans(a.right, state.plan1, k);
            k = 0;
            Tree grown_b_left = attach_plans(b.left, state.plan2, k);
            k = 0;
            Tree grown_b_right = attach_plans(b.right, state.plan2, k);
            if (leaf_depths(grown_a_right) != leaf_depths(grown_b_left))
                throw error("refinement postcondition violated");
            return TreePair(a.ctx, std::move(grown_a_left), std::move(grown_b_right));
        }
        // One side exhausted with cells left on the other cannot happen: both
        // sequences tile the same interval exactly.
        bool side1 = state.q2.empty() ||
                     (!state.q1.empty() && state.q1.front().depth < state.q2.front().depth);
        for (const CaretShape& shape : shapes) {
            AlignState next = state;
            split_head(next, side1, shape);
            settle(next);
            if (++spent > budget)
                throw refinement_budget_error("common refinement exceeded budget of " +
                                              std::to_string(budget) + " caret insertions");
            if (seen.insert(state_key(next)).second)
                queue.push_back(std::move(next));
        }
    }
    throw no_common_refinement_error("no common refinement found");
}

// ---------------------------------------------------------------------------
// Power maps between P(x) and P(x^k)
// ---------------------------------------------------------------------------

namespace {

Tree map_legs(const Tree& t, const std::function<unsigned(unsigned)>& f) {
    if (t.is_leaf())
        return t;
    CaretShape shape;
    shape.legs.reserve(t.caret().legs.size());
    for (unsigned leg : t.caret().legs)
        shape.legs.push_back(f(leg));
    std::vector<Tree> children;
    children.reserve(t.children().size());
    for (const auto& c : t.children())
        children.push_back(map_legs(c, f));
    return Tree::node(std::move(shape), std::move(children));
}

} // namespace

TreePair power_map_down(const TreePair& tp, unsigned k) {
    if (k == 0)
        throw error("power map needs k >= 1");
    const auto& coeffs = tp.ctx->subdivision().coeffs();
    std::vector<BigInt> base(coeffs.size() / k, BigInt(0));
    for (size_t i = 1; i <= coeffs.size(); ++i) {
        if (coeffs[i - 1] == 0)
            continue;
        if (i % k != 0)
            throw indivisible_leg_error("exponent " + std::to_string(i) +
                                        " not divisible by " + std::to_string(k));
        base[i / k - 1] = coeffs[i - 1];
    }
    ContextPtr down_ctx = BetaContext::create(std::move(base));
    auto divide = [k](unsigned leg) {
        if (leg % k != 0)
            throw indivisible_leg_error("leg length " + std::to_string(leg) +
                                        " not divisible by " + std::to_string(k));
        return leg / k;
    };
    return TreePair(down_ctx, map_legs(tp.left, divide), map_legs(tp.right, divide));
}

TreePair power_map_up(const TreePair& tp, unsigned k) {
    if (k == 0)
        throw error("power map needs k >= 1");
    const auto& coeffs = tp.ctx->subdivision().coeffs();
    std::vector<BigInt> up(coeffs.size() * k, BigInt(0));
    for (size_t i = 1; i <= coeffs.size(); ++i)
        up[i * k - 1] = coeffs[i - 1];
    ContextPtr up_ctx = BetaContext::create(std::move(up));
    auto times = [k](unsigned leg) { return leg * k; };
    return TreePair(up_ctx, map_legs(tp.left, times), map_legs(tp.right, times));
}

// ---------------------------------------------------------------------------
// Exhaustive tree enumeration
// ---------------------------------------------------------------------------

namespace {

const std::vector<Tree>& trees_within(std::map<unsigned, std::vector<Tree>>& memo,
                                      const std::vector<CaretShape>& shapes, unsigned budget) {
    auto it = memo.find(budget);
    if (it != memo.end())
        return it->second;
    std::vector<Tree> out{Tree::leaf()};
    for (const CaretShape& shape : shapes) {
        unsigned deepest = *std::max_element(shape.legs.begin(), shape.legs.end());
        if (deepest > budget)
            continue;
        // Cartesian product over the per-leg choices.
        std::vector<std::vector<Tree>> assembled{{}};
        for (unsigned leg : shape.legs) {
            const std::vector<Tree>& options = trees_within(memo, shapes, budget - leg);
            std::vector<std::vector<Tree>> next;
            next.reserve(assembled.size() * options.size());
            for (const auto& prefix : assembled)
                for (const auto& opt : options) {
                    auto copy = prefix;
                    copy.push_back(opt);
                    next.push_back(std::move(copy));
                }
            assembled = std::move(next);
        }
        for (auto& children : assembled)
            out.push_back(Tree::node(shape, std::move(children)));
    }
    return memo.emplace(budget, std::move(out)).first->second;
}

} // namespace

void for_each_tree(const std::vector<CaretShape>& shapes, unsigned depth_bound,
                   const std::function<void(const Tree&)>& fn) {
    std::map<unsigned, std::vector<Tree>> memo;
    for (const Tree& t : trees_within(memo, shapes, depth_bound))
        fn(t);
}

size_t count_trees(const std::vector<CaretShape>& shapes, unsigned depth_bound) {
    size_t n = 0;
    for_each_tree(shapes, depth_bound, [&](const Tree&) { ++n; });
    return n;
}

// ---------------------------------------------------------------------------
// Presentations and relation checking
// ---------------------------------------------------------------------------

std::string Relation::to_string() const {
    std::ostringstream out;
    for (size_t i = 0; i < lhs.size(); ++i)
        out << (i ? " " : "") << lhs[i].to_string();
    out << " = ";
    for (size_t i = 0; i < rhs.size(); ++i)
        out << (i ? " " : "") << rhs[i].to_string();
    return out.str();
}

std::vector<Relation> emit_presentation(const BigInt& a, const BigInt& b, unsigned max_index) {
    if (!quadratic_tree_pair_defined(a, b))
        throw not_tree_pair_definable_error(
            "ax^2 + bx - 1 with a > b has no well-defined tree-pair representation "
            "(definable exactly when a <= b)");
    if (!a.fits_ulong_p() || !b.fits_ulong_p())
        throw error("presentation coefficients too large");
    unsigned au = static_cast<unsigned>(a.get_ui());
    unsigned shift = au + static_cast<unsigned>(b.get_ui()) - 1;
    std::vector<Relation> rels;
    for (char f : {'x', 'y'})
        for (char g : {'x', 'y'})
            for (unsigned j = 1; j <= max_index; ++j)
                for (unsigned i = 0; i < j; ++i)
                    rels.push_back({{{f, j}, {g, i}}, {{g, i}, {f, j + shift}}});
    for (unsigned i = 0; i <= max_index; ++i) {
        Word lhs, rhs;
        for (unsigned t = 0; t < au; ++t)
            lhs.push_back({'x', i + au + t});
        lhs.push_back({'x', i});
        for (unsigned t = 0; t < au; ++t)
            rhs.push_back({'y', i + t});
        rhs.push_back({'y', i});
        rels.push_back({std::move(lhs), std::move(rhs)});
    }
    return rels;
}

PLMap eval_word(const Word& w, ComposeOrder order) {
    PLMap acc = PLMap::identity(tau_context());
    auto step = [&](const GenSymbol& s) {
        PLMap g = ftau_generator(s.letter == 'x' ? GeneratorKind::x : GeneratorKind::y, s.index);
        acc = compose(acc, g);
    };
    if (order == ComposeOrder::left_to_right) {
        for (const auto& s : w)
            step(s);
    } else {
        for (auto it = w.rbegin(); it != w.rend(); ++it)
            step(*it);
    }
    return acc;
}

bool RelationReport::each_holds_somewhere() const {
    for (const auto& c : checks)
        if (!c.holds_left_to_right && !c.holds_right_to_left)
            return false;
    return true;
}

RelationReport check_tau_relations(const std::vector<Relation>& relations) {
    RelationReport rep;
    bool all_l2r = true, all_r2l = true;
    for (const Relation& rel : relations) {
        RelationCheck check{rel, false, false};
        check.holds_left_to_right = eval_word(rel.lhs, ComposeOrder::left_to_right) ==
                                    eval_word(rel.rhs, ComposeOrder::left_to_right);
        check.holds_right_to_left = eval_word(rel.lhs, ComposeOrder::right_to_left) ==
                                    eval_word(rel.rhs, ComposeOrder::right_to_left);
        all_l2r = all_l2r && check.holds_left_to_right;
        all_r2l = all_r2l && check.holds_right_to_left;
        rep.checks.push_back(std::move(check));
    }
    if (all_l2r != all_r2l)
        rep.consistent_order =
            all_l2r ? ComposeOrder::left_to_right : ComposeOrder::right_to_left;
    return rep;
}

RelationReport check_ftau_relations(unsigned max_i) {
    std::vector<Relation> rels;
    for (char f : {'x', 'y'})
        for (char g : {'x', 'y'})
            for (unsigned j = 1; j <= max_i; ++j)
                for (unsigned i = 0; i < j; ++i)
                    rels.push_back({{{f, j}, {g, i}}, {{g, i}, {f, j + 1}}});
    for (unsigned i = 0; i <= max_i; ++i)
        rels.push_back({{{'x', i}, {'x', i + 1}}, {{'y', i}, {'y', i}}});
    return check_tau_relations(rels);
}

} // namespace betaforge
