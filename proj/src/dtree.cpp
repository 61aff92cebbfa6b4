#include "rectifier/dtree.hpp"

#include <algorithm>
#include <exception>
#include <functional>
#include <limits>
#include <unordered_map>

#include "rectifier/error.hpp"

namespace rectifier {

struct decision_tree::node {
    bool leaf = true;
    bool value = false;
    var_id var{};
    std::shared_ptr<const node> low;
    std::shared_ptr<const node> high;
    std::size_t hash = 0;
    std::uint64_t count = 1;
    std::uint64_t decisions = 0;
    std::size_t depth = 0;
};

namespace {

constexpr std::uint64_t saturate = std::numeric_limits<std::uint64_t>::max();

std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) { return a > saturate - b ? saturate : a + b; }

}  // namespace

decision_tree::decision_tree() : decision_tree(leaf(false)) {}

decision_tree decision_tree::leaf(bool value) {
    static const auto zero = [] {
        auto n = std::make_shared<node>();
        n->hash = 0x51ed27;
        return std::shared_ptr<const node>(n);
    }();
    static const auto one = [] {
        auto n = std::make_shared<node>();
        n->value = true;
        n->hash = 0xa3b195;
        return std::shared_ptr<const node>(n);
    }();
    return decision_tree(value ? one : zero);
}

decision_tree decision_tree::branch(var_id v, decision_tree low, decision_tree high) {
    auto n = std::make_shared<node>();
    n->leaf = false;
    n->var = v;
    n->hash = std::hash<std::uint64_t>{}((std::uint64_t{index_of(v)} << 32) ^ (low.node_->hash * 0x9e3779b97f4a7c15ULL) ^
                                         (high.node_->hash + 0x7f4a7c15));
    n->count = sat_add(1, sat_add(low.node_->count, high.node_->count));
    n->decisions = sat_add(1, sat_add(low.node_->decisions, high.node_->decisions));
    n->depth = 1 + std::max(low.node_->depth, high.node_->depth);
    n->low = std::move(low.node_);
    n->high = std::move(high.node_);
    return decision_tree(std::move(n));
}

bool decision_tree::is_leaf() const noexcept { return node_->leaf; }
bool decision_tree::leaf_value() const noexcept { return node_->value; }
var_id decision_tree::var() const noexcept { return node_->var; }
decision_tree decision_tree::low() const { return decision_tree(node_->low); }
decision_tree decision_tree::high() const { return decision_tree(node_->high); }
std::uint64_t decision_tree::node_count() const noexcept { return node_->count; }
std::uint64_t decision_tree::decision_count() const noexcept { return node_->decisions; }
std::size_t decision_tree::depth() const noexcept { return node_->depth; }
std::size_t decision_tree::hash() const noexcept { return node_->hash; }

bool operator==(const decision_tree& a, const decision_tree& b) {
    if (a.node_ == b.node_) return true;
    if (a.node_->hash != b.node_->hash || a.node_->count != b.node_->count) return false;
    if (a.is_leaf() || b.is_leaf()) return a.is_leaf() == b.is_leaf() && a.leaf_value() == b.leaf_value();
    return a.var() == b.var() && a.low() == b.low() && a.high() == b.high();
}

// ---------------------------------------------------------------------------
// queries
// ---------------------------------------------------------------------------

std::vector<var_id> dt_vars(const decision_tree& t) {
    std::vector<var_id> out;
    std::unordered_map<const void*, bool> seen;
    std::function<void(const decision_tree&)> walk = [&](const decision_tree& n) {
        if (n.is_leaf() || !seen.emplace(n.identity(), true).second) return;
        out.push_back(n.var());
        walk(n.low());
        walk(n.high());
    };
    walk(t);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

bool dt_eval(const decision_tree& t, const assignment& omega) {
    decision_tree n = t;
    while (!n.is_leaf()) {
        auto v = omega.value_of(n.var());
        if (!v) throw input_error("dt_eval: variable " + std::to_string(index_of(n.var())) + " is unassigned");
        n = *v ? n.high() : n.low();
    }
    return n.leaf_value();
}

// ---------------------------------------------------------------------------
// transformations
// ---------------------------------------------------------------------------

namespace {

/// Rebuilds a tree bottom-up, mapping leaves with `on_leaf` and nodes with
/// `on_node`; shared subtrees are processed once.
class tree_rewriter {
public:
    using leaf_fn = std::function<decision_tree(bool)>;
    using node_fn = std::function<decision_tree(const decision_tree&, tree_rewriter&)>;

    tree_rewriter(leaf_fn on_leaf, node_fn on_node) : on_leaf_(std::move(on_leaf)), on_node_(std::move(on_node)) {}

    decision_tree operator()(const decision_tree& t) {
        if (t.is_leaf()) return on_leaf_(t.leaf_value());
        if (auto it = memo_.find(t.identity()); it != memo_.end()) return it->second;
        auto out = on_node_(t, *this);
        memo_.emplace(t.identity(), out);
        return out;
    }

private:
    leaf_fn on_leaf_;
    node_fn on_node_;
    std::unordered_map<const void*, decision_tree> memo_;
};

decision_tree keep_node(const decision_tree& t, tree_rewriter& self) { return decision_tree::branch(t.var(), self(t.low()), self(t.high())); }

}  // namespace

decision_tree dt_condition(const decision_tree& t, literal lit) {
    tree_rewriter rw([](bool v) { return decision_tree::leaf(v); },
                     [&](const decision_tree& n, tree_rewriter& self) {
                         if (n.var() == lit.var) return self(lit.positive ? n.high() : n.low());
                         return keep_node(n, self);
                     });
    return rw(t);
}

decision_tree dt_negate(const decision_tree& t) {
    tree_rewriter rw([](bool v) { return decision_tree::leaf(!v); }, keep_node);
    return rw(t);
}

decision_tree dt_conjoin(const decision_tree& a, const decision_tree& b) {
    tree_rewriter rw([&](bool v) { return v ? b : decision_tree::leaf(false); }, keep_node);
    return rw(a);
}

decision_tree dt_disjoin(const decision_tree& a, const decision_tree& b) {
    tree_rewriter rw([&](bool v) { return v ? decision_tree::leaf(true) : b; }, keep_node);
    return rw(a);
}

decision_tree attach_label(const decision_tree& x_tree, var_id label) {
    const auto positive = decision_tree::branch(label, decision_tree::leaf(false), decision_tree::leaf(true));
    const auto negative = decision_tree::branch(label, decision_tree::leaf(true), decision_tree::leaf(false));
    tree_rewriter rw([&](bool v) { return v ? positive : negative; }, keep_node);
    return rw(x_tree);
}

// ---------------------------------------------------------------------------
// simplification
// ---------------------------------------------------------------------------

namespace {

/// Hash-consing of decision nodes whose children are themselves unique:
/// structurally equal trees built through one table are the same object.
class node_table {
public:
    decision_tree make(var_id v, const decision_tree& low, const decision_tree& high) {
        key k{index_of(v), low.identity(), high.identity()};
        if (auto it = unique_.find(k); it != unique_.end()) return it->second;
        auto n = decision_tree::branch(v, low, high);
        unique_.emplace(k, n);
        return n;
    }

private:
    struct key {
        std::uint32_t var;
        const void* low;
        const void* high;
        bool operator==(const key&) const = default;
    };
    struct key_hash {
        std::size_t operator()(const key& k) const noexcept {
            auto h = std::hash<const void*>{}(k.low) * 31 + std::hash<const void*>{}(k.high);
            return h * 1000003 + k.var;
        }
    };
    std::unordered_map<key, decision_tree, key_hash> unique_;
};

/// One simplification pass: a top-down walk carrying the values decided on
/// the current path, merging identical children on the way back up.
class simplifier {
public:
    decision_tree run(const decision_tree& t) { return visit(t); }

private:
    decision_tree visit(const decision_tree& t) {
        if (t.is_leaf()) return t;
        const auto v = index_of(t.var());
        if (v >= context_.size()) context_.resize(v + 1, -1);
        if (context_[v] >= 0) return visit(context_[v] ? t.high() : t.low());
        context_[v] = 0;
        auto low = visit(t.low());
        context_[v] = 1;
        auto high = visit(t.high());
        context_[v] = -1;
        if (low.identity() == high.identity()) return low;
        return nodes_.make(t.var(), low, high);
    }

    std::vector<int> context_;
    node_table nodes_;
};

}  // namespace

decision_tree dt_simplify(const decision_tree& t) { return simplifier{}.run(t); }

simplify_stats dt_simplify_to_fixpoint(const decision_tree& t) {
    simplify_stats s{t, 0};
    while (true) {
        auto next = dt_simplify(s.tree);
        ++s.passes;
        bool same = next == s.tree;
        s.tree = std::move(next);
        if (same) return s;
    }
}

bool is_read_once(const decision_tree& t) {
    std::vector<bool> on_path;
    std::function<bool(const decision_tree&)> walk = [&](const decision_tree& n) {
        if (n.is_leaf()) return true;
        auto v = index_of(n.var());
        if (v >= on_path.size()) on_path.resize(v + 1, false);
        if (on_path[v]) return false;
        on_path[v] = true;
        bool ok = walk(n.low()) && walk(n.high());
        on_path[v] = false;
        return ok;
    };
    return walk(t);
}

bool has_identical_children(const decision_tree& t) {
    std::unordered_map<const void*, bool> memo;
    std::function<bool(const decision_tree&)> walk = [&](const decision_tree& n) -> bool {
        if (n.is_leaf()) return false;
        if (auto it = memo.find(n.identity()); it != memo.end()) return it->second;
        bool found = n.low() == n.high() || walk(n.low()) || walk(n.high());
        memo.emplace(n.identity(), found);
        return found;
    };
    return walk(t);
}

// ---------------------------------------------------------------------------
// circuit conversion
// ---------------------------------------------------------------------------

circuit dt_to_circuit(const decision_tree& t) {
    circuit_builder b;
    std::unordered_map<const void*, gate_id> memo;
    std::function<gate_id(const decision_tree&)> lower = [&](const decision_tree& n) -> gate_id {
        if (n.is_leaf()) return b.constant(n.leaf_value());
        if (auto it = memo.find(n.identity()); it != memo.end()) return it->second;
        auto lo = lower(n.low());
        auto hi = lower(n.high());
        auto g = b.decision(n.var(), lo, hi);
        memo.emplace(n.identity(), g);
        return g;
    };
    auto root = lower(t);
    return std::move(b).finish(root);
}

decision_tree circuit_to_dt(const circuit& phi, std::span<const var_id> order, const limits& lim) {
    for (auto v : phi.vars())
        if (std::find(order.begin(), order.end(), v) == order.end())
            throw input_error("circuit_to_dt: circuit variable " + std::to_string(index_of(v)) + " is missing from the order");
    auto tt = tabulate(phi, order, lim);

    // The rows below depth k form a contiguous range; equal halves mean the
    // function does not depend on order[k] there.
    node_table nodes;
    std::function<decision_tree(std::size_t, std::uint64_t)> expand = [&](std::size_t k, std::uint64_t first) -> decision_tree {
        if (k == order.size()) return decision_tree::leaf(tt.at(first));
        const std::uint64_t half = std::uint64_t{1} << (order.size() - 1 - k);
        auto lo = expand(k + 1, first);
        auto hi = expand(k + 1, first + half);
        if (lo.identity() == hi.identity()) return lo;
        return nodes.make(order[k], lo, hi);
    };
    return expand(0, 0);
}

// ---------------------------------------------------------------------------
// rectification
// ---------------------------------------------------------------------------

dt_rectify_trace dt_rectify_traced(const decision_tree& sigma_dt, const decision_tree& t_dt, const classification_problem& problem,
                                   const limits& lim) {
    const auto y = problem.label();
    for (const auto* tree : {&sigma_dt, &t_dt})
        for (auto v : dt_vars(*tree))
            if (!problem.is_feature(v) && v != y) throw input_error("decision tree mentions variables outside X and the label");
    classifier clf(problem, dt_to_circuit(sigma_dt), lim);
    clf.require_certified();

    dt_rectify_trace tr;
    tr.sigma_x = dt_simplify(dt_condition(sigma_dt, {y, true}));
    tr.t_pos_cond = dt_simplify(dt_condition(t_dt, {y, true}));
    tr.t_neg_cond = dt_simplify(dt_condition(t_dt, {y, false}));
    tr.t_negative = dt_simplify(dt_conjoin(tr.t_neg_cond, dt_negate(tr.t_pos_cond)));
    tr.t_positive = dt_simplify(dt_conjoin(tr.t_pos_cond, dt_negate(tr.t_neg_cond)));
    tr.keep_raw = dt_conjoin(tr.sigma_x, dt_negate(tr.t_negative));
    tr.keep = dt_simplify(tr.keep_raw);
    tr.combined_raw = dt_disjoin(tr.keep, tr.t_positive);
    tr.combined = dt_simplify(tr.combined_raw);
    tr.rectified = attach_label(tr.combined, y);
    return tr;
}

// ---------------------------------------------------------------------------
// forests
// ---------------------------------------------------------------------------

bool tree_class(const decision_tree& t, const instance& x, var_id label) {
    auto vars = x.vars();
    auto bits = x.bits();
    vars.push_back(label);
    bits.push_back(1);
    return dt_eval(t, assignment(std::move(vars), std::move(bits)));
}

bool forest_vote(const random_forest& forest, const instance& x, var_id label) {
    std::size_t positive = 0;
    for (const auto& t : forest.trees) positive += tree_class(t, x, label);
    return 2 * positive > forest.trees.size();
}

random_forest rf_rectify(const random_forest& forest, const decision_tree& t_dt, const classification_problem& problem, const limits& lim) {
    if (forest.trees.empty()) throw input_error("a random forest needs at least one tree");
    const auto n = static_cast<std::int64_t>(forest.trees.size());
    std::vector<decision_tree> out(forest.trees.size());
    std::vector<std::exception_ptr> failures(forest.trees.size());
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t i = 0; i < n; ++i) {
        try {
            out[i] = dt_rectify(forest.trees[i], t_dt, problem, lim);
        } catch (...) {
            failures[i] = std::current_exception();
        }
    }
    for (auto& f : failures)
        if (f) std::rethrow_exception(f);
    return {std::move(out)};
}

random_forest rf_rectify_serial(const random_forest& forest, const decision_tree& t_dt, const classification_problem& problem,
                                const limits& lim) {
    if (forest.trees.empty()) throw input_error("a random forest needs at least one tree");
    random_forest out;
    for (const auto& tree : forest.trees) out.trees.push_back(dt_rectify(tree, t_dt, problem, lim));
    return out;
}

}  // namespace rectifier
