#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "rectifier/circuit.hpp"
#include "rectifier/classifier.hpp"
#include "rectifier/semantics.hpp"
#include "rectifier/vars.hpp"

namespace rectifier {

/// Immutable binary decision tree with 0/1 leaves. The low child is taken
/// when the node's variable is false. Subtrees may be shared in memory, but
/// all counts treat the tree as a tree.
class decision_tree {
public:
    decision_tree();  // the 0-leaf

    static decision_tree leaf(bool value);
    /// A raw decision node; no simplification is applied.
    static decision_tree branch(var_id v, decision_tree low, decision_tree high);

    bool is_leaf() const noexcept;
    bool leaf_value() const noexcept;
    var_id var() const noexcept;
    decision_tree low() const;
    decision_tree high() const;

    /// Decision nodes plus leaves, counted with multiplicity (saturating).
    std::uint64_t node_count() const noexcept;
    std::uint64_t decision_count() const noexcept;
    std::size_t depth() const noexcept;
    std::size_t hash() const noexcept;

    /// Identity of the underlying node, usable as a memo key.
    const void* identity() const noexcept { return node_.get(); }

    friend bool operator==(const decision_tree& a, const decision_tree& b);

private:
    struct node;
    explicit decision_tree(std::shared_ptr<const node> n) : node_(std::move(n)) {}
    std::shared_ptr<const node> node_;
};

/// Variables occurring in the tree, sorted by id.
std::vector<var_id> dt_vars(const decision_tree& t);
/// Follows the path selected by omega; throws input_error on an unassigned variable.
bool dt_eval(const decision_tree& t, const assignment& omega);

/// Replaces every node over lit.var by its high (positive) or low child.
decision_tree dt_condition(const decision_tree& t, literal lit);
/// Swaps 0- and 1-leaves.
decision_tree dt_negate(const decision_tree& t);
/// Replaces every 1-leaf of a by b (raw, unsimplified).
decision_tree dt_conjoin(const decision_tree& a, const decision_tree& b);
/// Replaces every 0-leaf of a by b (raw, unsimplified).
decision_tree dt_disjoin(const decision_tree& a, const decision_tree& b);

struct simplify_stats {
    decision_tree tree;
    /// Passes executed until a pass left the tree unchanged.
    std::size_t passes = 0;
};

/// Removes nodes whose variable is already decided on the path from the
/// root, then merges nodes with identical children bottom-up.
decision_tree dt_simplify(const decision_tree& t);
simplify_stats dt_simplify_to_fixpoint(const decision_tree& t);

/// No variable occurs twice on a root-to-leaf path.
bool is_read_once(const decision_tree& t);
/// Some decision node has two structurally equal children.
bool has_identical_children(const decision_tree& t);
inline bool is_simplified(const decision_tree& t) { return is_read_once(t) && !has_identical_children(t); }

/// Desugars every node into a decision gate.
circuit dt_to_circuit(const decision_tree& t);
/// Shannon expansion along `order`; the result is simplified. vars(phi)
/// must be contained in `order`.
decision_tree circuit_to_dt(const circuit& phi, std::span<const var_id> order, const limits& lim = {});

/// Replaces each 1-leaf by (y 0 1) and each 0-leaf by (y 1 0).
decision_tree attach_label(const decision_tree& x_tree, var_id label);

/// Intermediate trees of the rectification pipeline, all over X except
/// `rectified`.
struct dt_rectify_trace {
    decision_tree sigma_x;           ///< sigma conditioned on y
    decision_tree t_pos_cond;        ///< t conditioned on y
    decision_tree t_neg_cond;        ///< t conditioned on !y
    decision_tree t_negative;        ///< t(!y) and not t(y)
    decision_tree t_positive;        ///< t(y) and not t(!y)
    decision_tree keep_raw;          ///< sigma_x and not t_negative, unsimplified
    decision_tree keep;
    decision_tree combined_raw;      ///< keep or t_positive, unsimplified
    decision_tree combined;          ///< the rectified positive instances
    decision_tree rectified;         ///< combined with y re-attached
};

/// Rectifies a mono-label classification tree by a theory tree, both over
/// X and y. Throws certification_error if sigma_dt is not a classification
/// tree, input_error if either tree mentions other variables.
dt_rectify_trace dt_rectify_traced(const decision_tree& sigma_dt, const decision_tree& t_dt, const classification_problem& problem,
                                   const limits& lim = {});
inline decision_tree dt_rectify(const decision_tree& sigma_dt, const decision_tree& t_dt, const classification_problem& problem,
                                const limits& lim = {}) {
    return dt_rectify_traced(sigma_dt, t_dt, problem, lim).rectified;
}

/// Classification trees over X and y; an instance is positive when a strict
/// majority of trees classify it positively (ties are negative).
struct random_forest {
    std::vector<decision_tree> trees;
};

/// Class of x under one classification tree (the tree evaluated with y = 1).
bool tree_class(const decision_tree& t, const instance& x, var_id label);
bool forest_vote(const random_forest& forest, const instance& x, var_id label);

/// Rectifies every tree; trees are processed in parallel with OpenMP and the
/// output order matches the input order.
random_forest rf_rectify(const random_forest& forest, const decision_tree& t_dt, const classification_problem& problem,
                         const limits& lim = {});
/// Single-threaded reference for rf_rectify.
random_forest rf_rectify_serial(const random_forest& forest, const decision_tree& t_dt, const classification_problem& problem,
                                const limits& lim = {});

}  // namespace rectifier
