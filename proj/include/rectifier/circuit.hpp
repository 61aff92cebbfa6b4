#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "rectifier/vars.hpp"

namespace rectifier {

using gate_id = std::uint32_t;

enum class gate_kind : std::uint8_t { constant, variable, negation, conjunction, disjunction, decision };

/// One node of a circuit DAG. Children are stored out of line in the owning
/// dag; `first`/`count` index into its child array. Decision gates have
/// exactly two children (low = var false, high = var true).
struct gate {
    gate_kind kind;
    bool value = false;   // constant gates
    var_id var{};         // variable and decision gates
    std::uint32_t first = 0;
    std::uint32_t count = 0;
};

/// Immutable gate storage. Gates are topologically ordered: every child id
/// is smaller than its parent's id.
struct dag {
    std::vector<gate> gates;
    std::vector<gate_id> children;

    std::span<const gate_id> children_of(gate_id g) const {
        const auto& n = gates[g];
        return {children.data() + n.first, n.count};
    }
};

/// A Boolean circuit: a shared, immutable dag plus a root. Copying a circuit
/// is cheap; every operation returns a new circuit.
class circuit {
public:
    circuit();  // the constant false

    static circuit constant(bool value);
    static circuit variable(var_id v);
    static circuit from_literal(literal l);
    /// Conjunction of the term's literals (true for the empty term).
    static circuit from_term(const term& t);

    gate_id root() const noexcept { return root_; }
    const dag& graph() const noexcept { return *dag_; }
    const gate& node(gate_id g) const { return dag_->gates[g]; }
    std::span<const gate_id> children(gate_id g) const { return dag_->children_of(g); }

    bool is_constant() const noexcept;
    /// Value of a constant root; only meaningful when is_constant().
    bool constant_value() const noexcept;

    /// Reachability mask over graph().gates.
    std::vector<bool> reachable() const;
    /// Number of gates reachable from the root.
    std::size_t gate_count() const;
    /// Number of arcs reachable from the root. A decision gate counts its two
    /// children plus the arc from its variable.
    std::size_t size() const;
    /// Variables occurring in the part of the dag reachable from the root,
    /// sorted by id.
    std::vector<var_id> vars() const;

private:
    friend class circuit_builder;
    circuit(std::shared_ptr<const dag> d, gate_id root) : dag_(std::move(d)), root_(root) {}

    std::shared_ptr<const dag> dag_;
    gate_id root_ = 0;
};

/// Incremental construction of a single dag with hash-consing and local
/// constant folding. Circuits are brought in with import(), which copies the
/// reachable part of their dag.
class circuit_builder {
public:
    explicit circuit_builder(bool sharing = true) : sharing_(sharing) {}

    gate_id constant(bool value);
    gate_id variable(var_id v);
    gate_id literal(struct literal l);
    gate_id negation(gate_id child);
    /// n-ary And; drops true children and duplicates, folds to false on a
    /// false child, collapses arity 0 to true and arity 1 to the child.
    gate_id conjunction(std::span<const gate_id> kids);
    gate_id disjunction(std::span<const gate_id> kids);
    gate_id conjunction(gate_id a, gate_id b);
    gate_id disjunction(gate_id a, gate_id b);
    /// Decision(v, low, high); collapses identical children.
    gate_id decision(var_id v, gate_id low, gate_id high);
    /// (a <=> b) as Or(And(a, b), And(Not a, Not b)).
    gate_id equivalence(gate_id a, gate_id b);

    gate_id import(const circuit& c);

    const gate& node(gate_id g) const { return dag_.gates[g]; }
    bool is_const(gate_id g, bool value) const;

    circuit finish(gate_id root) &&;
    /// Several circuits sharing the built dag.
    std::vector<circuit> finish(std::span<const gate_id> roots) &&;

private:
    struct key_hash {
        std::size_t operator()(const std::vector<std::uint32_t>& k) const noexcept;
    };

    gate_id emit(gate g, std::span<const gate_id> kids);
    gate_id nary(gate_kind kind, std::span<const gate_id> kids);

    bool sharing_;
    dag dag_;
    std::unordered_map<std::vector<std::uint32_t>, gate_id, key_hash> unique_;
    std::vector<std::uint32_t> scratch_;
};

// ---------------------------------------------------------------------------
// Expression trees, the input of build()
// ---------------------------------------------------------------------------

enum class expr_kind : std::uint8_t { constant, variable, negation, conjunction, disjunction, implication, equivalence, decision };

/// Abstract syntax of a propositional expression. Nodes are shared, so a
/// parser can produce a DAG (e.g. for `let` bindings).
struct expr {
    expr_kind kind = expr_kind::constant;
    bool value = false;
    std::string name;  // variable name, or decision variable
    std::vector<std::shared_ptr<const expr>> args;
};
using expr_ptr = std::shared_ptr<const expr>;

expr_ptr make_const_expr(bool value);
expr_ptr make_var_expr(std::string name);
expr_ptr make_expr(expr_kind kind, std::vector<expr_ptr> args, std::string name = {});

struct build_options {
    bool sharing = true;
};

/// Builds a circuit from an expression, resolving names against `table`.
/// Throws input_error on unknown names, zero-arity And/Or, or wrong arity.
circuit build(const expr& e, const var_table& table, build_options opts = {});

// ---------------------------------------------------------------------------
// Transformations
// ---------------------------------------------------------------------------

/// Replaces the variables of `gamma` by constants and propagates constants
/// bottom-up. The result never has more arcs than `phi`.
circuit condition(const circuit& phi, const term& gamma);
circuit condition(const circuit& phi, literal l);

/// Not(phi) as a single wrapper gate (constants are folded).
circuit negate(const circuit& phi);
circuit conjoin(const circuit& a, const circuit& b);
circuit disjoin(const circuit& a, const circuit& b);
/// a <=> b, encoded as Decision(b-var, Not a, a) when `b` is a variable.
circuit equivalence(const circuit& a, const circuit& b);

inline std::vector<var_id> vars(const circuit& phi) { return phi.vars(); }

}  // namespace rectifier
