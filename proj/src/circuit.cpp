#include "rectifier/circuit.hpp"

#include <algorithm>

#include "rectifier/error.hpp"

namespace rectifier {

// ---------------------------------------------------------------------------
// circuit
// ---------------------------------------------------------------------------

circuit::circuit() : circuit(constant(false)) {}

circuit circuit::constant(bool value) {
    circuit_builder b;
    auto g = b.constant(value);
    return std::move(b).finish(g);
}

circuit circuit::variable(var_id v) {
    circuit_builder b;
    auto g = b.variable(v);
    return std::move(b).finish(g);
}

circuit circuit::from_literal(struct literal l) {
    circuit_builder b;
    auto g = b.literal(l);
    return std::move(b).finish(g);
}

circuit circuit::from_term(const term& t) {
    circuit_builder b;
    std::vector<gate_id> kids;
    kids.reserve(t.size());
    for (const auto& l : t.literals()) kids.push_back(b.literal(l));
    auto g = b.conjunction(kids);
    return std::move(b).finish(g);
}

bool circuit::is_constant() const noexcept { return node(root_).kind == gate_kind::constant; }

bool circuit::constant_value() const noexcept { return node(root_).value; }

std::vector<bool> circuit::reachable() const {
    std::vector<bool> mark(dag_->gates.size(), false);
    mark[root_] = true;
    // Children precede parents, so one descending sweep suffices.
    for (gate_id g = root_ + 1; g-- > 0;) {
        if (!mark[g]) continue;
        for (auto c : children(g)) mark[c] = true;
    }
    return mark;
}

std::size_t circuit::gate_count() const {
    auto mark = reachable();
    return static_cast<std::size_t>(std::count(mark.begin(), mark.end(), true));
}

std::size_t circuit::size() const {
    auto mark = reachable();
    std::size_t arcs = 0;
    for (gate_id g = 0; g < mark.size(); ++g) {
        if (!mark[g]) continue;
        const auto& n = node(g);
        arcs += n.count;
        if (n.kind == gate_kind::decision) ++arcs;
    }
    return arcs;
}

std::vector<var_id> circuit::vars() const {
    auto mark = reachable();
    std::vector<var_id> out;
    for (gate_id g = 0; g < mark.size(); ++g) {
        if (!mark[g]) continue;
        const auto& n = node(g);
        if (n.kind == gate_kind::variable || n.kind == gate_kind::decision) out.push_back(n.var);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

// ---------------------------------------------------------------------------
// circuit_builder
// ---------------------------------------------------------------------------

std::size_t circuit_builder::key_hash::operator()(const std::vector<std::uint32_t>& k) const noexcept {
    std::size_t h = 0x9e3779b97f4a7c15ULL;
    for (auto x : k) h ^= x + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
}

gate_id circuit_builder::emit(gate g, std::span<const gate_id> kids) {
    if (sharing_) {
        scratch_.clear();
        scratch_.push_back(static_cast<std::uint32_t>(g.kind));
        scratch_.push_back(g.kind == gate_kind::constant ? std::uint32_t{g.value} : index_of(g.var));
        scratch_.insert(scratch_.end(), kids.begin(), kids.end());
        if (auto it = unique_.find(scratch_); it != unique_.end()) return it->second;
    }
    g.first = static_cast<std::uint32_t>(dag_.children.size());
    g.count = static_cast<std::uint32_t>(kids.size());
    dag_.children.insert(dag_.children.end(), kids.begin(), kids.end());
    auto id = static_cast<gate_id>(dag_.gates.size());
    dag_.gates.push_back(g);
    if (sharing_) unique_.emplace(scratch_, id);
    return id;
}

bool circuit_builder::is_const(gate_id g, bool value) const {
    const auto& n = dag_.gates[g];
    return n.kind == gate_kind::constant && n.value == value;
}

gate_id circuit_builder::constant(bool value) { return emit({gate_kind::constant, value}, {}); }

gate_id circuit_builder::variable(var_id v) { return emit({gate_kind::variable, false, v}, {}); }

gate_id circuit_builder::literal(struct literal l) {
    auto v = variable(l.var);
    return l.positive ? v : negation(v);
}

gate_id circuit_builder::negation(gate_id child) {
    const auto& n = dag_.gates[child];
    if (n.kind == gate_kind::constant) return constant(!n.value);
    gate_id kids[] = {child};
    return emit({gate_kind::negation}, kids);
}

gate_id circuit_builder::nary(gate_kind kind, std::span<const gate_id> kids) {
    const bool absorbing = kind == gate_kind::disjunction;  // value that decides the gate
    std::vector<gate_id> kept;
    kept.reserve(kids.size());
    for (auto k : kids) {
        if (is_const(k, absorbing)) return constant(absorbing);
        if (is_const(k, !absorbing)) continue;
        if (std::find(kept.begin(), kept.end(), k) != kept.end()) continue;
        kept.push_back(k);
    }
    if (kept.empty()) return constant(!absorbing);
    if (kept.size() == 1) return kept.front();
    return emit({kind}, kept);
}

gate_id circuit_builder::conjunction(std::span<const gate_id> kids) { return nary(gate_kind::conjunction, kids); }

gate_id circuit_builder::disjunction(std::span<const gate_id> kids) { return nary(gate_kind::disjunction, kids); }

gate_id circuit_builder::conjunction(gate_id a, gate_id b) {
    gate_id kids[] = {a, b};
    return conjunction(kids);
}

gate_id circuit_builder::disjunction(gate_id a, gate_id b) {
    gate_id kids[] = {a, b};
    return disjunction(kids);
}

gate_id circuit_builder::decision(var_id v, gate_id low, gate_id high) {
    if (low == high) return low;
    if (is_const(low, false) && is_const(high, true)) return variable(v);
    if (is_const(low, true) && is_const(high, false)) return negation(variable(v));
    gate_id kids[] = {low, high};
    return emit({gate_kind::decision, false, v}, kids);
}

gate_id circuit_builder::equivalence(gate_id a, gate_id b) {
    auto both = conjunction(a, b);
    auto neither = conjunction(negation(a), negation(b));
    return disjunction(both, neither);
}

gate_id circuit_builder::import(const circuit& c) {
    auto mark = c.reachable();
    std::vector<gate_id> map(mark.size(), 0);
    std::vector<gate_id> kids;
    for (gate_id g = 0; g <= c.root(); ++g) {
        if (!mark[g]) continue;
        const auto& n = c.node(g);
        kids.clear();
        for (auto k : c.children(g)) kids.push_back(map[k]);
        switch (n.kind) {
        case gate_kind::constant: map[g] = constant(n.value); break;
        case gate_kind::variable: map[g] = variable(n.var); break;
        case gate_kind::negation: map[g] = negation(kids[0]); break;
        case gate_kind::conjunction: map[g] = conjunction(kids); break;
        case gate_kind::disjunction: map[g] = disjunction(kids); break;
        case gate_kind::decision: map[g] = decision(n.var, kids[0], kids[1]); break;
        }
    }
    return map[c.root()];
}

circuit circuit_builder::finish(gate_id root) && {
    if (root >= dag_.gates.size()) throw error("circuit_builder::finish: root out of range");
    return circuit(std::make_shared<const dag>(std::move(dag_)), root);
}

std::vector<circuit> circuit_builder::finish(std::span<const gate_id> roots) && {
    auto shared = std::make_shared<const dag>(std::move(dag_));
    std::vector<circuit> out;
    for (auto r : roots) {
        if (r >= shared->gates.size()) throw error("circuit_builder::finish: root out of range");
        out.push_back(circuit(shared, r));
    }
    return out;
}

// ---------------------------------------------------------------------------
// expressions
// ---------------------------------------------------------------------------

expr_ptr make_const_expr(bool value) {
    auto e = std::make_shared<expr>();
    e->kind = expr_kind::constant;
    e->value = value;
    return e;
}

expr_ptr make_var_expr(std::string name) {
    auto e = std::make_shared<expr>();
    e->kind = expr_kind::variable;
    e->name = std::move(name);
    return e;
}

expr_ptr make_expr(expr_kind kind, std::vector<expr_ptr> args, std::string name) {
    auto e = std::make_shared<expr>();
    e->kind = kind;
    e->args = std::move(args);
    e->name = std::move(name);
    return e;
}

namespace {

class expr_builder {
public:
    expr_builder(const var_table& table, bool sharing) : table_(table), b_(sharing) {}

    gate_id lower(const expr& e) {
        if (auto it = done_.find(&e); it != done_.end()) return it->second;
        auto g = lower_fresh(e);
        done_.emplace(&e, g);
        return g;
    }

    circuit finish(gate_id root) && { return std::move(b_).finish(root); }

private:
    var_id resolve(const std::string& name) const {
        auto v = table_.find(name);
        if (!v) throw input_error("unknown variable '" + name + "'");
        return *v;
    }

    void expect_arity(const expr& e, std::size_t n, const char* op) const {
        if (e.args.size() != n)
            throw input_error(std::string(op) + " expects " + std::to_string(n) + " argument(s), got " + std::to_string(e.args.size()));
    }

    gate_id lower_fresh(const expr& e) {
        std::vector<gate_id> kids;
        for (const auto& a : e.args) kids.push_back(lower(*a));
        switch (e.kind) {
        case expr_kind::constant: return b_.constant(e.value);
        case expr_kind::variable: return b_.variable(resolve(e.name));
        case expr_kind::negation: expect_arity(e, 1, "not"); return b_.negation(kids[0]);
        case expr_kind::conjunction:
            if (kids.empty()) throw input_error("and requires at least one argument");
            return b_.conjunction(kids);
        case expr_kind::disjunction:
            if (kids.empty()) throw input_error("or requires at least one argument");
            return b_.disjunction(kids);
        case expr_kind::implication:
            expect_arity(e, 2, "imp");
            return b_.disjunction(b_.negation(kids[0]), kids[1]);
        case expr_kind::equivalence: expect_arity(e, 2, "iff"); return b_.equivalence(kids[0], kids[1]);
        case expr_kind::decision: expect_arity(e, 2, "dec"); return b_.decision(resolve(e.name), kids[0], kids[1]);
        }
        throw error("unreachable expression kind");
    }

    const var_table& table_;
    circuit_builder b_;
    std::unordered_map<const expr*, gate_id> done_;
};

}  // namespace

circuit build(const expr& e, const var_table& table, build_options opts) {
    expr_builder eb(table, opts.sharing);
    auto root = eb.lower(e);
    return std::move(eb).finish(root);
}

// ---------------------------------------------------------------------------
// transformations
// ---------------------------------------------------------------------------

circuit condition(const circuit& phi, const term& gamma) {
    if (gamma.empty()) return phi;
    auto mark = phi.reachable();
    circuit_builder b;
    std::vector<gate_id> map(mark.size(), 0);
    std::vector<gate_id> kids;
    for (gate_id g = 0; g <= phi.root(); ++g) {
        if (!mark[g]) continue;
        const auto& n = phi.node(g);
        kids.clear();
        for (auto k : phi.children(g)) kids.push_back(map[k]);
        switch (n.kind) {
        case gate_kind::constant: map[g] = b.constant(n.value); break;
        case gate_kind::variable:
            if (auto val = gamma.value_of(n.var)) map[g] = b.constant(*val);
            else map[g] = b.variable(n.var);
            break;
        case gate_kind::negation: map[g] = b.negation(kids[0]); break;
        case gate_kind::conjunction: map[g] = b.conjunction(kids); break;
        case gate_kind::disjunction: map[g] = b.disjunction(kids); break;
        case gate_kind::decision:
            if (auto val = gamma.value_of(n.var)) map[g] = *val ? kids[1] : kids[0];
            else map[g] = b.decision(n.var, kids[0], kids[1]);
            break;
        }
    }
    return std::move(b).finish(map[phi.root()]);
}

circuit condition(const circuit& phi, literal l) { return condition(phi, term({l})); }

circuit negate(const circuit& phi) {
    circuit_builder b;
    auto g = b.negation(b.import(phi));
    return std::move(b).finish(g);
}

circuit conjoin(const circuit& a, const circuit& b) {
    circuit_builder cb;
    auto ga = cb.import(a);
    auto gb = cb.import(b);
    auto g = cb.conjunction(ga, gb);
    return std::move(cb).finish(g);
}

circuit disjoin(const circuit& a, const circuit& b) {
    circuit_builder cb;
    auto ga = cb.import(a);
    auto gb = cb.import(b);
    auto g = cb.disjunction(ga, gb);
    return std::move(cb).finish(g);
}

circuit equivalence(const circuit& a, const circuit& b) {
    circuit_builder cb;
    auto ga = cb.import(a);
    if (b.node(b.root()).kind == gate_kind::variable) {
        auto v = b.node(b.root()).var;
        auto g = cb.decision(v, cb.negation(ga), ga);
        return std::move(cb).finish(g);
    }
    auto gb = cb.import(b);
    auto g = cb.equivalence(ga, gb);
    return std::move(cb).finish(g);
}

}  // namespace rectifier
