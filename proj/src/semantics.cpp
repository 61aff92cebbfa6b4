#include "rectifier/semantics.hpp"

#include <algorithm>
#include <bit>

#include "rectifier/error.hpp"

namespace rectifier {

void check_cap(std::size_t n, const limits& lim, const char* what) {
    if (n > lim.max_vars)
        throw cap_exceeded(std::string(what) + ": " + std::to_string(n) + " variables exceed the enumeration cap of " +
                           std::to_string(lim.max_vars));
}

// ---------------------------------------------------------------------------
// assignment
// ---------------------------------------------------------------------------

assignment::assignment(std::vector<var_id> vars, std::vector<std::uint8_t> bits) : vars_(std::move(vars)), bits_(std::move(bits)) {
    if (vars_.size() != bits_.size()) throw error("assignment: variable and value counts differ");
}

assignment assignment::from_index(std::vector<var_id> vars, std::uint64_t index) {
    const auto n = vars.size();
    std::vector<std::uint8_t> bits(n);
    for (std::size_t k = 0; k < n; ++k) bits[k] = static_cast<std::uint8_t>((index >> (n - 1 - k)) & 1U);
    return {std::move(vars), std::move(bits)};
}

assignment assignment::from_word(std::vector<var_id> vars, std::string_view word) {
    if (word.size() != vars.size())
        throw input_error("instance '" + std::string(word) + "' has " + std::to_string(word.size()) + " bits, expected " +
                          std::to_string(vars.size()));
    std::vector<std::uint8_t> bits;
    for (char ch : word) {
        if (ch != '0' && ch != '1') throw input_error("instance '" + std::string(word) + "' is not a 0/1 word");
        bits.push_back(ch == '1');
    }
    return {std::move(vars), std::move(bits)};
}

std::optional<bool> assignment::value_of(var_id v) const {
    for (std::size_t k = 0; k < vars_.size(); ++k)
        if (vars_[k] == v) return bits_[k] != 0;
    return std::nullopt;
}

std::string assignment::word() const {
    std::string w;
    for (auto b : bits_) w.push_back(b ? '1' : '0');
    return w;
}

std::uint64_t assignment::index() const {
    std::uint64_t i = 0;
    for (auto b : bits_) i = (i << 1) | b;
    return i;
}

term assignment::as_term() const {
    std::vector<literal> lits;
    for (std::size_t k = 0; k < vars_.size(); ++k) lits.push_back({vars_[k], bits_[k] != 0});
    return term(std::move(lits));
}

// ---------------------------------------------------------------------------
// evaluation
// ---------------------------------------------------------------------------

bool eval(const circuit& phi, const assignment& omega) {
    std::vector<std::int8_t> env;
    for (std::size_t k = 0; k < omega.size(); ++k) {
        auto i = index_of(omega.vars()[k]);
        if (i >= env.size()) env.resize(i + 1, -1);
        env[i] = static_cast<std::int8_t>(omega.value(k));
    }
    auto lookup = [&](var_id v) {
        auto i = index_of(v);
        if (i >= env.size() || env[i] < 0) throw input_error("eval: variable " + std::to_string(i) + " is unassigned");
        return env[i] != 0;
    };

    auto mark = phi.reachable();
    std::vector<std::uint8_t> val(phi.root() + 1, 0);
    for (gate_id g = 0; g <= phi.root(); ++g) {
        if (!mark[g]) continue;
        const auto& n = phi.node(g);
        auto kids = phi.children(g);
        bool v = false;
        switch (n.kind) {
        case gate_kind::constant: v = n.value; break;
        case gate_kind::variable: v = lookup(n.var); break;
        case gate_kind::negation: v = !val[kids[0]]; break;
        case gate_kind::conjunction: v = std::all_of(kids.begin(), kids.end(), [&](gate_id k) { return val[k] != 0; }); break;
        case gate_kind::disjunction: v = std::any_of(kids.begin(), kids.end(), [&](gate_id k) { return val[k] != 0; }); break;
        case gate_kind::decision: v = lookup(n.var) ? val[kids[1]] : val[kids[0]]; break;
        }
        val[g] = v;
    }
    return val[phi.root()] != 0;
}

// ---------------------------------------------------------------------------
// truth tables and queries
// ---------------------------------------------------------------------------

truth_table::truth_table(std::vector<var_id> vars, std::vector<std::uint64_t> words) : vars_(std::move(vars)), words_(std::move(words)) {}

std::uint64_t truth_table::count() const {
    std::uint64_t n = 0;
    for (auto w : words_) n += static_cast<std::uint64_t>(std::popcount(w));
    return n;
}

std::vector<assignment> models(const circuit& phi, std::span<const var_id> over, const limits& lim) {
    auto tt = tabulate(phi, over, lim);
    std::vector<var_id> vs(over.begin(), over.end());
    std::vector<assignment> out;
    for (std::uint64_t r = 0; r < tt.rows(); ++r)
        if (tt.at(r)) out.push_back(assignment::from_index(vs, r));
    return out;
}

std::vector<var_id> var_union(std::span<const var_id> a, std::span<const var_id> b) {
    std::vector<var_id> out(a.begin(), a.end());
    out.insert(out.end(), b.begin(), b.end());
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

bool is_consistent(const circuit& phi, const limits& lim) {
    if (phi.is_constant()) return phi.constant_value();
    auto vs = phi.vars();
    return !tabulate(phi, vs, lim).none();
}

bool entails(const circuit& a, const circuit& b, const limits& lim) {
    auto vs = var_union(a.vars(), b.vars());
    auto ta = tabulate(a, vs, lim);
    auto tb = tabulate(b, vs, lim);
    for (std::size_t w = 0; w < ta.words().size(); ++w)
        if (ta.words()[w] & ~tb.words()[w]) return false;
    return true;
}

bool equivalent(const circuit& a, const circuit& b, const limits& lim) {
    auto vs = var_union(a.vars(), b.vars());
    return tabulate(a, vs, lim) == tabulate(b, vs, lim);
}

circuit forget(const circuit& phi, std::span<const var_id> vs) {
    circuit out = phi;
    for (auto v : vs) out = disjoin(condition(out, literal{v, false}), condition(out, literal{v, true}));
    return out;
}

}  // namespace rectifier
