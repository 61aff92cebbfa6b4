#include "rectifier/formats.hpp"

#include <cctype>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <unordered_map>

#include "rectifier/error.hpp"

namespace rectifier {

namespace {

std::string where(const sexpr& s) { return std::to_string(s.line) + ":" + std::to_string(s.column) + ": "; }

[[noreturn]] void fail_at(const sexpr& s, const std::string& msg) { throw input_error(where(s) + msg); }

std::string describe(const sexpr& s) { return s.is_atom ? "'" + s.atom + "'" : "a list"; }

}  // namespace

// ---------------------------------------------------------------------------
// reader
// ---------------------------------------------------------------------------

std::vector<sexpr> read_sexprs(std::string_view text) {
    std::size_t pos = 0, line = 1, col = 1;
    auto advance = [&] {
        if (text[pos] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
        ++pos;
    };
    auto skip_blank = [&] {
        while (pos < text.size()) {
            if (std::isspace(static_cast<unsigned char>(text[pos]))) {
                advance();
            } else if (text[pos] == ';') {
                while (pos < text.size() && text[pos] != '\n') advance();
            } else {
                break;
            }
        }
    };

    std::vector<sexpr> top;
    std::vector<sexpr> stack;  // open lists
    while (true) {
        skip_blank();
        if (pos >= text.size()) break;
        const char c = text[pos];
        if (c == '(') {
            sexpr s;
            s.is_atom = false;
            s.line = line;
            s.column = col;
            stack.push_back(std::move(s));
            advance();
        } else if (c == ')') {
            if (stack.empty()) throw input_error(std::to_string(line) + ":" + std::to_string(col) + ": unexpected ')'");
            advance();
            auto done = std::move(stack.back());
            stack.pop_back();
            (stack.empty() ? top : stack.back().items).push_back(std::move(done));
        } else {
            sexpr s;
            s.line = line;
            s.column = col;
            while (pos < text.size() && !std::isspace(static_cast<unsigned char>(text[pos])) && text[pos] != '(' && text[pos] != ')' &&
                   text[pos] != ';') {
                s.atom.push_back(text[pos]);
                advance();
            }
            (stack.empty() ? top : stack.back().items).push_back(std::move(s));
        }
    }
    if (!stack.empty()) fail_at(stack.back(), "unterminated list");
    return top;
}

// ---------------------------------------------------------------------------
// expressions
// ---------------------------------------------------------------------------

namespace {

using scope = std::vector<std::map<std::string, expr_ptr>>;

expr_ptr lookup(const scope& env, const std::string& name) {
    for (auto it = env.rbegin(); it != env.rend(); ++it)
        if (auto f = it->find(name); f != it->end()) return f->second;
    return nullptr;
}

expr_ptr lower(const sexpr& s, scope& env, const var_table* table) {
    if (s.is_atom) {
        if (s.atom == "true") return make_const_expr(true);
        if (s.atom == "false") return make_const_expr(false);
        if (auto bound = lookup(env, s.atom)) return bound;
        if (!is_valid_var_name(s.atom)) fail_at(s, "unexpected token '" + s.atom + "'");
        if (table && !table->find(s.atom)) fail_at(s, "unknown identifier '" + s.atom + "'");
        return make_var_expr(s.atom);
    }
    if (s.items.empty()) fail_at(s, "empty list");
    const auto& head = s.items.front();
    if (!head.is_atom) fail_at(head, "expected an operator");
    const auto& op = head.atom;
    const auto nargs = s.items.size() - 1;
    auto args = [&](std::size_t from) {
        std::vector<expr_ptr> out;
        for (std::size_t i = from; i < s.items.size(); ++i) out.push_back(lower(s.items[i], env, table));
        return out;
    };
    auto need = [&](std::size_t n) {
        if (nargs != n) fail_at(s, op + " expects " + std::to_string(n) + " argument(s), got " + std::to_string(nargs));
    };

    if (op == "not") {
        need(1);
        return make_expr(expr_kind::negation, args(1));
    }
    if (op == "and" || op == "or") {
        if (nargs == 0) fail_at(s, op + " requires at least one argument");
        return make_expr(op == "and" ? expr_kind::conjunction : expr_kind::disjunction, args(1));
    }
    if (op == "imp" || op == "iff") {
        need(2);
        return make_expr(op == "imp" ? expr_kind::implication : expr_kind::equivalence, args(1));
    }
    if (op == "dec") {
        need(3);
        const auto& v = s.items[1];
        if (!v.is_atom || !is_valid_var_name(v.atom)) fail_at(v, "dec expects a variable name, got " + describe(v));
        if (table && !table->find(v.atom)) fail_at(v, "unknown identifier '" + v.atom + "'");
        return make_expr(expr_kind::decision, args(2), v.atom);
    }
    if (op == "let") {
        need(2);
        const auto& binds = s.items[1];
        if (binds.is_atom) fail_at(binds, "let expects a list of bindings");
        env.emplace_back();
        for (const auto& b : binds.items) {
            if (b.is_atom || b.items.size() != 2 || !b.items[0].is_atom) fail_at(b, "a binding has the form (NAME expr)");
            const auto& name = b.items[0].atom;
            if (!is_valid_var_name(name)) fail_at(b.items[0], "invalid binding name '" + name + "'");
            if (env.back().contains(name)) fail_at(b.items[0], "duplicate let-binding '" + name + "'");
            auto value = lower(b.items[1], env, table);
            env.back().emplace(name, std::move(value));
        }
        auto body = lower(s.items[2], env, table);
        env.pop_back();
        return body;
    }
    fail_at(head, "unknown operator '" + op + "'");
}

}  // namespace

expr_ptr to_expr(const sexpr& s) {
    scope env;
    return lower(s, env, nullptr);
}

circuit parse_circuit(std::string_view text, const var_table& table, build_options opts) {
    auto forms = read_sexprs(text);
    if (forms.size() != 1) throw input_error("expected exactly one expression, found " + std::to_string(forms.size()));
    scope env;
    return build(*lower(forms.front(), env, &table), table, opts);
}

std::string print_circuit(const circuit& phi, const var_table& table) {
    auto mark = phi.reachable();
    std::vector<std::uint32_t> parents(mark.size(), 0);
    for (gate_id g = 0; g <= phi.root(); ++g)
        if (mark[g])
            for (auto k : phi.children(g)) ++parents[k];

    auto is_leaf = [&](gate_id g) {
        auto k = phi.node(g).kind;
        return k == gate_kind::constant || k == gate_kind::variable;
    };
    auto unique_name = [&](std::size_t i) {
        std::string name = "_s" + std::to_string(i);
        while (table.find(name)) name.insert(0, "_");
        return name;
    };

    std::unordered_map<gate_id, std::string> bound;
    std::function<std::string(gate_id, bool)> render = [&](gate_id g, bool inline_root) -> std::string {
        if (!inline_root)
            if (auto it = bound.find(g); it != bound.end()) return it->second;
        const auto& n = phi.node(g);
        auto kids = phi.children(g);
        std::string out;
        switch (n.kind) {
        case gate_kind::constant: return n.value ? "true" : "false";
        case gate_kind::variable: return table.name(n.var);
        case gate_kind::negation: return "(not " + render(kids[0], false) + ")";
        case gate_kind::conjunction:
        case gate_kind::disjunction:
            out = n.kind == gate_kind::conjunction ? "(and" : "(or";
            for (auto k : kids) out += " " + render(k, false);
            return out + ")";
        case gate_kind::decision:
            return "(dec " + table.name(n.var) + " " + render(kids[0], false) + " " + render(kids[1], false) + ")";
        }
        return out;
    };

    // Shared gates in depth-first post-order from the root.
    std::vector<gate_id> order;
    {
        std::vector<bool> seen(mark.size(), false);
        std::vector<std::pair<gate_id, std::size_t>> stack{{phi.root(), 0}};
        seen[phi.root()] = true;
        while (!stack.empty()) {
            auto& [g, next] = stack.back();
            auto kids = phi.children(g);
            if (next < kids.size()) {
                auto k = kids[next++];
                if (!seen[k]) {
                    seen[k] = true;
                    stack.emplace_back(k, 0);
                }
                continue;
            }
            order.push_back(g);
            stack.pop_back();
        }
    }
    std::vector<std::string> bindings;
    for (auto g : order) {
        if (g == phi.root() || parents[g] < 2 || is_leaf(g)) continue;
        auto body = render(g, true);
        auto name = unique_name(bindings.size() + 1);
        bindings.push_back("(" + name + " " + body + ")");
        bound.emplace(g, name);
    }
    auto root = render(phi.root(), true);
    if (bindings.empty()) return root;
    std::string out = "(let (";
    for (std::size_t i = 0; i < bindings.size(); ++i) out += (i ? " " : "") + bindings[i];
    return out + ") " + root + ")";
}

// ---------------------------------------------------------------------------
// decision trees
// ---------------------------------------------------------------------------

decision_tree to_dtree(const sexpr& s, var_table& table, bool declare_unknown) {
    if (s.is_atom) {
        if (s.atom == "0") return decision_tree::leaf(false);
        if (s.atom == "1") return decision_tree::leaf(true);
        fail_at(s, "a leaf must be 0 or 1, got '" + s.atom + "'");
    }
    if (s.items.size() != 3) fail_at(s, "a decision node has the form (NAME low high)");
    const auto& v = s.items[0];
    if (!v.is_atom || !is_valid_var_name(v.atom)) fail_at(v, "expected a variable name, got " + describe(v));
    auto id = table.find(v.atom);
    if (!id) {
        if (!declare_unknown) fail_at(v, "unknown identifier '" + v.atom + "'");
        id = table.declare(v.atom);
    }
    auto low = to_dtree(s.items[1], table, declare_unknown);
    auto high = to_dtree(s.items[2], table, declare_unknown);
    return decision_tree::branch(*id, std::move(low), std::move(high));
}

decision_tree parse_dtree(std::string_view text, var_table& table, bool declare_unknown) {
    auto forms = read_sexprs(text);
    if (forms.size() != 1) throw input_error("expected exactly one tree, found " + std::to_string(forms.size()));
    return to_dtree(forms.front(), table, declare_unknown);
}

std::string print_dtree(const decision_tree& t, const var_table& table) {
    if (t.is_leaf()) return t.leaf_value() ? "1" : "0";
    return "(" + table.name(t.var()) + " " + print_dtree(t.low(), table) + " " + print_dtree(t.high(), table) + ")";
}

// ---------------------------------------------------------------------------
// files
// ---------------------------------------------------------------------------

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw input_error("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

namespace {

std::vector<std::string> name_list(const sexpr& form) {
    std::vector<std::string> out;
    for (std::size_t i = 1; i < form.items.size(); ++i) {
        const auto& item = form.items[i];
        if (!item.is_atom || !is_valid_var_name(item.atom)) fail_at(item, "expected a variable name, got " + describe(item));
        out.push_back(item.atom);
    }
    return out;
}

const std::string& form_head(const sexpr& form) {
    if (form.is_atom || form.items.empty() || !form.items[0].is_atom) fail_at(form, "expected a (keyword ...) form");
    return form.items[0].atom;
}

}  // namespace

problem_file parse_problem(std::string_view text) {
    auto forms = read_sexprs(text);
    std::map<std::string, const sexpr*> sections;
    for (const auto& f : forms) {
        auto head = form_head(f);
        if (head == "label") head = "labels";
        if (head != "features" && head != "labels" && head != "extra" && head != "sigma" && head != "theory" && head != "forest")
            fail_at(f, "unknown section '" + head + "'");
        if (!sections.emplace(head, &f).second) fail_at(f, "duplicate section '" + head + "'");
    }
    for (const char* required : {"features", "labels", "sigma", "theory"})
        if (!sections.contains(required)) throw input_error(std::string("problem file lacks a (") + required + " ...) section");

    var_table table;
    std::vector<var_id> xs, ys, extra;
    for (const auto& n : name_list(*sections["features"])) xs.push_back(table.declare(n));
    for (const auto& n : name_list(*sections["labels"])) ys.push_back(table.declare(n));
    if (sections.contains("extra"))
        for (const auto& n : name_list(*sections["extra"])) extra.push_back(table.declare(n));
    classification_problem problem(xs, ys);

    auto expression = [&](const char* key) {
        const auto& f = *sections[key];
        if (f.items.size() != 2) fail_at(f, std::string("(") + key + " ...) takes exactly one expression");
        scope env;
        return build(*lower(f.items[1], env, &table), table);
    };
    auto sigma = expression("sigma");
    auto theory = expression("theory");

    std::optional<random_forest> forest;
    if (sections.contains("forest")) {
        const auto& f = *sections["forest"];
        if (f.items.size() < 2) fail_at(f, "a forest needs at least one tree");
        random_forest rf;
        for (std::size_t i = 1; i < f.items.size(); ++i) rf.trees.push_back(to_dtree(f.items[i], table));
        forest = std::move(rf);
    }
    return {std::move(table), std::move(problem), std::move(extra), std::move(sigma), std::move(theory), std::move(forest)};
}

problem_file load_problem(const std::string& path) { return parse_problem(read_text_file(path)); }

tree_file parse_tree_file(std::string_view text, var_table& table) {
    auto forms = read_sexprs(text);
    tree_file out;
    std::optional<decision_tree> tree;
    for (const auto& f : forms) {
        if (!f.is_atom && !f.items.empty() && f.items[0].is_atom && (f.items[0].atom == "features" || f.items[0].atom == "label")) {
            auto names = name_list(f);
            for (const auto& n : names) table.intern(n);
            if (f.items[0].atom == "features") {
                out.features = names;
            } else {
                if (names.size() != 1) fail_at(f, "(label NAME) takes exactly one name");
                out.label = names.front();
            }
            continue;
        }
        if (tree) fail_at(f, "a tree file holds exactly one tree");
        tree = to_dtree(f, table, true);
    }
    if (!tree) throw input_error("tree file contains no tree");
    out.tree = *tree;
    return out;
}

}  // namespace rectifier
