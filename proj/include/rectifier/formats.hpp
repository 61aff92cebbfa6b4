#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rectifier/circuit.hpp"
#include "rectifier/classifier.hpp"
#include "rectifier/dtree.hpp"
#include "rectifier/vars.hpp"

namespace rectifier {

/// A parsed s-expression with the position of its first character.
struct sexpr {
    bool is_atom = true;
    std::string atom;
    std::vector<sexpr> items;
    std::size_t line = 1;
    std::size_t column = 1;
};

/// Reads every top-level s-expression; `;` starts a comment running to the
/// end of the line. Errors carry "line:column".
std::vector<sexpr> read_sexprs(std::string_view text);

/// Expression grammar:
///   e ::= true | false | NAME | (not e) | (and e e...) | (or e e...)
///       | (imp e e) | (iff e e) | (dec NAME e e) | (let ((NAME e)...) e)
/// Let bindings are sequential and may shadow variables.
expr_ptr to_expr(const sexpr& s);
circuit parse_circuit(std::string_view text, const var_table& table, build_options opts = {});
/// Canonical single-line text; gates with several parents become let
/// bindings named _s1, _s2, ... in dependency order.
std::string print_circuit(const circuit& phi, const var_table& table);

/// Tree grammar: t ::= 0 | 1 | (NAME t t), low (variable false) first.
/// Unknown names are declared when `declare_unknown`, else rejected.
decision_tree to_dtree(const sexpr& s, var_table& table, bool declare_unknown = false);
decision_tree parse_dtree(std::string_view text, var_table& table, bool declare_unknown = false);
std::string print_dtree(const decision_tree& t, const var_table& table);

/// Problem file: top-level forms in any order,
///   (features NAME...) (labels NAME...) [(extra NAME...)]
///   (sigma e) (theory e) [(forest t...)]
/// `label` is accepted as a synonym of `labels`.
struct problem_file {
    var_table table;
    classification_problem problem;
    std::vector<var_id> extra;
    circuit sigma;
    circuit theory;
    std::optional<random_forest> forest;
};

problem_file parse_problem(std::string_view text);
problem_file load_problem(const std::string& path);

/// Decision-tree file: optional (features NAME...) and (label NAME)
/// declarations followed by exactly one tree.
struct tree_file {
    std::vector<std::string> features;
    std::optional<std::string> label;
    decision_tree tree;
};

tree_file parse_tree_file(std::string_view text, var_table& table);

std::string read_text_file(const std::string& path);

}  // namespace rectifier
