#include "rectifier/vars.hpp"

#include <algorithm>
#include <array>

#include "rectifier/error.hpp"

namespace rectifier {

namespace {
constexpr std::array<std::string_view, 9> reserved = {"not", "and", "or", "imp", "iff", "dec", "let", "true", "false"};
}

bool is_valid_var_name(std::string_view name) {
    if (name.empty()) return false;
    auto head = [](char c) { return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || c == '_'; };
    auto tail = [&](char c) { return head(c) || (c >= '0' && c <= '9'); };
    if (!head(name.front())) return false;
    if (!std::all_of(name.begin() + 1, name.end(), tail)) return false;
    return std::find(reserved.begin(), reserved.end(), name) == reserved.end();
}

var_id var_table::declare(std::string_view name) {
    if (!is_valid_var_name(name)) throw input_error("invalid variable name '" + std::string(name) + "'");
    std::string key(name);
    if (index_.contains(key)) throw input_error("duplicate variable '" + key + "'");
    auto id = make_var(static_cast<std::uint32_t>(names_.size()));
    names_.push_back(key);
    index_.emplace(std::move(key), id);
    return id;
}

var_id var_table::intern(std::string_view name) {
    if (auto v = find(name)) return *v;
    return declare(name);
}

std::optional<var_id> var_table::find(std::string_view name) const {
    auto it = index_.find(std::string(name));
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

const std::string& var_table::name(var_id v) const {
    if (index_of(v) >= names_.size()) throw input_error("variable id " + std::to_string(index_of(v)) + " is not declared");
    return names_[index_of(v)];
}

term::term(std::vector<literal> lits) : lits_(std::move(lits)) {
    std::sort(lits_.begin(), lits_.end());
    lits_.erase(std::unique(lits_.begin(), lits_.end()), lits_.end());
    for (std::size_t i = 1; i < lits_.size(); ++i)
        if (lits_[i].var == lits_[i - 1].var) throw input_error("inconsistent term: variable occurs with both polarities");
}

std::optional<bool> term::value_of(var_id v) const {
    auto it = std::lower_bound(lits_.begin(), lits_.end(), literal{v, false});
    if (it != lits_.end() && it->var == v) return it->positive;
    return std::nullopt;
}

}  // namespace rectifier
