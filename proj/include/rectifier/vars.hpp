#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace rectifier {

/// Ordinal of a propositional variable inside a var_table.
enum class var_id : std::uint32_t {};

constexpr std::uint32_t index_of(var_id v) noexcept { return static_cast<std::uint32_t>(v); }
constexpr var_id make_var(std::uint32_t i) noexcept { return static_cast<var_id>(i); }

/// True iff `name` matches [A-Za-z_][A-Za-z0-9_]* and is not a reserved keyword.
bool is_valid_var_name(std::string_view name);

/// Bidirectional name <-> var_id mapping. Ids are dense and assigned in
/// declaration order.
class var_table {
public:
    var_table() = default;

    /// Adds a new variable; throws input_error on duplicates or invalid names.
    var_id declare(std::string_view name);
    /// Returns the existing id for `name`, declaring it first if needed.
    var_id intern(std::string_view name);

    std::optional<var_id> find(std::string_view name) const;
    const std::string& name(var_id v) const;
    std::size_t size() const noexcept { return names_.size(); }

private:
    std::vector<std::string> names_;
    std::unordered_map<std::string, var_id> index_;
};

struct literal {
    var_id var;
    bool positive = true;

    literal operator~() const noexcept { return {var, !positive}; }
    friend bool operator==(const literal&, const literal&) = default;
    friend auto operator<=>(const literal&, const literal&) = default;
};

/// A consistent conjunction of literals, kept sorted by variable. The empty
/// term stands for the constant true.
class term {
public:
    term() = default;
    /// Throws input_error if some variable occurs with both polarities.
    explicit term(std::vector<literal> lits);

    const std::vector<literal>& literals() const noexcept { return lits_; }
    bool empty() const noexcept { return lits_.empty(); }
    std::size_t size() const noexcept { return lits_.size(); }

    /// Polarity of `v` in the term, if present.
    std::optional<bool> value_of(var_id v) const;

    friend bool operator==(const term&, const term&) = default;

private:
    std::vector<literal> lits_;
};

}  // namespace rectifier
