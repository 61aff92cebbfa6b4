#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "rectifier/formats.hpp"
#include "rectifier/semantics.hpp"

namespace rectifier::testing {

/// Variables x0..x{n-1}, declared in order.
inline var_table numbered_table(std::size_t n, const std::string& prefix = "x") {
    var_table t;
    for (std::size_t i = 0; i < n; ++i) t.declare(prefix + std::to_string(i));
    return t;
}

inline std::vector<var_id> first_vars(std::size_t n) {
    std::vector<var_id> v;
    for (std::size_t i = 0; i < n; ++i) v.push_back(make_var(static_cast<std::uint32_t>(i)));
    return v;
}

/// Bit of variable `pos` in row `row` of an n-variable enumeration
/// (first variable = most significant bit), computed without the library.
inline bool bit(std::uint64_t row, std::size_t pos, std::size_t n) { return (row >> (n - 1 - pos)) & 1U; }

using row_fn = std::function<bool(std::uint64_t)>;

/// Hand-written truth table: one bool per row.
inline std::vector<bool> oracle_rows(std::size_t n, const row_fn& f) {
    std::vector<bool> out;
    for (std::uint64_t r = 0; r < (std::uint64_t{1} << n); ++r) out.push_back(f(r));
    return out;
}

inline std::vector<bool> table_rows(const truth_table& t) {
    std::vector<bool> out;
    for (std::uint64_t r = 0; r < t.rows(); ++r) out.push_back(t.at(r));
    return out;
}

inline circuit parse(const std::string& text, const var_table& table) { return parse_circuit(text, table); }

/// A table with the given names declared in order.
inline var_table named_table(std::initializer_list<const char*> names) {
    var_table t;
    for (auto n : names) t.declare(n);
    return t;
}

}  // namespace rectifier::testing
