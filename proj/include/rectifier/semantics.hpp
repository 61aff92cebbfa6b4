#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rectifier/circuit.hpp"
#include "rectifier/vars.hpp"

namespace rectifier {

/// Bounds for the brute-force routines.
struct limits {
    std::size_t max_vars = 20;
};

/// Throws cap_exceeded if `n` variables exceed the enumeration cap.
void check_cap(std::size_t n, const limits& lim, const char* what);

/// A total interpretation over an ordered variable set. The word form lists
/// values in declaration order, e.g. "110" for x1=1, x2=1, x3=0.
class assignment {
public:
    assignment() = default;
    assignment(std::vector<var_id> vars, std::vector<std::uint8_t> bits);

    /// Row `index` of the lexicographic enumeration: the first variable is
    /// the most significant bit.
    static assignment from_index(std::vector<var_id> vars, std::uint64_t index);
    /// Throws input_error if `word` is not a string of 0/1 of the right length.
    static assignment from_word(std::vector<var_id> vars, std::string_view word);

    const std::vector<var_id>& vars() const noexcept { return vars_; }
    const std::vector<std::uint8_t>& bits() const noexcept { return bits_; }
    std::size_t size() const noexcept { return vars_.size(); }
    bool value(std::size_t position) const { return bits_[position] != 0; }
    std::optional<bool> value_of(var_id v) const;

    std::string word() const;
    std::uint64_t index() const;
    term as_term() const;

    friend bool operator==(const assignment&, const assignment&) = default;

private:
    std::vector<var_id> vars_;
    std::vector<std::uint8_t> bits_;
};

/// Evaluates `phi` under `omega`; throws input_error if a variable of phi is
/// not assigned.
bool eval(const circuit& phi, const assignment& omega);

/// Packed truth table of a circuit over an ordered variable set; row r holds
/// the value at assignment::from_index(vars, r).
class truth_table {
public:
    truth_table() = default;
    truth_table(std::vector<var_id> vars, std::vector<std::uint64_t> words);

    const std::vector<var_id>& vars() const noexcept { return vars_; }
    std::uint64_t rows() const noexcept { return std::uint64_t{1} << vars_.size(); }
    bool at(std::uint64_t row) const { return (words_[row >> 6] >> (row & 63)) & 1U; }
    const std::vector<std::uint64_t>& words() const noexcept { return words_; }
    std::uint64_t count() const;
    bool none() const { return count() == 0; }
    bool all() const { return count() == rows(); }

    friend bool operator==(const truth_table&, const truth_table&) = default;

private:
    std::vector<var_id> vars_;
    std::vector<std::uint64_t> words_;
};

/// Truth-table kernels. All three compute the same table; `over` must cover
/// vars(phi). The parallel kernel evaluates 64 rows per machine word and
/// splits rows across OpenMP threads; the serial kernel is the same word
/// evaluation on one thread; the reference evaluates one row at a time with
/// eval() and is kept as the oracle for the other two.
truth_table truth_table_parallel(const circuit& phi, std::span<const var_id> over, const limits& lim = {});
truth_table truth_table_serial(const circuit& phi, std::span<const var_id> over, const limits& lim = {});
truth_table truth_table_reference(const circuit& phi, std::span<const var_id> over, const limits& lim = {});

inline truth_table tabulate(const circuit& phi, std::span<const var_id> over, const limits& lim = {}) {
    return truth_table_parallel(phi, over, lim);
}

/// All models of phi over `over`, in lexicographic word order.
std::vector<assignment> models(const circuit& phi, std::span<const var_id> over, const limits& lim = {});

/// Sorted union of two variable sets.
std::vector<var_id> var_union(std::span<const var_id> a, std::span<const var_id> b);

bool is_consistent(const circuit& phi, const limits& lim = {});
/// a |= b: a AND NOT b is inconsistent over vars(a) and vars(b).
bool entails(const circuit& a, const circuit& b, const limits& lim = {});
/// Same models over vars(a) and vars(b).
bool equivalent(const circuit& a, const circuit& b, const limits& lim = {});

/// Existential quantification of `vs`, one variable at a time:
/// exists v. phi = phi(not v) or phi(v).
circuit forget(const circuit& phi, std::span<const var_id> vs);

}  // namespace rectifier
