#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "rectifier/circuit.hpp"
#include "rectifier/classifier.hpp"
#include "rectifier/rectify.hpp"
#include "rectifier/semantics.hpp"

namespace rectifier {

/// Brute-force rectification by the class-switching rule: an instance keeps
/// sigma's class unless t(x) is y or !y and disagrees with it, in which case
/// the class is flipped. Returns the disjunction of the positive instances'
/// canonical terms, over X.
circuit oracle_rectify(const classifier& clf, const circuit& t, const limits& lim = {});

/// Dalal revision of phi by alpha over `over`: the models of alpha at
/// minimal Hamming distance from some model of phi, as a disjunction of
/// canonical terms. Revising by an inconsistent alpha yields alpha; revising
/// an inconsistent phi yields alpha.
circuit dalal_revise(const circuit& phi, const circuit& alpha, std::span<const var_id> over, const limits& lim = {});
/// Same, over vars(phi) and vars(alpha).
circuit dalal_revise(const circuit& phi, const circuit& alpha, const limits& lim = {});

/// Disjunction over all instances x of x AND (sigma(x) revised by F(t, x)).
/// Works for any label set within the cap.
circuit oracle_star_d(const classifier& clf, const circuit& t, const limits& lim = {});

/// Randomized syntactic rewrite preserving semantics: double negations,
/// permuted And/Or children, De Morgan dualization and desugared decisions.
circuit rewrite_equivalent(const circuit& phi, std::mt19937_64& rng);

enum class postulate { re1, re2, re3, re4, re5, re6 };
const char* postulate_name(postulate p);

struct postulate_status {
    postulate id;
    bool passed = true;
    std::uint64_t checked = 0;
    /// Reproducible counterexample when !passed (an instance word, or a
    /// description of the rewrite or circuit pair).
    std::optional<std::string> witness;
    std::string note;
};

struct postulate_report {
    std::vector<postulate_status> statuses;  // RE1..RE6 in order
    bool all_passed() const;
    const postulate_status& at(postulate p) const { return statuses[static_cast<std::size_t>(p)]; }
};

struct check_options {
    std::size_t rewrites = 5;
    std::uint64_t seed = 1;
};

/// Checks RE1-RE6 for `result` as the rectification of `clf` by `t`.
/// RE5 reruns rectify() on rewritten inputs; RE6 adjoins one fresh variable
/// to both inputs and reruns with projection.
postulate_report check_postulates(const classifier& clf, const circuit& t, const rectification_result& result,
                                  const check_options& opts = {}, const limits& lim = {});

/// Text rendering, one line per postulate, instance words in witnesses.
std::string render_report(const postulate_report& report);

}  // namespace rectifier
