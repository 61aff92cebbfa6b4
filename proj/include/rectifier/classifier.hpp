#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "rectifier/circuit.hpp"
#include "rectifier/semantics.hpp"
#include "rectifier/vars.hpp"

namespace rectifier {

/// Feature set X and label set Y, both ordered, disjoint and non-empty.
class classification_problem {
public:
    classification_problem(std::vector<var_id> features, std::vector<var_id> labels);

    const std::vector<var_id>& features() const noexcept { return features_; }
    const std::vector<var_id>& labels() const noexcept { return labels_; }
    bool mono_label() const noexcept { return labels_.size() == 1; }
    /// The label of a mono-label problem; throws input_error otherwise.
    var_id label() const;

    bool is_feature(var_id v) const;
    bool is_label(var_id v) const;
    /// Variables of `phi` outside X and Y, sorted.
    std::vector<var_id> extra_vars(const circuit& phi) const;
    /// Features followed by labels.
    std::vector<var_id> all_vars() const;

private:
    std::vector<var_id> features_;
    std::vector<var_id> labels_;
};

using instance = assignment;

/// Parses an instance given as a 0/1 word (leftmost bit = first feature) or
/// as a canonical term such as "x1 & !x2" / "x1 -x2" over all features.
instance parse_instance(std::string_view text, const classification_problem& problem, const var_table& table);

/// Enumerates X: row i is assignment::from_index(features, i).
instance instance_at(const classification_problem& problem, std::uint64_t index);
std::uint64_t instance_count(const classification_problem& problem);

/// True iff for every instance x, sigma(x) has exactly one model over Y.
/// Brute force over X and Y jointly, so |X|+|Y| is bounded by the cap.
bool check_xy_property(const circuit& sigma, const classification_problem& problem, const limits& lim = {});

/// A classification circuit together with its problem. Certification runs
/// check_xy_property once at construction; the result is cached.
class classifier {
public:
    /// Certifies by brute force. Throws input_error if sigma mentions
    /// variables outside X and Y.
    classifier(classification_problem problem, circuit sigma, const limits& lim = {});

    /// Mono-label classifier sigma_x <=> y, certified by construction
    /// (no enumeration). sigma_x must be over X.
    static classifier from_projection(classification_problem problem, const circuit& sigma_x);

    const classification_problem& problem() const noexcept { return problem_; }
    const circuit& sigma() const noexcept { return sigma_; }
    bool certified() const noexcept { return certified_; }
    /// Throws certification_error unless certified.
    void require_certified() const;
    /// The X-projection, when the classifier was built from one.
    const std::optional<circuit>& projection() const noexcept { return projection_; }

private:
    classifier(classification_problem problem, circuit sigma, bool certified, std::optional<circuit> projection);

    classification_problem problem_;
    circuit sigma_;
    bool certified_ = false;
    std::optional<circuit> projection_;
};

/// The unique model over Y of sigma(x).
assignment classify(const classifier& clf, const instance& x, const limits& lim = {});

/// Consistent term over Y; empty means true.
using fact_formula = term;

/// True if t(x) is inconsistent, else the conjunction of every Y-literal
/// entailed by t(x).
fact_formula compute_fact_formula(const circuit& t, const instance& x, const classification_problem& problem, const limits& lim = {});

/// sigma(x) entails F(t, x).
bool is_fact_compliant(const classifier& clf, const circuit& t, const instance& x, const limits& lim = {});

/// condition(sigma, y): its models over X are the positive instances.
circuit extract_sigma_x(const classifier& clf);

/// Kinds of a mono-label conditioned circuit t(x).
enum class verdict { positive, negative, trivial, contradictory };

/// Classifies t(x) as equivalent to y, not y, true or false (brute force).
verdict mono_verdict(const circuit& t, const instance& x, var_id label, const limits& lim = {});

}  // namespace rectifier
