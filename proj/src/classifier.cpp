#include "rectifier/classifier.hpp"

#include <algorithm>
#include <cctype>

#include "rectifier/error.hpp"

namespace rectifier {

// ---------------------------------------------------------------------------
// classification_problem
// ---------------------------------------------------------------------------

classification_problem::classification_problem(std::vector<var_id> features, std::vector<var_id> labels)
    : features_(std::move(features)), labels_(std::move(labels)) {
    if (features_.empty()) throw input_error("the feature set X must not be empty");
    if (labels_.empty()) throw input_error("the label set Y must not be empty");
    auto all = all_vars();
    std::sort(all.begin(), all.end());
    if (std::adjacent_find(all.begin(), all.end()) != all.end())
        throw input_error("features and labels must be distinct and disjoint");
}

var_id classification_problem::label() const {
    if (!mono_label()) throw input_error("operation requires a mono-label problem");
    return labels_.front();
}

bool classification_problem::is_feature(var_id v) const { return std::find(features_.begin(), features_.end(), v) != features_.end(); }

bool classification_problem::is_label(var_id v) const { return std::find(labels_.begin(), labels_.end(), v) != labels_.end(); }

std::vector<var_id> classification_problem::extra_vars(const circuit& phi) const {
    std::vector<var_id> out;
    for (auto v : phi.vars())
        if (!is_feature(v) && !is_label(v)) out.push_back(v);
    return out;
}

std::vector<var_id> classification_problem::all_vars() const {
    std::vector<var_id> out = features_;
    out.insert(out.end(), labels_.begin(), labels_.end());
    return out;
}

// ---------------------------------------------------------------------------
// instances
// ---------------------------------------------------------------------------

instance parse_instance(std::string_view text, const classification_problem& problem, const var_table& table) {
    const auto& xs = problem.features();
    auto trimmed = text;
    while (!trimmed.empty() && std::isspace(static_cast<unsigned char>(trimmed.front()))) trimmed.remove_prefix(1);
    while (!trimmed.empty() && std::isspace(static_cast<unsigned char>(trimmed.back()))) trimmed.remove_suffix(1);
    if (!trimmed.empty() && std::all_of(trimmed.begin(), trimmed.end(), [](char c) { return c == '0' || c == '1'; }))
        return assignment::from_word(xs, trimmed);

    // Canonical term: literals separated by blanks, '&' or ','; negation by '!', '-' or '~'.
    std::vector<int> bits(xs.size(), -1);
    std::size_t i = 0;
    while (i < trimmed.size()) {
        char c = trimmed[i];
        if (std::isspace(static_cast<unsigned char>(c)) || c == '&' || c == ',') {
            ++i;
            continue;
        }
        bool positive = true;
        while (i < trimmed.size() && (trimmed[i] == '!' || trimmed[i] == '-' || trimmed[i] == '~')) {
            positive = !positive;
            ++i;
        }
        auto start = i;
        while (i < trimmed.size() && (std::isalnum(static_cast<unsigned char>(trimmed[i])) || trimmed[i] == '_')) ++i;
        auto name = trimmed.substr(start, i - start);
        if (name.empty()) throw input_error("instance '" + std::string(text) + "': expected a feature name");
        auto v = table.find(name);
        auto pos = v ? std::find(xs.begin(), xs.end(), *v) : xs.end();
        if (pos == xs.end()) throw input_error("instance '" + std::string(text) + "': '" + std::string(name) + "' is not a feature");
        auto k = static_cast<std::size_t>(pos - xs.begin());
        if (bits[k] >= 0) throw input_error("instance '" + std::string(text) + "': feature '" + std::string(name) + "' given twice");
        bits[k] = positive ? 1 : 0;
    }
    std::vector<std::uint8_t> out;
    for (std::size_t k = 0; k < xs.size(); ++k) {
        if (bits[k] < 0) throw input_error("instance '" + std::string(text) + "' does not assign feature '" + table.name(xs[k]) + "'");
        out.push_back(static_cast<std::uint8_t>(bits[k]));
    }
    return {xs, std::move(out)};
}

instance instance_at(const classification_problem& problem, std::uint64_t index) { return assignment::from_index(problem.features(), index); }

std::uint64_t instance_count(const classification_problem& problem) { return std::uint64_t{1} << problem.features().size(); }

// ---------------------------------------------------------------------------
// XY-classification property
// ---------------------------------------------------------------------------

bool check_xy_property(const circuit& sigma, const classification_problem& problem, const limits& lim) {
    // Rows are ordered X first, then Y and any extra variables; each instance
    // owns one contiguous block of 2^m rows.
    auto over = problem.all_vars();
    auto extras = problem.extra_vars(sigma);
    over.insert(over.end(), extras.begin(), extras.end());
    check_cap(over.size(), lim, "XY-classification check");
    auto tt = tabulate(sigma, over, lim);
    const std::uint64_t block = std::uint64_t{1} << (over.size() - problem.features().size());
    for (std::uint64_t x = 0; x < instance_count(problem); ++x) {
        std::uint64_t ones = 0;
        for (std::uint64_t r = x * block; r < (x + 1) * block && ones < 2; ++r) ones += tt.at(r);
        if (ones != 1) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// classifier
// ---------------------------------------------------------------------------

classifier::classifier(classification_problem problem, circuit sigma, bool certified, std::optional<circuit> projection)
    : problem_(std::move(problem)), sigma_(std::move(sigma)), certified_(certified), projection_(std::move(projection)) {}

classifier::classifier(classification_problem problem, circuit sigma, const limits& lim)
    : problem_(std::move(problem)), sigma_(std::move(sigma)) {
    if (!problem_.extra_vars(sigma_).empty())
        throw input_error("classifier circuit mentions variables outside X and Y; project them away first");
    certified_ = check_xy_property(sigma_, problem_, lim);
}

classifier classifier::from_projection(classification_problem problem, const circuit& sigma_x) {
    for (auto v : sigma_x.vars())
        if (!problem.is_feature(v)) throw input_error("projection circuit must be over the features only");
    auto y = circuit::variable(problem.label());
    auto sigma = equivalence(sigma_x, y);
    return classifier(std::move(problem), std::move(sigma), true, sigma_x);
}

void classifier::require_certified() const {
    if (!certified_) throw certification_error("circuit does not have the XY-classification property");
}

assignment classify(const classifier& clf, const instance& x, const limits& lim) {
    clf.require_certified();
    auto sx = condition(clf.sigma(), x.as_term());
    auto ms = models(sx, clf.problem().labels(), lim);
    if (ms.size() != 1) throw certification_error("instance " + x.word() + " is not classified");
    return ms.front();
}

// ---------------------------------------------------------------------------
// facts
// ---------------------------------------------------------------------------

fact_formula compute_fact_formula(const circuit& t, const instance& x, const classification_problem& problem, const limits& lim) {
    auto tx = condition(t, x.as_term());
    const auto& ys = problem.labels();
    // Y first, then the remaining variables of t(x).
    std::vector<var_id> over = ys;
    for (auto v : tx.vars())
        if (!problem.is_label(v)) over.push_back(v);
    auto tt = tabulate(tx, over, lim);
    if (tt.none()) return {};
    std::vector<int> seen(ys.size(), -1);  // -1 unseen, 0/1 constant value, 2 both
    const auto n = over.size();
    for (std::uint64_t r = 0; r < tt.rows(); ++r) {
        if (!tt.at(r)) continue;
        for (std::size_t k = 0; k < ys.size(); ++k) {
            int b = static_cast<int>((r >> (n - 1 - k)) & 1U);
            if (seen[k] == -1) seen[k] = b;
            else if (seen[k] != b) seen[k] = 2;
        }
    }
    std::vector<literal> lits;
    for (std::size_t k = 0; k < ys.size(); ++k)
        if (seen[k] == 0 || seen[k] == 1) lits.push_back({ys[k], seen[k] == 1});
    return term(std::move(lits));
}

bool is_fact_compliant(const classifier& clf, const circuit& t, const instance& x, const limits& lim) {
    clf.require_certified();
    auto facts = compute_fact_formula(t, x, clf.problem(), lim);
    auto sx = condition(clf.sigma(), x.as_term());
    return entails(sx, circuit::from_term(facts), lim);
}

circuit extract_sigma_x(const classifier& clf) {
    auto y = clf.problem().label();
    clf.require_certified();
    return condition(clf.sigma(), literal{y, true});
}

verdict mono_verdict(const circuit& t, const instance& x, var_id label, const limits& lim) {
    auto tx = condition(t, x.as_term());
    const bool pos = is_consistent(condition(tx, literal{label, true}), lim);
    const bool neg = is_consistent(condition(tx, literal{label, false}), lim);
    if (pos && neg) return verdict::trivial;
    if (pos) return verdict::positive;
    if (neg) return verdict::negative;
    return verdict::contradictory;
}

}  // namespace rectifier
