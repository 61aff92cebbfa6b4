#include "rectifier/rectify.hpp"

#include "rectifier/error.hpp"
#include "rectifier/semantics.hpp"

namespace rectifier {

namespace {

struct verdict_gates {
    gate_id pos;
    gate_id neg;
};

// pos = t(y) and not t(!y), neg = t(!y) and not t(y); both reuse the same
// two conditionings of t.
verdict_gates emit_verdicts(circuit_builder& b, const circuit& t, var_id y) {
    auto when_pos = b.import(condition(t, literal{y, true}));
    auto when_neg = b.import(condition(t, literal{y, false}));
    return {b.conjunction(when_pos, b.negation(when_neg)), b.conjunction(when_neg, b.negation(when_pos))};
}

}  // namespace

theory_verdicts t_classifies(const circuit& t, const classification_problem& problem) {
    const auto y = problem.label();
    if (!problem.extra_vars(t).empty()) throw input_error("theory mentions variables outside X and the label");
    circuit_builder b;
    auto v = emit_verdicts(b, t, y);
    gate_id roots[] = {v.pos, v.neg};
    auto out = std::move(b).finish(roots);
    return {out[0], out[1]};
}

rectification_result rectify(const classifier& clf, const circuit& t_in, const rectify_options& opts) {
    const auto& problem = clf.problem();
    const auto y = problem.label();
    clf.require_certified();

    circuit t = t_in;
    if (!problem.extra_vars(t).empty()) {
        if (!opts.project_extra_vars) throw input_error("theory mentions variables outside X and the label");
        t = preprocess_project(t, problem, opts.max_forgotten);
    }

    circuit_builder b;
    auto sigma_x = b.import(extract_sigma_x(clf));
    auto v = emit_verdicts(b, t, y);
    auto keep = b.conjunction(sigma_x, b.negation(v.neg));
    auto positive = b.disjunction(keep, v.pos);
    gate_id roots[] = {positive, v.pos, v.neg};
    auto out = std::move(b).finish(roots);

    return {out[0], classifier::from_projection(problem, out[0]), out[1], out[2]};
}

circuit preprocess_project(const circuit& phi, const classification_problem& problem, std::size_t max_forgotten) {
    auto extra = problem.extra_vars(phi);
    if (extra.empty()) return phi;
    if (extra.size() > max_forgotten)
        throw input_error("cannot forget " + std::to_string(extra.size()) + " variables outside X and Y (limit " +
                          std::to_string(max_forgotten) + ")");
    return forget(phi, extra);
}

bool classify_rectified(const rectification_result& result, const instance& x) { return eval(result.sigma_x_t, x); }

}  // namespace rectifier
