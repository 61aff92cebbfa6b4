#include "rectifier/verify.hpp"

#include <algorithm>
#include <bit>
#include <sstream>

#include "rectifier/error.hpp"

namespace rectifier {

namespace {

gate_id emit_term(circuit_builder& b, const term& t) {
    std::vector<gate_id> lits;
    for (const auto& l : t.literals()) lits.push_back(b.literal(l));
    return b.conjunction(lits);
}

}  // namespace

// ---------------------------------------------------------------------------
// class-switching oracle
// ---------------------------------------------------------------------------

circuit oracle_rectify(const classifier& clf, const circuit& t, const limits& lim) {
    const auto& problem = clf.problem();
    const auto y = problem.label();
    clf.require_certified();
    check_cap(problem.features().size(), lim, "oracle_rectify");

    circuit_builder b;
    std::vector<gate_id> positives;
    for (std::uint64_t i = 0; i < instance_count(problem); ++i) {
        auto x = instance_at(problem, i);
        const bool sigma_positive = classify(clf, x, lim).value(0);

        // Which values of y does t(x) admit?
        auto tx = condition(t, x.as_term());
        std::vector<var_id> over{y};
        for (auto v : tx.vars())
            if (v != y) over.push_back(v);
        bool admits[2] = {false, false};
        for (const auto& m : models(tx, over, lim)) admits[m.value(0)] = true;

        bool positive = sigma_positive;
        const bool decisive = admits[0] != admits[1];
        if (decisive && admits[1] != sigma_positive) positive = !sigma_positive;
        if (positive) positives.push_back(emit_term(b, x.as_term()));
    }
    auto root = b.disjunction(positives);
    return std::move(b).finish(root);
}

// ---------------------------------------------------------------------------
// Dalal revision
// ---------------------------------------------------------------------------

circuit dalal_revise(const circuit& phi, const circuit& alpha, std::span<const var_id> over, const limits& lim) {
    check_cap(over.size(), lim, "dalal_revise");
    auto tp = tabulate(phi, over, lim);
    auto ta = tabulate(alpha, over, lim);
    if (ta.none() || tp.none()) return alpha;

    std::vector<std::uint64_t> phi_rows;
    for (std::uint64_t r = 0; r < tp.rows(); ++r)
        if (tp.at(r)) phi_rows.push_back(r);
    std::vector<std::pair<std::uint64_t, int>> alpha_rows;  // row, distance to phi
    int best = static_cast<int>(over.size()) + 1;
    for (std::uint64_t r = 0; r < ta.rows(); ++r) {
        if (!ta.at(r)) continue;
        int d = static_cast<int>(over.size()) + 1;
        for (auto p : phi_rows) d = std::min(d, std::popcount(r ^ p));
        alpha_rows.emplace_back(r, d);
        best = std::min(best, d);
    }

    std::vector<var_id> vs(over.begin(), over.end());
    circuit_builder b;
    std::vector<gate_id> kept;
    for (auto [r, d] : alpha_rows)
        if (d == best) kept.push_back(emit_term(b, assignment::from_index(vs, r).as_term()));
    auto root = b.disjunction(kept);
    return std::move(b).finish(root);
}

circuit dalal_revise(const circuit& phi, const circuit& alpha, const limits& lim) {
    auto over = var_union(phi.vars(), alpha.vars());
    return dalal_revise(phi, alpha, over, lim);
}

circuit oracle_star_d(const classifier& clf, const circuit& t, const limits& lim) {
    const auto& problem = clf.problem();
    clf.require_certified();
    check_cap(problem.features().size() + problem.labels().size(), lim, "oracle_star_d");

    circuit_builder b;
    std::vector<gate_id> rows;
    for (std::uint64_t i = 0; i < instance_count(problem); ++i) {
        auto x = instance_at(problem, i);
        auto sx = condition(clf.sigma(), x.as_term());
        auto facts = circuit::from_term(compute_fact_formula(t, x, problem, lim));
        auto revised = b.import(dalal_revise(sx, facts, problem.labels(), lim));
        rows.push_back(b.conjunction(emit_term(b, x.as_term()), revised));
    }
    auto root = b.disjunction(rows);
    return std::move(b).finish(root);
}

// ---------------------------------------------------------------------------
// syntactic rewrites
// ---------------------------------------------------------------------------

circuit rewrite_equivalent(const circuit& phi, std::mt19937_64& rng) {
    std::bernoulli_distribution coin(0.35);
    auto mark = phi.reachable();
    circuit_builder b;
    std::vector<gate_id> map(mark.size(), 0);
    auto maybe_double_negate = [&](gate_id g) { return coin(rng) ? b.negation(b.negation(g)) : g; };

    for (gate_id g = 0; g <= phi.root(); ++g) {
        if (!mark[g]) continue;
        const auto& n = phi.node(g);
        std::vector<gate_id> kids;
        for (auto k : phi.children(g)) kids.push_back(map[k]);
        gate_id out = 0;
        switch (n.kind) {
        case gate_kind::constant: out = b.constant(n.value); break;
        case gate_kind::variable: out = maybe_double_negate(b.variable(n.var)); break;
        case gate_kind::negation: out = b.negation(kids[0]); break;
        case gate_kind::conjunction:
        case gate_kind::disjunction: {
            std::shuffle(kids.begin(), kids.end(), rng);
            const bool is_and = n.kind == gate_kind::conjunction;
            if (coin(rng)) {
                for (auto& k : kids) k = b.negation(k);
                out = b.negation(is_and ? b.disjunction(kids) : b.conjunction(kids));
            } else {
                out = is_and ? b.conjunction(kids) : b.disjunction(kids);
            }
            break;
        }
        case gate_kind::decision:
            if (coin(rng)) {
                auto v = b.variable(n.var);
                out = b.disjunction(b.conjunction(b.negation(v), kids[0]), b.conjunction(v, kids[1]));
            } else {
                out = b.decision(n.var, kids[0], kids[1]);
            }
            break;
        }
        map[g] = maybe_double_negate(out);
    }
    return std::move(b).finish(map[phi.root()]);
}

// ---------------------------------------------------------------------------
// postulates
// ---------------------------------------------------------------------------

const char* postulate_name(postulate p) {
    switch (p) {
    case postulate::re1: return "RE1";
    case postulate::re2: return "RE2";
    case postulate::re3: return "RE3";
    case postulate::re4: return "RE4";
    case postulate::re5: return "RE5";
    case postulate::re6: return "RE6";
    }
    return "?";
}

bool postulate_report::all_passed() const {
    return std::all_of(statuses.begin(), statuses.end(), [](const postulate_status& s) { return s.passed; });
}

namespace {

void fail(postulate_status& s, std::string witness) {
    if (s.passed) s.witness = std::move(witness);
    s.passed = false;
}

var_id fresh_var(const classification_problem& problem, const circuit& sigma, const circuit& t) {
    std::uint32_t next = 0;
    auto bump = [&](std::span<const var_id> vs) {
        for (auto v : vs) next = std::max(next, index_of(v) + 1);
    };
    bump(problem.features());
    bump(problem.labels());
    bump(sigma.vars());
    bump(t.vars());
    return make_var(next);
}

}  // namespace

postulate_report check_postulates(const classifier& clf, const circuit& t, const rectification_result& result, const check_options& opts,
                                  const limits& lim) {
    const auto& problem = clf.problem();
    clf.require_certified();
    const auto& rect = result.rectified;
    const rectify_options ropts{.project_extra_vars = true};

    postulate_report report;
    for (auto p : {postulate::re1, postulate::re2, postulate::re3, postulate::re4, postulate::re5, postulate::re6})
        report.statuses.push_back(postulate_status{.id = p, .passed = true, .checked = 0, .witness = std::nullopt, .note = {}});
    auto& re1 = report.statuses[0];
    auto& re2 = report.statuses[1];
    auto& re3 = report.statuses[2];
    auto& re4 = report.statuses[3];
    auto& re5 = report.statuses[4];
    auto& re6 = report.statuses[5];

    re1.checked = instance_count(problem);
    const bool rect_is_classifier = check_xy_property(rect.sigma(), problem, lim);
    if (!rect_is_classifier) {
        // Find the first unclassified instance for the witness.
        for (std::uint64_t i = 0; i < instance_count(problem); ++i) {
            auto x = instance_at(problem, i);
            if (models(condition(rect.sigma(), x.as_term()), problem.labels(), lim).size() != 1) {
                fail(re1, x.word());
                break;
            }
        }
        if (re1.passed) fail(re1, "rectified circuit lacks the XY-classification property");
    }
    // RE2/RE3 presuppose a classifier; run them against a freshly certified copy.
    classifier rect_checked(problem, rect.sigma(), lim);

    for (std::uint64_t i = 0; i < instance_count(problem); ++i) {
        auto x = instance_at(problem, i);
        if (is_fact_compliant(clf, t, x, lim)) {
            ++re2.checked;
            if (!rect_checked.certified() || classify(rect_checked, x, lim) != classify(clf, x, lim)) fail(re2, x.word());
        }
        ++re3.checked;
        if (!rect_checked.certified() || !is_fact_compliant(rect_checked, t, x, lim)) fail(re3, x.word());
    }

    // RE4: the result itself when t is inconsistent; always the rectification by false.
    if (!is_consistent(t, lim)) {
        ++re4.checked;
        if (!equivalent(rect.sigma(), clf.sigma(), lim)) fail(re4, "t is inconsistent but the result differs from sigma");
    } else {
        re4.note = "t consistent; checked rectification by false";
    }
    ++re4.checked;
    if (!equivalent(rectify(clf, circuit::constant(false)).rectified.sigma(), clf.sigma(), lim))
        fail(re4, "rectification by false differs from sigma");

    // RE5: syntactic variants of both inputs.
    std::mt19937_64 rng(opts.seed);
    for (std::size_t i = 0; i < opts.rewrites; ++i) {
        auto sigma2 = rewrite_equivalent(clf.sigma(), rng);
        auto t2 = rewrite_equivalent(t, rng);
        ++re5.checked;
        classifier clf2(problem, sigma2, lim);
        if (!clf2.certified()) {
            fail(re5, "rewrite " + std::to_string(i) + " of sigma is not a classifier");
            continue;
        }
        auto r2 = rectify(clf2, t2, ropts);
        if (!equivalent(r2.rectified.sigma(), rect.sigma(), lim)) fail(re5, "rewrite " + std::to_string(i));
    }

    // RE6: one fresh variable, adjoined tautologously to sigma, and both
    // tautologously and as a non-trivial clause to t.
    const auto z = fresh_var(problem, clf.sigma(), t);
    const auto tautology = disjoin(circuit::variable(z), negate(circuit::variable(z)));
    auto sigma_z = preprocess_project(conjoin(clf.sigma(), tautology), problem);
    classifier clf_z(problem, sigma_z, lim);
    std::uniform_int_distribution<std::size_t> pick(0, problem.features().size() - 1);
    const literal side{problem.features()[pick(rng)], std::bernoulli_distribution(0.5)(rng)};
    const circuit t_variants[] = {
        conjoin(t, tautology),
        conjoin(t, disjoin(circuit::variable(z), circuit::from_literal(side))),
    };
    for (std::size_t i = 0; i < std::size(t_variants); ++i) {
        ++re6.checked;
        if (!clf_z.certified()) {
            fail(re6, "projected sigma is not a classifier");
            break;
        }
        auto r6 = rectify(clf_z, t_variants[i], ropts);
        if (!equivalent(r6.rectified.sigma(), rect.sigma(), lim)) fail(re6, i == 0 ? "t and z-tautology" : "t and (z or literal)");
    }
    return report;
}

std::string render_report(const postulate_report& report) {
    std::ostringstream out;
    for (const auto& s : report.statuses) {
        out << postulate_name(s.id) << ": " << (s.passed ? "pass" : "FAIL") << " (" << s.checked << " checked)";
        if (s.witness) out << " witness: " << *s.witness;
        if (!s.note.empty()) out << " [" << s.note << "]";
        out << '\n';
    }
    out << (report.all_passed() ? "all postulates hold" : "postulate violations found") << '\n';
    return out.str();
}

}  // namespace rectifier
