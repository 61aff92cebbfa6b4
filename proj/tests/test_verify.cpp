#include <doctest.h>

#include <random>

#include "rectifier/random.hpp"
#include "rectifier/rectify.hpp"
#include "rectifier/verify.hpp"
#include "support.hpp"

using namespace rectifier;
using namespace rectifier::testing;

namespace {

struct credit {
    var_table tab = named_table({"x1", "x2", "x3", "y"});
    classification_problem problem{{make_var(0), make_var(1), make_var(2)}, {make_var(3)}};
    classifier clf{problem, parse("(iff (or (and (not x1) (not x2)) (and x1 x3)) y)", tab)};
    circuit theory = parse("(and (imp (and x1 (not x3)) y) (imp (not x2) (not y)))", tab);
};

}  // namespace

TEST_CASE("dalal revision keeps the closest models") {
    auto tab = named_table({"a", "b", "c"});
    auto vs = first_vars(3);
    // a&b&c revised by !a | !b: the models at distance one.
    auto r = dalal_revise(parse("(and a b c)", tab), parse("(or (not a) (not b))", tab), vs);
    CHECK(equivalent(r, parse("(and c (iff a (not b)))", tab)));
    // compatible inputs revise to their conjunction
    auto phi = parse("(or a b)", tab), alpha = parse("(or (not a) c)", tab);
    CHECK(equivalent(dalal_revise(phi, alpha, vs), conjoin(phi, alpha)));
    // inconsistent phi or alpha yields alpha
    CHECK(equivalent(dalal_revise(circuit::constant(false), alpha, vs), alpha));
    CHECK(equivalent(dalal_revise(phi, circuit::constant(false), vs), circuit::constant(false)));
}

TEST_CASE("dalal revision: models of alpha at minimal distance, by brute force") {
    std::mt19937_64 rng(2);
    const std::size_t n = 4;
    auto vs = first_vars(n);
    for (int i = 0; i < 40; ++i) {
        auto phi = random_circuit(vs, 12, rng);
        auto alpha = random_circuit(vs, 12, rng);
        auto tp = truth_table_reference(phi, vs), ta = truth_table_reference(alpha, vs);
        auto got = truth_table_reference(dalal_revise(phi, alpha, vs), vs);
        if (tp.none() || ta.none()) {
            CHECK(got == ta);
            continue;
        }
        auto dist = [&](std::uint64_t r) {
            int best = 99;
            for (std::uint64_t p = 0; p < tp.rows(); ++p)
                if (tp.at(p)) best = std::min(best, __builtin_popcountll(r ^ p));
            return best;
        };
        int min = 99;
        for (std::uint64_t r = 0; r < ta.rows(); ++r)
            if (ta.at(r)) min = std::min(min, dist(r));
        for (std::uint64_t r = 0; r < ta.rows(); ++r) CHECK(got.at(r) == (ta.at(r) && dist(r) == min));
    }
}

TEST_CASE("credit scoring: both oracles give x1 and x2") {
    credit e;
    auto expect = parse("(and x1 x2)", e.tab);
    CHECK(equivalent(oracle_rectify(e.clf, e.theory), expect));
    auto star = oracle_star_d(e.clf, e.theory);
    CHECK(equivalent(condition(star, literal{e.problem.label(), true}), expect));
    CHECK(equivalent(star, rectify(e.clf, e.theory).rectified.sigma()));
}

TEST_CASE("rewrites preserve semantics") {
    std::mt19937_64 rng(6);
    auto vs = first_vars(5);
    for (int i = 0; i < 60; ++i) {
        auto c = random_circuit(vs, 25, rng);
        CHECK(tabulate(rewrite_equivalent(c, rng), vs) == tabulate(c, vs));
    }
}

TEST_CASE("credit scoring: postulate report") {
    credit e;
    auto r = rectify(e.clf, e.theory);
    auto report = check_postulates(e.clf, e.theory, r);
    CHECK(report.all_passed());
    CHECK(report.at(postulate::re1).checked == 8);
    CHECK(report.at(postulate::re2).checked == 4);
    CHECK(report.at(postulate::re5).checked == 5);
    auto text = render_report(report);
    CHECK(text.find("RE1: pass (8 checked)") == 0);
    CHECK(text.find("all postulates hold") != std::string::npos);
}

TEST_CASE("a mutated result is caught with a witness") {
    credit e;
    auto r = rectify(e.clf, e.theory);
    // flip instance 110 back to negative
    auto flipped = conjoin(r.sigma_x_t, negate(parse("(and x1 x2 (not x3))", e.tab)));
    rectification_result bad{flipped, classifier::from_projection(e.problem, flipped), r.t_pos, r.t_neg};
    auto report = check_postulates(e.clf, e.theory, bad);
    CHECK_FALSE(report.all_passed());
    CHECK(report.at(postulate::re1).passed);
    CHECK_FALSE(report.at(postulate::re3).passed);
    CHECK(report.at(postulate::re3).witness == "110");
    CHECK_FALSE(report.at(postulate::re5).passed);
    CHECK(render_report(report).find("postulate violations found") != std::string::npos);
}

TEST_CASE("a result that is not a classifier fails RE1") {
    credit e;
    auto r = rectify(e.clf, e.theory);
    auto loose = parse("(or x1 y)", e.tab);
    rectification_result bad{r.sigma_x_t, classifier(e.problem, loose), r.t_pos, r.t_neg};
    auto report = check_postulates(e.clf, e.theory, bad);
    CHECK_FALSE(report.at(postulate::re1).passed);
    CHECK(report.at(postulate::re1).witness == "100");
}

TEST_CASE("postulates hold on random pairs") {
    std::mt19937_64 rng(13);
    for (int i = 0; i < 40; ++i) {
        auto xs = first_vars(3 + i % 3);
        classification_problem p(xs, {make_var(static_cast<std::uint32_t>(xs.size()))});
        classifier clf(p, random_classifier_circuit(p, 16, rng));
        auto t = random_theory(p, 16, rng);
        auto report = check_postulates(clf, t, rectify(clf, t), {.rewrites = 3, .seed = static_cast<std::uint64_t>(i)});
        CHECK_MESSAGE(report.all_passed(), render_report(report));
        CHECK(equivalent(oracle_star_d(clf, t), rectify(clf, t).rectified.sigma()));
    }
}

TEST_CASE("oracle_star_d handles several labels") {
    auto tab = named_table({"x1", "x2", "y1", "y2"});
    classification_problem p({make_var(0), make_var(1)}, {make_var(2), make_var(3)});
    classifier clf(p, parse("(and (iff x1 y1) (iff x2 y2))", tab));
    auto t = parse("(imp (and (not x1) x2) (not y2))", tab);
    auto star = oracle_star_d(clf, t);
    classifier revised(p, star);
    REQUIRE(revised.certified());
    // (0,1) moves to the closest compliant labelling, 00
    CHECK(classify(revised, assignment::from_word(p.features(), "01")).word() == "00");
    CHECK(classify(revised, assignment::from_word(p.features(), "11")).word() == "11");
}
