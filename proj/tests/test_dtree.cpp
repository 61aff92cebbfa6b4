#include <doctest.h>

#include <random>

#include "rectifier/error.hpp"
#include "rectifier/random.hpp"
#include "rectifier/rectify.hpp"
#include "rectifier/verify.hpp"
#include "support.hpp"

using namespace rectifier;
using namespace rectifier::testing;

namespace {

struct credit_trees {
    var_table tab = named_table({"x1", "x2", "x3", "y"});
    classification_problem problem{{make_var(0), make_var(1), make_var(2)}, {make_var(3)}};
    decision_tree t(const char* text) { return parse_dtree(text, tab); }

    decision_tree sigma = t("(x1 (x2 (y 0 1) (y 1 0)) (x3 (y 1 0) (y 0 1)))");
    decision_tree theory = t("(y (x1 1 (x3 0 1)) (x2 0 1))");
};

/// Row-by-row comparison over `vs`, evaluated directly on the tree.
bool same_function(const decision_tree& a, const decision_tree& b, std::span<const var_id> vs) {
    std::vector<var_id> order(vs.begin(), vs.end());
    for (std::uint64_t r = 0; r < (std::uint64_t{1} << vs.size()); ++r) {
        auto w = assignment::from_index(order, r);
        if (dt_eval(a, w) != dt_eval(b, w)) return false;
    }
    return true;
}

}  // namespace

TEST_CASE("leaves and counts") {
    auto one = decision_tree::leaf(true);
    CHECK(one.is_leaf());
    CHECK(one.leaf_value());
    CHECK(decision_tree().is_leaf());
    CHECK_FALSE(decision_tree().leaf_value());
    auto t = decision_tree::branch(make_var(0), decision_tree::leaf(false), decision_tree::branch(make_var(1), decision_tree::leaf(false), one));
    CHECK(t.node_count() == 5);
    CHECK(t.decision_count() == 2);
    CHECK(t.depth() == 2);
    CHECK(dt_vars(t) == first_vars(2));
}

TEST_CASE("structural equality ignores sharing") {
    auto leaf0 = decision_tree::leaf(false), leaf1 = decision_tree::leaf(true);
    auto sub = decision_tree::branch(make_var(1), leaf0, leaf1);
    auto a = decision_tree::branch(make_var(0), sub, sub);
    auto b = decision_tree::branch(make_var(0), decision_tree::branch(make_var(1), leaf0, leaf1), decision_tree::branch(make_var(1), leaf0, leaf1));
    CHECK(a == b);
    CHECK(a.hash() == b.hash());
    CHECK_FALSE(a == sub);
}

TEST_CASE("credit scoring: every stage of the tree pipeline") {
    credit_trees f;
    auto tr = dt_rectify_traced(f.sigma, f.theory, f.problem);
    CHECK(tr.sigma_x == f.t("(x1 (x2 1 0) (x3 0 1))"));
    CHECK(tr.t_pos_cond == f.t("(x2 0 1)"));
    CHECK(tr.t_neg_cond == f.t("(x1 1 (x3 0 1))"));
    CHECK(tr.t_negative == f.t("(x1 (x2 1 0) (x3 0 (x2 1 0)))"));
    CHECK(tr.t_positive == f.t("(x2 0 (x1 0 (x3 1 0)))"));
    CHECK(tr.keep_raw == f.t("(x1 (x2 (x1 (x2 0 1) (x3 1 (x2 0 1))) 0) (x3 0 (x1 (x2 0 1) (x3 1 (x2 0 1)))))"));
    CHECK(tr.keep == f.t("(x1 0 (x3 0 (x2 0 1)))"));
    CHECK(tr.combined_raw == dt_disjoin(tr.keep, tr.t_positive));
    CHECK(tr.combined == f.t("(x1 0 (x2 0 1))"));
    CHECK(tr.rectified == attach_label(tr.combined, f.problem.label()));
    CHECK(print_dtree(tr.combined, f.tab) == "(x1 0 (x2 0 1))");

    classifier clf(f.problem, dt_to_circuit(f.sigma));
    auto r = rectify(clf, dt_to_circuit(f.theory));
    CHECK(equivalent(dt_to_circuit(tr.combined), r.sigma_x_t));
    CHECK(equivalent(dt_to_circuit(tr.combined), parse("(and x1 x2)", f.tab)));
}

TEST_CASE("dt_rectify rejects non-classification trees") {
    credit_trees f;
    CHECK_THROWS_AS(dt_rectify(f.t("(x1 (y 0 1) 1)"), f.theory, f.problem), certification_error);
    var_table tab = named_table({"x1", "x2", "x3", "y", "z"});
    auto stray = parse_dtree("(z 0 1)", tab);
    CHECK_THROWS_AS(dt_rectify(f.sigma, stray, f.problem), input_error);
}

TEST_CASE("tree operations match their semantics") {
    std::mt19937_64 rng(31);
    auto vs = first_vars(5);
    for (int i = 0; i < 100; ++i) {
        auto a = random_tree(vs, {.max_depth = 5, .repeat_probability = 0.2}, rng);
        auto b = random_tree(vs, {.max_depth = 5, .repeat_probability = 0.2}, rng);
        for (std::uint64_t r = 0; r < 32; ++r) {
            auto w = assignment::from_index(vs, r);
            const bool va = dt_eval(a, w), vb = dt_eval(b, w);
            CHECK(dt_eval(dt_negate(a), w) == !va);
            CHECK(dt_eval(dt_conjoin(a, b), w) == (va && vb));
            CHECK(dt_eval(dt_disjoin(a, b), w) == (va || vb));
            const literal l{vs[i % 5], i % 2 == 0};
            auto forced = w;
            forced = assignment::from_word(vs, [&] {
                auto s = w.word();
                s[i % 5] = l.positive ? '1' : '0';
                return s;
            }());
            CHECK(dt_eval(dt_condition(a, l), w) == dt_eval(a, forced));
        }
        CHECK(dt_negate(dt_negate(a)) == a);
    }
}

TEST_CASE("simplification: normal form and equivalence") {
    std::mt19937_64 rng(41);
    auto vs = first_vars(6);
    for (int i = 0; i < 200; ++i) {
        auto t = random_tree(vs, {.max_depth = 7, .leaf_probability = 0.15, .repeat_probability = 0.4, .twin_probability = 0.2}, rng);
        auto s = dt_simplify(t);
        CHECK(is_read_once(s));
        CHECK_FALSE(has_identical_children(s));
        CHECK(is_simplified(s));
        CHECK(s.node_count() <= t.node_count());
        CHECK(same_function(s, t, vs));
        auto fix = dt_simplify_to_fixpoint(t);
        CHECK(fix.tree == s);
        CHECK(fix.passes >= 1);
        CHECK(dt_simplify(s) == s);
    }
}

TEST_CASE("simplification detects the two kinds of redundancy") {
    credit_trees f;
    CHECK_FALSE(is_read_once(f.t("(x1 (x1 0 1) 1)")));
    CHECK(has_identical_children(f.t("(x1 (x2 0 1) (x2 0 1))")));
    CHECK(dt_simplify(f.t("(x1 (x1 0 1) 1)")) == f.t("(x1 0 1)"));
    CHECK(dt_simplify(f.t("(x1 (x2 0 1) (x2 0 1))")) == f.t("(x2 0 1)"));
    CHECK(dt_simplify(f.t("(x1 (x2 (x1 1 0) 0) 1)")) == f.t("(x1 (x2 1 0) 1)"));
}

TEST_CASE("tree and circuit conversions") {
    std::mt19937_64 rng(51);
    auto vs = first_vars(5);
    for (int i = 0; i < 60; ++i) {
        auto t = random_tree(vs, {.max_depth = 6}, rng);
        auto c = dt_to_circuit(t);
        CHECK(same_function(circuit_to_dt(c, vs), t, vs));
        CHECK(is_simplified(circuit_to_dt(c, vs)));
        for (std::uint64_t r = 0; r < 32; ++r) {
            auto w = assignment::from_index(vs, r);
            CHECK(eval(c, w) == dt_eval(t, w));
        }
        auto rc = random_circuit(vs, 20, rng);
        CHECK(tabulate(dt_to_circuit(circuit_to_dt(rc, vs)), vs) == tabulate(rc, vs));
    }
}

TEST_CASE("random tree pairs: tree pipeline equals circuit pipeline") {
    std::mt19937_64 rng(61);
    for (int i = 0; i < 100; ++i) {
        const std::size_t n = 3 + i % 4;
        auto xs = first_vars(n);
        classification_problem p(xs, {make_var(static_cast<std::uint32_t>(n))});
        auto sigma = random_classification_tree(p, {.max_depth = 5}, rng);
        auto all = p.all_vars();
        auto theory = random_tree(all, {.max_depth = 5, .leaf_probability = 0.25}, rng);
        auto tr = dt_rectify_traced(sigma, theory, p);
        CHECK(is_simplified(tr.combined));
        classifier clf(p, dt_to_circuit(sigma));
        REQUIRE(clf.certified());
        auto r = rectify(clf, dt_to_circuit(theory));
        CHECK(equivalent(dt_to_circuit(tr.combined), r.sigma_x_t));
        CHECK(equivalent(dt_to_circuit(tr.rectified), r.rectified.sigma()));
    }
}

TEST_CASE("forests: votes and parallel rectification") {
    credit_trees f;
    auto y = f.problem.label();
    random_forest forest{{f.sigma, f.t("(x2 (y 0 1) (y 1 0))"), f.t("(x3 (y 1 0) (y 0 1))")}};
    auto x = assignment::from_word(f.problem.features(), "110");
    CHECK_FALSE(tree_class(f.sigma, x, y));
    CHECK_FALSE(forest_vote(forest, x, y));
    random_forest tie{{f.t("(y 0 1)"), f.t("(y 1 0)")}};
    CHECK_FALSE(forest_vote(tie, x, y));

    auto par = rf_rectify(forest, f.theory, f.problem);
    auto ser = rf_rectify_serial(forest, f.theory, f.problem);
    REQUIRE(par.trees.size() == 3);
    for (std::size_t i = 0; i < 3; ++i) {
        CHECK(par.trees[i] == ser.trees[i]);
        CHECK(par.trees[i] == dt_rectify(forest.trees[i], f.theory, f.problem));
    }
    auto theory = dt_to_circuit(f.theory);
    for (const auto& tree : par.trees) {
        classifier clf(f.problem, dt_to_circuit(tree));
        for (std::uint64_t k = 0; k < 8; ++k) CHECK(is_fact_compliant(clf, theory, instance_at(f.problem, k)));
    }
}

TEST_CASE("rf_rectify propagates errors from any tree") {
    credit_trees f;
    random_forest forest{{f.sigma, f.t("(x1 1 0)")}};
    CHECK_THROWS_AS(rf_rectify(forest, f.theory, f.problem), certification_error);
}
