#include <doctest.h>

#include <random>

#include "rectifier/error.hpp"
#include "rectifier/random.hpp"
#include "support.hpp"

using namespace rectifier;
using namespace rectifier::testing;

TEST_CASE("variable names") {
    CHECK(is_valid_var_name("x1"));
    CHECK(is_valid_var_name("_tmp"));
    CHECK_FALSE(is_valid_var_name("1x"));
    CHECK_FALSE(is_valid_var_name(""));
    CHECK_FALSE(is_valid_var_name("and"));
    CHECK_FALSE(is_valid_var_name("let"));

    var_table t;
    auto a = t.declare("a");
    CHECK(t.intern("a") == a);
    CHECK_THROWS_AS(t.declare("a"), input_error);
    CHECK_THROWS_AS(t.declare("not"), input_error);
    CHECK(t.name(t.intern("b")) == "b");
    CHECK_FALSE(t.find("c").has_value());
}

TEST_CASE("terms are sorted and consistent") {
    auto x = make_var(0), y = make_var(1);
    term t({{y, false}, {x, true}});
    REQUIRE(t.size() == 2);
    CHECK(t.literals()[0].var == x);
    CHECK(t.value_of(y) == false);
    CHECK_FALSE(t.value_of(make_var(5)).has_value());
    CHECK_THROWS_AS(term({{x, true}, {x, false}}), input_error);
    CHECK(term({{x, true}, {x, true}}).size() == 1);
}

TEST_CASE("builder folds constants and dedupes") {
    auto x = make_var(0), y = make_var(1);
    circuit_builder b;
    auto gx = b.variable(x), gy = b.variable(y);
    auto t = b.constant(true), f = b.constant(false);

    const gate_id none[] = {0};
    CHECK(b.is_const(b.conjunction(std::span<const gate_id>(none, 0)), true));
    CHECK(b.is_const(b.disjunction(std::span<const gate_id>(none, 0)), false));
    CHECK(b.conjunction(gx, t) == gx);
    CHECK(b.is_const(b.conjunction(gx, f), false));
    CHECK(b.disjunction(gx, f) == gx);
    CHECK(b.is_const(b.disjunction(gy, t), true));
    CHECK(b.conjunction(gx, gx) == gx);
    CHECK(b.is_const(b.negation(t), false));
    CHECK(b.conjunction(gx, gy) == b.conjunction(gx, gy));

    auto nn = b.negation(b.negation(gx));
    CHECK(nn != gx);
    CHECK(b.node(nn).kind == gate_kind::negation);

    CHECK(b.decision(x, gy, gy) == gy);
    CHECK(b.decision(x, f, t) == gx);
    CHECK(b.node(b.decision(x, t, f)).kind == gate_kind::negation);
}

TEST_CASE("sharing can be disabled") {
    auto x = make_var(0), y = make_var(1);
    circuit_builder b(false);
    auto a1 = b.conjunction(b.variable(x), b.variable(y));
    auto a2 = b.conjunction(b.variable(x), b.variable(y));
    CHECK(a1 != a2);
}

TEST_CASE("size counts reachable arcs") {
    auto tab = named_table({"x", "y", "z"});
    CHECK(parse("x", tab).size() == 0);
    CHECK(parse("(and x y)", tab).size() == 2);
    CHECK(parse("(not (and x y))", tab).size() == 3);
    CHECK(parse("(dec z x y)", tab).size() == 3);
    // the shared conjunction is counted once
    CHECK(parse("(let ((s (and x y))) (or s (not s)))", tab).size() == 5);
    CHECK(parse("(let ((s (and x y))) (or s (not s)))", tab).gate_count() == 5);
    CHECK(circuit().is_constant());
    CHECK_FALSE(circuit().constant_value());
}

TEST_CASE("random circuits are topologically ordered") {
    std::mt19937_64 rng(3);
    auto vs = first_vars(5);
    for (int i = 0; i < 50; ++i) {
        auto c = random_circuit(vs, 30, rng);
        const auto& g = c.graph();
        for (gate_id id = 0; id < g.gates.size(); ++id)
            for (auto k : g.children_of(id)) CHECK(k < id);
        for (auto v : c.vars()) CHECK(index_of(v) < 5);
    }
}

TEST_CASE("import preserves semantics") {
    std::mt19937_64 rng(11);
    auto vs = first_vars(4);
    for (int i = 0; i < 30; ++i) {
        auto c = random_circuit(vs, 20, rng);
        circuit_builder b;
        b.variable(vs[3]);
        auto root = b.import(c);
        auto copy = std::move(b).finish(root);
        CHECK(tabulate(copy, vs) == truth_table_reference(c, vs));
    }
}

TEST_CASE("conditioning: semantics and size") {
    std::mt19937_64 rng(5);
    const std::size_t n = 5;
    auto vs = first_vars(n);
    for (int i = 0; i < 100; ++i) {
        auto c = random_circuit(vs, 25, rng);
        const literal l{vs[i % n], i % 2 == 0};
        auto cl = condition(c, l);
        CHECK(cl.size() <= c.size());
        for (auto v : cl.vars()) CHECK(v != l.var);
        // Oracle: conditioning fixes the literal in every row.
        auto full = truth_table_reference(c, vs);
        auto cond = truth_table_reference(cl, vs);
        const auto pos = static_cast<std::size_t>(index_of(l.var));
        for (std::uint64_t r = 0; r < full.rows(); ++r) {
            const std::uint64_t mask = std::uint64_t{1} << (n - 1 - pos);
            const auto forced = l.positive ? (r | mask) : (r & ~mask);
            CHECK(cond.at(r) == full.at(forced));
        }
    }
}

TEST_CASE("condition by a term equals iterated literal conditioning") {
    std::mt19937_64 rng(8);
    auto vs = first_vars(4);
    for (int i = 0; i < 40; ++i) {
        auto c = random_circuit(vs, 20, rng);
        term g({{vs[0], true}, {vs[2], false}});
        auto a = condition(c, g);
        auto b = condition(condition(c, literal{vs[0], true}), literal{vs[2], false});
        CHECK(tabulate(a, vs) == tabulate(b, vs));
    }
}

TEST_CASE("connectives") {
    auto tab = named_table({"a", "b"});
    auto vs = first_vars(2);
    auto a = parse("a", tab), b = parse("b", tab);
    auto rows = [&](const circuit& c) { return table_rows(tabulate(c, vs)); };
    CHECK(rows(negate(a)) == oracle_rows(2, [](auto r) { return !bit(r, 0, 2); }));
    CHECK(rows(conjoin(a, b)) == oracle_rows(2, [](auto r) { return bit(r, 0, 2) && bit(r, 1, 2); }));
    CHECK(rows(disjoin(a, b)) == oracle_rows(2, [](auto r) { return bit(r, 0, 2) || bit(r, 1, 2); }));
    CHECK(rows(equivalence(a, b)) == oracle_rows(2, [](auto r) { return bit(r, 0, 2) == bit(r, 1, 2); }));
    CHECK(rows(equivalence(negate(a), b)) == oracle_rows(2, [](auto r) { return bit(r, 0, 2) != bit(r, 1, 2); }));
    CHECK(equivalence(a, b).node(equivalence(a, b).root()).kind == gate_kind::decision);
}

TEST_CASE("decision desugars to its or-and form") {
    std::mt19937_64 rng(21);
    auto tab = named_table({"v", "p", "q"});
    auto d = parse("(dec v p q)", tab);
    auto s = parse("(or (and (not v) p) (and v q))", tab);
    CHECK(equivalent(d, s));
}

TEST_CASE("build reports bad expressions") {
    auto tab = named_table({"x"});
    CHECK_THROWS_AS(build(*make_var_expr("nope"), tab), input_error);
    CHECK_THROWS_AS(build(*make_expr(expr_kind::conjunction, {}), tab), input_error);
    CHECK_THROWS_AS(build(*make_expr(expr_kind::negation, {make_var_expr("x"), make_var_expr("x")}), tab), input_error);
    CHECK_THROWS_AS(build(*make_expr(expr_kind::implication, {make_var_expr("x")}), tab), input_error);
}

TEST_CASE("let bindings share gates") {
    auto tab = named_table({"x", "y"});
    auto shared = parse_circuit("(let ((s (and x y))) (or s (not s)))", tab);
    auto unshared = parse_circuit("(or (and x y) (not (and x y)))", tab, {.sharing = false});
    CHECK(shared.size() < unshared.size());
    CHECK(equivalent(shared, unshared));
}
