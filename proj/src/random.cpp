#include "rectifier/random.hpp"

#include <algorithm>

#include "rectifier/error.hpp"

namespace rectifier {

namespace {

std::size_t pick_recent(std::size_t available, std::mt19937_64& rng) {
    // Half of the draws come from the last 8 gates.
    std::uniform_int_distribution<std::size_t> any(0, available - 1);
    if (available > 8 && std::bernoulli_distribution(0.5)(rng)) {
        std::uniform_int_distribution<std::size_t> recent(available - 8, available - 1);
        return recent(rng);
    }
    return any(rng);
}

gate_id emit_random(circuit_builder& b, std::span<const var_id> vars, std::size_t gates, std::mt19937_64& rng) {
    if (vars.empty()) throw input_error("random_circuit needs at least one variable");
    std::vector<gate_id> pool;
    for (auto v : vars) pool.push_back(b.variable(v));
    std::uniform_int_distribution<int> kind(0, 9);
    std::uniform_int_distribution<std::size_t> var_pick(0, vars.size() - 1);
    std::uniform_int_distribution<int> arity(2, 3);
    while (pool.size() < std::max<std::size_t>(gates, vars.size() + 1)) {
        gate_id g = 0;
        switch (kind(rng)) {
        case 0:
        case 1: g = b.negation(pool[pick_recent(pool.size(), rng)]); break;
        case 2:
        case 3:
        case 4:
        case 5: {
            std::vector<gate_id> kids;
            for (int i = arity(rng); i > 0; --i) kids.push_back(pool[pick_recent(pool.size(), rng)]);
            g = kind(rng) < 5 ? b.conjunction(kids) : b.disjunction(kids);
            break;
        }
        default: {
            auto lo = pool[pick_recent(pool.size(), rng)];
            auto hi = pool[pick_recent(pool.size(), rng)];
            g = b.decision(vars[var_pick(rng)], lo, hi);
            break;
        }
        }
        pool.push_back(g);
    }
    return pool.back();
}

}  // namespace

circuit random_circuit(std::span<const var_id> vars, std::size_t gates, std::mt19937_64& rng) {
    circuit_builder b;
    auto root = emit_random(b, vars, gates, rng);
    return std::move(b).finish(root);
}

circuit random_classifier_circuit(const classification_problem& problem, std::size_t gates, std::mt19937_64& rng) {
    const auto y = problem.label();
    circuit_builder b;
    auto s = emit_random(b, problem.features(), gates > 6 ? gates - 6 : gates, rng);
    auto yv = b.variable(y);
    gate_id root = 0;
    switch (std::uniform_int_distribution<int>(0, 2)(rng)) {
    case 0: root = b.decision(y, b.negation(s), s); break;
    case 1: root = b.equivalence(s, yv); break;
    default: root = b.conjunction(b.disjunction(b.negation(s), yv), b.disjunction(s, b.negation(yv))); break;
    }
    return std::move(b).finish(root);
}

circuit random_theory(const classification_problem& problem, std::size_t gates, std::mt19937_64& rng) {
    const auto y = problem.label();
    const auto& xs = problem.features();
    if (std::bernoulli_distribution(0.5)(rng)) {
        auto vars = problem.all_vars();
        return random_circuit(vars, gates, rng);
    }
    // Rules: (term over X) => (+/- y), conjoined.
    circuit_builder b;
    std::uniform_int_distribution<std::size_t> rule_count(1, 4);
    std::uniform_int_distribution<std::size_t> term_len(1, std::min<std::size_t>(3, xs.size()));
    std::bernoulli_distribution coin(0.5);
    std::vector<gate_id> rules;
    for (auto r = rule_count(rng); r > 0; --r) {
        std::vector<var_id> pool = xs;
        std::shuffle(pool.begin(), pool.end(), rng);
        std::vector<gate_id> lits;
        for (std::size_t i = term_len(rng); i > 0; --i) lits.push_back(b.literal({pool[i - 1], coin(rng)}));
        auto body = b.conjunction(lits);
        rules.push_back(b.disjunction(b.negation(body), b.literal({y, coin(rng)})));
    }
    auto root = b.conjunction(rules);
    return std::move(b).finish(root);
}

namespace {

decision_tree grow(std::span<const var_id> vars, const random_tree_options& opts, std::size_t depth, std::vector<var_id>& path,
                   std::mt19937_64& rng) {
    std::bernoulli_distribution coin(0.5);
    if (depth >= opts.max_depth || std::bernoulli_distribution(opts.leaf_probability)(rng)) return decision_tree::leaf(coin(rng));
    std::vector<var_id> fresh;
    for (auto v : vars)
        if (std::find(path.begin(), path.end(), v) == path.end()) fresh.push_back(v);
    const bool repeat = !path.empty() && (fresh.empty() || std::bernoulli_distribution(opts.repeat_probability)(rng));
    if (!repeat && fresh.empty()) return decision_tree::leaf(coin(rng));
    const auto& from = repeat ? path : fresh;
    auto v = from[std::uniform_int_distribution<std::size_t>(0, from.size() - 1)(rng)];
    path.push_back(v);
    auto low = grow(vars, opts, depth + 1, path, rng);
    auto high = std::bernoulli_distribution(opts.twin_probability)(rng) ? low : grow(vars, opts, depth + 1, path, rng);
    path.pop_back();
    return decision_tree::branch(v, low, high);
}

}  // namespace

decision_tree random_tree(std::span<const var_id> vars, const random_tree_options& opts, std::mt19937_64& rng) {
    std::vector<var_id> path;
    return grow(vars, opts, 0, path, rng);
}

decision_tree random_classification_tree(const classification_problem& problem, const random_tree_options& opts, std::mt19937_64& rng) {
    const auto y = problem.label();
    auto s = random_tree(problem.features(), opts, rng);
    if (std::bernoulli_distribution(0.5)(rng)) return attach_label(s, y);
    return decision_tree::branch(y, dt_negate(s), s);
}

}  // namespace rectifier
