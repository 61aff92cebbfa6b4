#pragma once

#include <random>
#include <span>

#include "rectifier/circuit.hpp"
#include "rectifier/classifier.hpp"
#include "rectifier/dtree.hpp"

namespace rectifier {

/// Random circuit over `vars` with roughly `gates` gates (leaves included).
/// Children are drawn with a bias toward recent gates, so circuits are
/// deep rather than flat. The root is the last gate built.
circuit random_circuit(std::span<const var_id> vars, std::size_t gates, std::mt19937_64& rng);

/// Random mono-label classification circuit: a random circuit S over X
/// tied to the label through one of several equivalent encodings of S <=> y.
circuit random_classifier_circuit(const classification_problem& problem, std::size_t gates, std::mt19937_64& rng);

/// Random theory over X and the label: either an unconstrained random
/// circuit or a conjunction of rules (term => literal of y).
circuit random_theory(const classification_problem& problem, std::size_t gates, std::mt19937_64& rng);

struct random_tree_options {
    std::size_t max_depth = 6;
    double leaf_probability = 0.2;
    /// Probability of reusing a variable already tested on the path.
    double repeat_probability = 0.0;
    /// Probability of giving a node two copies of the same subtree.
    double twin_probability = 0.0;
};

decision_tree random_tree(std::span<const var_id> vars, const random_tree_options& opts, std::mt19937_64& rng);

/// Random classification tree over X and the label: a random X-tree with
/// the label attached below its leaves, or (y (not S) S)-shaped.
decision_tree random_classification_tree(const classification_problem& problem, const random_tree_options& opts, std::mt19937_64& rng);

}  // namespace rectifier
