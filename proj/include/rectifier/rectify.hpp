#pragma once

#include "rectifier/circuit.hpp"
#include "rectifier/classifier.hpp"

namespace rectifier {

/// Instances the theory classifies by itself, as circuits over X:
/// positive = t(y) and not t(!y), negative = t(!y) and not t(y).
struct theory_verdicts {
    circuit positive;
    circuit negative;
};

struct rectification_result {
    circuit sigma_x_t;       ///< positive instances of the rectified classifier, over X
    classifier rectified;    ///< sigma_x_t <=> y
    circuit t_pos;
    circuit t_neg;
};

struct rectify_options {
    /// Forget variables of the theory outside X and y before rectifying.
    /// When false such variables are an input error.
    bool project_extra_vars = false;
    /// Maximum number of variables preprocess_project may forget.
    std::size_t max_forgotten = 8;
};

/// Throws input_error if t mentions variables outside X and the label.
theory_verdicts t_classifies(const circuit& t, const classification_problem& problem);

/// The rectified classifier. Linear in |sigma| + |t|: the construction
/// conditions and recombines circuits without enumerating any model.
rectification_result rectify(const classifier& clf, const circuit& t, const rectify_options& opts = {});

/// Forgets every variable of phi outside X and Y. Throws input_error when
/// more than `max_forgotten` variables would be forgotten.
circuit preprocess_project(const circuit& phi, const classification_problem& problem, std::size_t max_forgotten = 8);

/// Positive (true) or negative (false) class of x under the rectified classifier.
bool classify_rectified(const rectification_result& result, const instance& x);

}  // namespace rectifier
