#include "rectifier/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <ostream>
#include <random>

#include "rectifier/error.hpp"
#include "rectifier/formats.hpp"
#include "rectifier/random.hpp"
#include "rectifier/rectify.hpp"
#include "rectifier/verify.hpp"

namespace rectifier {

namespace {

constexpr int exit_ok = 0;
constexpr int exit_verification = 1;
constexpr int exit_input = 2;
constexpr int exit_cap = 3;

std::string label_symbol(bool positive, const std::string& y) { return positive ? y : "!" + y; }

std::string verdict_symbol(verdict v, const std::string& y) {
    switch (v) {
    case verdict::positive: return y;
    case verdict::negative: return "!" + y;
    case verdict::trivial: return "T";
    case verdict::contradictory: return "F";
    }
    return "?";
}

std::string fact_symbol(const fact_formula& f, const var_table& table) {
    if (f.literals().empty()) return "T";
    std::string out;
    for (const auto& l : f.literals()) {
        if (!out.empty()) out += "&";
        out += (l.positive ? "" : "!") + table.name(l.var);
    }
    return out;
}

struct loaded {
    problem_file file;
    classifier clf;
};

loaded load(const std::string& path, const limits& lim) {
    auto file = load_problem(path);
    if (!file.problem.mono_label()) throw input_error("only mono-label problems can be rectified");
    auto sigma = file.extra.empty() ? file.sigma : preprocess_project(file.sigma, file.problem);
    classifier clf(file.problem, sigma, lim);
    clf.require_certified();
    return {std::move(file), std::move(clf)};
}

circuit simplified(const circuit& phi, std::span<const var_id> order, const limits& lim) {
    return dt_to_circuit(dt_simplify_to_fixpoint(circuit_to_dt(phi, order, lim)).tree);
}

int cmd_rectify(const std::string& path, const std::string& form, bool simplify, const limits& lim, std::ostream& out) {
    auto [file, clf] = load(path, lim);
    const auto& problem = file.problem;
    const auto y = problem.label();
    auto result = rectify(clf, file.theory, {.project_extra_vars = true});

    if (form == "dtree") {
        auto tree = dt_simplify_to_fixpoint(circuit_to_dt(result.sigma_x_t, problem.features(), lim)).tree;
        out << "sigma_x_t: " << print_dtree(tree, file.table) << '\n';
        out << "rectified: " << print_dtree(attach_label(tree, y), file.table) << '\n';
    } else {
        auto sx = result.sigma_x_t;
        auto rect = result.rectified.sigma();
        if (simplify) {
            sx = simplified(sx, problem.features(), lim);
            rect = simplified(rect, problem.all_vars(), lim);
        }
        out << "sigma_x_t: " << print_circuit(sx, file.table) << '\n';
        out << "rectified: " << print_circuit(rect, file.table) << '\n';
    }

    if (file.forest) {
        auto over = problem.all_vars();
        auto t_dt = dt_simplify_to_fixpoint(circuit_to_dt(file.theory, over, lim)).tree;
        auto fixed = rf_rectify(*file.forest, t_dt, problem, lim);
        for (std::size_t i = 0; i < fixed.trees.size(); ++i) out << "tree " << i << ": " << print_dtree(fixed.trees[i], file.table) << '\n';
    }
    return exit_ok;
}

int cmd_classify(const std::string& path, const std::string& word, const limits& lim, std::ostream& out) {
    auto [file, clf] = load(path, lim);
    auto x = parse_instance(word, file.problem, file.table);
    auto result = rectify(clf, file.theory, {.project_extra_vars = true});
    const bool before = classify(clf, x, lim).value(0);
    const bool after = classify_rectified(result, x);
    out << "sigma: " << (before ? "pos" : "neg") << ", rectified: " << (after ? "pos" : "neg") << '\n';
    return exit_ok;
}

int cmd_table(const std::string& path, const limits& lim, std::ostream& out) {
    auto [file, clf] = load(path, lim);
    const auto& problem = file.problem;
    const auto y = problem.label();
    const auto& yname = file.table.name(y);
    auto theory = preprocess_project(file.theory, problem);
    auto result = rectify(clf, theory);

    out << "# x sigma T F rectified\n";
    for (std::uint64_t i = 0; i < instance_count(problem); ++i) {
        auto x = instance_at(problem, i);
        out << x.word() << ' ' << label_symbol(classify(clf, x, lim).value(0), yname) << ' '
            << verdict_symbol(mono_verdict(theory, x, y, lim), yname) << ' '
            << fact_symbol(compute_fact_formula(theory, x, problem, lim), file.table) << ' '
            << label_symbol(classify_rectified(result, x), yname) << '\n';
    }
    return exit_ok;
}

int cmd_check(const std::string& path, std::size_t rewrites, std::uint64_t seed, const limits& lim, std::ostream& out) {
    auto [file, clf] = load(path, lim);
    auto theory = preprocess_project(file.theory, file.problem);
    auto result = rectify(clf, theory);
    auto report = check_postulates(clf, theory, result, {.rewrites = rewrites, .seed = seed}, lim);
    out << render_report(report);
    return report.all_passed() ? exit_ok : exit_verification;
}

int cmd_dt_rectify(const std::string& sigma_path, const std::string& theory_path, const std::string& label_flag, const limits& lim,
                   std::ostream& out) {
    var_table table;
    auto sigma = parse_tree_file(read_text_file(sigma_path), table);
    auto theory = parse_tree_file(read_text_file(theory_path), table);

    std::string label = label_flag;
    for (const auto* f : {&sigma, &theory}) {
        if (!f->label) continue;
        if (!label_flag.empty() && *f->label != label_flag) throw input_error("label '" + *f->label + "' conflicts with --label");
        if (!label.empty() && *f->label != label) throw input_error("the two files declare different labels");
        label = *f->label;
    }
    if (label.empty()) label = "y";
    const auto y = table.intern(label);

    std::vector<var_id> features;
    const auto& declared = !sigma.features.empty() ? sigma.features : theory.features;
    if (!declared.empty()) {
        for (const auto& n : declared) features.push_back(table.intern(n));
    } else {
        for (std::size_t i = 0; i < table.size(); ++i)
            if (make_var(static_cast<std::uint32_t>(i)) != y) features.push_back(make_var(static_cast<std::uint32_t>(i)));
    }
    classification_problem problem(features, {y});
    out << print_dtree(dt_rectify(sigma.tree, theory.tree, problem, lim), table) << '\n';
    return exit_ok;
}

int cmd_fuzz(std::size_t nvars, std::size_t iters, std::uint64_t seed, const limits& lim, std::ostream& out, std::ostream& err) {
    if (nvars == 0) throw input_error("--vars must be positive");
    check_cap(nvars + 1, lim, "fuzz");
    std::vector<var_id> xs;
    for (std::size_t i = 0; i < nvars; ++i) xs.push_back(make_var(static_cast<std::uint32_t>(i)));
    const auto y = make_var(static_cast<std::uint32_t>(nvars));
    classification_problem problem(xs, {y});

    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> size(4, 40);
    std::size_t mismatches = 0;
    for (std::size_t i = 0; i < iters; ++i) {
        classifier clf(problem, random_classifier_circuit(problem, size(rng), rng), lim);
        auto t = random_theory(problem, size(rng), rng);
        auto result = rectify(clf, t);
        if (!equivalent(result.sigma_x_t, oracle_rectify(clf, t, lim), lim)) {
            ++mismatches;
            err << "mismatch at iteration " << i << '\n';
        }
    }
    out << "fuzz: " << iters << " iterations, " << mismatches << " mismatches\n";
    return mismatches == 0 ? exit_ok : exit_verification;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Rectify Boolean classifiers against background knowledge"};
    app.require_subcommand(1);
    std::size_t max_vars = limits{}.max_vars;
    app.add_option("--max-vars", max_vars, "Enumeration cap for brute-force routines")->capture_default_str();

    std::string problem_path, form = "circuit", instance_word, sigma_path, theory_path, label;
    bool simplify = false;
    std::size_t rewrites = 5, nvars = 4, iters = 100;
    std::uint64_t seed = 1;

    auto* rect = app.add_subcommand("rectify", "Print the rectified classifier");
    rect->add_option("--problem", problem_path)->required();
    rect->add_option("--out", form)->check(CLI::IsMember({"circuit", "dtree"}))->capture_default_str();
    rect->add_flag("--simplify", simplify, "Simplify circuit output through a decision tree");

    auto* cls = app.add_subcommand("classify", "Classify one instance before and after rectification");
    cls->add_option("--problem", problem_path)->required();
    cls->add_option("--instance", instance_word)->required();

    auto* tab = app.add_subcommand("table", "Per-instance table of sigma, T, F(T,x) and the rectified class");
    tab->add_option("--problem", problem_path)->required();

    auto* chk = app.add_subcommand("check", "Check the rectification postulates by brute force");
    chk->add_option("--problem", problem_path)->required();
    chk->add_option("--rewrites", rewrites)->capture_default_str();
    chk->add_option("--seed", seed)->capture_default_str();

    auto* dtr = app.add_subcommand("dt-rectify", "Rectify a classification tree by a theory tree");
    dtr->add_option("--sigma", sigma_path)->required();
    dtr->add_option("--theory", theory_path)->required();
    dtr->add_option("--label", label, "Label variable (default y)");

    auto* fz = app.add_subcommand("fuzz", "Compare rectify against the brute-force oracle on random inputs");
    fz->add_option("--vars", nvars)->capture_default_str();
    fz->add_option("--iters", iters)->capture_default_str();
    fz->add_option("--seed", seed)->capture_default_str();

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? exit_ok : exit_input;
    }

    const limits lim{max_vars};
    try {
        if (*rect) return cmd_rectify(problem_path, form, simplify, lim, out);
        if (*cls) return cmd_classify(problem_path, instance_word, lim, out);
        if (*tab) return cmd_table(problem_path, lim, out);
        if (*chk) return cmd_check(problem_path, rewrites, seed, lim, out);
        if (*dtr) return cmd_dt_rectify(sigma_path, theory_path, label, lim, out);
        if (*fz) return cmd_fuzz(nvars, iters, seed, lim, out, err);
    } catch (const cap_exceeded& e) {
        err << "error: " << e.what() << '\n';
        return exit_cap;
    } catch (const input_error& e) {
        err << "error: " << e.what() << '\n';
        return exit_input;
    } catch (const certification_error& e) {
        err << "error: " << e.what() << '\n';
        return exit_input;
    } catch (const error& e) {
        err << "error: " << e.what() << '\n';
        return exit_verification;
    }
    return exit_input;
}

}  // namespace rectifier
