#include <doctest.h>

#include <sstream>

#include "rectifier/cli.hpp"

using namespace rectifier;

namespace {

struct run_result {
    int code;
    std::string out;
    std::string err;
};

run_result run(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

const std::string data = RECTIFIER_TEST_DATA;

}  // namespace

TEST_CASE("table reproduces the credit scoring rows") {
    auto r = run({"table", "--problem", data + "/credit.problem"});
    CHECK(r.code == 0);
    CHECK(r.out ==
          "# x sigma T F rectified\n"
          "000 y !y !y !y\n"
          "001 y !y !y !y\n"
          "010 !y T T !y\n"
          "011 !y T T !y\n"
          "100 !y F T !y\n"
          "101 y !y !y !y\n"
          "110 !y y y y\n"
          "111 y T T y\n");
}

TEST_CASE("classify") {
    auto r = run({"classify", "--problem", data + "/credit.problem", "--instance", "110"});
    CHECK(r.code == 0);
    CHECK(r.out == "sigma: neg, rectified: pos\n");
    r = run({"classify", "--problem", data + "/credit.problem", "--instance", "x1 x2 !x3"});
    CHECK(r.out == "sigma: neg, rectified: pos\n");
    CHECK(run({"classify", "--problem", data + "/credit.problem", "--instance", "11"}).code == 2);
}

TEST_CASE("rectify output forms") {
    auto r = run({"rectify", "--problem", data + "/credit.problem", "--out", "dtree"});
    CHECK(r.code == 0);
    CHECK(r.out == "sigma_x_t: (x1 0 (x2 0 1))\nrectified: (x1 (y 1 0) (x2 (y 1 0) (y 0 1)))\n");
    r = run({"rectify", "--problem", data + "/credit.problem", "--simplify"});
    CHECK(r.out.starts_with("sigma_x_t: (dec x1 false x2)\n"));
    r = run({"rectify", "--problem", data + "/credit.problem"});
    CHECK(r.code == 0);
    CHECK(r.out.find("rectified: ") != std::string::npos);
    CHECK(run({"rectify", "--problem", data + "/credit.problem", "--out", "bdd"}).code == 2);
}

TEST_CASE("rectify prints the rectified forest") {
    auto r = run({"rectify", "--problem", data + "/forest.problem", "--out", "dtree"});
    CHECK(r.code == 0);
    CHECK(r.out.find("tree 0: (x1 (y 1 0) (x2 (y 1 0) (y 0 1)))\n") != std::string::npos);
    CHECK(r.out.find("tree 2: ") != std::string::npos);
}

TEST_CASE("check") {
    auto r = run({"check", "--problem", data + "/credit.problem"});
    CHECK(r.code == 0);
    CHECK(r.out.ends_with("all postulates hold\n"));
}

TEST_CASE("dt-rectify on the credit trees") {
    auto r = run({"dt-rectify", "--sigma", data + "/credit_sigma.tree", "--theory", data + "/credit_theory.tree"});
    CHECK(r.code == 0);
    CHECK(r.out == "(x1 (y 1 0) (x2 (y 1 0) (y 0 1)))\n");
    CHECK(run({"dt-rectify", "--sigma", data + "/credit_sigma.tree", "--theory", data + "/credit_theory.tree", "--label", "x1"}).code == 2);
}

TEST_CASE("fuzz") {
    auto r = run({"fuzz", "--vars", "4", "--iters", "50", "--seed", "3"});
    CHECK(r.code == 0);
    CHECK(r.out == "fuzz: 50 iterations, 0 mismatches\n");
}

TEST_CASE("exit codes") {
    CHECK(run({}).code == 2);
    CHECK(run({"frobnicate"}).code == 2);
    CHECK(run({"table", "--problem", "/nonexistent/file"}).code == 2);
    CHECK(run({"table", "--problem", data + "/two_labels.problem"}).code == 2);
    CHECK(run({"fuzz", "--vars", "25"}).code == 3);
    CHECK(run({"--max-vars", "2", "table", "--problem", data + "/credit.problem"}).code == 3);
    CHECK(run({"--help"}).code == 0);
}
