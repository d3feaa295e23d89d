#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "doctest.h"
#include "fixtures.hpp"
#include "lcpk/generate.hpp"
#include "lcpk/linalg.hpp"
#include "lcpk/lp.hpp"

using namespace lcpk;
using lcpk::operator*;
using lcpk::operator-;

namespace {

// Invariants every optimal solution must satisfy.
void check_optimal_contract(const LpProblem& prob, const LpSolution& sol) {
  REQUIRE(sol.status == LpStatus::kOptimal);
  const Vector slack = prob.a * sol.x - prob.b;
  CHECK(min_entry(slack) >= -1e-8);
  CHECK(min_entry(sol.x) >= -1e-9);
  CHECK(min_entry(sol.y) >= -1e-9);
  CHECK(std::fabs(dot(sol.y, slack)) <= 1e-7 * (1.0 + std::fabs(sol.objective)));
  const double dual_obj = dot(prob.b, sol.y);
  CHECK(std::fabs(sol.objective - dual_obj) <=
        1e-7 * (1.0 + std::fabs(sol.objective)));
  // Dual feasibility: a'y <= c.
  for (std::size_t j = 0; j < prob.c.size(); ++j) {
    double aty = 0.0;
    for (std::size_t i = 0; i < prob.a.rows(); ++i) {
      aty += prob.a(i, j) * sol.y[i];
    }
    CHECK(aty <= prob.c[j] + 1e-9);
  }
}

}  // namespace

TEST_CASE("one-variable problem") {
  LpProblem prob{{1.0}, Matrix{{1.0}}, {1.0}};
  LpSolution sol = solve_lp(prob);
  check_optimal_contract(prob, sol);
  CHECK(sol.x[0] == doctest::Approx(1.0));
  CHECK(sol.y[0] == doctest::Approx(1.0));
}

TEST_CASE("binding identity constraints") {
  LpProblem prob{Vector(2, 1.0), Matrix::identity(2), {1.0, 2.0}};
  LpSolution sol = solve_lp(prob);
  check_optimal_contract(prob, sol);
  CHECK(sol.x[0] == doctest::Approx(1.0));
  CHECK(sol.x[1] == doctest::Approx(2.0));
  CHECK(sol.objective == doctest::Approx(3.0));
}

TEST_CASE("K-matrix vertex, solved independently by binding-constraint solve") {
  const Matrix m{{1, -1}, {-1.5, 2}};
  LpProblem prob{Vector(2, 1.0), m, {1.0, 1.0}};
  LpSolution sol = solve_lp(prob);
  check_optimal_contract(prob, sol);
  // Both constraints bind at the optimum: z = M^{-1} (1,1).
  auto minv = inverse(m);
  REQUIRE(minv);
  const Vector vertex = (*minv) * Vector{1.0, 1.0};
  CHECK(vertex[0] == doctest::Approx(6.0));
  CHECK(vertex[1] == doctest::Approx(5.0));
  CHECK(sol.x[0] == doctest::Approx(vertex[0]));
  CHECK(sol.x[1] == doctest::Approx(vertex[1]));
}

TEST_CASE("infeasible and unbounded detection") {
  // -z >= 1 with z >= 0 is empty.
  LpProblem inf_prob{{0.0}, Matrix{{-1.0}}, {1.0}};
  CHECK(solve_lp(inf_prob).status == LpStatus::kInfeasible);

  // min -z with z >= 1 runs away.
  LpProblem unb_prob{{-1.0}, Matrix{{1.0}}, {1.0}};
  CHECK(solve_lp(unb_prob).status == LpStatus::kUnbounded);
}

TEST_CASE("feasibility probe") {
  SUBCASE("q >= 0 is trivially feasible at zero") {
    FeasibilityResult res = feasible_point(Matrix::identity(2), {1.0, 0.5});
    CHECK(res.feasible);
    CHECK(inf_norm(res.point) <= 1e-9);
  }
  SUBCASE("negative scalar row is infeasible") {
    CHECK_FALSE(feasible_point(Matrix{{-1.0}}, {-1.0}).feasible);
  }
  SUBCASE("rank-deficient but feasible") {
    const Matrix m{{1, 0}, {1, 0}};
    FeasibilityResult res = feasible_point(m, {-1.0, -2.0});
    REQUIRE(res.feasible);
    const Vector slack = m * res.point + Vector{-1.0, -2.0};
    CHECK(min_entry(slack) >= -1e-8);
    CHECK(min_entry(res.point) >= -1e-9);
  }
}

TEST_CASE("strong duality and dual feasibility on random instances") {
  Rng rng(161);
  std::uniform_real_distribution<double> unif(-2.0, 2.0);
  std::uniform_real_distribution<double> cost(0.1, 2.0);
  int optimal_seen = 0;
  for (int t = 0; t < 200; ++t) {
    const std::size_t rows = 1 + rng() % 5;
    const std::size_t cols = 1 + rng() % 5;
    LpProblem prob;
    prob.a = Matrix(rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
      for (std::size_t j = 0; j < cols; ++j) prob.a(i, j) = unif(rng);
    }
    prob.b = Vector(rows);
    for (double& v : prob.b) v = unif(rng);
    prob.c = Vector(cols);
    for (double& v : prob.c) v = cost(rng);  // positive costs keep it bounded
    LpSolution sol = solve_lp(prob);
    if (sol.status == LpStatus::kOptimal) {
      ++optimal_seen;
      check_optimal_contract(prob, sol);
    }
  }
  CHECK(optimal_seen > 100);
}

TEST_CASE("identical inputs give identical outputs") {
  Rng rng(171);
  std::uniform_real_distribution<double> unif(-3.0, 3.0);
  for (int t = 0; t < 20; ++t) {
    LpProblem prob;
    prob.a = Matrix(4, 4);
    for (std::size_t i = 0; i < 4; ++i) {
      for (std::size_t j = 0; j < 4; ++j) prob.a(i, j) = unif(rng);
    }
    prob.b = Vector(4);
    for (double& v : prob.b) v = unif(rng);
    prob.c = Vector(4, 1.0);
    LpSolution first = solve_lp(prob);
    LpSolution second = solve_lp(prob);
    CHECK(first.status == second.status);
    if (first.status == LpStatus::kOptimal) {
      CHECK((first.x == second.x));
      CHECK((first.y == second.y));
    }
  }
}

TEST_CASE("degenerate problems terminate (Bland)") {
  // Many redundant rows meeting at the same vertex.
  Matrix a(6, 2);
  for (int i = 0; i < 6; ++i) {
    a(i, 0) = 1.0;
    a(i, 1) = 1.0;
  }
  LpProblem prob{Vector(2, 1.0), a, Vector(6, 1.0)};
  LpSolution sol = solve_lp(prob);
  check_optimal_contract(prob, sol);
  CHECK(sol.objective == doctest::Approx(1.0));
}
