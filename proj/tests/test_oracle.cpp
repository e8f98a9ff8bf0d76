#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "seqreg/oracle.hpp"

using namespace seqreg;
using Catch::Approx;

TEST_CASE("grid construction") {
  REQUIRE_THROWS_AS(GridSpec(1.0, 1.0, 2000), std::invalid_argument);
  REQUIRE_THROWS_AS(GridSpec(0.0, 1.0, 10), std::invalid_argument);
  const auto g = oracle_grid_for(3.0, 1.5);
  REQUIRE(g.lo == Approx(-2.0));
  REQUIRE(g.hi == Approx(4.0));
  // caller-provided grids must cover the candidate range
  REQUIRE_THROWS_AS(oracle_prox(3.0, 1.5, 0.1, 1.0, 2.0, GridSpec(-1.0, 4.0, 2000)),
                    std::invalid_argument);
}

TEST_CASE("p = 0 reduces to the exact two-candidate rule") {
  SplitMix64 rng(71);
  for (int i = 0; i < 500; ++i) {
    const double v = rng.next_uniform(-3.0, 3.0);
    const double w = rng.next_uniform(0.5, 2.5);
    const double alpha = std::pow(10.0, rng.next_uniform(-4.0, 1.0));
    const double sigma = rng.next_uniform(1.5, 4.0);
    const double expected =
        std::pow(std::abs(v), sigma) > alpha ? v / w : 0.0;
    REQUIRE(oracle_prox(v, w, alpha, 0.0, sigma, oracle_grid_for(v, w)) == expected);
  }
}

TEST_CASE("hand-checked soft threshold value") {
  // p=1, sigma=2, w=1, alpha=2, v=3: minimizer at 2
  const double t = oracle_prox(3.0, 1.0, 2.0, 1.0, 2.0, oracle_grid_for(3.0, 1.0));
  REQUIRE(t == Approx(2.0).margin(1e-6));
}

TEST_CASE("zero data gives the zero minimizer") {
  for (double p : {0.0, 0.5, 1.0, 2.0})
    REQUIRE(oracle_prox(0.0, 1.0, 0.3, p, 2.0, oracle_grid_for(0.0, 1.0)) == 0.0);
}

TEST_CASE("oracle is deterministic") {
  const double a = oracle_prox(1.3, 0.9, 0.05, 0.5, 4.0, oracle_grid_for(1.3, 0.9));
  const double b = oracle_prox(1.3, 0.9, 0.05, 0.5, 4.0, oracle_grid_for(1.3, 0.9));
  REQUIRE(a == b);
}

TEST_CASE("oracle_tikhonov") {
  const SpaceParams params(1, 1, 2, 4, 4);
  SECTION("n = 1 reduces to the coordinate oracle") {
    const auto op = gen_operator(1, 4.0, 81);
    const auto problem = make_problem(op, TruncatedSequence({1.5}), 0.01, 82);
    const RegConfig cfg(params, 0.05);
    const auto [u, value] = oracle_tikhonov(problem, cfg);
    const double t = oracle_prox(problem.v_noisy[0], op.weights()[0], 0.05, 1.0,
                                 4.0, oracle_grid_for(problem.v_noisy[0], op.weights()[0]));
    REQUIRE(u[0] == t);
    REQUIRE(value == Approx(tikhonov_value(problem, u, cfg)));
  }
  SECTION("zero data gives the zero minimizer") {
    const auto op = gen_operator(4, 4.0, 83);
    // zero truth, tiny noise: every coordinate collapses to zero once the
    // penalty outweighs the noise
    const auto problem = make_problem(op, TruncatedSequence::zeros(4), 1e-6, 84);
    const auto [u, value] = oracle_tikhonov(problem, RegConfig(params, 0.5));
    REQUIRE(norm_s(u, 0.0) == 0.0);
  }
  SECTION("size guard") {
    const auto op = gen_operator(9, 4.0, 85);
    const auto problem =
        make_problem(op, TruncatedSequence::zeros(9), 1e-3, 86);
    REQUIRE_THROWS_AS(oracle_tikhonov(problem, RegConfig(params, 0.5)),
                      std::invalid_argument);
  }
}

TEST_CASE("oracle never beats the solver by more than the refinement slack") {
  SplitMix64 rng(87);
  const SpaceParams params(0.5, 1, 2, 4, 4);
  const RegConfig cfg(params, 1.0);
  for (int i = 0; i < 300; ++i) {
    const double v = (rng.next_unit() < 0.5 ? -1.0 : 1.0) *
                     std::pow(10.0, rng.next_uniform(-4.0, 1.0));
    const double w = rng.next_uniform(0.5, 2.5);
    const double alpha = std::pow(10.0, rng.next_uniform(-6.0, 0.5));
    const double p = rng.next_unit() < 0.5 ? 0.5 : 1.5;
    const double ts = prox_coordinate(v, w, alpha, p, 4.0, cfg);
    const double to = oracle_prox(v, w, alpha, p, 4.0, oracle_grid_for(v, w));
    const auto f = [&](double t) {
      return std::pow(std::abs(w * t - v), 4.0) + alpha * std::pow(std::abs(t), p);
    };
    // the exact solver must dominate the grid
    REQUIRE(f(to) >= f(ts) - 1e-9 * (1.0 + std::abs(f(ts))));
  }
}
