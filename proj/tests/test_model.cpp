#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <cstring>
#include <vector>

#include "seqreg/model.hpp"

using namespace seqreg;
using Catch::Approx;

TEST_CASE("apply_operator") {
  REQUIRE(apply_operator(DiagonalOperator({1, 1, 1}, 4), TruncatedSequence({2, -3, 0}))
              .entries() == std::vector<double>{2, -3, 0});
  REQUIRE(apply_operator(DiagonalOperator({2, 3}, 4), TruncatedSequence({1, -1}))
              .entries() == std::vector<double>{2, -3});
  REQUIRE_THROWS_AS(
      apply_operator(DiagonalOperator({2, 3}, 4), TruncatedSequence({1})),
      std::invalid_argument);
  REQUIRE_THROWS_AS(DiagonalOperator({1.0, 0.0}, 4), std::invalid_argument);
  REQUIRE_THROWS_AS(DiagonalOperator({1.0, -2.0}, 4), std::invalid_argument);
}

TEST_CASE("two-sided estimate is exact with d1 = min w, d2 = max w") {
  SplitMix64 rng(31);
  for (int i = 0; i < 2000; ++i) {
    const std::size_t n = 1 + rng.next_below(60);
    const double a = rng.next_uniform(1.0, 5.0);
    std::vector<double> w(n), e(n);
    for (double& x : w) x = std::pow(10.0, rng.next_uniform(-1.0, 1.0));
    bool nonzero = false;
    for (double& x : e) {
      x = rng.next_unit() < 0.3 ? 0.0 : rng.next_uniform(-2.0, 2.0);
      nonzero |= (x != 0.0);
    }
    const DiagonalOperator op(std::move(w), a);
    const TruncatedSequence u(std::move(e));
    const double ua = norm_s(u, a);
    const double img = norm_s(apply_operator(op, u), a);
    REQUIRE(op.d1() * ua <= img * (1.0 + kRelSlack));
    REQUIRE(img <= op.d2() * ua * (1.0 + kRelSlack));
    if (nonzero) {
      const double ratio = img / ua;
      REQUIRE(ratio >= op.d1() * (1.0 - kRelSlack));
      REQUIRE(ratio <= op.d2() * (1.0 + kRelSlack));
    }
    // injectivity: Au = 0 implies u = 0 since all weights are positive
    if (nonzero) REQUIRE(img > 0.0);
  }
}

TEST_CASE("gen_truth sparse") {
  const SpaceParams params(0, 0, 2, 4, 4);
  const auto u = gen_truth(TruthKind::kSparse, 1000, params, 0.5, 99, 3);
  REQUIRE(norm_s(u, 0.0) == 3.0);
  for (double x : u.entries()) {
    if (x != 0.0) {
      REQUIRE(x >= 0.5);
      REQUIRE(x <= 2.0);
    }
  }
  // deterministic in the seed
  REQUIRE(gen_truth(TruthKind::kSparse, 1000, params, 0.5, 99, 3).entries() ==
          u.entries());
  REQUIRE_THROWS_AS(gen_truth(TruthKind::kSparse, 10, params, 0.5, 99, 11),
                    std::invalid_argument);
}

TEST_CASE("gen_truth power-decay lies in the q-space") {
  const SpaceParams params(0.5, 1, 2, 4, 4);
  const std::size_t n = 1 << 14;
  const auto u1 = gen_truth(TruthKind::kPowerDecay, n, params, 0.5, 7);
  const auto u2 = gen_truth(TruthKind::kPowerDecay, 2 * n, params, 0.5, 7);
  for (std::size_t k = 0; k < 5; ++k)
    REQUIRE(u1[k] == Approx(std::pow(k + 1.0, -1.5)).epsilon(1e-14));

  // R_q stabilizes as n doubles (membership in the q-space)
  const double rq1 = penalty_rp(u1, params.q());
  const double rq2 = penalty_rp(u2, params.q());
  REQUIRE(std::abs(rq2 - rq1) / rq2 < 1e-2);

  // ... while R_{q'} for q' below the critical index keeps growing
  const double rd1 = penalty_rp(u1, 0.6);
  const double rd2 = penalty_rp(u2, 0.6);
  REQUIRE((rd2 - rd1) / rd2 > 2e-2);

  REQUIRE_THROWS_AS(
      gen_truth(TruthKind::kPowerDecay, 100, SpaceParams(0, 0, 2, 4, 4), 0.5, 7),
      std::invalid_argument);
}

TEST_CASE("gen_truth power-decay q=1 margin=0.2 matches the zeta tail") {
  // R_1 of k^{-1.2} approaches the full series value ~5.59158 from below
  const SpaceParams params(1, 1, 2, 4, 4);
  const auto u = gen_truth(TruthKind::kPowerDecay, 1 << 16, params, 0.2, 7);
  const double r1 = penalty_rp(u, 1.0);
  REQUIRE(r1 < 5.59158);
  REQUIRE(r1 > 5.0);
}

TEST_CASE("gen_truth mixed") {
  const SpaceParams params(0.5, 1, 2, 4, 4);
  const auto u = gen_truth(TruthKind::kMixed, 500, params, 0.5, 12, 5);
  REQUIRE(norm_s(u, 0.0) == 500.0);  // power tail touches every coordinate
  std::size_t spikes = 0;
  for (std::size_t k = 0; k < u.size(); ++k) spikes += (u[k] >= 0.5 && k > 0);
  REQUIRE(spikes >= 4);  // seeded spike positions beyond the decay head
}

TEST_CASE("gen_noise calibration and determinism") {
  SplitMix64 rng(32);
  std::vector<double> e(200);
  for (double& x : e) x = rng.next_uniform(-2.0, 2.0);
  const TruncatedSequence v(std::move(e));

  const double delta = 0.05;
  const auto vd = gen_noise(v, delta, 4.0, 77);
  REQUIRE(distance_s(vd, v, 4.0) == Approx(delta).epsilon(1e-12));
  REQUIRE(gen_noise(v, delta, 4.0, 77).entries() == vd.entries());
  REQUIRE(gen_noise(v, delta, 4.0, 78).entries() != vd.entries());
  REQUIRE_THROWS_AS(gen_noise(v, 0.0, 4.0, 77), std::invalid_argument);
}

TEST_CASE("make_problem enforces the noise level") {
  const auto op = gen_operator(64, 4.0, 5);
  const auto u = gen_truth(TruthKind::kSparse, 64, SpaceParams(0, 0, 2, 4, 4), 0.5, 5, 4);
  const auto problem = make_problem(op, u, 0.01, 6);
  REQUIRE(problem.delta == 0.01);
  REQUIRE(distance_s(problem.v_noisy, problem.v_clean, 4.0) ==
          Approx(0.01).epsilon(1e-11));
  REQUIRE(problem.v_clean.entries() == apply_operator(op, u).entries());
}

TEST_CASE("truth tail norm increment") {
  const SpaceParams params(1, 1, 2, 4, 4);
  REQUIRE(truth_tail_norm_increment(TruthKind::kSparse, params, 0.2, 100) == 0.0);

  // power decay k^{-1.2}: increment shrinks with n and bounds the true tail
  const double inc1 = truth_tail_norm_increment(TruthKind::kPowerDecay, params, 0.2, 1 << 10);
  const double inc2 = truth_tail_norm_increment(TruthKind::kPowerDecay, params, 0.2, 1 << 14);
  REQUIRE(inc1 > inc2);
  REQUIRE(inc2 > 0.0);

  // direct check against a much longer truncation
  const std::size_t n = 1 << 12;
  const auto head = gen_truth(TruthKind::kPowerDecay, n, params, 0.2, 7);
  const auto full = gen_truth(TruthKind::kPowerDecay, 1 << 20, params, 0.2, 7);
  const double observed = norm_s(full, 2.0) - norm_s(head, 2.0);
  const double bound = truth_tail_norm_increment(TruthKind::kPowerDecay, params, 0.2, n);
  REQUIRE(observed <= bound);
  REQUIRE(bound <= 4.0 * observed);  // the integral bound is tight
}

TEST_CASE("problem serialization round-trips bit-exactly") {
  const SpaceParams params(1, 4.0 / 3.0, 2, 4, 4);
  const auto op = gen_operator(48, params.a(), 91);
  const auto u = gen_truth(TruthKind::kPowerDecay, 48, params, 0.3, 91);
  const auto problem = make_problem(op, u, 3e-3, 92);

  const std::string text = problem_to_json(problem, params);
  const auto [back, back_params] = problem_from_json(text);

  REQUIRE(back.op.weights() == problem.op.weights());
  REQUIRE(back.u_dagger.entries() == problem.u_dagger.entries());
  REQUIRE(back.v_noisy.entries() == problem.v_noisy.entries());
  REQUIRE(back.v_clean.entries() == problem.v_clean.entries());
  REQUIRE(back.delta == problem.delta);
  REQUIRE(back.seed == problem.seed);
  REQUIRE(back_params.p() == params.p());
  REQUIRE(back_params.q() == params.q());
  REQUIRE(problem_to_json(back, back_params) == text);

  SECTION("unknown and missing fields are rejected") {
    auto j = nlohmann::json::parse(text);
    j["extra"] = 1;
    REQUIRE_THROWS_AS(problem_from_json(j.dump()), std::invalid_argument);
    j.erase("extra");
    j.erase("delta");
    REQUIRE_THROWS_AS(problem_from_json(j.dump()), std::invalid_argument);
  }
  SECTION("a noise level exceeding delta is rejected") {
    auto j = nlohmann::json::parse(text);
    j["delta"] = problem.delta / 100.0;
    REQUIRE_THROWS_AS(problem_from_json(j.dump()), std::invalid_argument);
  }
}
