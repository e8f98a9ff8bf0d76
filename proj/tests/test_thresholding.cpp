#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "seqreg/random.hpp"
#include "seqreg/thresholding.hpp"

using namespace seqreg;
using Catch::Approx;

namespace {

TruncatedSequence geometric_sequence(int n) {
  std::vector<double> e(n);
  for (int k = 0; k < n; ++k) e[k] = std::pow(2.0, -k);
  return TruncatedSequence(std::move(e));
}

TruncatedSequence random_sequence(SplitMix64& rng, double beta) {
  std::vector<double> e(1 + rng.next_below(50));
  for (double& x : e) {
    const double roll = rng.next_unit();
    if (roll < 0.25)
      x = 0.0;
    else if (roll < 0.35)
      x = (rng.next_unit() < 0.5 ? -1.0 : 1.0) * beta;  // exactly at the boundary
    else
      x = (rng.next_unit() < 0.5 ? -1.0 : 1.0) *
          std::pow(10.0, rng.next_uniform(-4.0, 1.0));
  }
  return TruncatedSequence(std::move(e));
}

}  // namespace

TEST_CASE("hard_threshold keeps the boundary") {
  const auto out = hard_threshold(TruncatedSequence({3, 1, 0.5}), ThresholdRule(1.0));
  REQUIRE(out.entries() == std::vector<double>{3, 1, 0});

  const TruncatedSequence u({0.3, -0.2, 0.1});
  REQUIRE(norm_s(hard_threshold(u, ThresholdRule(0.5)), 0.0) == 0.0);
  REQUIRE(hard_threshold(u, ThresholdRule(0.05)).entries() == u.entries());

  REQUIRE_THROWS_AS(ThresholdRule(0.0), std::invalid_argument);
  REQUIRE_THROWS_AS(ThresholdRule(-1.0), std::invalid_argument);
}

TEST_CASE("hard_threshold structural properties") {
  SplitMix64 rng(21);
  for (int i = 0; i < 2000; ++i) {
    const double beta = std::pow(10.0, rng.next_uniform(-3.0, 0.5));
    const auto u = random_sequence(rng, beta);
    const ThresholdRule rule(beta);
    const auto hu = hard_threshold(u, rule);

    // idempotent
    REQUIRE(hard_threshold(hu, rule).entries() == hu.entries());
    // support subset, entries unchanged on the support
    for (std::size_t k = 0; k < u.size(); ++k) {
      if (hu[k] != 0.0) REQUIRE(hu[k] == u[k]);
    }
    // monotone sparsity in beta
    const double beta2 = beta * rng.next_uniform(1.0, 10.0);
    REQUIRE(norm_s(hard_threshold(u, ThresholdRule(beta2)), 0.0) <=
            norm_s(hu, 0.0));
  }
}

TEST_CASE("beta_of_alpha") {
  REQUIRE(beta_of_alpha(1.0, SpaceParams(0, 1, 2, 4, 4)).beta() == Approx(1.0));
  // N = 3*4 + 1*4 = 16, alpha = 1e-4 -> beta = 1e-1
  REQUIRE(beta_of_alpha(1e-4, SpaceParams(0, 1, 2, 4, 4)).beta() ==
          Approx(0.1).epsilon(1e-12));
  // N = 3*4 = 12, alpha = 2^12 -> beta = 2^4
  REQUIRE(beta_of_alpha(4096.0, SpaceParams(1, 1, 2, 4, 4)).beta() ==
          Approx(16.0).epsilon(1e-12));
  REQUIRE_THROWS_AS(beta_of_alpha(0.0, SpaceParams(0, 1, 2, 4, 4)),
                    std::invalid_argument);
}

TEST_CASE("auxiliary_element") {
  const SpaceParams params(0, 1, 2, 4, 4);
  SECTION("threshold above the largest entry gives zero") {
    const TruncatedSequence u({0.04, -0.02, 0.01});
    REQUIRE(norm_s(auxiliary_element(u, 1e-4, params), 0.0) == 0.0);  // beta = 0.1
  }
  SECTION("sparse truth with large entries is untouched") {
    const TruncatedSequence u({0.5, 0.0, 2.0, 0.0});
    REQUIRE(auxiliary_element(u, 1e-4, params).entries() == u.entries());
  }
  SECTION("power decay k^{-1.2} at alpha = 1e-4 keeps exactly k <= 6") {
    // beta(1e-4) = 0.1; 6^{-1.2} ~ 0.1165 >= 0.1 > 7^{-1.2} ~ 0.0968
    std::vector<double> e(30);
    for (int k = 0; k < 30; ++k) e[k] = std::pow(k + 1.0, -1.2);
    const auto aux = auxiliary_element(TruncatedSequence(std::move(e)), 1e-4, params);
    REQUIRE(norm_s(aux, 0.0) == 6.0);
    REQUIRE(aux[5] != 0.0);
    REQUIRE(aux[6] == 0.0);
  }
}

TEST_CASE("jackson bound on the geometric sequence") {
  // u_k = 2^{-(k-1)}, 30 entries, beta = 0.3, q = 1, t = 2: entries from k = 3
  // are discarded. Expected lhs by direct summation of the geometric tail.
  const auto u = geometric_sequence(30);
  double lhs_direct = 0.0;
  for (int k = 2; k < 30; ++k) lhs_direct += std::pow(2.0, -k) * std::pow(2.0, -k);
  const auto chk = jackson_bound_check(u, ThresholdRule(0.3), 1.0, 2.0);
  REQUIRE(chk.lhs == Approx(lhs_direct).epsilon(1e-13));
  REQUIRE(chk.lhs == Approx(1.0 / 12.0).epsilon(1e-8));
  REQUIRE(chk.rhs == Approx(penalty_rp(u, 1.0) * 0.3).epsilon(1e-13));
  REQUIRE(chk.holds);

  // beta below the smallest nonzero magnitude: nothing discarded
  const auto none = jackson_bound_check(u, ThresholdRule(1e-12), 1.0, 2.0);
  REQUIRE(none.lhs == 0.0);
  REQUIRE(none.holds);

  const auto zero =
      jackson_bound_check(TruncatedSequence::zeros(4), ThresholdRule(1.0), 0.0, 2.0);
  REQUIRE(zero.lhs == 0.0);
  REQUIRE(zero.rhs == 0.0);
  REQUIRE(zero.holds);

  REQUIRE_THROWS_AS(jackson_bound_check(u, ThresholdRule(0.3), 3.0, 2.0),
                    std::invalid_argument);
  REQUIRE_THROWS_AS(jackson_bound_check(u, ThresholdRule(0.3), 0.5, 0.9),
                    std::invalid_argument);
}

TEST_CASE("bernstein bound on the geometric sequence") {
  const auto u = geometric_sequence(30);
  const auto chk = bernstein_bound_check(u, ThresholdRule(0.3), 0.0, 1.0);
  REQUIRE(chk.lhs == 2.0);  // two entries >= 0.3
  REQUIRE(chk.rhs == Approx(penalty_rp(u, 1.0) / 0.3).epsilon(1e-13));
  REQUIRE(chk.holds);

  // p = q: thresholding only removes mass
  SplitMix64 rng(22);
  for (int i = 0; i < 500; ++i) {
    const double beta = std::pow(10.0, rng.next_uniform(-2.0, 0.5));
    const double q = rng.next_unit() < 0.3 ? 0.0 : rng.next_uniform(0.0, 3.0);
    const auto v = random_sequence(rng, beta);
    const auto eq = bernstein_bound_check(v, ThresholdRule(beta), q, q);
    REQUIRE(eq.holds);
    REQUIRE(eq.rhs == Approx(penalty_rp(v, q)));
  }

  const auto zero =
      bernstein_bound_check(TruncatedSequence::zeros(3), ThresholdRule(0.5), 0.0, 0.0);
  REQUIRE(zero.lhs == 0.0);
  REQUIRE(zero.holds);

  REQUIRE_THROWS_AS(bernstein_bound_check(u, ThresholdRule(0.3), 1.0, 0.5),
                    std::invalid_argument);
}

TEST_CASE("jackson and bernstein hold on random inputs with corner indices") {
  SplitMix64 rng(23);
  for (int i = 0; i < 10000; ++i) {
    const double beta = std::pow(10.0, rng.next_uniform(-3.0, 0.5));
    const auto u = random_sequence(rng, beta);
    const double q = rng.next_unit() < 0.25 ? 0.0 : rng.next_uniform(0.0, 3.0);
    const double t = std::max(1.0, q) + rng.next_uniform(0.0, 2.0);
    REQUIRE(jackson_bound_check(u, ThresholdRule(beta), q, t).holds);
    const double p = rng.next_unit() < 0.25 ? 0.0 : rng.next_uniform(0.0, q);
    REQUIRE(bernstein_bound_check(u, ThresholdRule(beta), std::min(p, q), q).holds);
  }
}
