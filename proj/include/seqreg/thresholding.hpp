#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "seqreg/sequences.hpp"

namespace seqreg {

/// Hard-threshold level beta > 0.
class ThresholdRule {
 public:
  explicit ThresholdRule(double beta) : beta_(beta) {
    detail::require(std::isfinite(beta) && beta > 0.0,
                    "ThresholdRule: beta must be finite and > 0");
  }
  double beta() const { return beta_; }

 private:
  double beta_;
};

/// H_beta(u): keeps entries with |u_k| >= beta (boundary inclusive), zeroes
/// the rest. Truncation length unchanged.
inline TruncatedSequence hard_threshold(const TruncatedSequence& u,
                                        const ThresholdRule& rule) {
  std::vector<double> out(u.size());
  const double beta = rule.beta();
  for (std::size_t i = 0; i < u.size(); ++i)
    out[i] = (std::abs(u[i]) >= beta) ? u[i] : 0.0;
  return TruncatedSequence(std::move(out));
}

/// beta(alpha) = alpha^{a/N} with N = (a-q)*sigma + (q-p)*a.
/// Computed in log space; alpha spans many orders of magnitude across sweeps.
inline ThresholdRule beta_of_alpha(double alpha, const SpaceParams& params) {
  detail::require(std::isfinite(alpha) && alpha > 0.0,
                  "beta_of_alpha: alpha must be finite and > 0");
  return ThresholdRule(std::exp(params.a() / params.N() * std::log(alpha)));
}

/// Auxiliary element: the truth hard-thresholded at beta(alpha).
inline TruncatedSequence auxiliary_element(const TruncatedSequence& u_dagger,
                                           double alpha,
                                           const SpaceParams& params) {
  return hard_threshold(u_dagger, beta_of_alpha(alpha, params));
}

/// Approximation property ||H_beta(u) - u||_t^t <= R_q(u) * beta^{t-q}
/// for 0 <= q <= t, t >= 1 (q = 0 included).
inline BoundCheck jackson_bound_check(const TruncatedSequence& u,
                                      const ThresholdRule& rule, double q,
                                      double t) {
  detail::require(q >= 0.0 && q <= t && t >= 1.0,
                  "jackson_bound_check: need 0 <= q <= t and t >= 1");
  const double beta = rule.beta();
  double lhs = 0.0;  // sum over the discarded entries of |u_k|^t
  for (double x : u.entries()) {
    const double ax = std::abs(x);
    if (ax < beta) lhs += detail::pow_e(ax, t);
  }
  BoundCheck out;
  out.lhs = lhs;
  out.rhs = penalty_rp(u, q) * detail::pow_e(beta, t - q);
  out.holds = out.lhs <= out.rhs * (1.0 + kRelSlack);
  return out;
}

/// Inverse property R_p(H_beta(u)) <= R_q(u) * beta^{-(q-p)}
/// for 0 <= p <= q (p = 0 and q = 0 included).
inline BoundCheck bernstein_bound_check(const TruncatedSequence& u,
                                        const ThresholdRule& rule, double p,
                                        double q) {
  detail::require(p >= 0.0 && p <= q,
                  "bernstein_bound_check: need 0 <= p <= q");
  BoundCheck out;
  out.lhs = penalty_rp(hard_threshold(u, rule), p);
  out.rhs = penalty_rp(u, q) * detail::pow_e(rule.beta(), p - q);
  out.holds = out.lhs <= out.rhs * (1.0 + kRelSlack);
  return out;
}

}  // namespace seqreg
