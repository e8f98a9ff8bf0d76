#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace seqreg {

/// Relative slack used by every analytic-inequality check in the library.
/// Floating-point roundoff must not produce false violations.
inline constexpr double kRelSlack = 1e-10;

namespace detail {

/// pow with fast paths for the small exponents that dominate hot loops.
/// Callers pass x >= 0 whenever e is non-integral.
inline double pow_e(double x, double e) {
  if (e == 2.0) return x * x;
  if (e == 1.0) return x;
  if (e == 0.5) return std::sqrt(x);
  if (e == 3.0) return x * x * x;
  if (e == 4.0) {
    const double x2 = x * x;
    return x2 * x2;
  }
  if (e == 0.0) return 1.0;
  if (e == 3.5) return x * x * x * std::sqrt(x);
  if (e < 0.0) return 1.0 / pow_e(x, -e);
  return std::pow(x, e);
}

inline void require(bool cond, const char* msg) {
  if (!cond) throw std::invalid_argument(msg);
}

}  // namespace detail

/// Finite truncation of a real sequence (u_k)_{k>=1}: entries[k-1] holds u_k
/// for k <= n, and u_k = 0 for k > n. Immutable after construction.
class TruncatedSequence {
 public:
  explicit TruncatedSequence(std::vector<double> entries)
      : entries_(std::move(entries)) {
    detail::require(!entries_.empty(), "TruncatedSequence: length must be >= 1");
    for (double x : entries_) {
      detail::require(std::isfinite(x),
                      "TruncatedSequence: entries must be finite");
    }
  }

  static TruncatedSequence zeros(std::size_t n) {
    return TruncatedSequence(std::vector<double>(n, 0.0));
  }

  std::size_t size() const { return entries_.size(); }
  double operator[](std::size_t i) const { return entries_[i]; }
  const std::vector<double>& entries() const { return entries_; }

  bool operator==(const TruncatedSequence& other) const {
    return entries_ == other.entries_;
  }

 private:
  std::vector<double> entries_;
};

/// The index tuple (p, q, tau, a, sigma):
///   p     penalty index,          0 <= p
///   q     truth smoothness index, p <= q
///   tau   error-norm index,       q <= tau, 1 <= tau, p < tau
///   a     stability index,        tau < a
///   sigma misfit exponent,        sigma > 0
/// Derived exponents N, kappa, theta are exposed as accessors.
class SpaceParams {
 public:
  SpaceParams(double p, double q, double tau, double a, double sigma)
      : p_(p), q_(q), tau_(tau), a_(a), sigma_(sigma) {
    detail::require(std::isfinite(p) && std::isfinite(q) && std::isfinite(tau) &&
                        std::isfinite(a) && std::isfinite(sigma),
                    "SpaceParams: all indices must be finite");
    detail::require(p >= 0.0 && p <= q && q <= tau,
                    "SpaceParams: need 0 <= p <= q <= tau");
    detail::require(tau >= 1.0, "SpaceParams: need tau >= 1");
    detail::require(tau < a, "SpaceParams: need tau < a");
    detail::require(p < tau, "SpaceParams: need p < tau");
    detail::require(sigma > 0.0, "SpaceParams: need sigma > 0");
  }

  double p() const { return p_; }
  double q() const { return q_; }
  double tau() const { return tau_; }
  double a() const { return a_; }
  double sigma() const { return sigma_; }

  /// N = (a - q) * sigma + (q - p) * a, the balancing denominator of the
  /// threshold rule beta(alpha) = alpha^{a/N}. Always positive.
  double N() const { return (a_ - q_) * sigma_ + (q_ - p_) * a_; }

  /// kappa = (a - q) * sigma / N, in (0, 1].
  double kappa() const { return (a_ - q_) * sigma_ / N(); }

  /// theta = (a - tau) / (a - p), in (0, 1).
  double theta() const { return (a_ - tau_) / (a_ - p_); }

 private:
  double p_, q_, tau_, a_, sigma_;
};

/// Result of a two-sided inequality evaluation.
struct BoundCheck {
  double lhs = 0.0;
  double rhs = 0.0;
  bool holds = false;
};

/// ||u||_s for s > 0, and the nonzero count for s = 0.
/// Summation runs in ascending index order for bit-reproducibility.
inline double norm_s(const TruncatedSequence& u, double s) {
  detail::require(std::isfinite(s) && s >= 0.0, "norm_s: need finite s >= 0");
  if (s == 0.0) {
    std::size_t count = 0;
    for (double x : u.entries()) count += (x != 0.0);
    return static_cast<double>(count);
  }
  double acc = 0.0;
  for (double x : u.entries()) acc += detail::pow_e(std::abs(x), s);
  return detail::pow_e(acc, 1.0 / s);
}

/// R_p(u) = ||u||_p^p for p > 0, R_0(u) = ||u||_0.
inline double penalty_rp(const TruncatedSequence& u, double p) {
  detail::require(std::isfinite(p) && p >= 0.0, "penalty_rp: need finite p >= 0");
  if (p == 0.0) return norm_s(u, 0.0);
  double acc = 0.0;
  for (double x : u.entries()) acc += detail::pow_e(std::abs(x), p);
  return acc;
}

/// ||u - v||_s without materializing the difference. For s = 0 this counts
/// coordinates where the two sequences differ.
inline double distance_s(const TruncatedSequence& u, const TruncatedSequence& v,
                         double s) {
  detail::require(u.size() == v.size(), "distance_s: length mismatch");
  detail::require(std::isfinite(s) && s >= 0.0, "distance_s: need finite s >= 0");
  if (s == 0.0) {
    std::size_t count = 0;
    for (std::size_t i = 0; i < u.size(); ++i) count += (u[i] != v[i]);
    return static_cast<double>(count);
  }
  double acc = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i)
    acc += detail::pow_e(std::abs(u[i] - v[i]), s);
  return detail::pow_e(acc, 1.0 / s);
}

/// Evaluates both sides of ||u||_tau^tau <= R_p(u)^theta * ||u||_a^{a(1-theta)}
/// with theta = (a - tau)/(a - p). holds allows relative slack kRelSlack.
inline BoundCheck check_interpolation(const TruncatedSequence& u,
                                      const SpaceParams& params) {
  const double theta = params.theta();
  if (!(theta > 0.0 && theta < 1.0))
    throw std::domain_error("check_interpolation: degenerate parameters (need p < tau < a)");
  double sum_tau = 0.0, sum_a = 0.0;
  for (double x : u.entries()) {
    const double ax = std::abs(x);
    sum_tau += detail::pow_e(ax, params.tau());
    sum_a += detail::pow_e(ax, params.a());
  }
  const double rp = penalty_rp(u, params.p());
  BoundCheck out;
  out.lhs = sum_tau;
  // ||u||_a^{a(1-theta)} = (sum |u_k|^a)^{1-theta}
  out.rhs = std::pow(rp, theta) * std::pow(sum_a, 1.0 - theta);
  out.holds = out.lhs <= out.rhs * (1.0 + kRelSlack);
  return out;
}

enum class ProbeOutcome {
  kHolds,          // hypotheses converged and so did ||u_n - u||_p
  kFails,          // hypotheses converged but the p-distance did not
  kNotApplicable,  // hypotheses not satisfied by the given family
};

namespace detail {

/// Finite-family convergence probe: the last-quarter values must all lie
/// below 10x the final value, and the final value below tol.
inline bool family_converges(const std::vector<double>& vals, double tol) {
  const std::size_t m = vals.size();
  const double last = vals[m - 1];
  if (!(last <= tol)) return false;
  for (std::size_t i = (3 * m) / 4; i < m; ++i) {
    if (!(vals[i] <= 10.0 * last)) return false;
  }
  return true;
}

}  // namespace detail

/// Probes the Radon-Riesz property along a finite family: if u_n -> u
/// componentwise and ||u_n||_p -> ||u||_p, then ||u_n - u||_p -> 0.
/// A sanity probe of an asymptotic statement, not a proof.
inline ProbeOutcome radon_riesz_probe(const std::vector<TruncatedSequence>& family,
                                      const TruncatedSequence& u, double p,
                                      double tol = 1e-6) {
  detail::require(!family.empty(), "radon_riesz_probe: empty family");
  detail::require(std::isfinite(p) && p > 0.0, "radon_riesz_probe: need p > 0");
  detail::require(tol > 0.0, "radon_riesz_probe: need tol > 0");
  for (const auto& f : family)
    detail::require(f.size() == u.size(),
                    "radon_riesz_probe: family members must share the truncation length");

  std::vector<double> comp, gap, dist;
  comp.reserve(family.size());
  gap.reserve(family.size());
  dist.reserve(family.size());
  const double up = norm_s(u, p);
  for (const auto& f : family) {
    double m = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i)
      m = std::max(m, std::abs(f[i] - u[i]));
    comp.push_back(m);
    gap.push_back(std::abs(norm_s(f, p) - up));
    dist.push_back(distance_s(f, u, p));
  }
  const bool applicable =
      detail::family_converges(comp, tol) && detail::family_converges(gap, tol);
  if (!applicable) return ProbeOutcome::kNotApplicable;
  return detail::family_converges(dist, tol) ? ProbeOutcome::kHolds
                                             : ProbeOutcome::kFails;
}

}  // namespace seqreg
