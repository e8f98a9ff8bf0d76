#pragma once

// Brute-force ground truth for the coordinate solves and for whole small
// instances. Deliberately shares no minimization code with the main solver;
// being independent is its entire value. It may be orders of magnitude slower.

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>
#include <vector>

#include "seqreg/tikhonov.hpp"

namespace seqreg {

struct GridSpec {
  GridSpec(double lo_, double hi_, int points_)
      : lo(lo_), hi(hi_), points(points_) {
    if (!(std::isfinite(lo) && std::isfinite(hi) && lo < hi))
      throw std::invalid_argument("GridSpec: need finite lo < hi");
    if (points < 1000)
      throw std::invalid_argument("GridSpec: need points >= 1000");
  }
  double lo;
  double hi;
  int points;
};

/// Grid covering [min(0, v/w) - |v/w|, max(0, v/w) + |v/w|].
inline GridSpec oracle_grid_for(double v, double w, int points = 2001) {
  const double c = v / w;
  const double r = std::abs(c);
  if (r == 0.0) return GridSpec(-1.0, 1.0, points);
  return GridSpec(std::min(0.0, c) - r, std::max(0.0, c) + r, points);
}

/// Dense-grid minimizer of f(t) = |w t - v|^sigma + alpha*|t|^p.
/// Uniform grid over [lo, hi] unioned with a geometric ladder toward 0 (the
/// penalty has infinite slope at 0 for p < 1; uniform grids miss that layer),
/// plus an explicit 0, then one golden-section pass around the best point.
/// For p = 0 the answer is the exact two-candidate comparison.
inline double oracle_prox(double v, double w, double alpha, double p,
                          double sigma, const GridSpec& grid) {
  if (!(std::isfinite(v) && std::isfinite(w) && w > 0.0))
    throw std::invalid_argument("oracle_prox: need finite v and w > 0");
  if (!(alpha > 0.0 && p >= 0.0 && sigma > 0.0))
    throw std::invalid_argument("oracle_prox: need alpha > 0, p >= 0, sigma > 0");
  const double c = v / w;
  const double r = std::abs(c);
  if (!(grid.lo <= std::min(0.0, c) - r && grid.hi >= std::max(0.0, c) + r))
    throw std::invalid_argument("oracle_prox: grid does not cover the candidate range");

  if (p == 0.0) {
    if (v == 0.0) return 0.0;
    const double f0 = std::pow(std::abs(v), sigma);
    return f0 > alpha ? c : 0.0;  // f(v/w) = alpha exactly; ties go to 0
  }

  const auto f = [&](double t) {
    return std::pow(std::abs(w * t - v), sigma) + alpha * std::pow(std::abs(t), p);
  };

  std::vector<double> cand;
  cand.reserve(2 * static_cast<std::size_t>(grid.points) + 3);
  cand.push_back(0.0);
  for (int j = 0; j < grid.points; ++j)
    cand.push_back(grid.lo + (grid.hi - grid.lo) * j / (grid.points - 1));
  if (r > 0.0) {
    for (int j = 0; j < grid.points; ++j) {
      const double mag = r * std::pow(10.0, -14.0 * j / (grid.points - 1));
      cand.push_back(mag);
      cand.push_back(-mag);
    }
  }
  std::sort(cand.begin(), cand.end());

  std::size_t best = 0;
  double best_f = f(cand[0]);
  for (std::size_t j = 1; j < cand.size(); ++j) {
    const double fj = f(cand[j]);
    if (fj < best_f) {
      best_f = fj;
      best = j;
    }
  }
  double best_t = cand[best];

  // One golden-section pass inside the bracket of neighboring candidates.
  double a = best > 0 ? cand[best - 1] : cand[best];
  double b = best + 1 < cand.size() ? cand[best + 1] : cand[best];
  const double phi = 0.6180339887498949;
  double x1 = b - phi * (b - a), x2 = a + phi * (b - a);
  double f1 = f(x1), f2 = f(x2);
  for (int it = 0; it < 240 && (b - a) > 1e-14 * std::max(1.0, std::abs(best_t)); ++it) {
    if (f1 <= f2) {
      b = x2; x2 = x1; f2 = f1;
      x1 = b - phi * (b - a); f1 = f(x1);
    } else {
      a = x1; x1 = x2; f1 = f2;
      x2 = a + phi * (b - a); f2 = f(x2);
    }
    const double xb = f1 <= f2 ? x1 : x2;
    const double fb = std::min(f1, f2);
    if (fb < best_f) {
      best_f = fb;
      best_t = xb;
    }
  }
  return best_t;
}

/// Exhaustive-style minimization of the full functional for tiny instances
/// (n <= 8): coordinate-wise oracle_prox, valid by separability, evaluated
/// through tikhonov_value.
inline std::pair<TruncatedSequence, double> oracle_tikhonov(
    const RegProblem& problem, const RegConfig& config) {
  if (problem.op.size() > 8)
    throw std::invalid_argument("oracle_tikhonov: n must be <= 8");
  if (config.params.sigma() != problem.op.a())
    throw std::invalid_argument("oracle_tikhonov: requires sigma == a");
  std::vector<double> u(problem.op.size());
  for (std::size_t k = 0; k < u.size(); ++k) {
    const double v = problem.v_noisy[k];
    const double w = problem.op.weights()[k];
    u[k] = oracle_prox(v, w, config.alpha, config.params.p(),
                       config.params.sigma(), oracle_grid_for(v, w));
  }
  TruncatedSequence u_best(std::move(u));
  const double value = tikhonov_value(problem, u_best, config);
  return {std::move(u_best), value};
}

}  // namespace seqreg
