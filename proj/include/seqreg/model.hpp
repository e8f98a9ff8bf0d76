#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "seqreg/jsonio.hpp"
#include "seqreg/random.hpp"
#include "seqreg/sequences.hpp"

namespace seqreg {

/// Diagonal forward map A: (A u)_k = w_k * u_k, with the image space realized
/// as the a-indexed sequence space, ||A u||_V = ||(w_k u_k)_k||_a. With
/// 0 < d1 <= w_k <= d2 the two-sided estimate
///   d1 ||u||_a <= ||A u||_V <= d2 ||u||_a
/// holds exactly, with d1 = min_k w_k and d2 = max_k w_k.
class DiagonalOperator {
 public:
  DiagonalOperator(std::vector<double> weights, double a)
      : weights_(std::move(weights)), a_(a) {
    detail::require(!weights_.empty(), "DiagonalOperator: empty weights");
    detail::require(std::isfinite(a) && a >= 1.0,
                    "DiagonalOperator: need finite a >= 1");
    d1_ = std::numeric_limits<double>::infinity();
    d2_ = 0.0;
    for (double w : weights_) {
      detail::require(std::isfinite(w) && w > 0.0,
                      "DiagonalOperator: weights must be finite and > 0");
      d1_ = std::min(d1_, w);
      d2_ = std::max(d2_, w);
    }
  }

  std::size_t size() const { return weights_.size(); }
  const std::vector<double>& weights() const { return weights_; }
  double a() const { return a_; }
  double d1() const { return d1_; }
  double d2() const { return d2_; }

 private:
  std::vector<double> weights_;
  double a_;
  double d1_, d2_;
};

inline TruncatedSequence apply_operator(const DiagonalOperator& op,
                                        const TruncatedSequence& u) {
  detail::require(op.size() == u.size(), "apply_operator: length mismatch");
  std::vector<double> out(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) out[i] = op.weights()[i] * u[i];
  return TruncatedSequence(std::move(out));
}

/// Seeded operator weights, uniform in [1, 2]. Keeps d2/d1 moderate so the
/// stability constants do not pollute rate fits.
inline DiagonalOperator gen_operator(std::size_t n, double a,
                                     std::uint64_t seed) {
  detail::require(n >= 1, "gen_operator: need n >= 1");
  SplitMix64 rng(mix_seed(seed, 0x77656967687473ULL));  // "weights"
  std::vector<double> w(n);
  for (double& x : w) x = rng.next_uniform(1.0, 2.0);
  return DiagonalOperator(std::move(w), a);
}

enum class TruthKind { kPowerDecay, kSparse, kMixed };

inline const char* truth_kind_name(TruthKind k) {
  switch (k) {
    case TruthKind::kPowerDecay: return "power-decay";
    case TruthKind::kSparse: return "sparse";
    case TruthKind::kMixed: return "mixed";
  }
  throw std::logic_error("truth_kind_name: bad enum");
}

inline TruthKind truth_kind_from_name(const std::string& s) {
  if (s == "power-decay") return TruthKind::kPowerDecay;
  if (s == "sparse") return TruthKind::kSparse;
  if (s == "mixed") return TruthKind::kMixed;
  throw std::invalid_argument("unknown truth kind '" + s + "'");
}

namespace detail {

inline std::vector<std::size_t> sample_positions(std::size_t n, std::size_t s,
                                                 SplitMix64& rng) {
  // Partial Fisher-Yates over [0, n).
  std::vector<std::size_t> idx(n);
  for (std::size_t i = 0; i < n; ++i) idx[i] = i;
  for (std::size_t i = 0; i < s; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(rng.next_below(n - i));
    std::swap(idx[i], idx[j]);
  }
  idx.resize(s);
  return idx;
}

}  // namespace detail

/// Synthetic true solutions:
///   power-decay  u_k = k^{-(1/q + decay_margin)}  (in the q-space; for small
///                margin barely so)
///   sparse       exactly `sparsity` nonzeros at seeded positions, values in
///                [0.5, 2] (models q = 0)
///   mixed        power-decay tail with `sparsity` seeded spike overwrites
inline TruncatedSequence gen_truth(TruthKind kind, std::size_t n,
                                   const SpaceParams& params,
                                   double decay_margin, std::uint64_t seed,
                                   std::size_t sparsity = 10) {
  detail::require(n >= 1, "gen_truth: need n >= 1");
  SplitMix64 rng(mix_seed(seed, 0x747275746822ULL));  // "truth"
  std::vector<double> u(n, 0.0);
  if (kind == TruthKind::kPowerDecay || kind == TruthKind::kMixed) {
    detail::require(params.q() > 0.0,
                    "gen_truth: power-decay requires q > 0");
    detail::require(std::isfinite(decay_margin) && decay_margin > 0.0,
                    "gen_truth: need decay_margin > 0");
    const double e = 1.0 / params.q() + decay_margin;
    for (std::size_t k = 0; k < n; ++k)
      u[k] = std::pow(static_cast<double>(k + 1), -e);
  }
  if (kind == TruthKind::kSparse || kind == TruthKind::kMixed) {
    detail::require(sparsity >= 1 && sparsity <= n,
                    "gen_truth: need 1 <= sparsity <= n");
    const auto pos = detail::sample_positions(n, sparsity, rng);
    for (std::size_t j : pos) u[j] = rng.next_uniform(0.5, 2.0);
  }
  return TruncatedSequence(std::move(u));
}

/// Noise calibrated to exact level: v^delta = v + delta * eta / ||eta||_a with
/// eta seeded i.i.d. standard normal, hence ||v^delta - v||_a = delta up to
/// roundoff. Rate plots need the actual noise level, not an upper bound.
inline TruncatedSequence gen_noise(const TruncatedSequence& v_clean,
                                   double delta, double a,
                                   std::uint64_t seed) {
  detail::require(std::isfinite(delta) && delta > 0.0,
                  "gen_noise: need delta > 0");
  detail::require(std::isfinite(a) && a >= 1.0, "gen_noise: need a >= 1");
  const std::size_t n = v_clean.size();
  std::vector<double> eta(n);
  double z = 0.0;
  for (int attempt = 0; attempt < 64 && z == 0.0; ++attempt) {
    SplitMix64 rng(mix_seed(seed + static_cast<std::uint64_t>(attempt),
                            0x6e6f697365ULL));  // "noise"
    double acc = 0.0;
    for (double& x : eta) {
      x = rng.next_normal();
      acc += detail::pow_e(std::abs(x), a);
    }
    z = detail::pow_e(acc, 1.0 / a);
  }
  if (z == 0.0) throw std::runtime_error("gen_noise: degenerate noise draw");
  std::vector<double> out(n);
  const double scale = delta / z;
  for (std::size_t i = 0; i < n; ++i) out[i] = v_clean[i] + scale * eta[i];
  return TruncatedSequence(std::move(out));
}

/// A problem instance: truth, clean data v = A u^dagger, noisy data v^delta
/// with ||v^delta - v||_V = delta, and the seed that produced the noise.
struct RegProblem {
  DiagonalOperator op;
  TruncatedSequence u_dagger;
  TruncatedSequence v_clean;
  TruncatedSequence v_noisy;
  double delta;
  std::uint64_t seed;
};

inline RegProblem make_problem(DiagonalOperator op, TruncatedSequence u_dagger,
                               double delta, std::uint64_t noise_seed) {
  detail::require(op.size() == u_dagger.size(), "make_problem: length mismatch");
  TruncatedSequence v_clean = apply_operator(op, u_dagger);
  TruncatedSequence v_noisy = gen_noise(v_clean, delta, op.a(), noise_seed);
  // Tripwire. Recomputing through v_noisy - v_clean loses bits when
  // delta << |v_k|, so the cancellation term enters the tolerance.
  const double realized = distance_s(v_noisy, v_clean, op.a());
  const double tol = 1e-11 * delta + 32.0 * std::numeric_limits<double>::epsilon() *
                                         norm_s(v_clean, op.a());
  if (!(std::abs(realized - delta) <= tol))
    throw std::logic_error("make_problem: noise calibration drifted");
  return RegProblem{std::move(op), std::move(u_dagger), std::move(v_clean),
                    std::move(v_noisy), delta, noise_seed};
}

/// Increment the truncated tail of the truth would contribute to ||u||_tau:
/// zero for sparse truths, and for power decay the analytic bound
///   (S_n + integral tail)^{1/tau} - S_n^{1/tau}.
/// Infinite when the tail is not tau-summable.
inline double truth_tail_norm_increment(TruthKind kind, const SpaceParams& params,
                                        double decay_margin, std::size_t n) {
  if (kind == TruthKind::kSparse) return 0.0;
  detail::require(params.q() > 0.0 && decay_margin > 0.0,
                  "truth_tail_norm_increment: power tail needs q > 0, margin > 0");
  const double e = 1.0 / params.q() + decay_margin;
  const double s = e * params.tau();
  if (s <= 1.0) return std::numeric_limits<double>::infinity();
  double head = 0.0;
  for (std::size_t k = 0; k < n; ++k)
    head += std::pow(static_cast<double>(k + 1), -s);
  const double tail = std::pow(static_cast<double>(n), 1.0 - s) / (s - 1.0);
  return std::pow(head + tail, 1.0 / params.tau()) -
         std::pow(head, 1.0 / params.tau());
}

// --- serialization ---------------------------------------------------------

namespace detail {

inline void write_params(jsonio::Writer& w, const SpaceParams& p) {
  w.field("p", p.p());
  w.field("q", p.q());
  w.field("tau", p.tau());
  w.field("a", p.a());
  w.field("sigma", p.sigma());
}

inline SpaceParams read_params(const nlohmann::json& j) {
  jsonio::reject_unknown_fields(j, {"p", "q", "tau", "a", "sigma"}, "params");
  for (const char* k : {"p", "q", "tau", "a", "sigma"})
    if (!j.contains(k))
      throw std::invalid_argument(std::string("params: missing field '") + k + "'");
  return SpaceParams(j.at("p").get<double>(), j.at("q").get<double>(),
                     j.at("tau").get<double>(), j.at("a").get<double>(),
                     j.at("sigma").get<double>());
}

inline std::vector<double> read_real_array(const nlohmann::json& j,
                                           const char* where) {
  if (!j.is_array() || j.empty())
    throw std::invalid_argument(std::string(where) + ": expected a nonempty array");
  std::vector<double> out;
  out.reserve(j.size());
  for (const auto& x : j) out.push_back(jsonio::as_double(x, where));
  return out;
}

}  // namespace detail

/// Problem instance as structured text. Reals use decimal form with 17
/// significant digits, so the round trip is bit-exact. v_clean is not stored;
/// it is recomputed from weights and u_dagger on load.
inline std::string problem_to_json(const RegProblem& problem,
                                   const SpaceParams& params) {
  jsonio::Writer w;
  w.begin_object();
  w.field("weights", problem.op.weights());
  w.field("u_dagger", problem.u_dagger.entries());
  w.field("v_noisy", problem.v_noisy.entries());
  w.field("delta", problem.delta);
  w.field("seed", problem.seed);
  w.begin_object_field("params");
  detail::write_params(w, params);
  w.end_object();
  w.end_object();
  return w.str();
}

inline std::pair<RegProblem, SpaceParams> problem_from_json(
    const std::string& text) {
  const auto j = jsonio::parse(text, "problem");
  jsonio::reject_unknown_fields(
      j, {"weights", "u_dagger", "v_noisy", "delta", "seed", "params"},
      "problem");
  for (const char* k : {"weights", "u_dagger", "v_noisy", "delta", "seed", "params"})
    if (!j.contains(k))
      throw std::invalid_argument(std::string("problem: missing field '") + k + "'");
  const SpaceParams params = detail::read_params(j.at("params"));
  DiagonalOperator op(detail::read_real_array(j.at("weights"), "weights"),
                      params.a());
  TruncatedSequence u_dagger(detail::read_real_array(j.at("u_dagger"), "u_dagger"));
  TruncatedSequence v_noisy(detail::read_real_array(j.at("v_noisy"), "v_noisy"));
  const double delta = j.at("delta").get<double>();
  detail::require(std::isfinite(delta) && delta > 0.0, "problem: need delta > 0");
  detail::require(op.size() == u_dagger.size() && op.size() == v_noisy.size(),
                  "problem: length mismatch");
  TruncatedSequence v_clean = apply_operator(op, u_dagger);
  if (!(distance_s(v_noisy, v_clean, op.a()) <= delta * (1.0 + 1e-9)))
    throw std::invalid_argument("problem: noise level exceeds declared delta");
  RegProblem problem{std::move(op), std::move(u_dagger), std::move(v_clean),
                     std::move(v_noisy), delta, j.at("seed").get<std::uint64_t>()};
  return {std::move(problem), params};
}

}  // namespace seqreg
