#pragma once

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <exception>
#include <filesystem>
#include <fstream>
#include <limits>
#include <mutex>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "seqreg/jsonio.hpp"
#include "seqreg/model.hpp"
#include "seqreg/oracle.hpp"
#include "seqreg/tikhonov.hpp"

namespace seqreg {

// --- slope fitting ----------------------------------------------------------

struct SlopeFit {
  double slope;
  double intercept;  // of ln y at ln x = 0
  double r2;
};

/// Ordinary least squares on (ln x, ln y). All inputs must be positive.
inline SlopeFit fit_slope(const std::vector<double>& xs,
                          const std::vector<double>& ys) {
  detail::require(xs.size() == ys.size(), "fit_slope: size mismatch");
  detail::require(xs.size() >= 3, "fit_slope: need at least 3 points");
  for (std::size_t i = 0; i < xs.size(); ++i) {
    detail::require(std::isfinite(xs[i]) && xs[i] > 0.0 &&
                        std::isfinite(ys[i]) && ys[i] > 0.0,
                    "fit_slope: values must be positive and finite");
  }
  const std::size_t m = xs.size();
  std::vector<double> lx(m), ly(m);
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    lx[i] = std::log(xs[i]);
    ly[i] = std::log(ys[i]);
    mx += lx[i];
    my += ly[i];
  }
  mx /= static_cast<double>(m);
  my /= static_cast<double>(m);
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ly[i] - my);
    syy += (ly[i] - my) * (ly[i] - my);
  }
  detail::require(sxx > 0.0, "fit_slope: abscissae must not be all equal");
  SlopeFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  if (syy == 0.0) {
    fit.r2 = 1.0;
  } else {
    double sse = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      const double e = ly[i] - (fit.intercept + fit.slope * lx[i]);
      sse += e * e;
    }
    fit.r2 = 1.0 - sse / syy;
  }
  return fit;
}

// --- sweep configuration ----------------------------------------------------

struct SweepConfig {
  SpaceParams params;
  TruthKind truth_kind;
  std::size_t n;
  std::vector<double> deltas;  // strictly decreasing, all in (0, 1]
  int trials_per_delta;
  std::uint64_t seed;
  bool post_process;
  double decay_margin = 0.5;   // power-decay / mixed truths
  std::size_t sparsity = 10;   // sparse / mixed truths
  int solver_grid = 256;
  double tol_1d = 1e-11;
};

/// Geometric grid of count noise levels from hi down to lo.
inline std::vector<double> make_geometric_deltas(double hi, double lo,
                                                 int count = 8) {
  detail::require(count >= 2 && lo > 0.0 && lo < hi,
                  "make_geometric_deltas: need count >= 2 and 0 < lo < hi");
  std::vector<double> d(count);
  for (int i = 0; i < count; ++i)
    d[i] = hi * std::exp(std::log(lo / hi) * i / (count - 1));
  d.front() = hi;
  d.back() = lo;
  return d;
}

inline void validate_sweep_config(const SweepConfig& cfg) {
  detail::require(cfg.n >= 1, "SweepConfig: need n >= 1");
  detail::require(cfg.trials_per_delta >= 1,
                  "SweepConfig: need trials_per_delta >= 1");
  detail::require(!cfg.deltas.empty(), "SweepConfig: deltas must be nonempty");
  for (std::size_t i = 0; i < cfg.deltas.size(); ++i) {
    const double d = cfg.deltas[i];
    detail::require(std::isfinite(d) && d > 0.0 && d <= 1.0,
                    "SweepConfig: deltas must lie in (0, 1]");
    if (i > 0)
      detail::require(d < cfg.deltas[i - 1],
                      "SweepConfig: deltas must be strictly decreasing");
  }
  detail::require(cfg.solver_grid >= 64, "SweepConfig: solver_grid >= 64");
  detail::require(cfg.tol_1d > 0.0, "SweepConfig: tol_1d > 0");
}

/// Operator and truth shared by every cell of a sweep. Construction enforces
/// the tail-domination rule: the truncated tail of the truth must contribute
/// less than 1e-2 * (smallest delta) to ||u^dagger||_tau, so truncation error
/// stays dominated by noise.
struct SweepInputs {
  DiagonalOperator op;
  TruncatedSequence u_dagger;
  TruncatedSequence v_clean;
};

inline SweepInputs prepare_sweep_inputs(const SweepConfig& cfg) {
  validate_sweep_config(cfg);
  const double tail = truth_tail_norm_increment(cfg.truth_kind, cfg.params,
                                                cfg.decay_margin, cfg.n);
  const double budget = 1e-2 * cfg.deltas.back();
  if (!(tail < budget)) {
    std::ostringstream msg;
    msg << "SweepConfig: truncation n=" << cfg.n
        << " fails the tail rule: tail contributes " << tail
        << " to the tau-norm, budget " << budget;
    throw std::invalid_argument(msg.str());
  }
  DiagonalOperator op = gen_operator(cfg.n, cfg.params.a(), cfg.seed);
  TruncatedSequence u_dagger = gen_truth(cfg.truth_kind, cfg.n, cfg.params,
                                         cfg.decay_margin, cfg.seed,
                                         cfg.sparsity);
  TruncatedSequence v_clean = apply_operator(op, u_dagger);
  return SweepInputs{std::move(op), std::move(u_dagger), std::move(v_clean)};
}

// --- sweep execution --------------------------------------------------------

struct SweepRow {
  double delta;
  double alpha;
  double err_tau;       // ||u_alpha^delta - u^dagger||_tau
  double err_a;         // same in the weaker a-norm
  double penalty_rp;    // R_p(u_alpha^delta)
  double support_size;  // ||u_alpha^delta||_0 (median over trials)
  double post_err_tau;  // after hard-threshold post-processing (NaN if off)
  double post_support;
};

struct SweepReport {
  std::vector<SweepRow> rows;
  double slope_err_tau;
  double slope_penalty;
  double slope_post_err;
  double slope_post_support;
  double gamma1;
  double gamma2;
  std::uint64_t seed;
  std::size_t n;
  SpaceParams params;
  std::string truth_kind;
  double decay_margin;
  std::uint64_t sparsity;
  int trials_per_delta;
  bool post_process;
  std::string note;
  double wall_time_sec = 0.0;  // diagnostic only; never serialized
};

/// One (delta, trial) unit of work. The noise stream is a pure function of
/// (seed, delta_index, trial), so cells can run in any order or thread.
struct CellResult {
  RegSolution solution;
  SweepRow row;
};

inline CellResult run_sweep_cell(const SweepInputs& inputs,
                                 const SweepConfig& cfg,
                                 std::size_t delta_index, int trial) {
  const double delta = cfg.deltas.at(delta_index);
  const std::uint64_t noise_seed =
      mix_seed(cfg.seed, 0x63656c6cULL + delta_index,
               0x7472ULL + static_cast<std::uint64_t>(trial));
  RegProblem problem =
      make_problem(inputs.op, inputs.u_dagger, delta, noise_seed);
  const double alpha = alpha_apriori(delta, cfg.params);
  const RegConfig rcfg(cfg.params, alpha, cfg.solver_grid, cfg.tol_1d);
  RegSolution sol = solve(problem, rcfg);

  SweepRow row;
  row.delta = delta;
  row.alpha = alpha;
  row.err_tau = distance_s(sol.u_reg, inputs.u_dagger, cfg.params.tau());
  row.err_a = distance_s(sol.u_reg, inputs.u_dagger, cfg.params.a());
  row.penalty_rp = penalty_rp(sol.u_reg, cfg.params.p());
  row.support_size = static_cast<double>(sol.support_size);
  if (cfg.post_process) {
    const TruncatedSequence post = post_process(sol.u_reg, delta, cfg.params);
    row.post_err_tau = distance_s(post, inputs.u_dagger, cfg.params.tau());
    row.post_support = norm_s(post, 0.0);
  } else {
    row.post_err_tau = std::numeric_limits<double>::quiet_NaN();
    row.post_support = std::numeric_limits<double>::quiet_NaN();
  }
  return CellResult{std::move(sol), row};
}

namespace detail {

inline double median_of(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t m = v.size();
  return (m % 2 == 1) ? v[m / 2] : 0.5 * (v[m / 2 - 1] + v[m / 2]);
}

inline double slope_or_nan(const std::vector<double>& xs,
                           const std::vector<double>& ys) {
  if (xs.size() < 3) return std::numeric_limits<double>::quiet_NaN();
  for (double y : ys) {
    if (!(std::isfinite(y) && y > 0.0))
      return std::numeric_limits<double>::quiet_NaN();
  }
  return fit_slope(xs, ys).slope;
}

}  // namespace detail

/// Runs the delta-sweep: for each noise level, solves trials_per_delta seeded
/// instances under the a priori rule, aggregates rows by median, and fits
/// log-log slopes. The report is identical for any thread count: cells write
/// into preassigned slots and assembly runs in fixed (delta, trial) order.
inline SweepReport run_sweep(const SweepConfig& cfg, int threads = 1) {
  const auto t_start = std::chrono::steady_clock::now();
  const SweepInputs inputs = prepare_sweep_inputs(cfg);
  const std::size_t nd = cfg.deltas.size();
  const std::size_t trials = static_cast<std::size_t>(cfg.trials_per_delta);
  const std::size_t cells = nd * trials;

  std::vector<SweepRow> cell_rows(cells);
  std::exception_ptr first_error = nullptr;
  std::mutex error_mutex;

  const auto run_cell = [&](std::size_t idx) {
    const std::size_t i = idx / trials;
    const int t = static_cast<int>(idx % trials);
    try {
      cell_rows[idx] = run_sweep_cell(inputs, cfg, i, t).row;
    } catch (...) {
      std::lock_guard<std::mutex> lock(error_mutex);
      if (!first_error) {
        try {
          std::throw_with_nested(std::runtime_error(
              "run_sweep: cell failed at delta index " + std::to_string(i) +
              ", trial " + std::to_string(t)));
        } catch (...) {
          first_error = std::current_exception();
        }
      }
    }
  };

  const std::size_t workers =
      std::min<std::size_t>(threads > 1 ? static_cast<std::size_t>(threads) : 1,
                            cells);
  if (workers <= 1) {
    for (std::size_t idx = 0; idx < cells; ++idx) run_cell(idx);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t wkr = 0; wkr < workers; ++wkr) {
      pool.emplace_back([&] {
        for (;;) {
          const std::size_t idx = next.fetch_add(1);
          if (idx >= cells) return;
          run_cell(idx);
        }
      });
    }
    for (auto& th : pool) th.join();
  }
  if (first_error) std::rethrow_exception(first_error);

  SweepReport report{{},
                     0, 0, 0, 0,
                     0, 0,
                     cfg.seed,
                     cfg.n,
                     cfg.params,
                     truth_kind_name(cfg.truth_kind),
                     cfg.decay_margin,
                     cfg.sparsity,
                     cfg.trials_per_delta,
                     cfg.post_process,
                     "finite truncation of the sequence-space scheme: diagonal "
                     "operator and data restricted to the first n coordinates"};
  report.rows.resize(nd);
  const auto median_field = [&](std::size_t i, double SweepRow::*field) {
    std::vector<double> vals(trials);
    for (std::size_t t = 0; t < trials; ++t)
      vals[t] = cell_rows[i * trials + t].*field;
    return detail::median_of(std::move(vals));
  };
  for (std::size_t i = 0; i < nd; ++i) {
    SweepRow& row = report.rows[i];
    row.delta = cfg.deltas[i];
    row.alpha = cell_rows[i * trials].alpha;
    row.err_tau = median_field(i, &SweepRow::err_tau);
    row.err_a = median_field(i, &SweepRow::err_a);
    row.penalty_rp = median_field(i, &SweepRow::penalty_rp);
    row.support_size = median_field(i, &SweepRow::support_size);
    if (cfg.post_process) {
      row.post_err_tau = median_field(i, &SweepRow::post_err_tau);
      row.post_support = median_field(i, &SweepRow::post_support);
    } else {
      row.post_err_tau = std::numeric_limits<double>::quiet_NaN();
      row.post_support = std::numeric_limits<double>::quiet_NaN();
    }
  }

  std::vector<double> ds(nd), col(nd);
  for (std::size_t i = 0; i < nd; ++i) ds[i] = report.rows[i].delta;
  const auto column_slope = [&](double SweepRow::*field) {
    for (std::size_t i = 0; i < nd; ++i) col[i] = report.rows[i].*field;
    return detail::slope_or_nan(ds, col);
  };
  report.slope_err_tau = column_slope(&SweepRow::err_tau);
  report.slope_penalty = column_slope(&SweepRow::penalty_rp);
  report.slope_post_err = column_slope(&SweepRow::post_err_tau);
  report.slope_post_support = column_slope(&SweepRow::post_support);
  const GammaRates rates = gamma_rates(cfg.params);
  report.gamma1 = rates.gamma1;
  report.gamma2 = rates.gamma2;
  report.wall_time_sec =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start)
          .count();
  return report;
}

// --- report serialization ---------------------------------------------------

enum class ReportFormat { kJson, kCsv };

inline ReportFormat report_format_from_name(const std::string& s) {
  if (s == "json") return ReportFormat::kJson;
  if (s == "csv") return ReportFormat::kCsv;
  throw std::invalid_argument("report format must be 'csv' or 'json'");
}

inline std::string report_to_json(const SweepReport& r) {
  jsonio::Writer w;
  w.begin_object();
  w.begin_array("rows");
  for (const SweepRow& row : r.rows) {
    w.element_object();
    w.field("delta", row.delta);
    w.field("alpha", row.alpha);
    w.field("err_tau", row.err_tau);
    w.field("err_a", row.err_a);
    w.field("penalty_rp", row.penalty_rp);
    w.field("support_size", row.support_size);
    w.field("post_err_tau", row.post_err_tau);
    w.field("post_support", row.post_support);
    w.end_object();
  }
  w.end_array();
  w.begin_object_field("slopes");
  w.field("slope_err_tau", r.slope_err_tau);
  w.field("slope_penalty", r.slope_penalty);
  w.field("slope_post_err", r.slope_post_err);
  w.field("slope_post_support", r.slope_post_support);
  w.end_object();
  w.begin_object_field("predicted");
  w.field("gamma1", r.gamma1);
  w.field("gamma2", r.gamma2);
  w.end_object();
  w.begin_object_field("metadata");
  w.field("seed", r.seed);
  w.field("n", static_cast<std::uint64_t>(r.n));
  w.begin_object_field("params");
  detail::write_params(w, r.params);
  w.end_object();
  w.field("truth_kind", r.truth_kind);
  w.field("decay_margin", r.decay_margin);
  w.field("sparsity", r.sparsity);
  w.field("trials_per_delta", r.trials_per_delta);
  w.field("post_process", r.post_process);
  w.field("note", r.note);
  w.end_object();
  w.end_object();
  return w.str();
}

inline SweepReport report_from_json(const std::string& text) {
  const auto j = jsonio::parse(text, "report");
  jsonio::reject_unknown_fields(j, {"rows", "slopes", "predicted", "metadata"},
                                "report");
  const auto& meta = j.at("metadata");
  jsonio::reject_unknown_fields(meta,
                                {"seed", "n", "params", "truth_kind",
                                 "decay_margin", "sparsity", "trials_per_delta",
                                 "post_process", "note"},
                                "report.metadata");
  SweepReport r{{},
                0, 0, 0, 0,
                0, 0,
                meta.at("seed").get<std::uint64_t>(),
                meta.at("n").get<std::size_t>(),
                detail::read_params(meta.at("params")),
                meta.at("truth_kind").get<std::string>(),
                jsonio::as_double(meta.at("decay_margin"), "decay_margin"),
                meta.at("sparsity").get<std::uint64_t>(),
                meta.at("trials_per_delta").get<int>(),
                meta.at("post_process").get<bool>(),
                meta.at("note").get<std::string>()};
  for (const auto& jr : j.at("rows")) {
    jsonio::reject_unknown_fields(jr,
                                  {"delta", "alpha", "err_tau", "err_a",
                                   "penalty_rp", "support_size", "post_err_tau",
                                   "post_support"},
                                  "report.rows");
    SweepRow row;
    row.delta = jsonio::as_double(jr.at("delta"), "delta");
    row.alpha = jsonio::as_double(jr.at("alpha"), "alpha");
    row.err_tau = jsonio::as_double(jr.at("err_tau"), "err_tau");
    row.err_a = jsonio::as_double(jr.at("err_a"), "err_a");
    row.penalty_rp = jsonio::as_double(jr.at("penalty_rp"), "penalty_rp");
    row.support_size = jsonio::as_double(jr.at("support_size"), "support_size");
    row.post_err_tau = jsonio::as_double(jr.at("post_err_tau"), "post_err_tau");
    row.post_support = jsonio::as_double(jr.at("post_support"), "post_support");
    r.rows.push_back(row);
  }
  const auto& sl = j.at("slopes");
  jsonio::reject_unknown_fields(sl,
                                {"slope_err_tau", "slope_penalty",
                                 "slope_post_err", "slope_post_support"},
                                "report.slopes");
  r.slope_err_tau = jsonio::as_double(sl.at("slope_err_tau"), "slope_err_tau");
  r.slope_penalty = jsonio::as_double(sl.at("slope_penalty"), "slope_penalty");
  r.slope_post_err = jsonio::as_double(sl.at("slope_post_err"), "slope_post_err");
  r.slope_post_support =
      jsonio::as_double(sl.at("slope_post_support"), "slope_post_support");
  const auto& pred = j.at("predicted");
  jsonio::reject_unknown_fields(pred, {"gamma1", "gamma2"}, "report.predicted");
  r.gamma1 = jsonio::as_double(pred.at("gamma1"), "gamma1");
  r.gamma2 = jsonio::as_double(pred.at("gamma2"), "gamma2");
  return r;
}

inline std::string report_to_csv(const SweepReport& r) {
  const auto num = [](double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return std::string(buf);
  };
  std::string out =
      "delta,alpha,err_tau,err_a,penalty_rp,support_size,post_err_tau,post_support\n";
  for (const SweepRow& row : r.rows) {
    out += num(row.delta) + "," + num(row.alpha) + "," + num(row.err_tau) + "," +
           num(row.err_a) + "," + num(row.penalty_rp) + "," +
           num(row.support_size) + "," + num(row.post_err_tau) + "," +
           num(row.post_support) + "\n";
  }
  out += "# slope_err_tau=" + num(r.slope_err_tau) + "\n";
  out += "# slope_penalty=" + num(r.slope_penalty) + "\n";
  out += "# slope_post_err=" + num(r.slope_post_err) + "\n";
  out += "# slope_post_support=" + num(r.slope_post_support) + "\n";
  out += "# gamma1=" + num(r.gamma1) + "\n";
  out += "# gamma2=" + num(r.gamma2) + "\n";
  out += "# seed=" + std::to_string(r.seed) + "\n";
  out += "# n=" + std::to_string(r.n) + "\n";
  out += "# truth_kind=" + r.truth_kind + "\n";
  return out;
}

inline void emit_report(const SweepReport& report, ReportFormat format,
                        const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out)
    throw std::runtime_error("emit_report: cannot open '" + path.string() + "'");
  out << (format == ReportFormat::kJson ? report_to_json(report)
                                        : report_to_csv(report));
  if (!out) throw std::runtime_error("emit_report: write failed");
}

// --- sweep config serialization ----------------------------------------------

inline std::string sweep_config_to_json(const SweepConfig& cfg) {
  jsonio::Writer w;
  w.begin_object();
  w.begin_object_field("params");
  detail::write_params(w, cfg.params);
  w.end_object();
  w.field("truth_kind", std::string(truth_kind_name(cfg.truth_kind)));
  w.field("n", static_cast<std::uint64_t>(cfg.n));
  w.field("deltas", cfg.deltas);
  w.field("trials_per_delta", cfg.trials_per_delta);
  w.field("seed", cfg.seed);
  w.field("post_process", cfg.post_process);
  w.field("decay_margin", cfg.decay_margin);
  w.field("sparsity", static_cast<std::uint64_t>(cfg.sparsity));
  w.field("solver_grid", cfg.solver_grid);
  w.field("tol_1d", cfg.tol_1d);
  w.end_object();
  return w.str();
}

/// Parses a SweepConfig; unknown fields are rejected.
inline SweepConfig sweep_config_from_json(const std::string& text) {
  const auto j = jsonio::parse(text, "sweep config");
  jsonio::reject_unknown_fields(j,
                                {"params", "truth_kind", "n", "deltas",
                                 "trials_per_delta", "seed", "post_process",
                                 "decay_margin", "sparsity", "solver_grid",
                                 "tol_1d"},
                                "sweep config");
  for (const char* k :
       {"params", "truth_kind", "n", "deltas", "trials_per_delta", "seed",
        "post_process"})
    if (!j.contains(k))
      throw std::invalid_argument(std::string("sweep config: missing field '") +
                                  k + "'");
  SweepConfig cfg{detail::read_params(j.at("params")),
                  truth_kind_from_name(j.at("truth_kind").get<std::string>()),
                  j.at("n").get<std::size_t>(),
                  detail::read_real_array(j.at("deltas"), "deltas"),
                  j.at("trials_per_delta").get<int>(),
                  j.at("seed").get<std::uint64_t>(),
                  j.at("post_process").get<bool>()};
  if (j.contains("decay_margin"))
    cfg.decay_margin = jsonio::as_double(j.at("decay_margin"), "decay_margin");
  if (j.contains("sparsity")) cfg.sparsity = j.at("sparsity").get<std::size_t>();
  if (j.contains("solver_grid")) cfg.solver_grid = j.at("solver_grid").get<int>();
  if (j.contains("tol_1d")) cfg.tol_1d = jsonio::as_double(j.at("tol_1d"), "tol_1d");
  validate_sweep_config(cfg);
  return cfg;
}

// --- randomized inequality suites --------------------------------------------

struct SuiteResult {
  std::string name;
  std::size_t cases = 0;
  std::size_t violations = 0;
  double worst_margin = 0.0;  // max over cases of lhs/rhs - 1 (0 when rhs = lhs = 0)
};

namespace detail {

inline TruncatedSequence random_sequence(SplitMix64& rng, double boundary = 0.0) {
  const std::size_t n = 1 + rng.next_below(64);
  std::vector<double> u(n);
  for (double& x : u) {
    const double roll = rng.next_unit();
    if (roll < 0.30) {
      x = 0.0;  // exact zeros: the 0-norm is combinatorial
    } else if (boundary > 0.0 && roll < 0.40) {
      x = (rng.next_unit() < 0.5 ? -1.0 : 1.0) * boundary;  // |u_k| == beta
    } else {
      x = (rng.next_unit() < 0.5 ? -1.0 : 1.0) *
          std::pow(10.0, rng.next_uniform(-4.0, 1.0));
    }
  }
  return TruncatedSequence(std::move(u));
}

inline void track(SuiteResult& res, const BoundCheck& c) {
  ++res.cases;
  if (!c.holds) ++res.violations;
  if (c.rhs > 0.0)
    res.worst_margin = std::max(res.worst_margin, c.lhs / c.rhs - 1.0);
  else if (c.lhs > 0.0)
    res.worst_margin = std::numeric_limits<double>::infinity();
}

}  // namespace detail

/// Randomized verification of the analytic inequalities: interpolation,
/// Jackson, Bernstein, and the exact two-sided operator estimate, with the
/// p = 0 / q = 0 corners and boundary entries |u_k| = beta included.
inline std::vector<SuiteResult> run_inequality_suites(std::uint64_t seed,
                                                      std::size_t cases = 10000) {
  std::vector<SuiteResult> out;

  {
    SuiteResult res{"interpolation"};
    SplitMix64 rng(mix_seed(seed, 1));
    for (std::size_t i = 0; i < cases; ++i) {
      const double p = rng.next_unit() < 0.25 ? 0.0 : rng.next_uniform(0.0, 2.0);
      const double q = p + rng.next_uniform(0.0, 1.5);
      const double tau = std::max(1.0, q + 0.05) + rng.next_uniform(0.0, 1.5);
      const double a = tau + rng.next_uniform(0.1, 3.0);
      const SpaceParams params(p, q, tau, a, rng.next_uniform(0.5, 4.0));
      const auto u = detail::random_sequence(rng);
      detail::track(res, check_interpolation(u, params));
    }
    out.push_back(res);
  }
  {
    SuiteResult res{"jackson"};
    SplitMix64 rng(mix_seed(seed, 2));
    for (std::size_t i = 0; i < cases; ++i) {
      const double q = rng.next_unit() < 0.25 ? 0.0 : rng.next_uniform(0.0, 3.0);
      const double t = rng.next_unit() < 0.15
                           ? std::max(1.0, q)
                           : std::max(1.0, q) + rng.next_uniform(0.0, 2.0);
      const double beta = std::pow(10.0, rng.next_uniform(-3.0, 0.5));
      const auto u = detail::random_sequence(rng, beta);
      detail::track(res, jackson_bound_check(u, ThresholdRule(beta), q, t));
    }
    out.push_back(res);
  }
  {
    SuiteResult res{"bernstein"};
    SplitMix64 rng(mix_seed(seed, 3));
    for (std::size_t i = 0; i < cases; ++i) {
      const double p = rng.next_unit() < 0.25 ? 0.0 : rng.next_uniform(0.0, 2.0);
      const double q = rng.next_unit() < 0.20 ? p : p + rng.next_uniform(0.0, 2.0);
      const double beta = std::pow(10.0, rng.next_uniform(-3.0, 0.5));
      const auto u = detail::random_sequence(rng, beta);
      detail::track(res, bernstein_bound_check(u, ThresholdRule(beta), p, q));
    }
    out.push_back(res);
  }
  {
    SuiteResult res{"two-sided"};
    SplitMix64 rng(mix_seed(seed, 4));
    for (std::size_t i = 0; i < cases; ++i) {
      const double a = rng.next_uniform(1.0, 5.0);
      const std::size_t n = 1 + rng.next_below(64);
      std::vector<double> w(n), ue(n);
      for (double& x : w) x = std::pow(10.0, rng.next_uniform(-1.0, 1.0));
      for (double& x : ue) {
        x = rng.next_unit() < 0.3
                ? 0.0
                : (rng.next_unit() < 0.5 ? -1.0 : 1.0) *
                      std::pow(10.0, rng.next_uniform(-4.0, 1.0));
      }
      const DiagonalOperator op(std::move(w), a);
      const TruncatedSequence u(std::move(ue));
      const double ua = norm_s(u, a);
      const double img = norm_s(apply_operator(op, u), a);
      // both sides of the estimate, checked as one case
      ++res.cases;
      const bool ok = op.d1() * ua <= img * (1.0 + kRelSlack) &&
                      img <= op.d2() * ua * (1.0 + kRelSlack);
      if (!ok) ++res.violations;
      if (img > 0.0)
        res.worst_margin =
            std::max(res.worst_margin, op.d1() * ua / img - 1.0);
      if (ua > 0.0)
        res.worst_margin =
            std::max(res.worst_margin, img / (op.d2() * ua) - 1.0);
    }
    out.push_back(res);
  }
  return out;
}

}  // namespace seqreg
