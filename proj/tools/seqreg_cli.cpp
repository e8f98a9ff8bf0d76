// Command-line front end: delta-sweeps, single solves, inequality suites, and
// solver-vs-oracle comparisons. All behavior is controlled by flags and config
// files; no environment variables.

#include <cxxabi.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "seqreg/seqreg.hpp"

namespace {

std::string type_name(const std::exception& e) {
  int status = 0;
  char* dem = abi::__cxa_demangle(typeid(e).name(), nullptr, nullptr, &status);
  std::string out = (status == 0 && dem) ? dem : typeid(e).name();
  std::free(dem);
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << text;
  if (!out) throw std::runtime_error("write to '" + path + "' failed");
}

void emit_or_print(const std::string& text, const std::string& out_path) {
  if (out_path.empty())
    std::cout << text << "\n";
  else
    write_file(out_path, text);
}

int cmd_sweep(const std::string& config_path, const std::string& out_path,
              const std::string& format, std::int64_t seed_override,
              int threads) {
  seqreg::SweepConfig cfg = seqreg::sweep_config_from_json(read_file(config_path));
  if (seed_override >= 0) cfg.seed = static_cast<std::uint64_t>(seed_override);
  const seqreg::SweepReport report = seqreg::run_sweep(cfg, threads);
  std::cerr << "sweep: " << report.rows.size() << " noise levels, n=" << report.n
            << ", wall=" << report.wall_time_sec << "s, slope_err_tau="
            << report.slope_err_tau << " (gamma1=" << report.gamma1 << ")\n";
  const auto fmt = seqreg::report_format_from_name(format);
  emit_or_print(fmt == seqreg::ReportFormat::kJson
                    ? seqreg::report_to_json(report)
                    : seqreg::report_to_csv(report),
                out_path);
  return 0;
}

int cmd_solve(const std::string& config_path, const std::string& out_path) {
  const auto j = seqreg::jsonio::parse(read_file(config_path), "solve config");
  seqreg::jsonio::reject_unknown_fields(
      j, {"problem_file", "alpha", "solver_grid", "tol_1d"}, "solve config");
  for (const char* k : {"problem_file", "alpha"})
    if (!j.contains(k))
      throw std::invalid_argument(std::string("solve config: missing field '") +
                                  k + "'");
  auto [problem, params] =
      seqreg::problem_from_json(read_file(j.at("problem_file").get<std::string>()));
  double alpha;
  if (j.at("alpha").is_string()) {
    if (j.at("alpha").get<std::string>() != "apriori")
      throw std::invalid_argument("solve config: alpha must be a number or 'apriori'");
    alpha = seqreg::alpha_apriori(problem.delta, params);
  } else {
    alpha = j.at("alpha").get<double>();
  }
  seqreg::RegConfig rcfg(params, alpha,
                         j.contains("solver_grid") ? j.at("solver_grid").get<int>() : 256,
                         j.contains("tol_1d") ? j.at("tol_1d").get<double>() : 1e-11);
  const seqreg::RegSolution sol = seqreg::solve(problem, rcfg);
  seqreg::jsonio::Writer w;
  w.begin_object();
  w.field("alpha", alpha);
  w.field("u_reg", sol.u_reg.entries());
  w.field("objective", sol.objective);
  w.field("misfit", sol.misfit);
  w.field("penalty", sol.penalty);
  w.field("support_size", static_cast<std::uint64_t>(sol.support_size));
  w.end_object();
  emit_or_print(w.str(), out_path);
  return 0;
}

int cmd_check(std::uint64_t seed, const std::string& out_path) {
  const auto suites = seqreg::run_inequality_suites(seed);
  bool ok = true;
  seqreg::jsonio::Writer w;
  w.begin_object();
  for (const auto& s : suites) {
    std::printf("%-14s cases=%zu violations=%zu worst_margin=%.3e\n",
                s.name.c_str(), s.cases, s.violations, s.worst_margin);
    ok = ok && s.violations == 0;
    w.begin_object_field(s.name);
    w.field("cases", static_cast<std::uint64_t>(s.cases));
    w.field("violations", static_cast<std::uint64_t>(s.violations));
    w.field("worst_margin", s.worst_margin);
    w.end_object();
  }
  w.end_object();
  if (!out_path.empty()) write_file(out_path, w.str());
  std::printf("%s\n", ok ? "all inequality suites passed" : "VIOLATIONS FOUND");
  return ok ? 0 : 1;
}

int cmd_oracle_compare(std::uint64_t seed) {
  seqreg::SplitMix64 rng(seed);
  const seqreg::SpaceParams dummy(1.0, 1.0, 2.0, 4.0, 4.0);
  double worst_gap = 0.0;
  std::size_t cases = 0;
  for (double sigma : {2.0, 4.0}) {
    for (double p : {0.0, 0.5, 1.0, 2.0}) {
      for (int i = 0; i < 500; ++i) {
        const double v = (rng.next_unit() < 0.5 ? -1.0 : 1.0) *
                         std::pow(10.0, rng.next_uniform(-6.0, 1.0));
        const double w = rng.next_uniform(0.5, 2.5);
        const double alpha = std::pow(10.0, rng.next_uniform(-8.0, 1.0));
        const seqreg::RegConfig rcfg(dummy, alpha);
        const double ts = seqreg::prox_coordinate(v, w, alpha, p, sigma, rcfg);
        const double to =
            seqreg::oracle_prox(v, w, alpha, p, sigma, seqreg::oracle_grid_for(v, w));
        const auto f = [&](double t) {
          const double pen = p == 0.0 ? (t != 0.0 ? 1.0 : 0.0)
                                      : std::pow(std::abs(t), p);
          return std::pow(std::abs(w * t - v), sigma) + alpha * pen;
        };
        const double gap = (f(ts) - f(to)) / (1.0 + std::abs(f(to)));
        worst_gap = std::max(worst_gap, gap);
        ++cases;
      }
    }
  }
  std::printf("oracle-compare: %zu coordinate solves, worst relative gap %.3e\n",
              cases, worst_gap);
  const bool ok = worst_gap <= 1e-8;
  std::printf("%s\n", ok ? "solver dominates the grid oracle"
                         : "SOLVER FELL BEHIND THE ORACLE");
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Variational regularization laboratory for sparse sequence models"};
  app.require_subcommand(1);

  std::string config_path, out_path, format = "json";
  std::int64_t seed_flag = -1;
  int threads = 1;

  auto* sweep = app.add_subcommand("sweep", "run a delta-sweep from a config file");
  sweep->add_option("--config", config_path, "sweep config JSON")->required();
  sweep->add_option("--out", out_path, "output path (default: stdout)");
  sweep->add_option("--format", format, "csv|json")->check(CLI::IsMember({"csv", "json"}));
  sweep->add_option("--seed", seed_flag, "override the config seed");
  sweep->add_option("--threads", threads, "worker threads for (delta, trial) cells");

  auto* solve = app.add_subcommand("solve", "solve a single serialized instance");
  solve->add_option("--config", config_path, "solve config JSON")->required();
  solve->add_option("--out", out_path, "output path (default: stdout)");

  std::uint64_t check_seed = 20250809;
  auto* check = app.add_subcommand("check", "run the inequality property suites");
  check->add_option("--seed", check_seed, "suite RNG seed");
  check->add_option("--out", out_path, "optional JSON summary path");

  std::uint64_t oc_seed = 20250809;
  auto* oc = app.add_subcommand("oracle-compare", "solver vs grid oracle on random instances");
  oc->add_option("--seed", oc_seed, "comparison RNG seed");

  CLI11_PARSE(app, argc, argv);

  try {
    if (sweep->parsed()) return cmd_sweep(config_path, out_path, format, seed_flag, threads);
    if (solve->parsed()) return cmd_solve(config_path, out_path);
    if (check->parsed()) return cmd_check(check_seed, out_path);
    if (oc->parsed()) return cmd_oracle_compare(oc_seed);
  } catch (const std::exception& e) {
    // machine-readable error object on failure
    seqreg::jsonio::Writer w;
    w.begin_object();
    w.begin_object_field("error");
    w.field("type", type_name(e));
    w.field("message", std::string(e.what()));
    w.end_object();
    w.end_object();
    std::cout << w.str() << "\n";
    return 1;
  }
  return 0;
}
