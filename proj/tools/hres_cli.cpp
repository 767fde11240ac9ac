// hres: command-line front end for scenario synthesis, single-design
// simulation, single optimizer runs and the multi-algorithm benchmark.
//
// Failures print one JSON line {"error": <category>, "message": <text>} on
// stderr and exit nonzero.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "hres/bench.hpp"
#include "hres/config.hpp"
#include "hres/optimize/minimize.hpp"
#include "hres/problem.hpp"
#include "hres/timeseries.hpp"

namespace fs = std::filesystem;

namespace {

enum ExitCode { kOk = 0, kUsage = 2, kConfig = 3, kInput = 4, kRuntime = 5 };

struct CliError : std::runtime_error {
  CliError(ExitCode c, std::string category, const std::string& what)
      : std::runtime_error(what), code(c), category(std::move(category)) {}
  ExitCode code;
  std::string category;
};

int report_error(const std::string& category, const std::string& message, int code) {
  std::cerr << nlohmann::json{{"error", category}, {"message", message}}.dump() << '\n';
  return code;
}

struct Globals {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::string out_dir = "out";
  std::string profile;
  std::string algorithms;
  bool trace = false;
};

hres::AppConfig effective_config(const Globals& g) {
  hres::AppConfig cfg;
  try {
    if (!g.config_path.empty()) cfg = hres::load_config(g.config_path);
    if (!g.profile.empty()) hres::bench::apply_profile(cfg.bench, hres::bench::parse_profile(g.profile));
    if (!g.algorithms.empty()) hres::set_config_value(cfg, "bench.algorithms", g.algorithms);
    if (g.seed) {
      cfg.bench.optimizer.seed = *g.seed;
      cfg.bench.master_seed = *g.seed;
    }
    cfg.validate();
  } catch (const std::exception& e) {
    throw CliError(kConfig, "config", e.what());
  }
  return cfg;
}

hres::ScenarioData scenario_for(const hres::AppConfig& cfg, const std::string& path) {
  try {
    if (!path.empty()) return hres::load_scenario_csv(path, cfg.site);
    return hres::synth_scenario(cfg.site, cfg.synth, cfg.synth_seed);
  } catch (const std::exception& e) {
    throw CliError(kInput, "input", e.what());
  }
}

hres::DesignVector parse_design(const std::string& text) {
  const auto cells = hres::detail::split_csv(text);
  std::vector<double> x;
  for (const auto& c : cells) {
    double v = 0.0;
    if (!hres::detail::parse_double(c, v)) throw CliError(kUsage, "usage", "--design: '" + c + "' is not a number");
    x.push_back(v);
  }
  if (x.size() != 6) throw CliError(kUsage, "usage", "--design needs 6 values: n_pv,n_wg,n_bat,tilt,h,n_bio");
  for (std::size_t i : {0, 1, 2, 5})
    if (x[i] != std::round(x[i])) throw CliError(kUsage, "usage", "--design: component counts must be integers");
  return hres::decode_design(x);
}

void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw CliError(kRuntime, "io", dir.string() + ": cannot create directory: " + ec.message());
}

std::string design_text(const hres::DesignVector& d) {
  char buf[160];
  std::snprintf(buf, sizeof buf, "n_pv=%ld n_wg=%ld n_bat=%ld tilt=%.2f h=%.2f n_bio=%ld", d.n_pv, d.n_wg,
                d.n_bat_parallel, d.tilt_deg, d.hub_height_m, d.n_bio);
  return buf;
}

int cmd_gen_data(const Globals& g, const std::string& output) {
  hres::AppConfig cfg = effective_config(g);
  if (g.seed) cfg.synth_seed = *g.seed;
  const auto scenario = hres::synth_scenario(cfg.site, cfg.synth, cfg.synth_seed);
  const fs::path path = output.empty() ? fs::path(g.out_dir) / "scenario.csv" : fs::path(output);
  if (path.has_parent_path()) ensure_dir(path.parent_path());
  hres::write_scenario_csv(scenario, path);
  std::cout << "wrote " << path.string() << " (seed " << cfg.synth_seed << ")\n";
  return kOk;
}

int cmd_simulate(const Globals& g, const std::string& design_arg, const std::string& scenario_path) {
  const hres::AppConfig cfg = effective_config(g);
  const hres::DesignVector d = parse_design(design_arg);
  const hres::HresProblem problem(scenario_for(cfg, scenario_path), cfg.catalog, cfg.econ, cfg.fitness, cfg.bounds);
  hres::SimulationResult r;
  try {
    r = problem.simulate(d, {.trace = g.trace, .initial_soc = std::nullopt});
  } catch (const std::invalid_argument& e) {
    throw CliError(kInput, "design", e.what());
  }
  const auto fit = problem.evaluate(d);
  const auto verdict = hres::check_constraints(d, cfg.catalog);
  std::printf("design            %s\n", design_text(d).c_str());
  std::printf("lpsp              %.6f\n", r.lpsp);
  std::printf("demand_kwh        %.3f\n", r.total_demand_wh / 1000.0);
  std::printf("unmet_kwh         %.3f\n", r.total_unmet_wh / 1000.0);
  std::printf("surplus_kwh       %.3f\n", r.total_surplus_wh / 1000.0);
  for (const auto& [source, wh] : r.generation_by_source_wh) std::printf("gen_%-14s%.3f kWh\n", source.c_str(), wh / 1000.0);
  std::printf("final_soc         %.6f\n", r.final_soc);
  std::printf("cost_usd          %.2f\n", problem.cost(d));
  std::printf("fitness           %.2f\n", fit.fitness);
  std::printf("feasible          %s\n", fit.feasible ? "yes" : "no");
  for (const auto& v : verdict.violations) std::printf("violation         %s\n", v.c_str());
  if (g.trace) {
    ensure_dir(g.out_dir);
    const fs::path path = fs::path(g.out_dir) / "trace.csv";
    hres::write_trace_csv(r, path);
    std::printf("trace             %s\n", path.string().c_str());
  }
  return kOk;
}

int cmd_optimize(const Globals& g, const std::string& algorithm, const std::string& scenario_path) {
  hres::AppConfig cfg = effective_config(g);
  if (!algorithm.empty()) {
    try {
      cfg.bench.optimizer.algorithm = hres::opt::parse_algorithm(algorithm);
    } catch (const std::exception& e) {
      throw CliError(kUsage, "usage", e.what());
    }
  }
  const hres::HresProblem problem(scenario_for(cfg, scenario_path), cfg.catalog, cfg.econ, cfg.fitness, cfg.bounds);
  hres::opt::OptimizerConfig oc = cfg.bench.optimizer;
  const auto params = cfg.bench.algorithm_params.find(oc.algorithm);
  if (params != cfg.bench.algorithm_params.end()) oc.algorithm_params = params->second;
  const auto result = hres::opt::minimize(problem.objective(), problem.space(), oc);
  const auto d = hres::decode_design(result.best_position);
  const auto fit = problem.evaluate(d);
  ensure_dir(g.out_dir);
  const fs::path conv = fs::path(g.out_dir) / ("convergence_" + hres::opt::to_string(oc.algorithm) + ".csv");
  hres::opt::write_convergence_csv(result.convergence, conv);
  std::printf("algorithm     %s\n", hres::opt::to_string(oc.algorithm).c_str());
  std::printf("seed          %llu\n", static_cast<unsigned long long>(oc.seed));
  std::printf("best_fitness  %.2f\n", result.best_fitness);
  std::printf("design        %s\n", design_text(d).c_str());
  std::printf("cost_usd      %.2f\n", fit.cost);
  std::printf("lpsp          %.6f\n", fit.lpsp);
  std::printf("evaluations   %zu\n", result.evaluations);
  std::printf("wall_time_s   %.2f\n", result.wall_time_s);
  std::printf("convergence   %s\n", conv.string().c_str());
  if (g.trace) {
    const fs::path path = fs::path(g.out_dir) / "trace.csv";
    hres::write_trace_csv(problem.simulate(d, {.trace = true, .initial_soc = std::nullopt}), path);
    std::printf("trace         %s\n", path.string().c_str());
  }
  return kOk;
}

void print_summary(const hres::bench::BenchReport& report) {
  std::printf("%-5s %14s %14s %12s %8s  %s\n", "alg", "best_usd", "mean_usd", "std_usd", "diff_%", "payback");
  for (const auto& a : report.algorithms) {
    const std::string payback = a.payback_days ? hres::bench::format_duration(*a.payback_days) : "never";
    std::printf("%-5s %14.2f %14.2f %12.2f %8.2f  %s\n", hres::opt::to_string(a.algorithm).c_str(), a.best, a.mean,
                a.stddev, a.percent_difference, payback.c_str());
  }
}

int cmd_bench(const Globals& g, const std::string& scenario_path, std::optional<int> runs,
              std::optional<int> parallelism) {
  hres::AppConfig cfg = effective_config(g);
  if (runs) cfg.bench.runs = *runs;
  if (parallelism) cfg.bench.parallelism = *parallelism;
  try {
    cfg.validate();
  } catch (const std::exception& e) {
    throw CliError(kConfig, "config", e.what());
  }
  const hres::HresProblem problem(scenario_for(cfg, scenario_path), cfg.catalog, cfg.econ, cfg.fitness, cfg.bounds);
  auto report = hres::bench::run_benchmark(cfg.bench, problem);
  // Parallelism only affects scheduling, so it stays out of the digest.
  hres::AppConfig digest_cfg = cfg;
  digest_cfg.bench.parallelism = 1;
  report.config_digest = hres::config_digest(digest_cfg);
  const auto files = hres::bench::export_report(report, g.out_dir);
  print_summary(report);
  std::printf("wrote %zu files to %s in %.1f s\n", files.size(), g.out_dir.c_str(), report.wall_time_s);
  for (const auto& a : report.algorithms)
    if (a.partial) std::fprintf(stderr, "warning: %s has failed runs\n", hres::opt::to_string(a.algorithm).c_str());
  return kOk;
}

int cmd_report(const Globals& g, const std::string& from) {
  fs::path source = from;
  if (fs::is_directory(source)) source /= "report.json";
  hres::bench::BenchReport report;
  try {
    report = hres::bench::load_report(source);
  } catch (const std::exception& e) {
    throw CliError(kInput, "input", e.what());
  }
  const auto files = hres::bench::export_report(report, g.out_dir);
  print_summary(report);
  std::printf("wrote %zu files to %s\n", files.size(), g.out_dir.c_str());
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hybrid wind/PV/biogas/battery system sizing"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--config", g.config_path, "Configuration file")->check(CLI::ExistingFile);
  app.add_option("--seed", g.seed, "Seed (synthesis for gen-data, optimizer and bench master seed otherwise)");
  app.add_option("--out-dir", g.out_dir, "Output directory")->capture_default_str();
  app.add_option("--profile", g.profile, "Bench scale: desk (50/100/5) or paper (150/300/30)")
      ->check(CLI::IsMember({"desk", "paper"}));
  app.add_option("--algorithms", g.algorithms, "Comma-separated subset of PSO,AO,POA,DOA,GOA,ZOA,OOA");
  app.add_flag("--trace", g.trace, "Write the hourly dispatch trace");

  std::string output, design, scenario, algorithm, from;
  std::optional<int> runs, parallelism;

  auto* gen = app.add_subcommand("gen-data", "Synthesize a scenario CSV");
  gen->add_option("--output,-o", output, "Output file (default <out-dir>/scenario.csv)");

  auto* sim = app.add_subcommand("simulate", "Simulate one design over one site-year");
  sim->add_option("--design", design, "n_pv,n_wg,n_bat,tilt,h,n_bio")->required();
  sim->add_option("--scenario", scenario, "Scenario CSV (default: synthesize from config)");

  auto* optc = app.add_subcommand("optimize", "Run one optimizer once");
  optc->add_option("--algorithm", algorithm, "Algorithm (default from config)");
  optc->add_option("--scenario", scenario, "Scenario CSV (default: synthesize from config)");

  auto* benchc = app.add_subcommand("bench", "Run the multi-algorithm comparison");
  benchc->add_option("--scenario", scenario, "Scenario CSV (default: synthesize from config)");
  benchc->add_option("--runs", runs, "Runs per algorithm");
  benchc->add_option("--parallelism", parallelism, "Worker threads");

  auto* rep = app.add_subcommand("report", "Re-export tables from a saved report");
  rep->add_option("--from", from, "report.json or a directory containing it")->required();

  auto* dump = app.add_subcommand("config", "Print the effective configuration");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return report_error("usage", e.what(), kUsage);
  }

  try {
    if (*gen) return cmd_gen_data(g, output);
    if (*sim) return cmd_simulate(g, design, scenario);
    if (*optc) return cmd_optimize(g, algorithm, scenario);
    if (*benchc) return cmd_bench(g, scenario, runs, parallelism);
    if (*rep) return cmd_report(g, from);
    if (*dump) {
      std::cout << hres::dump_config(effective_config(g));
      return kOk;
    }
  } catch (const CliError& e) {
    return report_error(e.category, e.what(), e.code);
  } catch (const std::exception& e) {
    return report_error("runtime", e.what(), kRuntime);
  }
  return kUsage;
}
