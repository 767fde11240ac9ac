// Repeated independent runs per algorithm, their statistics, and the
// comparison tables: cost summary with percent differences, optimal sizing,
// profitability, and mean convergence traces.
#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "hres/optimize/minimize.hpp"
#include "hres/problem.hpp"
#include "hres/rng.hpp"

namespace hres::bench {

using opt::AlgorithmKind;

enum class Profile { desk, paper };

inline Profile parse_profile(const std::string& s) {
  if (s == "desk") return Profile::desk;
  if (s == "paper") return Profile::paper;
  throw std::invalid_argument("profile must be desk|paper, got '" + s + "'");
}

struct BenchConfig {
  int runs = 5;
  opt::OptimizerConfig optimizer{50, 100, 1, AlgorithmKind::POA, {}};  // algorithm and seed set per run
  std::map<AlgorithmKind, opt::ParamMap> algorithm_params;
  std::vector<AlgorithmKind> algorithms{std::begin(opt::kAllAlgorithms), std::end(opt::kAllAlgorithms)};
  int parallelism = 1;
  std::uint64_t master_seed = 1;

  void validate() const {
    if (runs < 1) throw std::invalid_argument("bench.runs must be >= 1");
    if (algorithms.empty()) throw std::invalid_argument("bench: algorithm list is empty");
    if (parallelism < 1) throw std::invalid_argument("bench.parallelism must be >= 1");
    optimizer.validate();
  }
};

/// Population, iterations and run count for the named profile.
inline void apply_profile(BenchConfig& cfg, Profile p) {
  if (p == Profile::desk) {
    cfg.optimizer.population = 50;
    cfg.optimizer.iterations = 100;
    cfg.runs = 5;
  } else {
    cfg.optimizer.population = 150;
    cfg.optimizer.iterations = 300;
    cfg.runs = 30;
  }
}

inline std::uint64_t run_seed(std::uint64_t master, AlgorithmKind a, int run) {
  return derive_seed(master, {static_cast<std::uint64_t>(a), static_cast<std::uint64_t>(run)});
}

struct RunRecord {
  int run = 0;
  std::uint64_t seed = 0;
  double best_fitness = std::numeric_limits<double>::infinity();
  std::vector<double> best_position;
  std::vector<double> convergence;
  std::size_t evaluations = 0;
  double wall_time_s = 0.0;
  std::string error;  // empty on success

  bool ok() const { return error.empty(); }
};

struct AlgorithmSummary {
  AlgorithmKind algorithm = AlgorithmKind::POA;
  std::vector<RunRecord> runs;
  double best = std::numeric_limits<double>::infinity();
  double mean = std::numeric_limits<double>::infinity();
  double stddev = 0.0;
  std::vector<double> best_position;
  std::vector<double> mean_convergence;
  double percent_difference = 0.0;
  bool partial = false;

  // Filled in for HRES benchmarks.
  std::optional<DesignVector> best_design;
  double best_lpsp = 0.0;
  double best_cost = 0.0;
  double annual_energy_served_kwh = 0.0;
  std::optional<double> payback_days;
};

struct BenchReport {
  std::vector<AlgorithmSummary> algorithms;
  std::uint64_t master_seed = 0;
  int runs = 0;
  int population = 0;
  int iterations = 0;
  std::string config_digest;
  double wall_time_s = 0.0;
};

// ---------------------------------------------------------------------------
// Tables

/// 100 * (cost - min) / min, rounded to two decimals.
inline std::map<std::string, double> percent_difference(const std::map<std::string, double>& costs) {
  if (costs.empty()) throw std::invalid_argument("percent_difference: no costs given");
  double lowest = std::numeric_limits<double>::infinity();
  for (const auto& [name, c] : costs) {
    if (!(c > 0.0)) throw std::invalid_argument("percent_difference: cost of " + name + " must be > 0");
    lowest = std::min(lowest, c);
  }
  std::map<std::string, double> out;
  for (const auto& [name, c] : costs) out[name] = std::round(100.0 * (c - lowest) / lowest * 100.0) / 100.0;
  return out;
}

inline constexpr double kDaysPerMonth = 30.42;

/// "Xyears Ymonths Zdays", with a 365-day year and 30.42-day month.
inline std::string format_duration(double days) {
  if (!(days >= 0.0)) throw std::invalid_argument("duration must be >= 0 days");
  const double years = std::floor(days / 365.0);
  const double rem = days - years * 365.0;
  const double months = std::floor(rem / kDaysPerMonth);
  const double d = std::floor(rem - months * kDaysPerMonth + 1e-9);
  std::ostringstream out;
  out << static_cast<long long>(years) << "years " << static_cast<long long>(months) << "months "
      << static_cast<long long>(d) << (d == 1.0 ? "day" : "days");
  return out.str();
}

// ---------------------------------------------------------------------------
// Protocol

namespace detail {

inline std::string fnv1a_hex(const std::string& text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

inline std::string describe(const BenchConfig& cfg) {
  std::ostringstream s;
  s << "runs=" << cfg.runs << ";population=" << cfg.optimizer.population << ";iterations=" << cfg.optimizer.iterations
    << ";master_seed=" << cfg.master_seed << ";algorithms=";
  for (auto a : cfg.algorithms) s << opt::to_string(a) << ',';
  for (const auto& [a, params] : cfg.algorithm_params)
    for (const auto& [k, v] : params) s << ';' << opt::to_string(a) << '.' << k << '=' << v;
  return s.str();
}

}  // namespace detail

inline std::string config_digest(const BenchConfig& cfg) { return detail::fnv1a_hex(detail::describe(cfg)); }

/// Summary statistics over the successful runs already stored in s.runs.
inline void summarize(AlgorithmSummary& s) {
  std::vector<const RunRecord*> ok;
  for (const auto& r : s.runs)
    if (r.ok()) ok.push_back(&r);
  s.partial = ok.size() != s.runs.size();
  if (ok.empty()) return;
  const RunRecord* best = ok.front();
  double sum = 0.0;
  for (const auto* r : ok) {
    sum += r->best_fitness;
    if (r->best_fitness < best->best_fitness) best = r;
  }
  s.best = best->best_fitness;
  s.best_position = best->best_position;
  s.mean = sum / static_cast<double>(ok.size());
  double ss = 0.0;
  for (const auto* r : ok) ss += (r->best_fitness - s.mean) * (r->best_fitness - s.mean);
  s.stddev = ok.size() > 1 ? std::sqrt(ss / static_cast<double>(ok.size() - 1)) : 0.0;
  const std::size_t iters = ok.front()->convergence.size();
  s.mean_convergence.assign(iters, 0.0);
  for (const auto* r : ok)
    for (std::size_t i = 0; i < iters && i < r->convergence.size(); ++i)
      s.mean_convergence[i] += r->convergence[i] / static_cast<double>(ok.size());
}

/// Raw percent differences against the best algorithm of the report.
inline void assign_percent_differences(BenchReport& report) {
  double lowest = std::numeric_limits<double>::infinity();
  for (const auto& a : report.algorithms) lowest = std::min(lowest, a.best);
  for (auto& a : report.algorithms) {
    a.percent_difference = std::isfinite(lowest) && lowest > 0.0 && std::isfinite(a.best)
                               ? 100.0 * (a.best - lowest) / lowest
                               : std::numeric_limits<double>::quiet_NaN();
  }
}

/// Runs every (algorithm, run) pair on a pool of cfg.parallelism threads.
/// Each run's seed depends only on (master seed, algorithm, run index), and
/// results are stored by index, so the report does not depend on scheduling.
/// objective_for must return a reentrant objective.
template <typename ObjectiveFor>
BenchReport run_protocol(const BenchConfig& cfg, const opt::SearchSpace& space, ObjectiveFor&& objective_for) {
  cfg.validate();
  space.validate();
  const auto start = std::chrono::steady_clock::now();
  const std::size_t n_alg = cfg.algorithms.size();
  const std::size_t n_runs = static_cast<std::size_t>(cfg.runs);

  std::vector<opt::Objective> objectives;
  for (auto a : cfg.algorithms) objectives.push_back(objective_for(a));

  std::vector<RunRecord> records(n_alg * n_runs);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t task = next++; task < records.size(); task = next++) {
      const std::size_t ai = task / n_runs;
      const int run = static_cast<int>(task % n_runs);
      RunRecord& rec = records[task];
      rec.run = run;
      rec.seed = run_seed(cfg.master_seed, cfg.algorithms[ai], run);
      opt::OptimizerConfig oc = cfg.optimizer;
      oc.algorithm = cfg.algorithms[ai];
      oc.seed = rec.seed;
      auto params = cfg.algorithm_params.find(oc.algorithm);
      oc.algorithm_params = params != cfg.algorithm_params.end() ? params->second : opt::ParamMap{};
      try {
        opt::RunResult r = opt::minimize(objectives[ai], space, oc);
        rec.best_fitness = r.best_fitness;
        rec.best_position = std::move(r.best_position);
        rec.convergence = std::move(r.convergence);
        rec.evaluations = r.evaluations;
        rec.wall_time_s = r.wall_time_s;
      } catch (const std::exception& e) {
        rec.error = e.what();
      }
    }
  };
  const std::size_t n_threads = std::min<std::size_t>(static_cast<std::size_t>(cfg.parallelism), records.size());
  if (n_threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t i = 0; i < n_threads; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  BenchReport report;
  report.master_seed = cfg.master_seed;
  report.runs = cfg.runs;
  report.population = cfg.optimizer.population;
  report.iterations = cfg.optimizer.iterations;
  report.config_digest = config_digest(cfg);
  for (std::size_t ai = 0; ai < n_alg; ++ai) {
    AlgorithmSummary s;
    s.algorithm = cfg.algorithms[ai];
    s.runs.assign(records.begin() + static_cast<long>(ai * n_runs),
                  records.begin() + static_cast<long>((ai + 1) * n_runs));
    summarize(s);
    report.algorithms.push_back(std::move(s));
  }
  assign_percent_differences(report);
  report.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

/// Fills the HRES-specific columns (sizing, reliability, payback) for every
/// algorithm's best design.
inline void attach_hres_details(BenchReport& report, const HresProblem& problem) {
  for (auto& a : report.algorithms) {
    if (a.best_position.size() != 6) continue;
    const DesignVector d = decode_design(a.best_position);
    const SimulationResult sim = problem.simulate(d);
    a.best_design = d;
    a.best_lpsp = sim.lpsp;
    a.best_cost = problem.cost(d);
    a.annual_energy_served_kwh = sim.energy_served_wh / 1000.0;
    a.payback_days = payback_period(a.best_cost, a.annual_energy_served_kwh, problem.econ().tariff_usd_per_kwh);
  }
}

inline BenchReport run_benchmark(const BenchConfig& cfg, const HresProblem& problem) {
  BenchReport report = run_protocol(cfg, problem.space(), [&problem](AlgorithmKind) { return problem.objective(); });
  attach_hres_details(report, problem);
  return report;
}

inline BenchReport run_benchmark(const BenchConfig& cfg, const ScenarioData& scenario, const ComponentCatalog& catalog,
                                 const EconConfig& econ, const FitnessConfig& fitness = {},
                                 const DesignBounds& bounds = {}) {
  const HresProblem problem(scenario, catalog, econ, fitness, bounds);
  return run_benchmark(cfg, problem);
}

// ---------------------------------------------------------------------------
// Serialization

namespace detail {

inline std::string fixed(double v, int decimals) {
  if (!std::isfinite(v)) return std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf");
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  return buf;
}

inline nlohmann::ordered_json number(double v) {
  if (!std::isfinite(v)) return nullptr;
  return v;
}

inline double number_from(const nlohmann::ordered_json& j) {
  return j.is_null() ? std::numeric_limits<double>::infinity() : j.get<double>();
}

inline std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error(path.string() + ": cannot open for writing");
  return out;
}

inline void finish(std::ofstream& out, const std::filesystem::path& path) {
  out.flush();
  if (!out) throw std::runtime_error(path.string() + ": write failed");
}

}  // namespace detail

inline nlohmann::ordered_json to_json(const BenchReport& r) {
  using nlohmann::ordered_json;
  ordered_json j;
  j["master_seed"] = r.master_seed;
  j["runs"] = r.runs;
  j["population"] = r.population;
  j["iterations"] = r.iterations;
  j["config_digest"] = r.config_digest;
  j["algorithms"] = ordered_json::array();
  for (const auto& a : r.algorithms) {
    ordered_json ja;
    ja["algorithm"] = opt::to_string(a.algorithm);
    ja["best"] = detail::number(a.best);
    ja["mean"] = detail::number(a.mean);
    ja["stddev"] = detail::number(a.stddev);
    ja["percent_difference"] = detail::number(a.percent_difference);
    ja["partial"] = a.partial;
    ja["best_position"] = a.best_position;
    if (a.best_design) {
      const auto& d = *a.best_design;
      ja["best_design"] = {{"n_pv", d.n_pv},           {"n_wg", d.n_wg},
                           {"n_bat_parallel", d.n_bat_parallel}, {"tilt_deg", d.tilt_deg},
                           {"hub_height_m", d.hub_height_m},     {"n_bio", d.n_bio}};
      ja["best_lpsp"] = a.best_lpsp;
      ja["best_cost"] = a.best_cost;
      ja["annual_energy_served_kwh"] = a.annual_energy_served_kwh;
      ja["payback_days"] = a.payback_days ? ordered_json(*a.payback_days) : ordered_json(nullptr);
    }
    ordered_json conv = ordered_json::array();
    for (double v : a.mean_convergence) conv.push_back(detail::number(v));
    ja["mean_convergence"] = conv;
    ja["runs"] = ordered_json::array();
    for (const auto& run : a.runs) {
      ja["runs"].push_back({{"run", run.run},
                            {"seed", run.seed},
                            {"best_fitness", detail::number(run.best_fitness)},
                            {"evaluations", run.evaluations},
                            {"error", run.error}});
    }
    j["algorithms"].push_back(ja);
  }
  return j;
}

/// Inverse of to_json. Per-run positions, traces and wall times are not
/// stored and come back empty.
inline BenchReport from_json(const nlohmann::ordered_json& j) {
  BenchReport r;
  r.master_seed = j.at("master_seed").get<std::uint64_t>();
  r.runs = j.at("runs").get<int>();
  r.population = j.at("population").get<int>();
  r.iterations = j.at("iterations").get<int>();
  r.config_digest = j.at("config_digest").get<std::string>();
  for (const auto& ja : j.at("algorithms")) {
    AlgorithmSummary a;
    a.algorithm = opt::parse_algorithm(ja.at("algorithm").get<std::string>());
    a.best = detail::number_from(ja.at("best"));
    a.mean = detail::number_from(ja.at("mean"));
    a.stddev = detail::number_from(ja.at("stddev"));
    a.percent_difference = ja.at("percent_difference").is_null() ? std::numeric_limits<double>::quiet_NaN()
                                                                  : ja.at("percent_difference").get<double>();
    a.partial = ja.at("partial").get<bool>();
    a.best_position = ja.at("best_position").get<std::vector<double>>();
    if (ja.contains("best_design")) {
      const auto& d = ja.at("best_design");
      a.best_design = DesignVector{d.at("n_pv").get<long>(),       d.at("n_wg").get<long>(),
                                   d.at("n_bat_parallel").get<long>(), d.at("tilt_deg").get<double>(),
                                   d.at("hub_height_m").get<double>(), d.at("n_bio").get<long>()};
      a.best_lpsp = ja.at("best_lpsp").get<double>();
      a.best_cost = ja.at("best_cost").get<double>();
      a.annual_energy_served_kwh = ja.at("annual_energy_served_kwh").get<double>();
      if (!ja.at("payback_days").is_null()) a.payback_days = ja.at("payback_days").get<double>();
    }
    for (const auto& v : ja.at("mean_convergence")) a.mean_convergence.push_back(detail::number_from(v));
    for (const auto& jr : ja.at("runs")) {
      RunRecord run;
      run.run = jr.at("run").get<int>();
      run.seed = jr.at("seed").get<std::uint64_t>();
      run.best_fitness = detail::number_from(jr.at("best_fitness"));
      run.evaluations = jr.at("evaluations").get<std::size_t>();
      run.error = jr.at("error").get<std::string>();
      a.runs.push_back(std::move(run));
    }
    r.algorithms.push_back(std::move(a));
  }
  return r;
}

inline BenchReport load_report(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error(path.string() + ": cannot open for reading");
  try {
    return from_json(nlohmann::ordered_json::parse(in));
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error(path.string() + ": " + e.what());
  }
}

/// Files whose bytes are a pure function of the report (everything but timing.csv).
inline std::vector<std::string> deterministic_report_files(const BenchReport& r) {
  std::vector<std::string> files{"summary.csv", "sizing.csv", "profitability.csv", "runs.csv", "report.json"};
  for (const auto& a : r.algorithms) files.push_back("convergence_" + opt::to_string(a.algorithm) + ".csv");
  return files;
}

/// Writes the comparison tables into dir (created if missing). Wall times go
/// to timing.csv only, so every other file is byte-identical across reruns
/// with the same seeds.
inline std::vector<std::filesystem::path> export_report(const BenchReport& r, const std::filesystem::path& dir) {
  using detail::fixed;
  if (r.algorithms.empty()) throw std::invalid_argument("export_report: report has no algorithms");
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw std::runtime_error(dir.string() + ": cannot create directory: " + ec.message());
  std::vector<std::filesystem::path> written;

  {
    const auto path = dir / "summary.csv";
    auto out = detail::open_out(path);
    out << "algorithm,best_cost_usd,mean_cost_usd,std_cost_usd,difference_pct,runs_ok,runs_failed\n";
    for (const auto& a : r.algorithms) {
      const auto ok = std::count_if(a.runs.begin(), a.runs.end(), [](const RunRecord& x) { return x.ok(); });
      out << opt::to_string(a.algorithm) << ',' << fixed(a.best, 2) << ',' << fixed(a.mean, 2) << ','
          << fixed(a.stddev, 2) << ',' << fixed(a.percent_difference, 2) << ',' << ok << ','
          << (static_cast<long>(a.runs.size()) - ok) << '\n';
    }
    detail::finish(out, path);
    written.push_back(path);
  }
  {
    const auto path = dir / "sizing.csv";
    auto out = detail::open_out(path);
    out << "algorithm,best_cost_usd,n_wg,n_pv,n_bat,beta_deg,h_m,n_bio,lpsp\n";
    for (const auto& a : r.algorithms) {
      out << opt::to_string(a.algorithm) << ',' << fixed(a.best, 2);
      if (a.best_design) {
        const auto& d = *a.best_design;
        out << ',' << d.n_wg << ',' << d.n_pv << ',' << d.n_bat_parallel << ',' << fixed(d.tilt_deg, 2) << ','
            << fixed(d.hub_height_m, 2) << ',' << d.n_bio << ',' << fixed(a.best_lpsp, 6);
      } else {
        out << ",,,,,,,";
      }
      out << '\n';
    }
    detail::finish(out, path);
    written.push_back(path);
  }
  {
    const auto path = dir / "profitability.csv";
    auto out = detail::open_out(path);
    out << "algorithm,best_cost_usd,annual_energy_kwh,payback_days,period\n";
    for (const auto& a : r.algorithms) {
      out << opt::to_string(a.algorithm) << ',' << fixed(a.best_cost, 2) << ','
          << fixed(a.annual_energy_served_kwh, 2) << ',';
      if (a.payback_days) out << fixed(*a.payback_days, 2) << ',' << format_duration(*a.payback_days);
      else out << ",never";
      out << '\n';
    }
    detail::finish(out, path);
    written.push_back(path);
  }
  for (const auto& a : r.algorithms) {
    const auto path = dir / ("convergence_" + opt::to_string(a.algorithm) + ".csv");
    auto out = detail::open_out(path);
    out << "iteration,mean_best_fitness\n";
    for (std::size_t i = 0; i < a.mean_convergence.size(); ++i)
      out << (i + 1) << ',' << fixed(a.mean_convergence[i], 4) << '\n';
    detail::finish(out, path);
    written.push_back(path);
  }
  {
    const auto path = dir / "runs.csv";
    auto out = detail::open_out(path);
    out << "algorithm,run,seed,best_fitness,evaluations,error\n";
    for (const auto& a : r.algorithms)
      for (const auto& run : a.runs)
        out << opt::to_string(a.algorithm) << ',' << run.run << ',' << run.seed << ',' << fixed(run.best_fitness, 4)
            << ',' << run.evaluations << ',' << (run.error.empty() ? "" : "\"" + run.error + "\"") << '\n';
    detail::finish(out, path);
    written.push_back(path);
  }
  {
    const auto path = dir / "report.json";
    auto out = detail::open_out(path);
    out << to_json(r).dump(2) << '\n';
    detail::finish(out, path);
    written.push_back(path);
  }
  {
    const auto path = dir / "timing.csv";
    auto out = detail::open_out(path);
    out << "algorithm,run,wall_time_s\n";
    for (const auto& a : r.algorithms)
      for (const auto& run : a.runs) out << opt::to_string(a.algorithm) << ',' << run.run << ',' << fixed(run.wall_time_s, 3) << '\n';
    out << "total,," << fixed(r.wall_time_s, 3) << '\n';
    detail::finish(out, path);
    written.push_back(path);
  }
  return written;
}

}  // namespace hres::bench
