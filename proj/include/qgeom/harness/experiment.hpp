#pragma once

// Multi-trial VQE runs: parallel trial fan-out, per-trial CSV traces and a
// summary JSON with per-step statistics across trials.
//
// Trace CSV columns (fixed order):
//   step, energy, energy_error, concurrence, ricci_raw_C, ricci, grad_norm, theta_1..theta_m
// ricci_raw_C is the curvature at the unclamped concurrence (-inf when C = 1);
// ricci is evaluated at min(C, 1 - 1e-9).

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <exception>
#include <filesystem>
#include <fstream>
#include <limits>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "json.hpp"
#include "qgeom/harness/format.hpp"
#include "qgeom/optimize.hpp"

namespace qgeom::harness {

inline constexpr double kChemicalAccuracy = 1e-3;

struct ExperimentConfig {
  AnsatzKind kind = AnsatzKind::LDCA;
  OptConfig opt;
  std::string hamiltonian_path;
  int trials = 50;
  std::filesystem::path out_dir;
  unsigned workers = 0;  // 0: hardware concurrency

  void validate() const {
    opt.validate();
    if (trials < 1) throw InvalidInput("trial count must be >= 1");
    if (hamiltonian_path.empty()) throw InvalidInput("no Hamiltonian file given");
    if (out_dir.empty()) throw InvalidInput("no output directory given");
  }
};

/// Runs `trials` optimizations from seeded random initial points. Trial k
/// starts from random_parameters(kind, trial_seed(opt.seed, k)); results are
/// indexed by trial, independent of scheduling. Any trial failure aborts.
inline std::vector<Trace> run_trials(AnsatzKind kind, const Hamiltonian& h, const OptConfig& opt, int trials,
                                     unsigned workers = 0) {
  opt.validate();
  if (trials < 1) throw InvalidInput("trial count must be >= 1");
  const GroundTruth ground = exact_ground(h);
  const MetricProvider metric = [kind, mode = opt.metric_mode](std::span<const double> t) {
    return fs_metric(kind, t, mode);
  };

  std::vector<Trace> out(static_cast<std::size_t>(trials));
  std::atomic<int> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto worker = [&] {
    for (int k = next++; k < trials; k = next++) {
      try {
        const ParamVector theta0 = random_parameters(kind, trial_seed(opt.seed, static_cast<std::uint64_t>(k)));
        out[static_cast<std::size_t>(k)] = run_optimization(kind, h, theta0, opt, ground, metric);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = trials;
      }
    }
  };

  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = std::min<unsigned>(workers, static_cast<unsigned>(trials));
  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned i = 0; i < workers; ++i) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);
  return out;
}

struct Band {
  std::vector<double> mean, stddev;
};

struct ExperimentSummary {
  int trials = 0;
  double threshold = kChemicalAccuracy;
  std::vector<std::optional<int>> steps_to_threshold;
  double success_fraction = 0.0;
  double median_steps = 0.0;  // +inf when fewer than half the trials succeed
  int fallback_steps = 0;
  std::vector<double> final_energy_error, final_concurrence, final_ricci;
  Band energy_error, concurrence, ricci;  // per step; finished trials hold their last value
};

/// Median where unreached trials count as +inf.
inline double median_steps(const std::vector<std::optional<int>>& steps) {
  if (steps.empty()) return std::numeric_limits<double>::infinity();
  std::vector<double> v;
  for (const auto& s : steps) v.push_back(s ? *s : std::numeric_limits<double>::infinity());
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

inline ExperimentSummary summarize(const std::vector<Trace>& traces, double threshold = kChemicalAccuracy) {
  ExperimentSummary s;
  s.trials = static_cast<int>(traces.size());
  s.threshold = threshold;
  std::size_t length = 0;
  int successes = 0;
  for (const auto& t : traces) {
    if (t.empty()) throw InvalidInput("summarize: empty trace");
    length = std::max(length, t.size());
    s.steps_to_threshold.push_back(steps_to_threshold(t, threshold));
    if (s.steps_to_threshold.back()) ++successes;
    for (const auto& r : t) s.fallback_steps += r.gd_fallback ? 1 : 0;
    s.final_energy_error.push_back(t.back().energy_error);
    s.final_concurrence.push_back(t.back().concurrence);
    s.final_ricci.push_back(t.back().ricci);
  }
  s.success_fraction = traces.empty() ? 0.0 : static_cast<double>(successes) / static_cast<double>(traces.size());
  s.median_steps = median_steps(s.steps_to_threshold);

  auto band = [&](double TraceRecord::*field) {
    Band b;
    const double n = static_cast<double>(traces.size());
    for (std::size_t i = 0; i < length; ++i) {
      double sum = 0.0, sum2 = 0.0;
      for (const auto& t : traces) {
        const double v = t[std::min(i, t.size() - 1)].*field;
        sum += v;
        sum2 += v * v;
      }
      const double mean = sum / n;
      b.mean.push_back(mean);
      b.stddev.push_back(std::sqrt(std::max(0.0, sum2 / n - mean * mean)));
    }
    return b;
  };
  s.energy_error = band(&TraceRecord::energy_error);
  s.concurrence = band(&TraceRecord::concurrence);
  s.ricci = band(&TraceRecord::ricci);
  return s;
}

inline void write_trace_csv(std::ostream& os, const Trace& trace) {
  os << "step,energy,energy_error,concurrence,ricci_raw_C,ricci,grad_norm";
  const std::size_t m = trace.empty() ? 0 : trace.front().theta.size();
  for (std::size_t j = 1; j <= m; ++j) os << ",theta_" << j;
  os << '\n';
  for (const auto& r : trace) {
    os << r.step << ',' << format_double(r.energy) << ',' << format_double(r.energy_error) << ','
       << format_double(r.concurrence) << ',' << format_double(r.ricci_raw) << ',' << format_double(r.ricci) << ','
       << format_double(r.grad_norm);
    for (double t : r.theta) os << ',' << format_double(t);
    os << '\n';
  }
}

namespace detail {

inline nlohmann::ordered_json finite_or_null(double v) {
  return std::isfinite(v) ? nlohmann::ordered_json(v) : nlohmann::ordered_json(nullptr);
}

inline nlohmann::ordered_json band_json(const Band& b) {
  return {{"mean", b.mean}, {"std", b.stddev}};
}

inline std::filesystem::path prepare_out_dir(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec || !std::filesystem::is_directory(dir)) {
    throw InvalidInput("cannot create output directory '" + dir.string() + "'");
  }
  return dir;
}

inline void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw InvalidInput("cannot write '" + path.string() + "'");
  os << content;
  if (!os) throw std::runtime_error("write failed for '" + path.string() + "'");
}

}  // namespace detail

inline nlohmann::ordered_json summary_json(const ExperimentConfig& cfg, const Hamiltonian& h, const GroundTruth& g,
                                           const ExperimentSummary& s) {
  nlohmann::ordered_json j;
  j["ansatz"] = to_string(cfg.kind);
  j["optimizer"] = to_string(cfg.opt.optimizer);
  j["metric"] = to_string(cfg.opt.metric_mode);
  j["inversion"] = {{"method", cfg.opt.inversion.method == InversionPolicy::Method::PseudoInverse ? "pinv" : "tikhonov"},
                    {"parameter", cfg.opt.inversion.parameter}};
  j["learning_rate"] = cfg.opt.learning_rate;
  j["max_steps"] = cfg.opt.max_steps;
  j["tol"] = detail::finite_or_null(cfg.opt.tol);
  j["seed"] = cfg.opt.seed;
  j["trials"] = s.trials;
  j["hamiltonian"] = {{"label", h.label}, {"nu", h.nu}};
  j["ground_energy"] = g.energy;
  j["ground_concurrence"] = g.concurrence;
  j["threshold"] = s.threshold;
  j["success_fraction"] = s.success_fraction;
  j["median_steps_to_threshold"] = detail::finite_or_null(s.median_steps);
  nlohmann::ordered_json steps = nlohmann::ordered_json::array();
  for (const auto& st : s.steps_to_threshold) steps.push_back(st ? nlohmann::ordered_json(*st) : nullptr);
  j["steps_to_threshold"] = steps;
  j["fallback_steps"] = s.fallback_steps;
  j["final"] = {{"energy_error", s.final_energy_error}, {"concurrence", s.final_concurrence}, {"ricci", s.final_ricci}};
  j["per_step"] = {{"energy_error", detail::band_json(s.energy_error)},
                   {"concurrence", detail::band_json(s.concurrence)},
                   {"ricci", detail::band_json(s.ricci)}};
  return j;
}

inline std::string trial_file_name(int k, int trials) {
  const int width = std::max<int>(3, static_cast<int>(std::to_string(trials - 1).size()));
  std::string idx = std::to_string(k);
  return "trial_" + std::string(static_cast<std::size_t>(std::max(0, width - static_cast<int>(idx.size()))), '0') +
         idx + ".csv";
}

/// Writes trial_NNN.csv per trial and summary.json into cfg.out_dir.
inline ExperimentSummary cmd_run_vqe(const ExperimentConfig& cfg) {
  cfg.validate();
  const Hamiltonian h = load_hamiltonian(cfg.hamiltonian_path);
  const auto dir = detail::prepare_out_dir(cfg.out_dir);
  const std::vector<Trace> traces = run_trials(cfg.kind, h, cfg.opt, cfg.trials, cfg.workers);
  for (int k = 0; k < cfg.trials; ++k) {
    std::ostringstream os;
    write_trace_csv(os, traces[static_cast<std::size_t>(k)]);
    detail::write_file(dir / trial_file_name(k, cfg.trials), os.str());
  }
  const ExperimentSummary s = summarize(traces);
  detail::write_file(dir / "summary.json", summary_json(cfg, h, exact_ground(h), s).dump(2) + "\n");
  return s;
}

}  // namespace qgeom::harness
