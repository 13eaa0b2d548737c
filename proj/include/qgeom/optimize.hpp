#pragma once

// Gradient descent and quantum natural gradient loops, instrumented with the
// concurrence and base-manifold curvature of every iterate.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qgeom/ansatz.hpp"
#include "qgeom/curvature.hpp"
#include "qgeom/hopf.hpp"
#include "qgeom/qgt.hpp"
#include "qgeom/vqe.hpp"

namespace qgeom {

enum class Optimizer { GD, QNG };
enum class StopRule { EnergyDelta, GradNorm };

inline std::string_view to_string(Optimizer o) { return o == Optimizer::GD ? "gd" : "qng"; }

inline Optimizer parse_optimizer(std::string_view s) {
  if (s == "gd") return Optimizer::GD;
  if (s == "qng") return Optimizer::QNG;
  throw InvalidInput("unknown optimizer '" + std::string(s) + "' (expected gd, qng)");
}

struct OptConfig {
  double learning_rate = 0.05;
  int max_steps = 200;
  double tol = 1e-6;
  Optimizer optimizer = Optimizer::GD;
  MetricMode metric_mode = MetricMode::BlockDiagonal;
  InversionPolicy inversion = InversionPolicy::pseudo_inverse(1e-8);
  StopRule stop_rule = StopRule::EnergyDelta;
  std::uint64_t seed = 0;

  void validate() const {
    if (!(learning_rate > 0.0) || !std::isfinite(learning_rate)) throw InvalidInput("learning rate must be > 0");
    if (max_steps < 1) throw InvalidInput("max_steps must be >= 1");
    if (!(tol > 0.0)) throw InvalidInput("tol must be > 0");  // +inf allowed
  }
};

/// Concurrence is clamped to this before the curvature is evaluated.
inline constexpr double kMaxInstrumentedConcurrence = 1.0 - 1e-9;

struct TraceRecord {
  int step = 0;
  ParamVector theta;
  double energy = 0.0;
  double energy_error = 0.0;
  double concurrence = 0.0;
  double ricci = 0.0;      // at min(C, 1 - 1e-9)
  double ricci_raw = 0.0;  // at the unclamped C; -inf when C = 1
  double grad_norm = 0.0;
  bool gd_fallback = false;  // QNG metric was fully degenerate on the step into this point
};

using Trace = std::vector<TraceRecord>;

inline ParamVector step_gd(std::span<const double> theta, const Eigen::VectorXd& grad, const OptConfig& config) {
  if (static_cast<Eigen::Index>(theta.size()) != grad.size()) throw InvalidInput("step_gd: dimension mismatch");
  ParamVector out(theta.begin(), theta.end());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] -= config.learning_rate * grad(static_cast<Eigen::Index>(i));
  return out;
}

struct QngStep {
  ParamVector theta;
  bool gd_fallback = false;
};

inline QngStep step_qng(std::span<const double> theta, const Eigen::VectorXd& grad, const MetricTensor& g,
                        const OptConfig& config) {
  const auto m = static_cast<Eigen::Index>(theta.size());
  if (grad.size() != m || g.entries.rows() != m || g.entries.cols() != m) {
    throw InvalidInput("step_qng: dimension mismatch");
  }
  try {
    const Eigen::VectorXd direction = invert_metric(g, config.inversion) * grad;
    return {step_gd(theta, direction, config), false};
  } catch (const DegenerateMetric&) {
    return {step_gd(theta, grad, config), true};
  }
}

using MetricProvider = std::function<MetricTensor(std::span<const double>)>;

namespace detail {

inline TraceRecord instrument(AnsatzKind kind, const Hamiltonian& h, double e0, int step, ParamVector theta,
                              const Eigen::VectorXd& grad) {
  TraceRecord r;
  const Statevector psi = prepare_state(kind, theta);
  r.step = step;
  r.energy = energy(h, psi);
  if (!std::isfinite(r.energy)) {
    throw std::runtime_error("run_optimization: non-finite energy at step " + std::to_string(step));
  }
  r.energy_error = r.energy - e0;
  r.concurrence = concurrence(psi);
  r.ricci = ricci_closed(std::min(r.concurrence, kMaxInstrumentedConcurrence));
  r.ricci_raw = r.concurrence < 1.0 - 1e-12 ? ricci_closed(r.concurrence) : -std::numeric_limits<double>::infinity();
  r.grad_norm = grad.norm();
  r.theta = std::move(theta);
  return r;
}

}  // namespace detail

/// Iterates from theta0 until the stop rule fires or max_steps is reached.
/// Record 0 is the initial point; the trace is a pure function of its inputs.
inline Trace run_optimization(AnsatzKind kind, const Hamiltonian& h, std::span<const double> theta0,
                              const OptConfig& config, const GroundTruth& ground, const MetricProvider& metric) {
  config.validate();
  check_params(kind, theta0);
  Trace trace;
  trace.reserve(static_cast<std::size_t>(config.max_steps) + 1);

  ParamVector theta(theta0.begin(), theta0.end());
  Eigen::VectorXd grad = energy_gradient(kind, theta, h);
  trace.push_back(detail::instrument(kind, h, ground.energy, 0, theta, grad));

  for (int step = 1; step <= config.max_steps; ++step) {
    bool fallback = false;
    if (config.optimizer == Optimizer::GD) {
      theta = step_gd(theta, grad, config);
    } else {
      QngStep next = step_qng(theta, grad, metric(theta), config);
      theta = std::move(next.theta);
      fallback = next.gd_fallback;
    }
    grad = energy_gradient(kind, theta, h);
    TraceRecord rec = detail::instrument(kind, h, ground.energy, step, theta, grad);
    rec.gd_fallback = fallback;
    const double delta = std::abs(rec.energy - trace.back().energy);
    trace.push_back(std::move(rec));
    const bool converged =
        config.stop_rule == StopRule::EnergyDelta ? delta < config.tol : trace.back().grad_norm < config.tol;
    if (converged) break;
  }
  return trace;
}

inline Trace run_optimization(AnsatzKind kind, const Hamiltonian& h, std::span<const double> theta0,
                              const OptConfig& config) {
  const MetricProvider metric = [kind, mode = config.metric_mode](std::span<const double> t) {
    return fs_metric(kind, t, mode);
  };
  return run_optimization(kind, h, theta0, config, exact_ground(h), metric);
}

/// First step whose energy error is at or below `threshold`.
inline std::optional<int> steps_to_threshold(const Trace& trace, double threshold = 1e-3) {
  for (const auto& r : trace)
    if (r.energy_error <= threshold) return r.step;
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Seeding

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

/// Independent per-trial seed derived from the base seed and trial index.
inline std::uint64_t trial_seed(std::uint64_t base, std::uint64_t trial) {
  return splitmix64(splitmix64(base) ^ (trial * 0xD1B54A32D192ED03ULL));
}

/// Each theta_j uniform in [0, 2 pi).
inline ParamVector random_parameters(AnsatzKind kind, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(0.0, kTwoPi);
  ParamVector theta(static_cast<std::size_t>(parameter_count(kind)));
  for (auto& t : theta) t = dist(rng);
  return theta;
}

}  // namespace qgeom
