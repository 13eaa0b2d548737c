#pragma once

// Quantum geometric tensor over circuit parameters and the Fubini-Study
// metric (its real part), with block-diagonal/diagonal approximations and
// regularised inversion for natural-gradient steps.

#include <cmath>
#include <string>
#include <string_view>

#include <Eigen/Dense>

#include "qgeom/ansatz.hpp"
#include "qgeom/errors.hpp"
#include "qgeom/simulator.hpp"

namespace qgeom {

using QGTensor = Eigen::MatrixXcd;

/// G_ij = <d_i Psi|d_j Psi> - <d_i Psi|Psi><Psi|d_j Psi>
inline QGTensor qgt_from_jacobian(const Vector4c& psi, const Jacobian& jac) {
  const Eigen::VectorXcd overlap = jac.adjoint() * psi;  // <d_i Psi|Psi>
  return jac.adjoint() * jac - overlap * overlap.adjoint();
}

inline QGTensor qgt_full(AnsatzKind kind, std::span<const double> theta) {
  return qgt_from_jacobian(prepare_state(kind, theta).vector(), state_jacobian(kind, theta));
}

enum class MetricMode { Dense, BlockDiagonal, Diagonal };

inline std::string_view to_string(MetricMode m) {
  switch (m) {
    case MetricMode::Dense: return "dense";
    case MetricMode::BlockDiagonal: return "block";
    case MetricMode::Diagonal: return "diag";
  }
  return "?";
}

inline MetricMode parse_metric_mode(std::string_view s) {
  if (s == "dense") return MetricMode::Dense;
  if (s == "block") return MetricMode::BlockDiagonal;
  if (s == "diag") return MetricMode::Diagonal;
  throw InvalidInput("unknown metric mode '" + std::string(s) + "' (expected dense, block, diag)");
}

struct MetricTensor {
  Eigen::MatrixXd entries;
  MetricMode mode = MetricMode::Dense;
};

/// Zero every entry outside the mode's mask. Idempotent.
inline Eigen::MatrixXd apply_metric_mask(const Eigen::MatrixXd& g, AnsatzKind kind, MetricMode mode) {
  switch (mode) {
    case MetricMode::Dense: return g;
    case MetricMode::Diagonal: return g.diagonal().asDiagonal();
    case MetricMode::BlockDiagonal: {
      Eigen::MatrixXd out = Eigen::MatrixXd::Zero(g.rows(), g.cols());
      for (const auto& block : metric_blocks(kind))
        for (int i : block)
          for (int j : block) out(i, j) = g(i, j);
      return out;
    }
  }
  return g;
}

inline MetricTensor fs_metric(AnsatzKind kind, std::span<const double> theta, MetricMode mode) {
  const Eigen::MatrixXd re = qgt_full(kind, theta).real();
  const Eigen::MatrixXd sym = 0.5 * (re + re.transpose());
  return {apply_metric_mask(sym, kind, mode), mode};
}

struct InversionPolicy {
  enum class Method { PseudoInverse, Tikhonov };
  Method method = Method::PseudoInverse;
  double parameter = 1e-8;  // rcond or epsilon

  static InversionPolicy pseudo_inverse(double rcond = 1e-8) { return make(Method::PseudoInverse, rcond); }
  static InversionPolicy tikhonov(double epsilon) { return make(Method::Tikhonov, epsilon); }

 private:
  static InversionPolicy make(Method m, double p) {
    if (!(p > 0.0) || !std::isfinite(p)) throw InvalidInput("InversionPolicy: parameter must be positive");
    InversionPolicy pol;
    pol.method = m;
    pol.parameter = p;
    return pol;
  }
};

/// Largest eigenvalue at or below which a metric counts as identically zero.
inline constexpr double kDegenerateMetricFloor = 1e-14;

inline Eigen::MatrixXd invert_metric(const Eigen::MatrixXd& g, const InversionPolicy& policy) {
  if (g.rows() != g.cols()) throw InvalidInput("invert_metric: matrix is not square");
  const int m = static_cast<int>(g.rows());
  Eigen::MatrixXd inv;
  if (policy.method == InversionPolicy::Method::Tikhonov) {
    const Eigen::MatrixXd reg = g + policy.parameter * Eigen::MatrixXd::Identity(m, m);
    inv = reg.ldlt().solve(Eigen::MatrixXd::Identity(m, m));
  } else {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(g);
    const Eigen::VectorXd& lambda = es.eigenvalues();
    const double lmax = lambda.maxCoeff();
    if (!(lmax > kDegenerateMetricFloor)) throw DegenerateMetric("invert_metric: every eigenvalue is below threshold");
    const double cutoff = policy.parameter * lmax;
    Eigen::VectorXd inv_lambda(m);
    for (int i = 0; i < m; ++i) inv_lambda(i) = lambda(i) > cutoff ? 1.0 / lambda(i) : 0.0;
    inv = es.eigenvectors() * inv_lambda.asDiagonal() * es.eigenvectors().transpose();
  }
  return 0.5 * (inv + inv.transpose());
}

inline Eigen::MatrixXd invert_metric(const MetricTensor& g, const InversionPolicy& policy) {
  return invert_metric(g.entries, policy);
}

}  // namespace qgeom
