#pragma once

// Self-check suites behind `qgeom validate`. Each suite compares a closed form
// or analytic route with an independent one (brute-force amplitudes, finite
// differences, numeric tensor calculus) and reports pass/fail with the worst
// deviation seen.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qgeom/ansatz.hpp"
#include "qgeom/curvature.hpp"
#include "qgeom/hopf.hpp"
#include "qgeom/optimize.hpp"
#include "qgeom/qgt.hpp"
#include "qgeom/vqe.hpp"

namespace qgeom::harness {

struct SuiteResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

using ConcurrenceFn = std::function<double(AnsatzKind, std::span<const double>)>;

struct ValidationOptions {
  int samples = 10000;      // per kind, for concurrence/curvature/Hopf suites
  int qgt_samples = 1000;   // per kind
  int gradient_samples = 1000;
  std::uint64_t seed = 20240601;
  ConcurrenceFn concurrence_closed = [](AnsatzKind k, std::span<const double> t) { return qgeom::concurrence_closed(k, t); };
};

/// An entry of the Fubini-Study metric that is the same at every theta.
struct MetricConstant {
  AnsatzKind kind;
  int i, j;
  double value;
};

/// Constant entries of the HEA and LDCA metrics (upper triangle), as derived
/// from the circuit definitions. The LDCA (2,2) entry is 1 under the
/// exp(-i theta P / 2) gate convention.
inline std::vector<MetricConstant> metric_constants() {
  using K = AnsatzKind;
  std::vector<MetricConstant> c = {{K::HEA, 0, 0, 1}, {K::HEA, 1, 1, 1}, {K::HEA, 2, 2, 1}, {K::HEA, 3, 3, 1},
                                   {K::HEA, 0, 1, 0}, {K::HEA, 0, 3, 0}, {K::HEA, 1, 2, 0}, {K::LDCA, 2, 2, 1}};
  for (int i = 0; i < 5; ++i)
    for (int j = i; j < 5; ++j)
      if (!((i == 2 && j == 2) || (i == 4 && j == 4))) c.push_back({K::LDCA, i, j, 0});
  return c;
}

namespace detail {

inline ParamVector uniform_theta(AnsatzKind kind, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> d(0.0, kTwoPi);
  ParamVector t(static_cast<std::size_t>(parameter_count(kind)));
  for (auto& v : t) v = d(rng);
  return t;
}

inline Statevector haar_state(std::mt19937_64& rng) {
  std::normal_distribution<double> n;
  Vector4c v;
  for (int k = 0; k < 4; ++k) v(k) = cplx(n(rng), n(rng));
  return Statevector(Vector4c(v / v.norm()));
}

inline std::string fmt(double v) {
  std::ostringstream os;
  os.precision(3);
  os << std::scientific << v;
  return os.str();
}

inline Jacobian fd_jacobian(AnsatzKind kind, ParamVector theta, double h) {
  Jacobian j(4, theta.size());
  for (std::size_t k = 0; k < theta.size(); ++k) {
    const double t0 = theta[k];
    theta[k] = t0 + h;
    const Vector4c p = prepare_state(kind, theta).vector();
    theta[k] = t0 - h;
    const Vector4c m = prepare_state(kind, theta).vector();
    theta[k] = t0;
    j.col(static_cast<Eigen::Index>(k)) = (p - m) / (2.0 * h);
  }
  return j;
}

inline double scalar_at_c(ChartConvention conv, double c) {
  Eigen::VectorXd x(4);
  x << c, 0.7, 0.4, 1.1;
  return scalar_curvature_numeric(mfs_field(conv), x);
}

}  // namespace detail

inline SuiteResult suite_concurrence(const ValidationOptions& opt) {
  std::mt19937_64 rng(opt.seed);
  double worst = 0.0;
  for (AnsatzKind k : kAllAnsatzKinds) {
    for (int s = 0; s < opt.samples; ++s) {
      const ParamVector t = detail::uniform_theta(k, rng);
      worst = std::max(worst, std::abs(opt.concurrence_closed(k, t) - concurrence(prepare_state(k, t))));
    }
  }
  return {"concurrence-equivalence", worst <= 1e-9, "max |C_closed - C_state| = " + detail::fmt(worst)};
}

inline SuiteResult suite_hopf(const ValidationOptions& opt) {
  std::mt19937_64 rng(opt.seed + 1);
  double sphere = 0.0, conc = 0.0, fiber = 0.0, ldca = 0.0, qgan = 0.0, recon = 0.0;
  for (int s = 0; s < opt.samples; ++s) {
    const Statevector psi = detail::haar_state(rng);
    const HopfBase b = hopf_base(psi);
    double sum = 0.0;
    for (double v : b.x) sum += v * v;
    sphere = std::max(sphere, std::abs(sum - 1.0));
    conc = std::max(conc, std::abs(std::hypot(b.x[2], b.x[3]) - concurrence(psi)));
    const FiberQuaternion f = hopf_fiber(psi);
    fiber = std::max(fiber, std::abs(f.q_plus.norm2() + f.q_minus.norm2() - 1.0));
    if (b.phi_a && b.chi && b.xi) {
      const auto r = b.reconstruct();
      for (int i = 0; i < 5; ++i) recon = std::max(recon, std::abs(r[static_cast<std::size_t>(i)] - b.x[static_cast<std::size_t>(i)]));
    }
    const HopfBase bl = hopf_base(prepare_state(AnsatzKind::LDCA, detail::uniform_theta(AnsatzKind::LDCA, rng)));
    ldca = std::max({ldca, std::abs(bl.x[1]), std::abs(bl.x[4])});
    const HopfBase bq = hopf_base(prepare_state(AnsatzKind::QGAN, detail::uniform_theta(AnsatzKind::QGAN, rng)));
    qgan = std::max(qgan, std::abs(bq.x[3]));
  }
  const double worst = std::max({sphere, conc, fiber, ldca, qgan, recon});
  return {"hopf-invariants", worst <= 1e-9,
          "sum x^2 " + detail::fmt(sphere) + ", C " + detail::fmt(conc) + ", |q|^2 " + detail::fmt(fiber) +
              ", LDCA x1,x4 " + detail::fmt(ldca) + ", QGAN x3 " + detail::fmt(qgan) + ", angles " +
              detail::fmt(recon)};
}

inline SuiteResult suite_curvature(const ValidationOptions& opt) {
  std::mt19937_64 rng(opt.seed + 2);
  double rel = 0.0;
  for (AnsatzKind k : kAllAnsatzKinds) {
    for (int s = 0; s < opt.samples; ++s) {
      const ParamVector t = detail::uniform_theta(k, rng);
      const double c = concurrence(prepare_state(k, t));
      if (c > 0.99) continue;
      const double ref = ricci_closed(c);
      rel = std::max(rel, std::abs(ricci_closed_circuit(k, t) - ref) / std::abs(ref));
    }
  }
  const double spot = std::max(std::abs(ricci_closed(0.0) - 10.0), std::abs(ricci_closed(1.0 / std::sqrt(2.0)) - 8.0));

  double sphere = 0.0, flat = 0.0;
  const MetricField s2{2, [](const Eigen::VectorXd& x) -> Eigen::MatrixXd {
                         Eigen::MatrixXd g = Eigen::MatrixXd::Zero(2, 2);
                         g(0, 0) = 1.0;
                         g(1, 1) = std::pow(std::sin(x(0)), 2);
                         return g;
                       }};
  const MetricField polar{2, [](const Eigen::VectorXd& x) -> Eigen::MatrixXd {
                            Eigen::MatrixXd g = Eigen::MatrixXd::Zero(2, 2);
                            g(0, 0) = 1.0;
                            g(1, 1) = x(0) * x(0);
                            return g;
                          }};
  for (int i = 0; i < 20; ++i) {
    Eigen::VectorXd x(2);
    x << 0.3 + 2.5 * i / 19.0, 0.1 * i;
    sphere = std::max(sphere, std::abs(scalar_curvature_numeric(s2, x) - 2.0));
    x(0) = 0.5 + 0.1 * i;
    flat = std::max(flat, std::abs(scalar_curvature_numeric(polar, x)));
  }
  double mfs = 0.0;
  for (int i = 1; i <= 9; ++i) {
    const double c = 0.1 * i;
    mfs = std::max(mfs, std::abs(detail::scalar_at_c(kDefaultChartConvention, c) - ricci_closed(c)));
  }
  const bool ok = rel <= 1e-8 && spot <= 1e-12 && sphere <= 1e-4 && flat <= 1e-6 && mfs <= 1e-3;
  return {"curvature-consistency", ok,
          "circuit rel " + detail::fmt(rel) + ", spot " + detail::fmt(spot) + ", S^2 " + detail::fmt(sphere) +
              ", flat " + detail::fmt(flat) + ", MFS " + detail::fmt(mfs)};
}

inline SuiteResult suite_qgt(const ValidationOptions& opt) {
  std::mt19937_64 rng(opt.seed + 3);
  const auto constants = metric_constants();
  double herm = 0.0, psd = 0.0, constant_err = 0.0;
  bool singular_ok = true;
  int full_rank = 0, well_conditioned = 0, nondegenerate_total = 0;
  for (AnsatzKind k : kAllAnsatzKinds) {
    for (int s = 0; s < opt.qgt_samples; ++s) {
      const ParamVector t = detail::uniform_theta(k, rng);
      const QGTensor g = qgt_full(k, t);
      herm = std::max(herm, (g - g.adjoint()).cwiseAbs().maxCoeff());
      const Eigen::MatrixXd re = g.real();
      const double lmin = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(0.5 * (re + re.transpose())).eigenvalues()(0);
      psd = std::max(psd, -lmin);
      for (const auto& c : constants)
        if (c.kind == k) constant_err = std::max(constant_err, std::abs(re(c.i, c.j) - c.value));
      if (k == AnsatzKind::HEA || k == AnsatzKind::LDCA) singular_ok = singular_ok && lmin < 1e-10;
      if (k == AnsatzKind::QGAN || k == AnsatzKind::SHEA) {
        ++nondegenerate_total;
        full_rank += lmin > 1e-12 ? 1 : 0;
        well_conditioned += lmin > 1e-6 ? 1 : 0;
      }
    }
  }
  const double total = std::max(1, nondegenerate_total);
  const double frac = full_rank / total;
  const bool ok = herm <= 1e-12 && psd <= 1e-12 && constant_err <= 1e-8 && singular_ok && frac >= 0.99;
  return {"qgt-structure", ok,
          "hermitian " + detail::fmt(herm) + ", psd " + detail::fmt(psd) + ", constants " + detail::fmt(constant_err) +
              ", HEA/LDCA singular " + (singular_ok ? "yes" : "no") + ", QGAN/sHEA full rank " +
              std::to_string(frac) + " (lambda_min > 1e-6: " + std::to_string(well_conditioned / total) + ")"};
}

inline SuiteResult suite_gradient(const ValidationOptions& opt) {
  std::mt19937_64 rng(opt.seed + 4);
  std::uniform_int_distribution<std::size_t> pick(0, kAllAnsatzKinds.size() - 1);
  std::uniform_real_distribution<double> coef(-1.0, 1.0);
  constexpr double h = 1e-5;
  double jac_err = 0.0, grad_err = 0.0;
  for (int s = 0; s < opt.gradient_samples; ++s) {
    const AnsatzKind k = kAllAnsatzKinds[pick(rng)];
    const ParamVector t = detail::uniform_theta(k, rng);
    Hamiltonian ham;
    for (auto& v : ham.nu) v = coef(rng);
    jac_err = std::max(jac_err, (state_jacobian(k, t) - detail::fd_jacobian(k, t, h)).cwiseAbs().maxCoeff());
    const Eigen::VectorXd g = energy_gradient(k, t, ham);
    ParamVector tp = t;
    for (std::size_t i = 0; i < t.size(); ++i) {
      tp[i] = t[i] + h;
      const double ep = energy(ham, prepare_state(k, tp));
      tp[i] = t[i] - h;
      const double em = energy(ham, prepare_state(k, tp));
      tp[i] = t[i];
      grad_err = std::max(grad_err, std::abs(g(static_cast<Eigen::Index>(i)) - (ep - em) / (2 * h)));
    }
  }
  return {"gradient-check", jac_err <= 1e-6 && grad_err <= 1e-6,
          "jacobian " + detail::fmt(jac_err) + ", energy gradient " + detail::fmt(grad_err)};
}

struct ChartConventionReport {
  double error_a = 0.0, error_b = 0.0;  // max |R_numeric - R_closed| over C = 0.1..0.9
  bool a_matches() const { return error_a <= 1e-3; }
  bool b_matches() const { return error_b <= 1e-3; }
};

inline ChartConventionReport compare_chart_conventions() {
  ChartConventionReport r;
  for (int i = 1; i <= 9; ++i) {
    const double c = 0.1 * i;
    r.error_a = std::max(r.error_a, std::abs(detail::scalar_at_c(ChartConvention::A, c) - ricci_closed(c)));
    r.error_b = std::max(r.error_b, std::abs(detail::scalar_at_c(ChartConvention::B, c) - ricci_closed(c)));
  }
  return r;
}

inline SuiteResult suite_chart_convention(const ValidationOptions&) {
  const auto r = compare_chart_conventions();
  const bool exactly_one = r.a_matches() != r.b_matches();
  const bool default_ok = kDefaultChartConvention == ChartConvention::A ? r.a_matches() : r.b_matches();
  return {"chart-convention", exactly_one && default_ok,
          std::string("matching: ") + (r.a_matches() ? "A" : "") + (r.b_matches() ? "B" : "") + " (A err " +
              detail::fmt(r.error_a) + ", B err " + detail::fmt(r.error_b) + ")"};
}

inline std::vector<SuiteResult> run_validation(const ValidationOptions& opt = {}) {
  return {suite_concurrence(opt), suite_hopf(opt), suite_curvature(opt),
          suite_qgt(opt),         suite_gradient(opt), suite_chart_convention(opt)};
}

}  // namespace qgeom::harness
