#pragma once

// Scalar curvature by finite-difference tensor calculus, the quaternionic
// Fubini-Study (Mannoury) metric on the S^4 base, and the closed-form curvature
// R(C) = 2(6C^2 - 5)/(C^2 - 1).

#include <cmath>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "qgeom/errors.hpp"

namespace qgeom {

/// Closed-form scalar curvature of the base metric as a function of concurrence.
inline double ricci_closed(double c) {
  if (!(std::abs(c) < 1.0)) throw SingularityError("ricci_closed: |C| >= 1");
  const double c2 = c * c;
  return 2.0 * (6.0 * c2 - 5.0) / (c2 - 1.0);
}

/// Placement of sin^2(Theta) in the (Phi, Theta) block of the base metric.
/// A writes (1-C^2)(dPhi^2 + sin^2 Theta dTheta^2) literally; B is the usual
/// round-sphere (1-C^2)(dTheta^2 + sin^2 Theta dPhi^2). Only A reproduces
/// ricci_closed, so it is the default.
enum class ChartConvention { A, B };

inline constexpr ChartConvention kDefaultChartConvention = ChartConvention::A;

struct ChartPoint {
  double c = 0.0;
  double chi = 0.0;
  double phi = 0.0;
  double theta = 0.0;
};

/// Mannoury-Fubini-Study metric in coordinates (C, chi, Phi, Theta).
inline Eigen::Matrix4d mfs_metric(const ChartPoint& p, ChartConvention convention = kDefaultChartConvention) {
  if (!(p.c >= 0.0) || !(p.c < 1.0)) throw SingularityError("mfs_metric: chart requires 0 <= C < 1");
  const double f = 1.0 - p.c * p.c;
  const double s2 = std::pow(std::sin(p.theta), 2);
  Eigen::Matrix4d g = Eigen::Matrix4d::Zero();
  g(0, 0) = 1.0 / f;
  g(1, 1) = p.c * p.c;
  if (convention == ChartConvention::A) {
    g(2, 2) = f;
    g(3, 3) = f * s2;
  } else {
    g(2, 2) = f * s2;
    g(3, 3) = f;
  }
  return g;
}

/// A metric given pointwise; `evaluate` must be re-entrant.
struct MetricField {
  int dimension = 0;
  std::function<Eigen::MatrixXd(const Eigen::VectorXd&)> evaluate;
};

inline MetricField mfs_field(ChartConvention convention = kDefaultChartConvention) {
  return {4, [convention](const Eigen::VectorXd& x) -> Eigen::MatrixXd {
            return mfs_metric(ChartPoint{x(0), x(1), x(2), x(3)}, convention);
          }};
}

/// Gamma^c_ab stored densely, indexed (c, a, b).
class Christoffel {
 public:
  explicit Christoffel(int n) : n_(n), v_(static_cast<std::size_t>(n * n * n), 0.0) {}
  int dimension() const { return n_; }
  double operator()(int c, int a, int b) const { return v_[index(c, a, b)]; }
  double& operator()(int c, int a, int b) { return v_[index(c, a, b)]; }

  Christoffel& operator-=(const Christoffel& o) {
    for (std::size_t i = 0; i < v_.size(); ++i) v_[i] -= o.v_[i];
    return *this;
  }
  Christoffel& operator*=(double s) {
    for (auto& e : v_) e *= s;
    return *this;
  }

 private:
  std::size_t index(int c, int a, int b) const { return static_cast<std::size_t>((c * n_ + a) * n_ + b); }
  int n_;
  std::vector<double> v_;
};

inline constexpr double kDefaultFdStep = 1e-4;
inline constexpr double kMinSingularValue = 1e-10;

namespace detail {

inline Eigen::MatrixXd checked_inverse(const Eigen::MatrixXd& g) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(g);
  const double smin = svd.singularValues().minCoeff();
  if (!(smin > kMinSingularValue)) {
    throw ConditioningError("metric is near-singular (smallest singular value " + std::to_string(smin) + ")", smin);
  }
  return g.inverse();
}

inline void check_field(const MetricField& field, const Eigen::VectorXd& x) {
  if (field.dimension <= 0 || x.size() != field.dimension || !field.evaluate) {
    throw InvalidInput("MetricField: dimension mismatch or empty evaluator");
  }
}

}  // namespace detail

/// Gamma^c_ab = 1/2 g^cd (g_da,b + g_db,a - g_ab,d), derivatives by central
/// differences of step h. Symmetric in (a, b) by construction.
inline Christoffel christoffel(const MetricField& field, const Eigen::VectorXd& x, double h = kDefaultFdStep) {
  detail::check_field(field, x);
  const int n = field.dimension;
  const Eigen::MatrixXd ginv = detail::checked_inverse(field.evaluate(x));

  std::vector<Eigen::MatrixXd> dg(n);  // dg[d](a, b) = d g_ab / d x^d
  for (int d = 0; d < n; ++d) {
    Eigen::VectorXd xp = x, xm = x;
    xp(d) += h;
    xm(d) -= h;
    dg[d] = (field.evaluate(xp) - field.evaluate(xm)) / (2.0 * h);
  }

  Christoffel gamma(n);
  for (int c = 0; c < n; ++c) {
    for (int a = 0; a < n; ++a) {
      for (int b = a; b < n; ++b) {
        double s = 0.0;
        for (int d = 0; d < n; ++d) s += ginv(c, d) * (dg[b](d, a) + dg[a](d, b) - dg[d](a, b));
        gamma(c, a, b) = gamma(c, b, a) = 0.5 * s;
      }
    }
  }
  return gamma;
}

/// R = g^ab (Gamma^c_ab,c - Gamma^c_ac,b + Gamma^d_ab Gamma^c_cd - Gamma^d_ac Gamma^c_bd).
/// Derivatives of Gamma use nested central differences with one Richardson
/// step over (h, h/2).
inline double scalar_curvature_numeric(const MetricField& field, const Eigen::VectorXd& x,
                                       double h = kDefaultFdStep) {
  detail::check_field(field, x);
  const int n = field.dimension;
  const Eigen::MatrixXd ginv = detail::checked_inverse(field.evaluate(x));
  const Christoffel gamma = christoffel(field, x, h);

  auto central = [&](int e, double step) {
    Eigen::VectorXd xp = x, xm = x;
    xp(e) += step;
    xm(e) -= step;
    Christoffel d = christoffel(field, xp, h);
    d -= christoffel(field, xm, h);
    d *= 1.0 / (2.0 * step);
    return d;
  };

  std::vector<Christoffel> dgamma;  // dgamma[e](c, a, b) = d Gamma^c_ab / d x^e
  dgamma.reserve(n);
  for (int e = 0; e < n; ++e) {
    Christoffel coarse = central(e, h);
    Christoffel fine = central(e, h / 2);
    // (4 D(h/2) - D(h)) / 3
    fine *= 4.0;
    fine -= coarse;
    fine *= 1.0 / 3.0;
    dgamma.push_back(std::move(fine));
  }

  double r = 0.0;
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      if (ginv(a, b) == 0.0) continue;
      double ricci_ab = 0.0;
      for (int c = 0; c < n; ++c) {
        ricci_ab += dgamma[c](c, a, b) - dgamma[b](c, a, c);
        for (int d = 0; d < n; ++d) {
          ricci_ab += gamma(d, a, b) * gamma(c, c, d) - gamma(d, a, c) * gamma(c, b, d);
        }
      }
      r += ginv(a, b) * ricci_ab;
    }
  }
  return r;
}

}  // namespace qgeom
