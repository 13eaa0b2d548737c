#pragma once

// Independent reference computations used only by the tests: matrix
// exponentials for gates, central finite differences, and brute-force
// amplitude formulas.

#include <array>
#include <cmath>
#include <complex>
#include <random>
#include <span>
#include <vector>

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include "qgeom/ansatz.hpp"
#include "qgeom/simulator.hpp"
#include "qgeom/vqe.hpp"

namespace oracle {

using qgeom::cplx;
using qgeom::Matrix4c;
using qgeom::Vector4c;

inline Eigen::Matrix2cd pauli(char p) {
  const cplx i(0, 1);
  Eigen::Matrix2cd m;
  switch (p) {
    case 'X': m << 0, 1, 1, 0; break;
    case 'Y': m << 0, -i, i, 0; break;
    case 'Z': m << 1, 0, 0, -1; break;
    default: m = Eigen::Matrix2cd::Identity();
  }
  return m;
}

/// a (x) b with a on qubit 1 (the left factor).
inline Matrix4c kron(const Eigen::Matrix2cd& a, const Eigen::Matrix2cd& b) {
  Matrix4c k;
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) k.block<2, 2>(2 * r, 2 * c) = a(r, c) * b;
  return k;
}

/// exp(-i theta G / 2) by the matrix exponential.
inline Matrix4c expm_rotation(const Matrix4c& generator, double theta) {
  const Matrix4c a = cplx(0, -0.5 * theta) * generator;
  return a.exp();
}

/// 2 |alpha delta - beta gamma| straight from the amplitudes.
inline double concurrence(const Vector4c& v) { return 2.0 * std::abs(v(0) * v(3) - v(1) * v(2)); }

inline Vector4c state(qgeom::AnsatzKind kind, std::span<const double> theta) {
  return qgeom::prepare_state(kind, theta).vector();
}

inline qgeom::Jacobian fd_jacobian(qgeom::AnsatzKind kind, std::vector<double> theta, double h = 1e-5) {
  qgeom::Jacobian j(4, static_cast<Eigen::Index>(theta.size()));
  for (std::size_t k = 0; k < theta.size(); ++k) {
    const double t0 = theta[k];
    theta[k] = t0 + h;
    const Vector4c p = state(kind, theta);
    theta[k] = t0 - h;
    const Vector4c m = state(kind, theta);
    theta[k] = t0;
    j.col(static_cast<Eigen::Index>(k)) = (p - m) / (2 * h);
  }
  return j;
}

inline double energy(const qgeom::Hamiltonian& h, const Vector4c& v) {
  Matrix4c m = Matrix4c::Zero();
  const char* terms[6] = {"II", "ZI", "IZ", "ZZ", "XX", "YY"};
  for (int t = 0; t < 6; ++t) m += h.nu[static_cast<std::size_t>(t)] * kron(pauli(terms[t][0]), pauli(terms[t][1]));
  return v.dot(m * v).real();
}

inline Eigen::VectorXd fd_energy_gradient(qgeom::AnsatzKind kind, std::vector<double> theta,
                                          const qgeom::Hamiltonian& h, double step = 1e-5) {
  Eigen::VectorXd g(static_cast<Eigen::Index>(theta.size()));
  for (std::size_t k = 0; k < theta.size(); ++k) {
    const double t0 = theta[k];
    theta[k] = t0 + step;
    const double ep = energy(h, state(kind, theta));
    theta[k] = t0 - step;
    const double em = energy(h, state(kind, theta));
    theta[k] = t0;
    g(static_cast<Eigen::Index>(k)) = (ep - em) / (2 * step);
  }
  return g;
}

inline std::vector<double> random_theta(qgeom::AnsatzKind kind, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> d(0.0, 2 * M_PI);
  std::vector<double> t(static_cast<std::size_t>(qgeom::parameter_count(kind)));
  for (auto& v : t) v = d(rng);
  return t;
}

inline qgeom::Statevector random_state(std::mt19937_64& rng) {
  std::normal_distribution<double> n;
  Vector4c v;
  for (int k = 0; k < 4; ++k) v(k) = cplx(n(rng), n(rng));
  v /= v.norm();
  return qgeom::Statevector(v);
}

inline double ricci_formula(double c) { return 2.0 * (6.0 * c * c - 5.0) / (c * c - 1.0); }

}  // namespace oracle
