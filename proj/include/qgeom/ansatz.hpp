#pragma once

// The five two-qubit circuit families, defined by their closed-form output
// states. Parameters are indexed 0..m-1 here; theta_1 of the usual notation
// is index 0.
//
// QGAN_AUG appends RX then RZ to each qubit of the QGAN block. Its parameter
// order is theta_1..theta_5 (QGAN), then RX q1, RX q2, RZ q1, RZ q2.

#include <algorithm>
#include <array>
#include <cmath>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "qgeom/detail/dual.hpp"
#include "qgeom/errors.hpp"
#include "qgeom/simulator.hpp"

namespace qgeom {

enum class AnsatzKind { HEA, LDCA, QGAN, SHEA, QGAN_AUG };

inline constexpr std::array<AnsatzKind, 5> kAllAnsatzKinds = {
    AnsatzKind::HEA, AnsatzKind::LDCA, AnsatzKind::QGAN, AnsatzKind::SHEA, AnsatzKind::QGAN_AUG};

inline constexpr int parameter_count(AnsatzKind kind) {
  switch (kind) {
    case AnsatzKind::HEA: return 4;
    case AnsatzKind::LDCA: return 5;
    case AnsatzKind::QGAN: return 5;
    case AnsatzKind::SHEA: return 6;
    case AnsatzKind::QGAN_AUG: return 9;
  }
  return 0;
}

inline std::string_view to_string(AnsatzKind kind) {
  switch (kind) {
    case AnsatzKind::HEA: return "hea";
    case AnsatzKind::LDCA: return "ldca";
    case AnsatzKind::QGAN: return "qgan";
    case AnsatzKind::SHEA: return "shea";
    case AnsatzKind::QGAN_AUG: return "qgan-aug";
  }
  return "?";
}

inline AnsatzKind parse_ansatz(std::string_view name) {
  for (auto k : kAllAnsatzKinds)
    if (to_string(k) == name) return k;
  throw InvalidInput("unknown ansatz '" + std::string(name) + "' (expected hea, ldca, qgan, shea, qgan-aug)");
}

using ParamVector = std::vector<double>;
using Jacobian = Eigen::Matrix<cplx, 4, Eigen::Dynamic>;

inline void check_params(AnsatzKind kind, std::span<const double> theta) {
  if (static_cast<int>(theta.size()) != parameter_count(kind)) {
    throw InvalidInput(std::string(to_string(kind)) + " expects " + std::to_string(parameter_count(kind)) +
                       " parameters, got " + std::to_string(theta.size()));
  }
  for (double t : theta)
    if (!std::isfinite(t)) throw InvalidInput("non-finite circuit parameter");
}

/// Index partition used by the block-diagonal metric approximation.
inline std::vector<std::vector<int>> metric_blocks(AnsatzKind kind) {
  switch (kind) {
    case AnsatzKind::HEA: return {{0, 1}, {2, 3}};
    case AnsatzKind::LDCA: return {{0, 1}, {2}, {3}, {4}};
    case AnsatzKind::QGAN: return {{0, 1}, {2, 3}, {4}};
    case AnsatzKind::SHEA: return {{0, 1}, {2}, {3}, {4, 5}};
    case AnsatzKind::QGAN_AUG: return {{0, 1}, {2, 3}, {4}, {5, 6}, {7, 8}};
  }
  return {};
}

namespace detail {

template <class T>
using Amps = std::array<Cx<T>, 4>;

template <class T>
Amps<T> hea_map(std::span<const T> t) {
  using std::cos;
  using std::sin;
  const T c1 = cos(t[0]), s1 = sin(t[0]), c3 = cos(t[2]), s3 = sin(t[2]);
  const T sum = t[1] + t[3], diff = t[1] - t[3];
  const T cs = cos(sum), ss = sin(sum), cd = cos(diff), sd = sin(diff);
  return {real_cx<T>(c1 * c3 * cs - s1 * s3 * sd), real_cx<T>(ss * c1 * c3 - s1 * s3 * cd),
          real_cx<T>(s3 * c1 * cs + s1 * sd * c3), real_cx<T>(s1 * c3 * cd + s3 * ss * c1)};
}

template <class T>
Amps<T> ldca_map(std::span<const T> t) {
  using std::cos;
  using std::sin;
  const Cx<T> phase = cis<T>(T(-0.5) * (t[0] - t[1] - t[3]));
  const T c3 = cos(t[2]), s3 = sin(t[2]), c5 = cos(t[4]), s5 = sin(t[4]);
  const Cx<T> b{c3 * c5, -(s3 * s5)};
  const Cx<T> g{s5 * c3, s3 * c5};
  return {Cx<T>{}, phase * b, -(phase * g), Cx<T>{}};
}

template <class T>
Amps<T> qgan_map(std::span<const T> t) {
  using std::cos;
  using std::sin;
  const T h1 = T(0.5) * t[0], h2 = T(0.5) * t[1];
  const T c1 = cos(h1), s1 = sin(h1), c2 = cos(h2), s2 = sin(h2);
  const T p3 = t[2], p4 = t[3], p5 = t[4];
  return {(c1 * c2) * cis<T>(T(-0.5) * (p3 + p4 + p5)),
          minus_i((s2 * c1) * cis<T>(T(-0.5) * (p3 - p4 - p5))),
          minus_i((s1 * c2) * cis<T>(T(0.5) * (p3 - p4 + p5))),
          -((s1 * s2) * cis<T>(T(0.5) * (p3 + p4 - p5)))};
}

template <class T>
Amps<T> shea_map(std::span<const T> t) {
  using std::cos;
  using std::sin;
  const T c1 = cos(T(0.5) * t[0]), s1 = sin(T(0.5) * t[0]);
  const T c2 = cos(T(0.5) * t[1]), s2 = sin(T(0.5) * t[1]);
  const T c3 = cos(T(0.5) * t[2]), s3 = sin(T(0.5) * t[2]);
  const T p5 = t[4], p6 = t[5];
  return {minus_i((s2 * c1) * cis<T>(T(-0.5) * (p5 + p6))),
          cis<T>(T(-0.5) * (p5 - p6)) * Cx<T>{c1 * c2 * c3, -(s1 * s2 * s3)},
          cis<T>(T(0.5) * (p5 - p6)) * Cx<T>{-(s1 * s2 * c3), s3 * c1 * c2},
          minus_i((s1 * c2) * cis<T>(T(-0.25) * (t[3] - T(2.0) * (p5 + p6))))};
}

// In-place single-qubit rotations on the amplitude array (qubit 1 or 2).
template <class T>
void apply_rx(Amps<T>& a, int qubit, const T& angle) {
  using std::cos;
  using std::sin;
  const T c = cos(T(0.5) * angle), s = sin(T(0.5) * angle);
  const int stride = qubit == 1 ? 2 : 1;
  for (int base : {0, qubit == 1 ? 1 : 2}) {
    const Cx<T> a0 = a[base], a1 = a[base + stride];
    a[base] = c * a0 + minus_i(s * a1);
    a[base + stride] = minus_i(s * a0) + c * a1;
  }
}

template <class T>
void apply_rz(Amps<T>& a, int qubit, const T& angle) {
  const Cx<T> lo = cis<T>(T(-0.5) * angle), hi = cis<T>(T(0.5) * angle);
  for (int k = 0; k < 4; ++k) {
    const bool bit = qubit == 1 ? (k >> 1) & 1 : k & 1;
    a[k] = (bit ? hi : lo) * a[k];
  }
}

template <class T>
Amps<T> qgan_aug_map(std::span<const T> t) {
  Amps<T> a = qgan_map<T>(t.first(5));
  apply_rx(a, 1, t[5]);
  apply_rx(a, 2, t[6]);
  apply_rz(a, 1, t[7]);
  apply_rz(a, 2, t[8]);
  return a;
}

template <class T>
Amps<T> state_map(AnsatzKind kind, std::span<const T> t) {
  switch (kind) {
    case AnsatzKind::HEA: return hea_map<T>(t);
    case AnsatzKind::LDCA: return ldca_map<T>(t);
    case AnsatzKind::QGAN: return qgan_map<T>(t);
    case AnsatzKind::SHEA: return shea_map<T>(t);
    case AnsatzKind::QGAN_AUG: return qgan_aug_map<T>(t);
  }
  return {};
}

}  // namespace detail

inline Statevector prepare_state(AnsatzKind kind, std::span<const double> theta) {
  check_params(kind, theta);
  const auto a = detail::state_map<double>(kind, theta);
  return Statevector(std::array<cplx, 4>{cplx(a[0].re, a[0].im), cplx(a[1].re, a[1].im), cplx(a[2].re, a[2].im),
                                          cplx(a[3].re, a[3].im)});
}

/// Column j is d|Psi(theta)>/d theta_j, exact (forward-mode through the closed form).
inline Jacobian state_jacobian(AnsatzKind kind, std::span<const double> theta) {
  check_params(kind, theta);
  const int m = parameter_count(kind);
  Jacobian jac(4, m);
  std::vector<detail::Dual> seeded(theta.begin(), theta.end());
  for (int j = 0; j < m; ++j) {
    seeded[j].d = 1.0;
    const auto a = detail::state_map<detail::Dual>(kind, seeded);
    for (int k = 0; k < 4; ++k) jac(k, j) = cplx(a[k].re.d, a[k].im.d);
    seeded[j].d = 0.0;
  }
  return jac;
}

// ---------------------------------------------------------------------------
// Closed-form entanglement and curvature

namespace detail {

// Signed concurrence arguments of the HEA/QGAN forms; C = |s|.
inline double hea_signed_concurrence(std::span<const double> t) {
  return std::sin(2 * t[0]) * std::cos(2 * t[1]);
}
inline double qgan_signed_concurrence(std::span<const double> t) {
  return std::sin(t[0]) * std::sin(t[1]) * std::sin(t[4]);
}
// N = 4 C^2 for sHEA.
inline double shea_four_c_squared(std::span<const double> t) {
  const double a = std::sin(t[0]) * std::sin(t[1]) * (std::cos(t[2]) - std::cos(t[3] / 4));
  const double b = std::sin(t[2]) * (std::cos(t[0]) * std::cos(t[1]) + 1.0) -
                   std::sin(t[0]) * std::sin(t[1]) * std::sin(t[3] / 4);
  return a * a + b * b;
}

}  // namespace detail

inline double concurrence_closed(AnsatzKind kind, std::span<const double> theta) {
  check_params(kind, theta);
  double c = 0.0;
  switch (kind) {
    case AnsatzKind::HEA: c = std::abs(detail::hea_signed_concurrence(theta)); break;
    case AnsatzKind::LDCA: {
      const double r = 3.0 - 2.0 * std::cos(4 * theta[2]) * std::pow(std::cos(2 * theta[4]), 2) -
                       std::cos(4 * theta[4]);
      c = 0.5 * std::sqrt(std::max(0.0, r));
      break;
    }
    case AnsatzKind::QGAN:
    case AnsatzKind::QGAN_AUG: c = std::abs(detail::qgan_signed_concurrence(theta)); break;
    case AnsatzKind::SHEA: c = 0.5 * std::sqrt(detail::shea_four_c_squared(theta)); break;
  }
  return std::min(c, 1.0);
}

/// Per-circuit scalar curvature of the base-manifold metric, in the circuit
/// parameters. Throws SingularityError where C = 1.
inline double ricci_closed_circuit(AnsatzKind kind, std::span<const double> theta) {
  check_params(kind, theta);
  constexpr double kTol = 1e-12;
  auto from_signed = [&](double s) {
    if (std::abs(std::abs(s) - 1.0) <= kTol) throw SingularityError("ricci: maximally entangled point (C = 1)");
    return 12.0 - 1.0 / (s + 1.0) + 1.0 / (s - 1.0);
  };
  switch (kind) {
    case AnsatzKind::HEA: return from_signed(detail::hea_signed_concurrence(theta));
    case AnsatzKind::QGAN:
    case AnsatzKind::QGAN_AUG: return from_signed(detail::qgan_signed_concurrence(theta));
    case AnsatzKind::LDCA: {
      const double p = std::cos(2 * theta[2]) * std::cos(2 * theta[4]);
      if (p * p <= kTol) throw SingularityError("ricci: maximally entangled point (C = 1)");
      return 12.0 - 2.0 / (p * p);
    }
    case AnsatzKind::SHEA: {
      const double n = detail::shea_four_c_squared(theta);
      if (std::abs(n - 4.0) <= 4 * kTol) throw SingularityError("ricci: maximally entangled point (C = 1)");
      return (12.0 * n - 40.0) / (n - 4.0);
    }
  }
  return 0.0;
}

}  // namespace qgeom
