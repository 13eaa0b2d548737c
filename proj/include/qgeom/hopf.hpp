#pragma once

// Hopf fibration S^3 -> S^7 -> S^4 coordinates of a two-qubit pure state.
//
// Base: Cartesian x0..x4 on S^4 plus intrinsic angles (theta_A, phi_A) on the
// local sphere and (chi, xi) on the entanglement sphere. Fiber: the
// quaternionic overlaps q+- of psi_H = (alpha + beta j)|0> + (gamma + delta j)|1>
// with the frame vectors c+-.

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>

#include "qgeom/errors.hpp"
#include "qgeom/simulator.hpp"

namespace qgeom {

/// Pure-state concurrence 2|alpha delta - beta gamma|.
inline double concurrence(const Statevector& s) {
  return std::min(1.0, 2.0 * std::abs(s.alpha() * s.delta() - s.beta() * s.gamma()));
}

struct Quaternion {
  double w = 0.0, x = 0.0, y = 0.0, z = 0.0;  // w + x i + y j + z k

  /// a + b j for complex a, b (i of the complex numbers is the quaternion i).
  static Quaternion from_complex_pair(cplx a, cplx b) { return {a.real(), a.imag(), b.real(), b.imag()}; }

  Quaternion conj() const { return {w, -x, -y, -z}; }
  double norm2() const { return w * w + x * x + y * y + z * z; }
  double norm() const { return std::sqrt(norm2()); }
  std::array<double, 4> components() const { return {w, x, y, z}; }
};

inline Quaternion operator+(const Quaternion& a, const Quaternion& b) {
  return {a.w + b.w, a.x + b.x, a.y + b.y, a.z + b.z};
}
inline Quaternion operator-(const Quaternion& a, const Quaternion& b) {
  return {a.w - b.w, a.x - b.x, a.y - b.y, a.z - b.z};
}
inline Quaternion operator*(double s, const Quaternion& q) { return {s * q.w, s * q.x, s * q.y, s * q.z}; }
inline Quaternion operator*(const Quaternion& a, const Quaternion& b) {
  return {a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z, a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y,
          a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x, a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w};
}

/// Below this, an angle's defining sine is treated as zero and the angle as undefined.
inline constexpr double kChartTolerance = 1e-12;

struct HopfBase {
  std::array<double, 5> x{};
  double theta_a = 0.0;
  // Empty where the chart degenerates: theta_A in {0, pi} leaves phi_A and
  // chi undefined; phi_A in {0, pi} leaves chi undefined; x2 = x3 = 0 leaves xi
  // undefined.
  std::optional<double> phi_a;
  std::optional<double> chi;
  std::optional<double> xi;

  bool theta_a_singular() const { return !phi_a.has_value(); }

  /// x rebuilt from the angles; only meaningful when every angle is defined.
  std::array<double, 5> reconstruct() const {
    const double st = std::sin(theta_a);
    const double sp = std::sin(phi_a.value());
    const double sc = std::sin(chi.value());
    return {std::cos(theta_a), st * std::cos(*phi_a), st * sp * sc * std::cos(xi.value()),
            st * sp * sc * std::sin(*xi), st * sp * std::cos(*chi)};
  }
};

inline HopfBase hopf_base(const Statevector& s) {
  if (std::abs(s.norm() - 1.0) > kNormTolerance) throw InvalidInput("hopf_base: state is not normalized");
  const cplx a = s.alpha(), b = s.beta(), g = s.gamma(), d = s.delta();
  HopfBase out;
  const cplx local = std::conj(a) * g + std::conj(b) * d;
  const cplx ent = a * d - b * g;
  auto& x = out.x;
  x[0] = std::norm(a) + std::norm(b) - std::norm(g) - std::norm(d);
  x[1] = 2.0 * local.real();
  x[4] = 2.0 * local.imag();
  x[3] = 2.0 * ent.real();
  x[2] = -2.0 * ent.imag();

  auto clamped_acos = [](double v) { return std::acos(std::clamp(v, -1.0, 1.0)); };
  out.theta_a = clamped_acos(x[0]);

  // Radii of the nested spheres, from the Cartesian coordinates directly.
  const double r_1234 = std::sqrt(x[1] * x[1] + x[2] * x[2] + x[3] * x[3] + x[4] * x[4]);  // sin(theta_A)
  const double r_234 = std::sqrt(x[2] * x[2] + x[3] * x[3] + x[4] * x[4]);  // sin(theta_A) sin(phi_A)
  const double r_23 = std::hypot(x[2], x[3]);                                // concurrence

  if (r_1234 > kChartTolerance) {
    out.phi_a = clamped_acos(x[1] / r_1234);
    if (r_234 > kChartTolerance) out.chi = clamped_acos(x[4] / r_234);
  }
  if (r_23 > kChartTolerance) out.xi = std::atan2(x[3], x[2]);
  return out;
}

struct FiberQuaternion {
  cplx z, w;
  double gamma_plus = 0.0, gamma_minus = 0.0;
  Quaternion q_plus, q_minus;

  /// sqrt(1 - |z|^2 - |w|^2)
  double root() const { return std::sqrt(std::max(0.0, 1.0 - std::norm(z) - std::norm(w))); }

  /// Overlap with the non-orthogonal partner (gamma-, +gamma+ u)/sqrt2, the
  /// minus-branch convention of the published closed forms.
  Quaternion literal_minus() const { return (gamma_plus * gamma_minus) * q_plus - root() * q_minus; }
};

/// Fiber quaternions q+- = <c+-|psi_H>. c+ = (gamma+, gamma- u)/sqrt2 and
/// c- = (gamma-, -gamma+ u)/sqrt2 with u = (z + w j)/|z + w j| form an
/// orthonormal quaternionic frame, so ||q+||^2 + ||q-||^2 = 1.
inline FiberQuaternion hopf_fiber(const Statevector& s) {
  const HopfBase base = hopf_base(s);
  const auto& x = base.x;
  FiberQuaternion f;
  f.z = 0.5 * cplx(x[1], x[4]);
  f.w = 0.5 * cplx(x[3], -x[2]);
  const double r2 = std::norm(f.z) + std::norm(f.w);
  if (r2 > 1.0 + 1e-9) throw NumericalInconsistency("hopf_fiber: |z|^2 + |w|^2 exceeds 1");
  const double root = std::sqrt(std::max(0.0, 1.0 - r2));
  f.gamma_plus = std::sqrt(1.0 + root);
  f.gamma_minus = std::sqrt(std::max(0.0, 1.0 - root));

  // At the poles z = w = 0 the direction is undefined; u = 1 by convention.
  Quaternion u{1.0, 0.0, 0.0, 0.0};
  if (r2 > 0.0) u = (1.0 / std::sqrt(r2)) * Quaternion::from_complex_pair(f.z, f.w);

  const Quaternion upper = Quaternion::from_complex_pair(s.alpha(), s.beta());
  const Quaternion lower = u.conj() * Quaternion::from_complex_pair(s.gamma(), s.delta());
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  f.q_plus = inv_sqrt2 * (f.gamma_plus * upper + f.gamma_minus * lower);
  f.q_minus = inv_sqrt2 * (f.gamma_minus * upper - f.gamma_plus * lower);
  return f;
}

}  // namespace qgeom
