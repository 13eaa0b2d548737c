#pragma once

// Two-qubit statevector core: amplitudes, rotation gates, Pauli observables.
//
// Basis ordering is |00>, |01>, |10>, |11> with qubit 1 the left tensor
// factor, so the amplitudes are (alpha, beta, gamma, delta) of
//   psi = alpha|00> + beta|01> + gamma|10> + delta|11>.

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "qgeom/errors.hpp"

namespace qgeom {

using cplx = std::complex<double>;
using Matrix2c = Eigen::Matrix2cd;
using Matrix4c = Eigen::Matrix4cd;
using Vector4c = Eigen::Vector4cd;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

/// Tolerance on | ||psi|| - 1 | accepted at API boundaries.
inline constexpr double kNormTolerance = 1e-10;

class Statevector {
 public:
  static constexpr std::size_t kDim = 4;

  /// |00>
  Statevector() : amp_{cplx{1.0, 0.0}, cplx{}, cplx{}, cplx{}} {}

  /// Takes amplitudes that are already unit norm (within kNormTolerance).
  explicit Statevector(const std::array<cplx, kDim>& amplitudes) : amp_(amplitudes) {
    for (const auto& a : amp_) {
      if (!std::isfinite(a.real()) || !std::isfinite(a.imag())) {
        throw InvalidInput("Statevector: non-finite amplitude");
      }
    }
    if (std::abs(norm() - 1.0) > kNormTolerance) {
      throw InvalidInput("Statevector: amplitudes are not normalized (norm = " +
                         std::to_string(norm()) + ")");
    }
  }

  explicit Statevector(const Vector4c& v) : Statevector(std::array<cplx, kDim>{v(0), v(1), v(2), v(3)}) {}

  static Statevector normalized(std::array<cplx, kDim> amplitudes) {
    double n2 = 0.0;
    for (const auto& a : amplitudes) n2 += std::norm(a);
    if (!(n2 > 0.0) || !std::isfinite(n2)) {
      throw InvalidInput("Statevector::normalized: zero or non-finite vector");
    }
    const double inv = 1.0 / std::sqrt(n2);
    for (auto& a : amplitudes) a *= inv;
    return Statevector(amplitudes);
  }

  /// Computational basis ket by index 0..3 (|00>, |01>, |10>, |11>).
  static Statevector basis(std::size_t index) {
    if (index >= kDim) throw InvalidInput("Statevector::basis: index out of range");
    std::array<cplx, kDim> a{};
    a[index] = 1.0;
    return Statevector(a);
  }

  const cplx& operator[](std::size_t i) const { return amp_[i]; }
  const std::array<cplx, kDim>& amplitudes() const { return amp_; }

  const cplx& alpha() const { return amp_[0]; }
  const cplx& beta() const { return amp_[1]; }
  const cplx& gamma() const { return amp_[2]; }
  const cplx& delta() const { return amp_[3]; }

  double norm() const {
    double n2 = 0.0;
    for (const auto& a : amp_) n2 += std::norm(a);
    return std::sqrt(n2);
  }

  Vector4c vector() const { return Vector4c(amp_[0], amp_[1], amp_[2], amp_[3]); }

 private:
  std::array<cplx, kDim> amp_;
};

// ---------------------------------------------------------------------------
// Gates

enum class Generator { X, Y, Z, XX, YY, ZZ, XY, YX, ISWAP_DAG, CPHASE };

inline bool is_single_qubit(Generator g) {
  return g == Generator::X || g == Generator::Y || g == Generator::Z;
}

inline Generator parse_generator(std::string_view label) {
  if (label == "X") return Generator::X;
  if (label == "Y") return Generator::Y;
  if (label == "Z") return Generator::Z;
  if (label == "XX") return Generator::XX;
  if (label == "YY") return Generator::YY;
  if (label == "ZZ") return Generator::ZZ;
  if (label == "XY") return Generator::XY;
  if (label == "YX") return Generator::YX;
  if (label == "ISWAP_DAG") return Generator::ISWAP_DAG;
  if (label == "CPHASE") return Generator::CPHASE;
  throw InvalidInput("unknown gate generator '" + std::string(label) + "'");
}

/// A rotation R_P(angle) = exp(-i angle P / 2), or one of the two fixed-form
/// entanglers iSWAP(angle)^dagger and CPHASE(angle). Single-qubit gates act
/// on `target` (1 or 2); two-qubit gates act on both qubits.
struct Gate {
  Generator generator = Generator::Z;
  double angle = 0.0;
  int target = 1;

  Gate() = default;
  Gate(Generator g, double theta, int qubit = 1) : generator(g), angle(theta), target(qubit) {
    if (!std::isfinite(angle)) throw InvalidInput("Gate: non-finite angle");
    if (is_single_qubit(g) && qubit != 1 && qubit != 2) {
      throw InvalidInput("Gate: single-qubit target must be 1 or 2");
    }
  }

  static Gate from_label(std::string_view label, double theta, int qubit = 1) {
    return Gate(parse_generator(label), theta, qubit);
  }
};

inline Matrix2c pauli(char p) {
  Matrix2c m;
  switch (p) {
    case 'I': m << 1, 0, 0, 1; break;
    case 'X': m << 0, 1, 1, 0; break;
    case 'Y': m << 0, cplx(0, -1), cplx(0, 1), 0; break;
    case 'Z': m << 1, 0, 0, -1; break;
    default: throw InvalidInput(std::string("unknown Pauli '") + p + "'");
  }
  return m;
}

inline Matrix4c kron(const Matrix2c& a, const Matrix2c& b) {
  Matrix4c k;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c) k(2 * i + r, 2 * j + c) = a(i, j) * b(r, c);
  return k;
}

/// Two-qubit Pauli string, e.g. "ZI" = Z on qubit 1, "XX" = X (x) X.
inline Matrix4c pauli_string(std::string_view s) {
  if (s.size() != 2) throw InvalidInput("Pauli string must have length 2: '" + std::string(s) + "'");
  return kron(pauli(s[0]), pauli(s[1]));
}

/// exp(-i theta P / 2) for an involutory P (P^2 = I), in cos/sin form.
inline Matrix2c rotation(char p, double theta) {
  return std::cos(theta / 2) * Matrix2c::Identity() - cplx(0, std::sin(theta / 2)) * pauli(p);
}

inline Matrix4c gate_matrix(const Gate& g) {
  const double c = std::cos(g.angle / 2);
  const double s = std::sin(g.angle / 2);
  auto two_qubit = [&](std::string_view p) -> Matrix4c {
    return c * Matrix4c::Identity() - cplx(0, s) * pauli_string(p);
  };
  switch (g.generator) {
    case Generator::X:
    case Generator::Y:
    case Generator::Z: {
      const char p = g.generator == Generator::X ? 'X' : g.generator == Generator::Y ? 'Y' : 'Z';
      const Matrix2c r = rotation(p, g.angle);
      return g.target == 1 ? kron(r, Matrix2c::Identity()) : kron(Matrix2c::Identity(), r);
    }
    case Generator::XX: return two_qubit("XX");
    case Generator::YY: return two_qubit("YY");
    case Generator::ZZ: return two_qubit("ZZ");
    case Generator::XY: return two_qubit("XY");
    case Generator::YX: return two_qubit("YX");
    case Generator::ISWAP_DAG: {
      // (XX + YY)/2 swaps |01> and |10> and annihilates |00>, |11>.
      Matrix4c m = Matrix4c::Identity();
      m(1, 1) = m(2, 2) = std::cos(g.angle);
      m(1, 2) = m(2, 1) = cplx(0, -std::sin(g.angle));
      return m;
    }
    case Generator::CPHASE: {
      // (I - Z)(x)(I - Z)/4 = |11><11|
      Matrix4c m = Matrix4c::Identity();
      m(3, 3) = std::polar(1.0, -g.angle);
      return m;
    }
  }
  throw InvalidInput("gate_matrix: unhandled generator");
}

inline Statevector apply_gate(const Statevector& state, const Gate& gate) {
  const Vector4c out = gate_matrix(gate) * state.vector();
  return Statevector(out);
}

// ---------------------------------------------------------------------------
// Observables

struct PauliTerm {
  double coefficient = 0.0;
  std::string pauli;  // two characters from {I,X,Y,Z}, qubit 1 first
};

/// Real linear combination of two-qubit Pauli strings; Hermitian by construction.
class PauliObservable {
 public:
  PauliObservable() = default;
  explicit PauliObservable(std::vector<PauliTerm> terms) : terms_(std::move(terms)) {
    for (const auto& t : terms_) {
      if (!std::isfinite(t.coefficient)) throw InvalidInput("PauliObservable: non-finite coefficient");
      (void)pauli_string(t.pauli);  // validates the label
    }
  }

  const std::vector<PauliTerm>& terms() const { return terms_; }

  Matrix4c matrix() const {
    Matrix4c m = Matrix4c::Zero();
    for (const auto& t : terms_) m += t.coefficient * pauli_string(t.pauli);
    return m;
  }

 private:
  std::vector<PauliTerm> terms_;
};

/// <psi|O|psi>. The imaginary residue must vanish to 1e-12 and is discarded.
inline double expectation(const Statevector& state, const Matrix4c& hermitian) {
  if (std::abs(state.norm() - 1.0) > kNormTolerance) {
    throw InvalidInput("expectation: state is not normalized");
  }
  const Vector4c v = state.vector();
  const cplx e = v.dot(hermitian * v);  // dot() conjugates the left operand
  if (std::abs(e.imag()) > 1e-12 * std::max(1.0, hermitian.cwiseAbs().maxCoeff())) {
    throw NumericalInconsistency("expectation: non-real value for a Hermitian operator");
  }
  return e.real();
}

inline double expectation(const Statevector& state, const PauliObservable& obs) {
  return expectation(state, obs.matrix());
}

/// |<a|b>|, equal to 1 iff the states differ only by a global phase.
inline double fidelity_up_to_phase(const Statevector& a, const Statevector& b) {
  if (std::abs(a.norm() - 1.0) > kNormTolerance || std::abs(b.norm() - 1.0) > kNormTolerance) {
    throw InvalidInput("fidelity_up_to_phase: states must be normalized");
  }
  return std::min(1.0, std::abs(a.vector().dot(b.vector())));
}

}  // namespace qgeom
