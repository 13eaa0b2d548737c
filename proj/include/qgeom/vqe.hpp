#pragma once

// Two-qubit molecular-hydrogen Hamiltonian
//   H = nu1 I + nu2 Z1 + nu3 Z2 + nu4 Z1Z2 + nu5 X1X2 + nu6 Y1Y2
// with energies, analytic gradients and an exact-diagonalisation oracle.

#include <array>
#include <cmath>
#include <fstream>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "json.hpp"
#include "qgeom/ansatz.hpp"
#include "qgeom/errors.hpp"
#include "qgeom/hopf.hpp"
#include "qgeom/simulator.hpp"

namespace qgeom {

struct Hamiltonian {
  std::array<double, 6> nu{};  // Hartree; terms I, Z1, Z2, Z1Z2, X1X2, Y1Y2
  std::string label;

  static constexpr std::array<const char*, 6> kTerms = {"II", "ZI", "IZ", "ZZ", "XX", "YY"};

  PauliObservable observable() const {
    std::vector<PauliTerm> terms;
    for (std::size_t i = 0; i < nu.size(); ++i) terms.push_back({nu[i], kTerms[i]});
    return PauliObservable(std::move(terms));
  }

  Matrix4c matrix() const { return observable().matrix(); }
};

inline Hamiltonian hamiltonian_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("nu") || !j["nu"].is_array()) {
    throw InvalidInput("Hamiltonian JSON must be an object with a \"nu\" array");
  }
  const auto& arr = j["nu"];
  if (arr.size() != 6) throw InvalidInput("Hamiltonian \"nu\" must have exactly 6 entries, got " + std::to_string(arr.size()));
  Hamiltonian h;
  for (std::size_t i = 0; i < 6; ++i) {
    if (!arr[i].is_number()) throw InvalidInput("Hamiltonian \"nu\" entries must be numbers");
    h.nu[i] = arr[i].get<double>();
    if (!std::isfinite(h.nu[i])) throw InvalidInput("Hamiltonian coefficient is not finite");
  }
  if (j.contains("label")) {
    if (!j["label"].is_string()) throw InvalidInput("Hamiltonian \"label\" must be a string");
    h.label = j["label"].get<std::string>();
  }
  return h;
}

inline nlohmann::json to_json(const Hamiltonian& h) {
  return nlohmann::json{{"nu", h.nu}, {"label", h.label}};
}

inline Hamiltonian load_hamiltonian(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot read Hamiltonian file '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput("malformed Hamiltonian file '" + path + "': " + e.what());
  }
  return hamiltonian_from_json(j);
}

inline double energy(const Hamiltonian& h, const Statevector& state) { return expectation(state, h.matrix()); }

/// dE/dtheta_j = 2 Re <d_j Psi|H|Psi>
inline Eigen::VectorXd energy_gradient(AnsatzKind kind, std::span<const double> theta, const Hamiltonian& h) {
  const Vector4c psi = prepare_state(kind, theta).vector();
  const Jacobian jac = state_jacobian(kind, theta);
  return 2.0 * (jac.adjoint() * (h.matrix() * psi)).real();
}

struct GroundTruth {
  double energy = 0.0;
  Statevector state;
  double concurrence = 0.0;
};

namespace detail {

// Make the first non-negligible amplitude real and positive.
inline Vector4c fix_phase(Vector4c v) {
  for (int k = 0; k < 4; ++k) {
    if (std::abs(v(k)) > 1e-8) {
      v *= std::conj(v(k)) / std::abs(v(k));
      break;
    }
  }
  return v;
}

}  // namespace detail

/// Lowest eigenpair of the 4x4 Hamiltonian. A degenerate ground space is
/// resolved by projecting |00>, |01>, |10>, |11> in that order and keeping
/// the first non-vanishing projection.
inline GroundTruth exact_ground(const Hamiltonian& h) {
  Eigen::SelfAdjointEigenSolver<Matrix4c> es(h.matrix());
  const Eigen::Vector4d& lambda = es.eigenvalues();
  const double e0 = lambda(0);
  int degeneracy = 1;
  while (degeneracy < 4 && std::abs(lambda(degeneracy) - e0) <= 1e-10) ++degeneracy;

  Vector4c v;
  if (degeneracy == 1) {
    v = es.eigenvectors().col(0);
  } else {
    const auto basis = es.eigenvectors().leftCols(degeneracy);
    const Matrix4c projector = basis * basis.adjoint();
    for (int k = 0; k < 4; ++k) {
      const Vector4c p = projector.col(k);
      if (p.norm() > 1e-8) {
        v = p / p.norm();
        break;
      }
    }
  }
  v = detail::fix_phase(v);
  v /= v.norm();
  Statevector s(v);
  return {e0, s, concurrence(s)};
}

}  // namespace qgeom
