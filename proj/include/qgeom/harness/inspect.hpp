#pragma once

// JSON view of the Hopf base and fiber coordinates of an ansatz state.

#include <cmath>
#include <span>

#include "json.hpp"
#include "qgeom/ansatz.hpp"
#include "qgeom/hopf.hpp"

namespace qgeom::harness {

namespace detail {

inline nlohmann::ordered_json quaternion_json(const Quaternion& q) { return q.components(); }

inline nlohmann::ordered_json complex_json(cplx z) { return {z.real(), z.imag()}; }

}  // namespace detail

/// Undefined chart angles are null and listed under "chart_singular".
inline nlohmann::ordered_json hopf_report(AnsatzKind kind, std::span<const double> theta) {
  const Statevector psi = prepare_state(kind, theta);
  const HopfBase base = hopf_base(psi);
  const FiberQuaternion fiber = hopf_fiber(psi);

  nlohmann::ordered_json j;
  j["ansatz"] = to_string(kind);
  j["theta"] = std::vector<double>(theta.begin(), theta.end());
  nlohmann::ordered_json amps = nlohmann::ordered_json::array();
  for (int k = 0; k < 4; ++k) amps.push_back(detail::complex_json(psi[k]));
  j["amplitudes"] = amps;
  j["x"] = base.x;
  double sum = 0.0;
  for (double v : base.x) sum += v * v;
  j["sum_x2"] = sum;
  j["concurrence"] = concurrence(psi);

  nlohmann::ordered_json singular = nlohmann::ordered_json::array();
  auto angle = [&](const char* name, const std::optional<double>& v) {
    if (v) {
      j[name] = *v;
    } else {
      j[name] = nullptr;
      singular.push_back(name);
    }
  };
  j["theta_A"] = base.theta_a;
  angle("phi_A", base.phi_a);
  angle("chi", base.chi);
  angle("xi", base.xi);
  j["chart_singular"] = singular;

  j["fiber"] = {{"z", detail::complex_json(fiber.z)},
                {"w", detail::complex_json(fiber.w)},
                {"gamma_plus", fiber.gamma_plus},
                {"gamma_minus", fiber.gamma_minus},
                {"q_plus", detail::quaternion_json(fiber.q_plus)},
                {"q_minus", detail::quaternion_json(fiber.q_minus)},
                {"q_minus_literal", detail::quaternion_json(fiber.literal_minus())},
                {"norm2", fiber.q_plus.norm2() + fiber.q_minus.norm2()}};
  return j;
}

}  // namespace qgeom::harness
