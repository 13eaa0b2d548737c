#pragma once

// Curvature landscapes: ricci_closed_circuit over a 2-D parameter slice
// (theta_a, theta_b) in [0, 2 pi]^2, clipped for display with a clip mask.

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qgeom/ansatz.hpp"
#include "qgeom/errors.hpp"
#include "qgeom/harness/format.hpp"

namespace qgeom::harness {

inline constexpr int kDefaultGridResolution = 201;
inline constexpr double kDefaultClipLow = -5.0;
inline constexpr double kDefaultClipHigh = 10.0;

struct LandscapeGrid {
  AnsatzKind kind = AnsatzKind::HEA;
  int index_a = 0, index_b = 1;  // 0-based
  int resolution = kDefaultGridResolution;
  ParamVector fixed;                     // full parameter vector; scanned entries are overwritten
  Eigen::MatrixXd values;                // (i, j) at theta_a = axis(i), theta_b = axis(j), clipped
  Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic> clipped;
  double clip_low = kDefaultClipLow, clip_high = kDefaultClipHigh;

  double axis(int i) const { return kTwoPi * i / (resolution - 1); }
};

/// Curvature at theta, with the C = 1 singularity mapped to its limit -inf.
inline double ricci_or_limit(AnsatzKind kind, std::span<const double> theta) {
  try {
    return ricci_closed_circuit(kind, theta);
  } catch (const SingularityError&) {
    return -std::numeric_limits<double>::infinity();
  }
}

inline LandscapeGrid scan_landscape(AnsatzKind kind, int index_a, int index_b, ParamVector fixed,
                                    int resolution = kDefaultGridResolution, double clip_low = kDefaultClipLow,
                                    double clip_high = kDefaultClipHigh) {
  const int m = parameter_count(kind);
  if (index_a < 0 || index_a >= m || index_b < 0 || index_b >= m) {
    throw InvalidInput("scan index out of range for " + std::string(to_string(kind)) + " (has " + std::to_string(m) +
                       " parameters)");
  }
  if (index_a == index_b) throw InvalidInput("scan indices must differ");
  if (resolution < 2) throw InvalidInput("grid resolution must be >= 2");
  if (!(clip_low < clip_high)) throw InvalidInput("clip bounds must satisfy lo < hi");
  if (fixed.empty()) fixed.assign(static_cast<std::size_t>(m), 0.0);
  check_params(kind, fixed);

  LandscapeGrid g;
  g.kind = kind;
  g.index_a = index_a;
  g.index_b = index_b;
  g.resolution = resolution;
  g.fixed = fixed;
  g.clip_low = clip_low;
  g.clip_high = clip_high;
  g.values.resize(resolution, resolution);
  g.clipped.resize(resolution, resolution);

  ParamVector theta = fixed;
  for (int i = 0; i < resolution; ++i) {
    theta[static_cast<std::size_t>(index_a)] = g.axis(i);
    for (int j = 0; j < resolution; ++j) {
      theta[static_cast<std::size_t>(index_b)] = g.axis(j);
      const double raw = ricci_or_limit(kind, theta);
      g.clipped(i, j) = !(raw >= clip_low && raw <= clip_high);
      g.values(i, j) = std::clamp(raw, clip_low, clip_high);
    }
  }
  return g;
}

/// Long-format CSV: i, j, theta_a, theta_b, ricci, clipped (indices are grid positions).
inline void write_landscape_csv(std::ostream& os, const LandscapeGrid& g) {
  os << "i,j,theta_" << g.index_a + 1 << ",theta_" << g.index_b + 1 << ",ricci,clipped\n";
  for (int i = 0; i < g.resolution; ++i) {
    for (int j = 0; j < g.resolution; ++j) {
      os << i << ',' << j << ',' << format_double(g.axis(i)) << ',' << format_double(g.axis(j)) << ','
         << format_double(g.values(i, j)) << ',' << (g.clipped(i, j) ? 1 : 0) << '\n';
    }
  }
}

}  // namespace qgeom::harness
