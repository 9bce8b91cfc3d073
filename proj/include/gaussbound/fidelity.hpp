// Copyright 2025 The gaussbound Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "gaussbound/states.hpp"

namespace gaussbound {

/// Bures-Uhlmann fidelity of two displaced squeezed pure states,
///   F = 2 sqrt(a1 a2 / G) exp(-U/G),
/// with G = (a1+a2)^2 + (b1-b2)^2 and U the positive quadratic form in the
/// displacement differences (dx, dp). Symmetric, equal to 1 iff the
/// parameters coincide.
inline double fidelity_pure(const PureGaussianState& s1, const PureGaussianState& s2) {
  const double g = (s1.a + s2.a) * (s1.a + s2.a) + (s1.b - s2.b) * (s1.b - s2.b);
  if (!(g > 0.0)) {  // cannot happen for valid states
    throw std::runtime_error("fidelity_pure: normalization G underflowed");
  }
  const double dx = s2.x0 - s1.x0;
  const double dp = s2.p0 - s1.p0;
  double u = (s1.a + s2.a) * dp * dp + 2.0 * (s1.a * s2.b + s2.a * s1.b) * dp * dx +
             (s1.a * s2.a * (s1.a + s2.a) + s1.a * s2.b * s2.b + s2.a * s1.b * s1.b) * dx * dx;
  if (u < -1e-12 * g) {
    throw std::runtime_error("fidelity_pure: quadratic form U lost positivity");
  }
  u = std::max(u, 0.0);
  const double f = 2.0 * std::sqrt(s1.a * s2.a / g) * std::exp(-u / g);
  return std::min(f, 1.0);
}

/// Fidelity of two homogeneous mixed Gaussian states,
///   F = 2 sqrt(a1 a2 (1-z1)(1-z2)) / (sqrt(G - (a1 z1 - a2 z2)^2) - 2 sqrt(a1 a2 z1 z2)).
/// Reduces exactly to fidelity_pure (zero displacements) at z1 = z2 = 0.
inline double fidelity_mixed(const MixedGaussianState& s1, const MixedGaussianState& s2) {
  const double g = (s1.a + s2.a) * (s1.a + s2.a) + (s1.b - s2.b) * (s1.b - s2.b);
  const double dzeta = s1.a * s1.zeta - s2.a * s2.zeta;
  const double radicand = g - dzeta * dzeta;
  if (radicand <= 0.0) {
    throw std::domain_error("fidelity_mixed: radicand G - (a1 z1 - a2 z2)^2 is not positive (" +
                            std::to_string(radicand) + ")");
  }
  const double denom =
      std::sqrt(radicand) - 2.0 * std::sqrt(s1.a * s2.a * s1.zeta * s2.zeta);
  if (denom <= 0.0) {
    throw std::domain_error("fidelity_mixed: denominator is not positive (" +
                            std::to_string(denom) + ")");
  }
  const double num =
      2.0 * std::sqrt(s1.a * s2.a * (1.0 - s1.zeta) * (1.0 - s2.zeta));
  return std::min(num / denom, 1.0);
}

/// Bures distance B = sqrt(2 - 2 sqrt(F)); 0 at F = 1, monotone decreasing in F.
inline double bures_distance(double f) {
  if (!(f > 0.0) || f > 1.0) {
    throw std::domain_error("bures_distance: fidelity must lie in (0, 1]");
  }
  return std::sqrt(2.0 - 2.0 * std::sqrt(f));
}

/// Energies of two states together with the relative change calE = E2/E1 - 1
/// and the symmetric relative energy difference Y = |E2-E1|/sqrt(E1 E2).
struct EnergyComparison {
  double e1;
  double e2;
  double cal_e;
  double y;
};

inline EnergyComparison compare_energies(double e1, double e2) {
  if (!(e1 > 0.0) || !(e2 > 0.0)) {
    throw std::domain_error("compare_energies: energies must be positive");
  }
  return {e1, e2, e2 / e1 - 1.0, std::abs(e2 - e1) / std::sqrt(e1 * e2)};
}

/// Y as a function of the energy ratio r = E2/E1: |r - 1|/sqrt(r).
inline double ratio_to_y(double r) {
  if (!(r > 0.0)) throw std::domain_error("ratio_to_y: ratio must be positive");
  return std::abs(r - 1.0) / std::sqrt(r);
}

/// Largest energy ratio compatible with a symmetric difference y:
///   r = 1 + y^2/2 + y sqrt(1 + y^2/4).
/// Inverse of ratio_to_y on r >= 1.
inline double y_to_max_ratio(double y) {
  if (y < 0.0 || !std::isfinite(y)) {
    throw std::domain_error("y_to_max_ratio: y must be >= 0");
  }
  return 1.0 + 0.5 * y * y + y * std::sqrt(1.0 + 0.25 * y * y);
}

}  // namespace gaussbound
