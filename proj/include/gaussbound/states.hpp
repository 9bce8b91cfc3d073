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

#include <cmath>
#include <stdexcept>
#include <string>

namespace gaussbound {

/// Parameter box accepted by the state constructors. Wide enough for the
/// extreme-squeezing limits exercised by the bounds, narrow enough that the
/// energy formulas cannot overflow in double precision.
namespace valid_box {
inline constexpr double a_min = 1e-4;
inline constexpr double a_max = 1e4;
inline constexpr double b_abs_max = 1e4;
inline constexpr double disp_abs_max = 1e4;
inline constexpr double zeta_max = 1.0 - 1e-9;
}  // namespace valid_box

namespace detail {

inline void require(bool ok, const std::string& msg) {
  if (!ok) throw std::invalid_argument(msg);
}

inline void check_scale(double a, const char* who) {
  require(std::isfinite(a) && a >= valid_box::a_min && a <= valid_box::a_max,
          std::string(who) + ": a must lie in [1e-4, 1e4], got " + std::to_string(a));
}

}  // namespace detail

/// Displaced squeezed pure state with wave function
///   psi(x) = (a/pi)^{1/4} exp[-(a+ib)(x-x0)^2/2 + i p0 x],   a > 0.
struct PureGaussianState {
  double a;
  double b;
  double x0;
  double p0;

  explicit PureGaussianState(double a_, double b_ = 0.0, double x0_ = 0.0, double p0_ = 0.0)
      : a(a_), b(b_), x0(x0_), p0(p0_) {
    detail::check_scale(a, "PureGaussianState");
    detail::require(std::isfinite(b) && std::abs(b) <= valid_box::b_abs_max,
                    "PureGaussianState: |b| must be <= 1e4");
    detail::require(std::isfinite(x0) && std::abs(x0) <= valid_box::disp_abs_max,
                    "PureGaussianState: |x0| must be <= 1e4");
    detail::require(std::isfinite(p0) && std::abs(p0) <= valid_box::disp_abs_max,
                    "PureGaussianState: |p0| must be <= 1e4");
  }
};

/// Homogeneous (zero-displacement) mixed Gaussian state with kernel
///   rho(x,y) = sqrt((a - a*zeta)/pi)
///              exp[-(a+ib)x^2/2 - (a-ib)y^2/2 + a*zeta*x*y],
/// where 0 <= zeta < 1 controls the purity. zeta = 0 reproduces the
/// undisplaced pure state with the same (a, b).
struct MixedGaussianState {
  double a;
  double b;
  double zeta;

  explicit MixedGaussianState(double a_, double b_ = 0.0, double zeta_ = 0.0)
      : a(a_), b(b_), zeta(zeta_) {
    detail::check_scale(a, "MixedGaussianState");
    detail::require(std::isfinite(b) && std::abs(b) <= valid_box::b_abs_max,
                    "MixedGaussianState: |b| must be <= 1e4");
    detail::require(std::isfinite(zeta) && zeta >= 0.0 && zeta <= valid_box::zeta_max,
                    "MixedGaussianState: zeta must lie in [0, 1)");
  }
};

/// Centered second moments of the quadratures.
struct SecondMoments {
  double sxx;
  double spp;
  double sxp;
};

/// Mean oscillator energy <H> = <p^2 + x^2>/2 of a pure state (hbar = m = omega = 1).
inline double energy_pure(const PureGaussianState& s) {
  return 0.5 * (s.p0 * s.p0 + s.x0 * s.x0) + (1.0 + s.a * s.a + s.b * s.b) / (4.0 * s.a);
}

/// Mean oscillator energy of a homogeneous mixed state. Grows without bound
/// as zeta -> 1; zeta = 1 itself is not a representable state.
inline double energy_mixed(const MixedGaussianState& s) {
  return (1.0 + s.a * s.a * (1.0 - s.zeta * s.zeta) + s.b * s.b) /
         (4.0 * s.a * (1.0 - s.zeta));
}

/// Purity mu = Tr(rho^2) = sqrt((1-zeta)/(1+zeta)), in (0, 1].
inline double purity(const MixedGaussianState& s) {
  return std::sqrt((1.0 - s.zeta) / (1.0 + s.zeta));
}

/// Inverse of purity(): zeta = (1 - mu^2)/(1 + mu^2).
inline double zeta_from_purity(double mu) {
  detail::require(std::isfinite(mu) && mu > 0.0 && mu <= 1.0,
                  "zeta_from_purity: mu must lie in (0, 1]");
  return (1.0 - mu * mu) / (1.0 + mu * mu);
}

inline SecondMoments moments(const PureGaussianState& s) {
  return {1.0 / (2.0 * s.a), (s.a * s.a + s.b * s.b) / (2.0 * s.a), -s.b / (2.0 * s.a)};
}

inline SecondMoments moments(const MixedGaussianState& s) {
  const double w = 2.0 * s.a * (1.0 - s.zeta);
  return {1.0 / w, (s.a * s.a * (1.0 - s.zeta * s.zeta) + s.b * s.b) / w, -s.b / w};
}

}  // namespace gaussbound
