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

#include "gaussbound/fidelity.hpp"
#include "gaussbound/states.hpp"

namespace gaussbound {

// Families of Gaussian state pairs for which a closed-form tradeoff between
// fidelity and the symmetric relative energy difference exists.
//
//   coherent              a = 1, c = 0, different displacements only
//   displaced_equal_shape equal arbitrary shape, different displacements,
//                         in the strong-squeezing limit (kappa -> 2)
//   fixed_shape           equal shape (a, c = b/a) held fixed, different
//                         displacements; interpolates between the two above
//   pure_general          arbitrary pure pairs (undisplaced extremals)
//   mixed_equal_purity    both states mixed with the same zeta
//   supermixed            the zeta -> 1 limit of mixed_equal_purity
//   pure_vs_mixed         one pure state against one zeta-mixed state
enum class FamilyTag {
  coherent,
  displaced_equal_shape,
  fixed_shape,
  pure_general,
  mixed_equal_purity,
  supermixed,
  pure_vs_mixed,
};

struct BoundFamily {
  FamilyTag tag;
  double a = 1.0;     // fixed_shape only
  double c = 0.0;     // fixed_shape only
  double zeta = 0.0;  // mixed_equal_purity / pure_vs_mixed only

  static BoundFamily coherent() { return {FamilyTag::coherent}; }
  static BoundFamily displaced_equal_shape() { return {FamilyTag::displaced_equal_shape}; }
  static BoundFamily pure_general() { return {FamilyTag::pure_general}; }
  static BoundFamily supermixed() { return {FamilyTag::supermixed}; }
  static BoundFamily fixed_shape(double a, double c) {
    if (!(a > 0.0) || !std::isfinite(a) || !std::isfinite(c)) {
      throw std::invalid_argument("BoundFamily::fixed_shape: requires a > 0 and finite c");
    }
    return {FamilyTag::fixed_shape, a, c};
  }
  static BoundFamily mixed_equal_purity(double zeta) {
    if (!(zeta >= 0.0) || zeta >= 1.0) {
      throw std::invalid_argument("BoundFamily::mixed_equal_purity: zeta must lie in [0, 1)");
    }
    return {FamilyTag::mixed_equal_purity, 1.0, 0.0, zeta};
  }
  static BoundFamily pure_vs_mixed(double zeta) {
    if (!(zeta >= 0.0) || zeta >= 1.0) {
      throw std::invalid_argument("BoundFamily::pure_vs_mixed: zeta must lie in [0, 1)");
    }
    return {FamilyTag::pure_vs_mixed, 1.0, 0.0, zeta};
  }
};

inline const char* family_name(FamilyTag tag) {
  switch (tag) {
    case FamilyTag::coherent: return "coherent";
    case FamilyTag::displaced_equal_shape: return "displaced_equal_shape";
    case FamilyTag::fixed_shape: return "fixed_shape";
    case FamilyTag::pure_general: return "pure_general";
    case FamilyTag::mixed_equal_purity: return "mixed_equal_purity";
    case FamilyTag::supermixed: return "supermixed";
    case FamilyTag::pure_vs_mixed: return "pure_vs_mixed";
  }
  return "unknown";
}

/// Relative-energy-change interval (calE_min, calE_max) compatible with a
/// bound; calE_min in (-1, 0], calE_max >= 0.
struct EnergyInterval {
  double cal_e_min;
  double cal_e_max;
};

namespace detail {

inline void check_open_unit(double f, const char* who) {
  if (!(f > 0.0) || !(f < 1.0) || !std::isfinite(f)) {
    throw std::domain_error(std::string(who) + ": fidelity must lie in (0,1)");
  }
}

// 1 - F^2 factored as (1-F)(1+F) to keep precision near F = 1.
inline double one_minus_f2(double f) { return (1.0 - f) * (1.0 + f); }

}  // namespace detail

/// kappa(a, c) = 1 + sqrt(1 - xi), xi = 4a^2 / [a^2(1+c^2) + 1]^2.
/// Equals 1 for the coherent shape (a=1, c=0) and tends to 2 for strong
/// squeezing (a -> 0, a -> infinity, or |c| -> infinity).
inline double fixed_shape_kappa(double a, double c) {
  const double w = a * a * (1.0 + c * c) + 1.0;
  const double xi = 4.0 * a * a / (w * w);
  return 1.0 + std::sqrt(std::max(1.0 - xi, 0.0));
}

/// Largest zeta at which an undisplaced pure/mixed pair with equal shape
/// (alpha = beta = 0) can reach fidelity F:
///   zeta_max = 2 F^{-2} (1 - sqrt(1 - F^2 (1 - F^2))),
/// evaluated in the cancellation-free form 2(1-F^2)/(1 + sqrt(1 - F^2(1-F^2))).
inline double zeta_max(double f) {
  detail::check_open_unit(f, "zeta_max");
  const double d = detail::one_minus_f2(f);
  return 2.0 * d / (1.0 + std::sqrt(1.0 - f * f * d));
}

namespace detail {

// Exact achievability edge of the pure_vs_mixed family: fidelity F between a
// pure state and a zeta-mixed state exists iff F^2 (1 + zt) <= 2 (1 - zeta),
// zt = sqrt(1 - zeta^2). This is also where the first radicand of the bound
// formula vanishes. Slightly outside zeta_max(), which assumes alpha = beta = 0.
inline double pure_vs_mixed_zeta_edge(double f) {
  const double f2 = f * f;
  const double t = f2 * (f2 + 2.0 * f + 2.0) / (f2 * f2 + 4.0);
  return 1.0 - t;
}

inline double y_max_pure(double f) {
  return 2.0 * std::sqrt(one_minus_f2(f)) / f;
}

inline double y_max_mixed_equal(double f, double zeta) {
  return (2.0 / f) *
         std::sqrt((1.0 - f) / (1.0 + zeta) * (1.0 + f - zeta * (1.0 - f)));
}

inline double y_max_pure_vs_mixed(double f, double zeta) {
  if (zeta == 0.0) return y_max_pure(f);
  const double zt = std::sqrt((1.0 - zeta) * (1.0 + zeta));
  const double g1 = 2.0 * (1.0 - zeta) - f * f * (1.0 + zt);
  if (g1 < -1e-12) {
    throw std::domain_error(
        "y_max(pure_vs_mixed): zeta = " + std::to_string(zeta) +
        " exceeds the largest zeta reachable at this fidelity (" +
        std::to_string(pure_vs_mixed_zeta_edge(f)) + ")");
  }
  const double one_minus_zt = zeta * zeta / (1.0 + zt);  // 1 - zt without cancellation
  const double g2 = 2.0 * (1.0 - zeta) - f * f * one_minus_zt;
  const double r1 = (1.0 + zt) * std::max(g1, 0.0);
  const double r2 = one_minus_zt * std::max(g2, 0.0);
  return (std::sqrt(r1) + std::sqrt(r2)) / (f * zt);
}

}  // namespace detail

/// Largest symmetric relative energy difference attainable within a family at
/// fixed fidelity F in (0,1). Strictly decreasing in F, -> 0 as F -> 1.
inline double y_max(const BoundFamily& family, double f) {
  detail::check_open_unit(f, "y_max");
  switch (family.tag) {
    case FamilyTag::coherent:
      return std::sqrt(2.0 * std::log(1.0 / f));
    case FamilyTag::displaced_equal_shape:
      return 2.0 * std::sqrt(std::log(1.0 / f));
    case FamilyTag::fixed_shape:
      return std::sqrt(2.0 * std::log(1.0 / f) * fixed_shape_kappa(family.a, family.c));
    case FamilyTag::pure_general:
      return detail::y_max_pure(f);
    case FamilyTag::mixed_equal_purity:
      return detail::y_max_mixed_equal(f, family.zeta);
    case FamilyTag::supermixed:
      return 2.0 * std::sqrt((1.0 - f) / f);
    case FamilyTag::pure_vs_mixed:
      return detail::y_max_pure_vs_mixed(f, family.zeta);
  }
  throw std::logic_error("y_max: unhandled family");
}

/// Largest fidelity attainable within a family at fixed symmetric relative
/// energy difference y > 0. Closed form for every family except
/// mixed_equal_purity, whose inverse is obtained by bisection on y_max
/// (monotone in F); pure_vs_mixed has no single-state-pair inverse here.
inline double f_max(const BoundFamily& family, double y) {
  if (!(y > 0.0) || !std::isfinite(y)) {
    throw std::domain_error("f_max: y must be positive");
  }
  switch (family.tag) {
    case FamilyTag::coherent:
      return std::exp(-0.5 * y * y);
    case FamilyTag::displaced_equal_shape:
      return std::exp(-0.25 * y * y);
    case FamilyTag::fixed_shape:
      return std::exp(-0.5 * y * y / fixed_shape_kappa(family.a, family.c));
    case FamilyTag::pure_general:
      return 1.0 / std::sqrt(1.0 + 0.25 * y * y);
    case FamilyTag::supermixed:
      return 1.0 / (1.0 + 0.25 * y * y);
    case FamilyTag::mixed_equal_purity: {
      double lo = 1e-12, hi = 1.0 - 1e-16;
      // y_max(., F) is strictly decreasing in F, so bisect on it.
      for (int it = 0; it < 200 && hi - lo > 1e-16; ++it) {
        const double mid = 0.5 * (lo + hi);
        (detail::y_max_mixed_equal(mid, family.zeta) > y ? lo : hi) = mid;
      }
      return 0.5 * (lo + hi);
    }
    case FamilyTag::pure_vs_mixed:
      throw std::invalid_argument("f_max: pure_vs_mixed family is not supported");
  }
  throw std::logic_error("f_max: unhandled family");
}

/// Interval of the relative energy change calE = E2/E1 - 1 reachable by
/// arbitrary undisplaced pure pairs with fidelity F:
///   -2s/(s+1) < calE < 2s/(1-s),   s = sqrt(1-F^2).
inline EnergyInterval energy_interval_pure(double f) {
  detail::check_open_unit(f, "energy_interval_pure");
  const double s = std::sqrt(detail::one_minus_f2(f));
  return {-2.0 * s / (s + 1.0), 2.0 * s / (1.0 - s)};
}

/// Interval of calE for fixed shape (a, c) and arbitrary displacements:
///   -2 sqrt(fk)/(sqrt(fk+2)+sqrt(fk)) <= calE <= 2 sqrt(fk)/(sqrt(fk+2)-sqrt(fk)),
/// fk = ln(1/F) * kappa(a, c). Both endpoints map to Y = sqrt(2 fk).
inline EnergyInterval energy_interval_fixed_shape(double f, double a, double c) {
  detail::check_open_unit(f, "energy_interval_fixed_shape");
  const double fk = std::log(1.0 / f) * fixed_shape_kappa(a, c);
  const double r = std::sqrt(fk);
  const double q = std::sqrt(fk + 2.0);
  return {-2.0 * r / (q + r), 2.0 * r / (q - r)};
}

/// Leading small-epsilon (1-F << 1) approximations of y_max. Supported for
/// pure_general, supermixed and pure_vs_mixed; exact counterparts elsewhere.
inline double y_max_small_eps(const BoundFamily& family, double f) {
  detail::check_open_unit(f, "y_max_small_eps");
  switch (family.tag) {
    case FamilyTag::pure_general:
      return std::sqrt(8.0 * (1.0 - f));
    case FamilyTag::supermixed:
      return 2.0 * std::sqrt(1.0 - f);
    case FamilyTag::pure_vs_mixed: {
      const double z = family.zeta;
      const double rad =
          detail::one_minus_f2(f) - z + 0.25 * z * z * (2.0 * f * f - 1.0);
      return (2.0 * std::sqrt(std::max(rad, 0.0)) + z) / f;
    }
    default:
      throw std::invalid_argument(
          std::string("y_max_small_eps: no small-eps form for family ") +
          family_name(family.tag));
  }
}

/// Minimal Bures distance at fixed y over arbitrary Gaussian pairs:
///   B_min = sqrt(2) [1 - (1 + y^2/4)^{-1/4}]^{1/2};
/// identical to bures_distance(f_max(pure_general, y)).
inline double bures_min(double y) {
  if (y < 0.0 || !std::isfinite(y)) throw std::domain_error("bures_min: y must be >= 0");
  if (y == 0.0) return 0.0;
  return std::sqrt(2.0) *
         std::sqrt(1.0 - std::pow(1.0 + 0.25 * y * y, -0.25));
}

}  // namespace gaussbound
