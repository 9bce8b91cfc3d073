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

#include <array>
#include <cmath>
#include <cstdint>
#include <exception>
#include <limits>
#include <stdexcept>
#include <thread>
#include <type_traits>
#include <utility>
#include <vector>

#include "gaussbound/bounds.hpp"
#include "gaussbound/fidelity.hpp"
#include "gaussbound/random.hpp"
#include "gaussbound/states.hpp"

namespace gaussbound {

/// Families of random state pairs for the conjecture campaigns. The first
/// three are scored against their own closed-form bound; mixed_general has no
/// closed-form bound and is scored against the pure_general one, which for it
/// is conjecture-level.
enum class PairFamily { pure_general, mixed_equal_zeta, pure_vs_mixed, mixed_general };

inline const char* pair_family_name(PairFamily f) {
  switch (f) {
    case PairFamily::pure_general: return "pure";
    case PairFamily::mixed_equal_zeta: return "mixed-equal-zeta";
    case PairFamily::pure_vs_mixed: return "pure-vs-mixed";
    case PairFamily::mixed_general: return "mixed-general";
  }
  return "unknown";
}

/// Sampling ranges (inside the state validity box) plus campaign size.
/// a is drawn log-uniformly, c = b/a uniformly, displacements as a uniform
/// direction with log-uniform magnitude, zeta uniformly. Log scales matter:
/// the bound-approaching corners live at extreme squeezing.
struct PairSampleConfig {
  PairFamily family = PairFamily::pure_general;
  std::uint64_t samples = 10000;
  std::uint64_t seed = 1;
  int workers = 1;

  double a_min = 1e-3, a_max = 1e3;
  double c_min = -5.0, c_max = 5.0;
  double disp_min = 1e-3, disp_max = 10.0;  // magnitude (pure families)
  double zeta_min = 0.0, zeta_max = 0.99;   // mixed families
};

/// One scored pair. Pure states have zeta = 0; mixed states have x = p = 0.
struct SampleRecord {
  std::uint64_t index = 0;
  double a1 = 0, b1 = 0, x1 = 0, p1 = 0, z1 = 0;
  double a2 = 0, b2 = 0, x2 = 0, p2 = 0, z2 = 0;
  double f = 1.0;
  double e1 = 0, e2 = 0, y = 0;
  double y_bound = 0;
  double margin = -1.0;  // y / y_bound - 1, or -1 when y = 0
};

struct VerificationReport {
  PairFamily family = PairFamily::pure_general;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
  double tol = 0.0;
  bool conjecture_level = false;  // scored against a bound not proven for it
  std::uint64_t violations = 0;
  double worst_margin = -1.0;
  SampleRecord worst;
};

namespace detail {

inline double score_margin(double y, double f, const BoundFamily& bound, double* y_bound) {
  if (f >= 1.0) {  // identical parameters: y = 0, nothing to score
    *y_bound = 0.0;
    return -1.0;
  }
  if (f <= 0.0) {  // fidelity underflowed; every bound diverges as F -> 0
    *y_bound = std::numeric_limits<double>::infinity();
    return -1.0;
  }
  *y_bound = y_max(bound, f);
  return y == 0.0 ? -1.0 : y / *y_bound - 1.0;
}

inline SampleRecord sample_pair(const PairSampleConfig& cfg, std::uint64_t index) {
  SplitMix64 rng = SplitMix64::for_index(cfg.seed, index);
  SampleRecord rec;
  rec.index = index;

  const auto draw_shape = [&](double& a, double& b) {
    a = rng.log_uniform(cfg.a_min, cfg.a_max);
    b = a * rng.uniform(cfg.c_min, cfg.c_max);
  };
  const auto draw_disp = [&](double& x, double& p) {
    const double angle = rng.uniform(0.0, 2.0 * M_PI);
    // disp_max == 0 pins the displacement to the origin (used by zero-range
    // configs); the angle is still drawn to keep the stream layout fixed.
    const double mag = cfg.disp_max == 0.0 ? 0.0 : rng.log_uniform(cfg.disp_min, cfg.disp_max);
    x = mag * std::cos(angle);
    p = mag * std::sin(angle);
  };

  switch (cfg.family) {
    case PairFamily::pure_general: {
      draw_shape(rec.a1, rec.b1);
      draw_disp(rec.x1, rec.p1);
      draw_shape(rec.a2, rec.b2);
      draw_disp(rec.x2, rec.p2);
      const PureGaussianState s1(rec.a1, rec.b1, rec.x1, rec.p1);
      const PureGaussianState s2(rec.a2, rec.b2, rec.x2, rec.p2);
      rec.f = fidelity_pure(s1, s2);
      rec.e1 = energy_pure(s1);
      rec.e2 = energy_pure(s2);
      break;
    }
    case PairFamily::mixed_equal_zeta: {
      rec.z1 = rec.z2 = rng.uniform(cfg.zeta_min, cfg.zeta_max);
      draw_shape(rec.a1, rec.b1);
      draw_shape(rec.a2, rec.b2);
      const MixedGaussianState s1(rec.a1, rec.b1, rec.z1);
      const MixedGaussianState s2(rec.a2, rec.b2, rec.z2);
      rec.f = fidelity_mixed(s1, s2);
      rec.e1 = energy_mixed(s1);
      rec.e2 = energy_mixed(s2);
      break;
    }
    case PairFamily::pure_vs_mixed: {
      draw_shape(rec.a1, rec.b1);
      draw_shape(rec.a2, rec.b2);
      rec.z2 = rng.uniform(cfg.zeta_min, cfg.zeta_max);
      const MixedGaussianState s1(rec.a1, rec.b1, 0.0);
      const MixedGaussianState s2(rec.a2, rec.b2, rec.z2);
      rec.f = fidelity_mixed(s1, s2);
      rec.e1 = energy_mixed(s1);
      rec.e2 = energy_mixed(s2);
      break;
    }
    case PairFamily::mixed_general: {
      draw_shape(rec.a1, rec.b1);
      rec.z1 = rng.uniform(cfg.zeta_min, cfg.zeta_max);
      draw_shape(rec.a2, rec.b2);
      rec.z2 = rng.uniform(cfg.zeta_min, cfg.zeta_max);
      const MixedGaussianState s1(rec.a1, rec.b1, rec.z1);
      const MixedGaussianState s2(rec.a2, rec.b2, rec.z2);
      rec.f = fidelity_mixed(s1, s2);
      rec.e1 = energy_mixed(s1);
      rec.e2 = energy_mixed(s2);
      break;
    }
  }

  const EnergyComparison cmp = compare_energies(rec.e1, rec.e2);
  rec.y = cmp.y;
  BoundFamily bound = BoundFamily::pure_general();
  if (cfg.family == PairFamily::mixed_equal_zeta) {
    bound = BoundFamily::mixed_equal_purity(rec.z1);
  } else if (cfg.family == PairFamily::pure_vs_mixed) {
    bound = BoundFamily::pure_vs_mixed(rec.z2);
  }
  rec.margin = score_margin(rec.y, rec.f, bound, &rec.y_bound);
  return rec;
}

struct PartialReport {
  std::uint64_t violations = 0;
  bool has_worst = false;
  SampleRecord worst;
};

inline void merge_worst(PartialReport& into, const SampleRecord& rec) {
  if (!into.has_worst || rec.margin > into.worst.margin ||
      (rec.margin == into.worst.margin && rec.index < into.worst.index)) {
    into.worst = rec;
    into.has_worst = true;
  }
}

}  // namespace detail

/// Scores `cfg.samples` random pairs against the family's bound. A sample
/// whose margin y/y_m(F) - 1 exceeds `tol` counts as a violation; violations
/// are data, not errors, and the full report is returned either way.
/// Sample `i` draws from a stream derived from (seed, i) alone, so the report
/// is identical for any worker count.
inline VerificationReport verify_conjecture(const PairSampleConfig& cfg, double tol = 1e-9) {
  if (cfg.samples < 1) throw std::invalid_argument("verify_conjecture: samples must be >= 1");
  const bool disp_ok = (cfg.disp_max == 0.0 && cfg.disp_min == 0.0) ||
                       (cfg.disp_min > 0.0 && cfg.disp_max <= valid_box::disp_abs_max &&
                        cfg.disp_min <= cfg.disp_max);
  if (cfg.a_min < valid_box::a_min || cfg.a_max > valid_box::a_max || cfg.a_min > cfg.a_max ||
      cfg.a_max * std::max(std::abs(cfg.c_min), std::abs(cfg.c_max)) > valid_box::b_abs_max ||
      !disp_ok || cfg.zeta_min < 0.0 || cfg.zeta_max > valid_box::zeta_max) {
    throw std::invalid_argument("verify_conjecture: sampling ranges leave the state validity box");
  }
  const int workers =
      std::max(1, std::min(cfg.workers, static_cast<int>(std::min<std::uint64_t>(
                                            cfg.samples, 64))));

  std::vector<detail::PartialReport> parts(workers);
  std::vector<std::exception_ptr> errors(workers);
  const auto run_range = [&cfg, tol](std::uint64_t begin, std::uint64_t end,
                                     detail::PartialReport& out, std::exception_ptr& err) {
    try {
      for (std::uint64_t i = begin; i < end; ++i) {
        const SampleRecord rec = detail::sample_pair(cfg, i);
        if (rec.margin > tol) ++out.violations;
        detail::merge_worst(out, rec);
      }
    } catch (...) {
      err = std::current_exception();
    }
  };

  if (workers == 1) {
    run_range(0, cfg.samples, parts[0], errors[0]);
  } else {
    std::vector<std::thread> pool;
    const std::uint64_t chunk = (cfg.samples + workers - 1) / workers;
    for (int w = 0; w < workers; ++w) {
      const std::uint64_t begin = chunk * w;
      const std::uint64_t end = std::min(cfg.samples, begin + chunk);
      if (begin >= end) break;
      pool.emplace_back(run_range, begin, end, std::ref(parts[w]), std::ref(errors[w]));
    }
    for (auto& t : pool) t.join();
  }
  for (const auto& err : errors) {
    if (err) std::rethrow_exception(err);
  }

  VerificationReport report;
  report.family = cfg.family;
  report.samples = cfg.samples;
  report.seed = cfg.seed;
  report.tol = tol;
  report.conjecture_level =
      cfg.family == PairFamily::pure_general || cfg.family == PairFamily::mixed_general;
  detail::PartialReport merged;
  for (const auto& p : parts) {
    report.violations += p.violations;
    if (p.has_worst) detail::merge_worst(merged, p.worst);
  }
  report.worst = merged.worst;
  report.worst_margin = merged.has_worst ? merged.worst.margin : -1.0;
  return report;
}

/// Undisplaced pure pair (a, a(1+alpha±)) built from the extremal roots
/// alpha± = 2D ± 2 sqrt(D(1+D)), D = (1-F^2)/F^2. Its fidelity equals F for
/// every a; its Y approaches y_max(pure_general, F) as a -> 0 or a -> inf.
inline std::pair<PureGaussianState, PureGaussianState> extremal_pure_pair(double f, double a,
                                                                          int sign) {
  detail::check_open_unit(f, "extremal_pure_pair");
  const double d = detail::one_minus_f2(f) / (f * f);
  const double root = 2.0 * std::sqrt(d * (1.0 + d));
  const double alpha = sign >= 0 ? 2.0 * d + root : 2.0 * d - root;
  return {PureGaussianState(a), PureGaussianState(a * (1.0 + alpha))};
}

/// Equal-purity analogue of extremal_pure_pair:
///   alpha± = 2 (D ± sqrt(D(D+w))) / w,  w = 1 - zeta^2,
///   D = (1-F)(1-zeta)[1 - zeta + F(1+zeta)] / F^2.
inline std::pair<MixedGaussianState, MixedGaussianState> extremal_mixed_pair(double f,
                                                                             double zeta,
                                                                             double a,
                                                                             int sign) {
  detail::check_open_unit(f, "extremal_mixed_pair");
  const double w = (1.0 - zeta) * (1.0 + zeta);
  const double d = (1.0 - f) * (1.0 - zeta) * (1.0 - zeta + f * (1.0 + zeta)) / (f * f);
  const double root = std::sqrt(d * (d + w));
  const double alpha = (sign >= 0 ? d + root : d - root) * 2.0 / w;
  return {MixedGaussianState(a, 0.0, zeta), MixedGaussianState(a * (1.0 + alpha), 0.0, zeta)};
}

/// Displaced pair with shape (a, c) held fixed that attains the fixed-shape
/// bound exactly: displacement along the direction minimizing the constraint
/// form, magnitude from the fidelity, base point from the R-extremization.
inline std::pair<PureGaussianState, PureGaussianState> fixed_shape_witness(double f, double a,
                                                                           double c) {
  detail::check_open_unit(f, "fixed_shape_witness");
  const double w = a * a * (1.0 + c * c);
  const double ac = a * c;
  const double lam_min = 0.5 * ((1.0 + w) - std::sqrt((w - 1.0) * (w - 1.0) + 4.0 * ac * ac));
  double u1 = ac, u2 = lam_min - w;
  if (u1 == 0.0 && u2 == 0.0) {
    u1 = 1.0;  // c = 0 and w <= 1: softest direction is the x axis
  }
  const double un = std::hypot(u1, u2);
  u1 /= un;
  u2 /= un;
  const double lf = std::log(1.0 / f);
  const double delta = std::sqrt(2.0 * a * lf / lam_min);
  const double big_a = (1.0 + w) / (4.0 * a);
  const double r0 = 0.5 * (-delta + std::sqrt(delta * delta + 8.0 * big_a));
  const double b = a * c;
  return {PureGaussianState(a, b, r0 * u1, r0 * u2),
          PureGaussianState(a, b, (r0 + delta) * u1, (r0 + delta) * u2)};
}

class unsupported_witness_error : public std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct ApproachPoint {
  double a;
  double y;
  double y_ratio;  // y / y_max(family, F)
};

namespace detail {

template <typename State>
inline double pair_y(const State& s1, const State& s2) {
  double e1, e2;
  if constexpr (std::is_same_v<State, PureGaussianState>) {
    e1 = energy_pure(s1);
    e2 = energy_pure(s2);
  } else {
    e1 = energy_mixed(s1);
    e2 = energy_mixed(s2);
  }
  return compare_energies(e1, e2).y;
}

}  // namespace detail

/// Evaluates the family's witness construction along a schedule of squeezing
/// scales `a`, reporting how close each witness gets to the bound.
/// Supported: pure_general (extremal roots), mixed_equal_purity (equal-purity
/// roots), fixed_shape (optimal-displacement pair, which attains the bound).
inline std::vector<ApproachPoint> approach_bound(const BoundFamily& family, double f,
                                                 const std::vector<double>& schedule) {
  detail::check_open_unit(f, "approach_bound");
  if (schedule.empty()) throw std::invalid_argument("approach_bound: schedule is empty");
  std::vector<ApproachPoint> points;
  points.reserve(schedule.size());
  for (double a : schedule) {
    double y = 0.0, ym = 0.0;
    switch (family.tag) {
      case FamilyTag::pure_general: {
        const auto plus = extremal_pure_pair(f, a, +1);
        const auto minus = extremal_pure_pair(f, a, -1);
        y = std::max(detail::pair_y(plus.first, plus.second),
                     detail::pair_y(minus.first, minus.second));
        ym = y_max(family, f);
        break;
      }
      case FamilyTag::mixed_equal_purity: {
        const auto plus = extremal_mixed_pair(f, family.zeta, a, +1);
        const auto minus = extremal_mixed_pair(f, family.zeta, a, -1);
        y = std::max(detail::pair_y(plus.first, plus.second),
                     detail::pair_y(minus.first, minus.second));
        ym = y_max(family, f);
        break;
      }
      case FamilyTag::fixed_shape: {
        const auto pair = fixed_shape_witness(f, a, family.c);
        y = detail::pair_y(pair.first, pair.second);
        ym = y_max(BoundFamily::fixed_shape(a, family.c), f);
        break;
      }
      default:
        throw unsupported_witness_error(
            std::string("approach_bound: no witness construction for family ") +
            family_name(family.tag));
    }
    points.push_back({a, y, y / ym});
  }
  return points;
}

struct LocalMaxResult {
  PureGaussianState s1;
  PureGaussianState s2;
  double y = 0.0;
  bool projection_failed = false;
};

namespace detail {

// Restore fidelity(s1, s2) = f_target by adjusting a2 (secant iteration in
// log a2). Returns false when no adjustment inside the validity box works.
inline bool project_onto_fidelity(const PureGaussianState& s1, PureGaussianState& s2,
                                  double f_target, double tol) {
  const auto f_of = [&](double la2) {
    const double a2 = std::exp(la2);
    if (a2 < valid_box::a_min || a2 > valid_box::a_max) return -1.0;
    return fidelity_pure(s1, PureGaussianState(a2, s2.b, s2.x0, s2.p0));
  };
  double x0 = std::log(s2.a);
  double g0 = f_of(x0) - f_target;
  if (std::abs(g0) <= tol) return true;
  double x1 = x0 + (g0 > 0 ? 0.05 : -0.05);
  double g1 = f_of(x1) - f_target;
  if (f_of(x1) < 0.0) return false;
  for (int it = 0; it < 80; ++it) {
    if (std::abs(g1) <= 0.1 * tol) break;
    if (g1 == g0) return false;
    double x2 = x1 - g1 * (x1 - x0) / (g1 - g0);
    if (!std::isfinite(x2)) return false;
    // keep the step inside the box in log space
    x2 = std::clamp(x2, std::log(valid_box::a_min), std::log(valid_box::a_max));
    x0 = x1;
    g0 = g1;
    x1 = x2;
    const double f1 = f_of(x1);
    if (f1 < 0.0) return false;
    g1 = f1 - f_target;
  }
  if (std::abs(g1) > tol) return false;
  s2 = PureGaussianState(std::exp(x1), s2.b, s2.x0, s2.p0);
  return true;
}

}  // namespace detail

/// Derivative-free ascent of Y on the fixed-fidelity manifold: move one
/// coordinate, re-project by the 1-D solve on a2, keep the move only if Y
/// improved while |F - f_target| <= tol. Stops when every step size has
/// shrunk below 1e-7 or no more progress is possible inside the box.
inline LocalMaxResult local_maximize_y(const PureGaussianState& start1,
                                       const PureGaussianState& start2, double f_target,
                                       double tol = 1e-10) {
  LocalMaxResult res{start1, start2};
  if (f_target >= 1.0) {
    // the F = 1 manifold is the diagonal s1 = s2: no ascent is possible
    res.y = detail::pair_y(res.s1, res.s2);
    res.projection_failed = fidelity_pure(res.s1, res.s2) < 1.0;
    return res;
  }
  if (!detail::project_onto_fidelity(res.s1, res.s2, f_target, tol)) {
    res.projection_failed = true;
    res.y = detail::pair_y(res.s1, res.s2);
    return res;
  }
  res.y = detail::pair_y(res.s1, res.s2);

  // coordinates: ln a1, c1, x1, p1, c2, x2, p2  (a2 is the projection handle)
  std::array<double, 7> h = {0.25, 0.25, 0.25, 0.25, 0.25, 0.25, 0.25};
  const auto get = [&](int k) -> double {
    switch (k) {
      case 0: return std::log(res.s1.a);
      case 1: return res.s1.b / res.s1.a;
      case 2: return res.s1.x0;
      case 3: return res.s1.p0;
      case 4: return res.s2.b / res.s2.a;
      case 5: return res.s2.x0;
      default: return res.s2.p0;
    }
  };
  const auto rebuild = [&](int k, double v, PureGaussianState& s1, PureGaussianState& s2) {
    double la1 = std::log(res.s1.a), c1 = res.s1.b / res.s1.a, x1 = res.s1.x0, p1 = res.s1.p0;
    double c2 = res.s2.b / res.s2.a, x2 = res.s2.x0, p2 = res.s2.p0;
    switch (k) {
      case 0: la1 = v; break;
      case 1: c1 = v; break;
      case 2: x1 = v; break;
      case 3: p1 = v; break;
      case 4: c2 = v; break;
      case 5: x2 = v; break;
      default: p2 = v; break;
    }
    const double a1 = std::clamp(std::exp(la1), valid_box::a_min, valid_box::a_max);
    s1 = PureGaussianState(a1, a1 * c1, x1, p1);
    s2 = PureGaussianState(res.s2.a, res.s2.a * c2, x2, p2);
  };

  for (int round = 0; round < 400; ++round) {
    bool improved = false;
    for (int k = 0; k < 7; ++k) {
      for (int dir : {+1, -1}) {
        const double v = get(k) + dir * h[k];
        PureGaussianState t1 = res.s1, t2 = res.s2;
        try {
          rebuild(k, v, t1, t2);
        } catch (const std::invalid_argument&) {
          continue;  // stepped outside the validity box
        }
        if (!detail::project_onto_fidelity(t1, t2, f_target, tol)) continue;
        const double ty = detail::pair_y(t1, t2);
        if (ty > res.y * (1.0 + 1e-14) + 1e-300) {
          res.s1 = t1;
          res.s2 = t2;
          res.y = ty;
          improved = true;
        }
      }
    }
    if (!improved) {
      bool any = false;
      for (auto& hk : h) {
        hk *= 0.5;
        any |= hk > 1e-7;
      }
      if (!any) break;
    }
  }
  return res;
}

}  // namespace gaussbound
