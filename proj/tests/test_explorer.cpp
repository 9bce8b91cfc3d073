#include <catch2/catch_amalgamated.hpp>
#include <cmath>

#include "gaussbound/explorer.hpp"

using namespace gaussbound;
using Catch::Approx;

namespace {
bool records_equal(const SampleRecord& a, const SampleRecord& b) {
  return a.index == b.index && a.a1 == b.a1 && a.b1 == b.b1 && a.x1 == b.x1 && a.p1 == b.p1 &&
         a.z1 == b.z1 && a.a2 == b.a2 && a.b2 == b.b2 && a.x2 == b.x2 && a.p2 == b.p2 &&
         a.z2 == b.z2 && a.f == b.f && a.y == b.y && a.y_bound == b.y_bound &&
         a.margin == b.margin;
}
}  // namespace

TEST_CASE("verification campaigns find no violations") {
  PairSampleConfig cfg;
  cfg.samples = 10000;
  cfg.seed = 1;
  const auto pure = verify_conjecture(cfg, 1e-9);
  CHECK(pure.violations == 0);
  CHECK(pure.conjecture_level);
  CHECK(pure.worst_margin < 0.0);

  cfg.family = PairFamily::mixed_equal_zeta;
  cfg.samples = 2000;
  const auto mixz = verify_conjecture(cfg, 1e-9);
  CHECK(mixz.violations == 0);
  CHECK_FALSE(mixz.conjecture_level);

  cfg.family = PairFamily::pure_vs_mixed;
  const auto pvm = verify_conjecture(cfg, 1e-9);
  CHECK(pvm.violations == 0);
  CHECK_FALSE(pvm.conjecture_level);

  cfg.family = PairFamily::mixed_general;
  const auto mg = verify_conjecture(cfg, 1e-9);
  CHECK(mg.violations == 0);
  CHECK(mg.conjecture_level);
}

TEST_CASE("reports are deterministic and worker-count independent") {
  PairSampleConfig cfg;
  cfg.samples = 5000;
  cfg.seed = 42;
  cfg.workers = 1;
  const auto r1 = verify_conjecture(cfg, 1e-9);
  const auto r1b = verify_conjecture(cfg, 1e-9);
  cfg.workers = 8;
  const auto r8 = verify_conjecture(cfg, 1e-9);
  CHECK(r1.violations == r8.violations);
  CHECK(r1.worst_margin == r8.worst_margin);
  CHECK(records_equal(r1.worst, r8.worst));
  CHECK(records_equal(r1.worst, r1b.worst));
}

TEST_CASE("zero-range config produces identical pairs") {
  PairSampleConfig cfg;
  cfg.samples = 50;
  cfg.a_min = cfg.a_max = 1.0;
  cfg.c_min = cfg.c_max = 0.5;
  cfg.disp_min = cfg.disp_max = 0.0;
  const auto rep = verify_conjecture(cfg, 1e-9);
  CHECK(rep.violations == 0);
  CHECK(rep.worst_margin == -1.0);
  CHECK(rep.worst.f == 1.0);
}

TEST_CASE("config validation") {
  PairSampleConfig cfg;
  cfg.samples = 0;
  CHECK_THROWS_AS(verify_conjecture(cfg, 1e-9), std::invalid_argument);
  cfg.samples = 10;
  cfg.a_max = 1e9;
  CHECK_THROWS_AS(verify_conjecture(cfg, 1e-9), std::invalid_argument);
}

TEST_CASE("the highly squeezed worked-example pair sits close under the bound") {
  const PureGaussianState s1(0.1), s2(0.05);
  const double f = fidelity_pure(s1, s2);
  const double y = compare_energies(energy_pure(s1), energy_pure(s2)).y;
  const double margin = y / y_max(BoundFamily::pure_general(), f) - 1.0;
  CHECK(margin == Approx(-0.0111732576).margin(1e-8));
}

TEST_CASE("extremal_pure_pair") {
  const double f89 = std::sqrt(8.0 / 9.0);
  const auto [s1, s2] = extremal_pure_pair(f89, 1.0, +1);
  CHECK(s2.a == Approx(2.0).margin(1e-12));  // alpha = 1
  CHECK(energy_pure(s1) == Approx(0.5).margin(1e-14));
  CHECK(energy_pure(s2) == Approx(0.625).margin(1e-13));
  CHECK(compare_energies(energy_pure(s1), energy_pure(s2)).y ==
        Approx(0.22360679774997896).margin(1e-12));
  const auto [m1, m2] = extremal_pure_pair(f89, 1.0, -1);
  CHECK(m2.a == Approx(0.5).margin(1e-13));  // alpha = -1/2

  // fidelity of the construction does not depend on a
  double lo = 2.0, hi = 0.0;
  for (double a : {1e-3, 1e-2, 0.1, 1.0, 10.0, 100.0, 1000.0}) {
    for (int sign : {+1, -1}) {
      const auto [t1, t2] = extremal_pure_pair(f89, a, sign);
      const double ff = fidelity_pure(t1, t2);
      CHECK(ff == Approx(f89).margin(1e-10));
      lo = std::min(lo, ff);
      hi = std::max(hi, ff);
    }
  }
  CHECK(hi - lo < 1e-10);

  // F -> 1 collapses to identical states
  const auto [u1, u2] = extremal_pure_pair(1.0 - 1e-12, 1.0, +1);
  CHECK(std::abs(u2.a - u1.a) < 1e-4);
  CHECK(compare_energies(energy_pure(u1), energy_pure(u2)).y < 1e-5);

  CHECK_THROWS_AS(extremal_pure_pair(1.0, 1.0, +1), std::domain_error);
}

TEST_CASE("extremal_mixed_pair hits the target fidelity") {
  for (double f : {0.8, 0.9, 0.99}) {
    for (double zeta : {0.0, 0.2, 0.5, 0.7}) {
      for (double a : {1.0, 0.01}) {
        for (int sign : {+1, -1}) {
          const auto [s1, s2] = extremal_mixed_pair(f, zeta, a, sign);
          CHECK(fidelity_mixed(s1, s2) == Approx(f).margin(1e-10));
        }
      }
    }
  }
}

TEST_CASE("fixed_shape_witness attains the bound exactly") {
  for (auto [a, c, f] : {std::tuple{1.0, 0.0, std::exp(-1.0)}, std::tuple{1.0, 1.0, 0.9},
                         std::tuple{0.3, 2.0, 0.8}, std::tuple{5.0, -1.5, 0.95}}) {
    const auto [s1, s2] = fixed_shape_witness(f, a, c);
    CHECK(fidelity_pure(s1, s2) == Approx(f).margin(1e-12));
    const double y = compare_energies(energy_pure(s1), energy_pure(s2)).y;
    CHECK(y == Approx(y_max(BoundFamily::fixed_shape(a, c), f)).epsilon(1e-10));
  }
}

TEST_CASE("approach_bound walks toward the bound") {
  const double f89 = std::sqrt(8.0 / 9.0);
  const auto pts = approach_bound(BoundFamily::pure_general(), f89, {1.0, 0.1, 0.001});
  REQUIRE(pts.size() == 3);
  CHECK(pts[0].y_ratio == Approx(0.31622776601683794).margin(1e-9));
  CHECK(pts[1].y_ratio == Approx(0.9888267424).margin(1e-9));
  CHECK(pts[2].y_ratio >= 0.99999);
  CHECK(pts[2].y_ratio <= 1.0 + 1e-12);
  for (std::size_t i = 1; i < pts.size(); ++i) CHECK(pts[i].y_ratio >= pts[i - 1].y_ratio);

  const auto mpts =
      approach_bound(BoundFamily::mixed_equal_purity(0.5), 0.9, {1.0, 0.01, 0.001});
  for (std::size_t i = 1; i < mpts.size(); ++i) CHECK(mpts[i].y_ratio >= mpts[i - 1].y_ratio);
  CHECK(mpts.back().y_ratio >= 0.999999);
  CHECK(mpts.back().y_ratio <= 1.0 + 1e-12);

  const auto fpts = approach_bound(BoundFamily::fixed_shape(1.0, 0.7), 0.9, {2.0, 0.5, 0.05});
  for (const auto& p : fpts) CHECK(p.y_ratio == Approx(1.0).margin(1e-9));

  CHECK_THROWS_AS(approach_bound(BoundFamily::coherent(), 0.9, {1.0}),
                  unsupported_witness_error);
  CHECK_THROWS_AS(approach_bound(BoundFamily::supermixed(), 0.9, {1.0}),
                  unsupported_witness_error);
  CHECK_THROWS_AS(approach_bound(BoundFamily::pure_general(), 0.9, {}),
                  std::invalid_argument);
}

TEST_CASE("local_maximize_y") {
  // identical start at F = 1: no feasible ascent, stays at y = 0
  const PureGaussianState same(1.3, 0.2, 0.4, -0.1);
  const auto still = local_maximize_y(same, same, 1.0);
  CHECK(still.y == 0.0);
  CHECK_FALSE(still.projection_failed);

  // near-extremal start converges to the pure bound
  const auto [w1, w2] = extremal_pure_pair(0.9, 0.01, -1);
  const auto refined = local_maximize_y(w1, w2, 0.9);
  CHECK_FALSE(refined.projection_failed);
  CHECK(std::abs(refined.y - 0.9686442096757052) <= 1e-4);
  CHECK(std::abs(fidelity_pure(refined.s1, refined.s2) - 0.9) <= 1e-10);

  // from a generic (feasible) start the terminal y never exceeds the bound
  const PureGaussianState g1(1.0, 0.1, 0.2, -0.1);
  const PureGaussianState g2(1.3, 0.2, 0.3, 0.05);
  const auto generic = local_maximize_y(g1, g2, 0.95);
  CHECK_FALSE(generic.projection_failed);
  CHECK(std::abs(fidelity_pure(generic.s1, generic.s2) - 0.95) <= 1e-10);
  CHECK(generic.y <= y_max(BoundFamily::pure_general(), 0.95) + 1e-4);

  // a start whose fidelity cannot reach the target by adjusting a2 alone
  // reports the projection failure and stays at the last feasible point
  const PureGaussianState far1(0.8, 0.24, 3.0, -3.0);
  const PureGaussianState far2(1.4, -0.14, -3.0, 3.0);
  const auto infeasible = local_maximize_y(far1, far2, 0.95);
  CHECK(infeasible.projection_failed);
}
