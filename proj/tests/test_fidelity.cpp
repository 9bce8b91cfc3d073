#include <catch2/catch_amalgamated.hpp>
#include <cmath>

#include "gaussbound/fidelity.hpp"
#include "gaussbound/random.hpp"

using namespace gaussbound;
using Catch::Approx;

namespace {
PureGaussianState random_pure(SplitMix64& rng) {
  return PureGaussianState(rng.log_uniform(1e-3, 1e3), rng.uniform(-20.0, 20.0),
                           rng.uniform(-5.0, 5.0), rng.uniform(-5.0, 5.0));
}
MixedGaussianState random_mixed(SplitMix64& rng) {
  return MixedGaussianState(rng.log_uniform(1e-3, 1e3), rng.uniform(-20.0, 20.0),
                            rng.uniform(0.0, 0.95));
}
}  // namespace

TEST_CASE("pure fidelity closed form") {
  CHECK(fidelity_pure(PureGaussianState(1.0), PureGaussianState(1.0)) == 1.0);
  CHECK(fidelity_pure(PureGaussianState(1.0), PureGaussianState(2.0)) ==
        Approx(std::sqrt(8.0 / 9.0)).margin(1e-15));
  CHECK(fidelity_pure(PureGaussianState(1.0, 0, 0, 0),
                      PureGaussianState(1.0, 0, std::sqrt(2.0), 0)) ==
        Approx(std::exp(-1.0)).margin(1e-15));
  CHECK(fidelity_pure(PureGaussianState(1.0, 1.0), PureGaussianState(1.0, 0.0)) ==
        Approx(0.8944271909999159).margin(1e-15));
}

TEST_CASE("pure fidelity symmetry and shift invariance") {
  SplitMix64 rng(11);
  for (int i = 0; i < 500; ++i) {
    const PureGaussianState s1 = random_pure(rng);
    const PureGaussianState s2 = random_pure(rng);
    const double f12 = fidelity_pure(s1, s2);
    const double f21 = fidelity_pure(s2, s1);
    CHECK(f12 == Approx(f21).margin(1e-14));
    CHECK(f12 >= 0.0);
    CHECK(f12 <= 1.0);
  }

  // shifting both displacements by the same vector leaves F unchanged
  // (moderate shapes: for F = e^{-huge} the 1e-12 relative check is void)
  SplitMix64 rng2(17);
  for (int i = 0; i < 500; ++i) {
    const double a1 = rng2.log_uniform(1e-2, 1e2), a2 = rng2.log_uniform(1e-2, 1e2);
    const double b1 = rng2.uniform(-10.0, 10.0), b2 = rng2.uniform(-10.0, 10.0);
    const PureGaussianState s1(a1, b1, rng2.uniform(-3, 3), rng2.uniform(-3, 3));
    const PureGaussianState s2(a2, b2, rng2.uniform(-3, 3), rng2.uniform(-3, 3));
    const double f12 = fidelity_pure(s1, s2);
    const double dx = rng2.uniform(-2.0, 2.0), dp = rng2.uniform(-2.0, 2.0);
    const PureGaussianState t1(s1.a, s1.b, s1.x0 + dx, s1.p0 + dp);
    const PureGaussianState t2(s2.a, s2.b, s2.x0 + dx, s2.p0 + dp);
    CHECK(fidelity_pure(t1, t2) == Approx(f12).epsilon(1e-12).margin(1e-300));
  }
}

TEST_CASE("coherent pairs reduce to exp(-|alpha-beta|^2)") {
  SplitMix64 rng(12);
  for (int i = 0; i < 300; ++i) {
    const double x1 = rng.uniform(-4, 4), p1 = rng.uniform(-4, 4);
    const double x2 = rng.uniform(-4, 4), p2 = rng.uniform(-4, 4);
    const double expect =
        std::exp(-0.5 * ((x2 - x1) * (x2 - x1) + (p2 - p1) * (p2 - p1)));
    CHECK(fidelity_pure(PureGaussianState(1, 0, x1, p1), PureGaussianState(1, 0, x2, p2)) ==
          Approx(expect).epsilon(1e-12));
  }
}

TEST_CASE("mixed fidelity closed form") {
  CHECK(fidelity_mixed(MixedGaussianState(1.3, 0.4, 0.25), MixedGaussianState(1.3, 0.4, 0.25)) ==
        Approx(1.0).margin(1e-14));
  // ground state against the matching thermal state: F = 1/(1+n_bar)
  CHECK(fidelity_mixed(MixedGaussianState(1.0), MixedGaussianState(1.1547005383792517, 0, 0.5)) ==
        Approx(0.7320508075688772).margin(1e-12));
  CHECK(fidelity_mixed(MixedGaussianState(1.0), MixedGaussianState(1.0, 0, 0.5)) ==
        Approx(0.7302967433402215).margin(1e-12));
}

TEST_CASE("mixed fidelity symmetry and pure reduction") {
  SplitMix64 rng(13);
  for (int i = 0; i < 500; ++i) {
    const MixedGaussianState s1 = random_mixed(rng);
    const MixedGaussianState s2 = random_mixed(rng);
    const double f12 = fidelity_mixed(s1, s2);
    CHECK(f12 == Approx(fidelity_mixed(s2, s1)).margin(1e-14));
    CHECK(f12 > 0.0);
    CHECK(f12 <= 1.0);

    const double fm = fidelity_mixed(MixedGaussianState(s1.a, s1.b, 0.0),
                                     MixedGaussianState(s2.a, s2.b, 0.0));
    const double fp = fidelity_pure(PureGaussianState(s1.a, s1.b), PureGaussianState(s2.a, s2.b));
    CHECK(fm == Approx(fp).epsilon(1e-14).margin(1e-300));
  }
}

TEST_CASE("bures distance") {
  CHECK(bures_distance(1.0) == 0.0);
  CHECK(bures_distance(0.25) == Approx(1.0).margin(1e-15));
  CHECK(bures_distance(0.9) == Approx(0.3203644860139344).margin(1e-14));
  // sqrt(2) (1 - sqrt(F))^{1/2} form
  SplitMix64 rng(14);
  for (int i = 0; i < 100; ++i) {
    const double f = rng.uniform(1e-4, 1.0);
    CHECK(bures_distance(f) ==
          Approx(std::sqrt(2.0) * std::sqrt(1.0 - std::sqrt(f))).margin(1e-14));
  }
  CHECK_THROWS_AS(bures_distance(0.0), std::domain_error);
  CHECK_THROWS_AS(bures_distance(1.5), std::domain_error);
}

TEST_CASE("energy comparison") {
  const EnergyComparison c1 = compare_energies(0.5, 0.625);
  CHECK(c1.y == Approx(0.22360679774997896).margin(1e-12));
  CHECK(c1.cal_e == Approx(0.25).margin(1e-15));

  const EnergyComparison c2 = compare_energies(2.525, 5.0125);
  CHECK(c2.y == Approx(0.6992060949609475).margin(1e-12));

  const EnergyComparison c3 = compare_energies(3.7, 3.7);
  CHECK(c3.y == 0.0);
  CHECK(c3.cal_e == 0.0);

  SplitMix64 rng(15);
  for (int i = 0; i < 300; ++i) {
    const double e1 = rng.log_uniform(1e-3, 1e3);
    const double e2 = rng.log_uniform(1e-3, 1e3);
    const EnergyComparison a = compare_energies(e1, e2);
    const EnergyComparison b = compare_energies(e2, e1);
    CHECK(a.y == Approx(b.y).margin(1e-300).epsilon(1e-14));  // swap invariance
    // calE near -1 wipes low bits of 1 + calE, so condition the tolerance
    const double tol =
        std::max(1e-12, 2.0 * 2.3e-16 / std::max(1.0 + a.cal_e, 1e-12));
    CHECK(a.y == Approx(std::abs(a.cal_e) / std::sqrt(1.0 + a.cal_e)).epsilon(tol));
  }
  CHECK_THROWS_AS(compare_energies(0.0, 1.0), std::domain_error);
  CHECK_THROWS_AS(compare_energies(1.0, -2.0), std::domain_error);
}

TEST_CASE("ratio <-> y conversions") {
  CHECK(ratio_to_y(3.0) == Approx(1.1547005383792515).margin(1e-14));
  CHECK(ratio_to_y(1.1) == Approx(0.09534625892455922).margin(1e-14));
  CHECK(ratio_to_y(1.0) == 0.0);
  CHECK(y_to_max_ratio(0.9686442096757052) == Approx(2.5454071465532527).margin(1e-12));

  SplitMix64 rng(16);
  for (int i = 0; i < 500; ++i) {
    const double r = rng.log_uniform(1e-3, 1e3);
    CHECK(y_to_max_ratio(ratio_to_y(r)) ==
          Approx(std::max(r, 1.0 / r)).epsilon(1e-12));
  }
  CHECK_THROWS_AS(ratio_to_y(0.0), std::domain_error);
  CHECK_THROWS_AS(y_to_max_ratio(-0.1), std::domain_error);
}
