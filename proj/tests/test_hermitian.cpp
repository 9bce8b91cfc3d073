#include <catch2/catch_amalgamated.hpp>
#include <cmath>
#include <complex>

#include "gaussbound/detail/hermitian.hpp"
#include "gaussbound/random.hpp"

using namespace gaussbound;
using namespace gaussbound::detail;
using Catch::Approx;

namespace {

CMatrix random_hermitian(int n, SplitMix64& rng, double scale = 1.0) {
  CMatrix a(n);
  for (int i = 0; i < n; ++i) {
    a(i, i) = cd(scale * rng.uniform(-1.0, 1.0), 0.0);
    for (int j = i + 1; j < n; ++j) {
      const cd v(scale * rng.uniform(-1.0, 1.0), scale * rng.uniform(-1.0, 1.0));
      a(i, j) = v;
      a(j, i) = std::conj(v);
    }
  }
  return a;
}

double reconstruction_error(const CMatrix& a, const EigResult& eig) {
  const int n = a.dim();
  double worst = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      cd acc(0.0, 0.0);
      for (int k = 0; k < n; ++k)
        acc += eig.vectors(i, k) * eig.values[k] * std::conj(eig.vectors(j, k));
      worst = std::max(worst, std::abs(acc - a(i, j)));
    }
  }
  return worst;
}

double unitarity_error(const CMatrix& v) {
  const int n = v.dim();
  double worst = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      cd acc(0.0, 0.0);
      for (int k = 0; k < n; ++k) acc += std::conj(v(k, i)) * v(k, j);
      worst = std::max(worst, std::abs(acc - (i == j ? cd(1.0, 0.0) : cd(0.0, 0.0))));
    }
  }
  return worst;
}

}  // namespace

TEST_CASE("eigh on random Hermitian matrices") {
  SplitMix64 rng(31);
  for (int n : {1, 2, 3, 5, 8, 16, 40}) {
    for (int rep = 0; rep < 5; ++rep) {
      const CMatrix a = random_hermitian(n, rng);
      const EigResult eig = eigh(a);
      REQUIRE(static_cast<int>(eig.values.size()) == n);
      CHECK(reconstruction_error(a, eig) < 1e-12 * n);
      CHECK(unitarity_error(eig.vectors) < 1e-12 * n);
      for (int k = 1; k < n; ++k) CHECK(eig.values[k] >= eig.values[k - 1]);
      double trace = 0.0, sum = 0.0;
      for (int i = 0; i < n; ++i) {
        trace += a(i, i).real();
        sum += eig.values[i];
      }
      CHECK(sum == Approx(trace).margin(1e-12 * n));
    }
  }
}

TEST_CASE("eigh known cases") {
  // [[0, i], [-i, 0]] has eigenvalues -1, +1
  CMatrix a(2);
  a(0, 1) = cd(0.0, 1.0);
  a(1, 0) = cd(0.0, -1.0);
  const EigResult eig = eigh(a);
  CHECK(eig.values[0] == Approx(-1.0).margin(1e-14));
  CHECK(eig.values[1] == Approx(1.0).margin(1e-14));

  // diagonal matrix passes through
  CMatrix d(4);
  d(0, 0) = 3.0;
  d(1, 1) = -1.0;
  d(2, 2) = 0.5;
  d(3, 3) = 2.0;
  const EigResult de = eigh(d);
  CHECK(de.values[0] == Approx(-1.0).margin(1e-14));
  CHECK(de.values[3] == Approx(3.0).margin(1e-14));

  // rank-1 projector: eigenvalues {0,...,0,1}
  SplitMix64 rng(32);
  const int n = 12;
  std::vector<cd> v(n);
  double norm = 0.0;
  for (auto& x : v) {
    x = cd(rng.uniform(-1, 1), rng.uniform(-1, 1));
    norm += std::norm(x);
  }
  CMatrix p(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) p(i, j) = v[i] * std::conj(v[j]) / norm;
  const EigResult pe = eigh(p);
  CHECK(pe.values[n - 1] == Approx(1.0).margin(1e-12));
  for (int k = 0; k + 1 < n; ++k) CHECK(std::abs(pe.values[k]) < 1e-12);
}

TEST_CASE("spectral_apply computes matrix square roots") {
  SplitMix64 rng(33);
  const int n = 10;
  // build a PSD matrix B = A A^+
  const CMatrix a = random_hermitian(n, rng);
  CMatrix b = multiply(a, adjoint(a));
  hermitize(b);
  const EigResult eig = eigh(b);
  const CMatrix root = spectral_apply(eig, [](double v) { return std::sqrt(std::max(v, 0.0)); });
  const CMatrix back = multiply(root, root);
  double worst = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) worst = std::max(worst, std::abs(back(i, j) - b(i, j)));
  CHECK(worst < 1e-11 * n);
}
