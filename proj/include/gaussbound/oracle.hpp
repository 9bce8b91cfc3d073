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
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include "gaussbound/detail/hermitian.hpp"
#include "gaussbound/states.hpp"

namespace gaussbound {

using detail::cd;

/// Truncating a state to N Fock levels left more probability mass outside
/// than the declared tolerance allows.
class TruncationError : public std::runtime_error {
 public:
  TruncationError(double tail, double tol)
      : std::runtime_error("Fock truncation tail " + std::to_string(tail) +
                           " exceeds tolerance " + std::to_string(tol)),
        tail_(tail) {}
  double tail() const { return tail_; }

 private:
  double tail_;
};

/// A quadrature self-check failed (integration grid too coarse for the state).
class OracleError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline constexpr double kDefaultTailTol = 1e-8;

namespace detail {

// Normalized Hermite functions psi_n(x) = H_n(x) e^{-x^2/2} / sqrt(2^n n! sqrt(pi))
// for n = 0..count-1 via the three-term recurrence
//   psi_{n+1} = x sqrt(2/(n+1)) psi_n - sqrt(n/(n+1)) psi_{n-1}.
// Stable in double precision for every (n, x) reachable here; no factorials.
inline void hermite_functions(int count, double x, double* out) {
  out[0] = 0.7511255444649425  // pi^{-1/4}
           * std::exp(-0.5 * x * x);
  if (count > 1) out[1] = std::sqrt(2.0) * x * out[0];
  for (int n = 1; n + 1 < count; ++n) {
    out[n + 1] = std::sqrt(2.0 / (n + 1)) * x * out[n] -
                 std::sqrt(static_cast<double>(n) / (n + 1)) * out[n - 1];
  }
}

// psi_order(x) and psi_{order-1}(x).
inline void hermite_top_pair(int order, double x, double& top, double& below) {
  double h0 = 0.7511255444649425 * std::exp(-0.5 * x * x);
  double h1 = std::sqrt(2.0) * x * h0;
  for (int n = 1; n < order; ++n) {
    const double h2 =
        std::sqrt(2.0 / (n + 1)) * x * h1 - std::sqrt(static_cast<double>(n) / (n + 1)) * h0;
    h0 = h1;
    h1 = h2;
  }
  top = h1;
  below = h0;
}

}  // namespace detail

/// Gauss-Hermite rule of the given order. `weights` are the modified weights
/// w_i e^{x_i^2} = 1/(order * psi_{order-1}(x_i)^2), so that
///   integral f(x) dx  ~=  sum_i weights[i] * f(nodes[i])
/// is exact for f = polynomial(deg <= 2*order-1) * e^{-x^2}. Computing the
/// weight through the Hermite *function* keeps every intermediate O(1);
/// no e^{+x^2} factor ever appears.
struct QuadratureGrid {
  int order = 0;
  std::vector<double> nodes;
  std::vector<double> weights;

  static QuadratureGrid gauss_hermite(int order) {
    if (order < 2) throw std::invalid_argument("gauss_hermite: order must be >= 2");
    QuadratureGrid g;
    g.order = order;
    g.nodes.resize(order);
    g.weights.resize(order);

    const int half = (order + 1) / 2;
    std::vector<double> pos(half);
    double z = 0.0;
    for (int i = 0; i < half; ++i) {
      // Stroud/Secrest style initial guesses, largest root first.
      if (i == 0) {
        z = std::sqrt(2.0 * order + 1.0) - 1.85575 * std::pow(2.0 * order + 1.0, -1.0 / 6.0);
      } else if (i == 1) {
        z -= 1.14 * std::pow(order, 0.426) / z;
      } else if (i == 2) {
        z = 1.86 * z - 0.86 * pos[0];
      } else if (i == 3) {
        z = 1.91 * z - 0.91 * pos[1];
      } else {
        z = 2.0 * z - pos[i - 2];
      }
      double top, below;
      for (int it = 0; it < 100; ++it) {
        detail::hermite_top_pair(order, z, top, below);
        // psi_order'(z) = sqrt(2*order) psi_{order-1}(z) - z psi_order(z)
        const double deriv = std::sqrt(2.0 * order) * below - z * top;
        const double dz = top / deriv;
        z -= dz;
        if (std::abs(dz) <= 1e-15 * (1.0 + std::abs(z))) break;
      }
      pos[i] = z;
    }
    for (int i = 0; i < half; ++i) {
      const double z0 = pos[i];  // descending positive roots
      double top, below;
      detail::hermite_top_pair(order, z0, top, below);
      const double w = 1.0 / (order * below * below);
      g.nodes[order - 1 - i] = z0;
      g.nodes[i] = -z0;
      g.weights[order - 1 - i] = w;
      g.weights[i] = w;
    }
    if (order % 2 == 1) {
      g.nodes[order / 2] = 0.0;
      double top, below;
      detail::hermite_top_pair(order, 0.0, top, below);
      g.weights[order / 2] = 1.0 / (order * below * below);
    }
    return g;
  }
};

/// N x N truncation of a density operator in the harmonic-oscillator basis.
/// Hermitian by construction; `tail` is the probability mass discarded by
/// the truncation, declared at build time.
struct FockDensityMatrix {
  int dim = 0;
  detail::CMatrix entries;
  double tail = 0.0;

  cd at(int m, int n) const { return entries(m, n); }
};

/// Numerical |<psi1|psi2>|^2 via Gauss-Hermite quadrature, with the grid
/// recentered and rescaled so the product Gaussian matches the rule's weight
/// exactly. `quad_error` is the worse of the two self-overlap defects.
struct OverlapResult {
  double fidelity;
  double quad_error;
};

namespace detail {

inline cd wave_function(const PureGaussianState& s, double x) {
  const double dx = x - s.x0;
  const cd expo(-0.5 * s.a * dx * dx, -0.5 * s.b * dx * dx + s.p0 * x);
  return std::pow(s.a / M_PI, 0.25) * std::exp(expo);
}

inline double self_norm(const PureGaussianState& s, const QuadratureGrid& grid) {
  const double scale = 1.0 / std::sqrt(s.a);
  double acc = 0.0;
  for (int i = 0; i < grid.order; ++i) {
    const double x = s.x0 + scale * grid.nodes[i];
    acc += grid.weights[i] * std::norm(wave_function(s, x));
  }
  return acc * scale;
}

}  // namespace detail

inline OverlapResult overlap_pure(const PureGaussianState& s1, const PureGaussianState& s2,
                                  const QuadratureGrid& grid) {
  const double asum = s1.a + s2.a;
  const double center = (s1.a * s1.x0 + s2.a * s2.x0) / asum;
  const double scale = std::sqrt(2.0 / asum);
  cd acc(0.0, 0.0);
  for (int i = 0; i < grid.order; ++i) {
    const double x = center + scale * grid.nodes[i];
    acc += grid.weights[i] * std::conj(detail::wave_function(s1, x)) *
           detail::wave_function(s2, x);
  }
  acc *= scale;
  const double defect = std::max(std::abs(detail::self_norm(s1, grid) - 1.0),
                                 std::abs(detail::self_norm(s2, grid) - 1.0));
  if (defect > 1e-8) {
    throw OracleError("overlap_pure: self-overlap deviates from 1 by " +
                      std::to_string(defect) + "; grid order " +
                      std::to_string(grid.order) + " is insufficient");
  }
  return {std::min(std::norm(acc), 1.0), defect};
}

inline OverlapResult overlap_pure(const PureGaussianState& s1, const PureGaussianState& s2) {
  return overlap_pure(s1, s2, QuadratureGrid::gauss_hermite(120));
}

namespace detail {

inline QuadratureGrid default_grid_for(int fock_dim) {
  return QuadratureGrid::gauss_hermite(std::max(120, 2 * fock_dim));
}

inline FockDensityMatrix finish_fock(CMatrix m, double tail, double tail_tol) {
  hermitize(m);
  if (tail > tail_tol) throw TruncationError(tail, tail_tol);
  FockDensityMatrix out;
  out.dim = m.dim();
  out.entries = std::move(m);
  out.tail = tail;
  return out;
}

}  // namespace detail

/// rho = |psi><psi| truncated to N levels, computed from the 1-D coefficient
/// integrals c_m = <phi_m|psi>.
inline FockDensityMatrix fock_matrix(const PureGaussianState& s, int n,
                                     const QuadratureGrid& grid,
                                     double tail_tol = kDefaultTailTol) {
  if (n < 2) throw std::invalid_argument("fock_matrix: dimension must be >= 2");
  const double lambda = 0.5 * (s.a + 1.0);
  const double center = s.a * s.x0 / (s.a + 1.0);
  const double scale = 1.0 / std::sqrt(lambda);
  std::vector<cd> coeff(n, cd(0.0, 0.0));
  std::vector<double> phi(n);
  for (int i = 0; i < grid.order; ++i) {
    const double x = center + scale * grid.nodes[i];
    detail::hermite_functions(n, x, phi.data());
    const cd f = grid.weights[i] * detail::wave_function(s, x);
    for (int m = 0; m < n; ++m) coeff[m] += phi[m] * f;
  }
  double trace = 0.0;
  for (int m = 0; m < n; ++m) {
    coeff[m] *= scale;
    trace += std::norm(coeff[m]);
  }
  detail::CMatrix rho(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) rho(i, j) = coeff[i] * std::conj(coeff[j]);
  return detail::finish_fock(std::move(rho), 1.0 - trace, tail_tol);
}

/// Fock truncation of a homogeneous mixed Gaussian kernel by 2-D tensor
/// quadrature: rho_{mn} = integral phi_m(x) rho(x,y) phi_n(y) dx dy.
inline FockDensityMatrix fock_matrix(const MixedGaussianState& s, int n,
                                     const QuadratureGrid& grid,
                                     double tail_tol = kDefaultTailTol) {
  if (n < 2) throw std::invalid_argument("fock_matrix: dimension must be >= 2");
  const int q = grid.order;
  const double scale = std::sqrt(2.0 / (s.a + 1.0));
  const double norm = std::sqrt(s.a * (1.0 - s.zeta) / M_PI);

  std::vector<double> x(q);
  for (int i = 0; i < q; ++i) x[i] = scale * grid.nodes[i];

  // B[m*q + i] = phi_m(x_i) * weight_i * scale
  std::vector<double> b(static_cast<std::size_t>(n) * q);
  {
    std::vector<double> phi(n);
    for (int i = 0; i < q; ++i) {
      detail::hermite_functions(n, x[i], phi.data());
      const double w = grid.weights[i] * scale;
      for (int m = 0; m < n; ++m) b[static_cast<std::size_t>(m) * q + i] = phi[m] * w;
    }
  }

  // K[i*n + j] = sum_l rho(x_i, x_l) B[j][l]
  std::vector<cd> kernel_row(q);
  std::vector<cd> kmat(static_cast<std::size_t>(q) * n, cd(0.0, 0.0));
  for (int i = 0; i < q; ++i) {
    const double xi = x[i];
    for (int l = 0; l < q; ++l) {
      const double yl = x[l];
      const double re = -0.5 * s.a * (xi * xi + yl * yl) + s.a * s.zeta * xi * yl;
      const double im = -0.5 * s.b * (xi * xi - yl * yl);
      kernel_row[l] = norm * std::exp(cd(re, im));
    }
    cd* krow = kmat.data() + static_cast<std::size_t>(i) * n;
    for (int l = 0; l < q; ++l) {
      const cd r = kernel_row[l];
      const double* bl = b.data();
      for (int j = 0; j < n; ++j) krow[j] += r * bl[static_cast<std::size_t>(j) * q + l];
    }
  }

  detail::CMatrix rho(n);
  for (int m = 0; m < n; ++m) {
    const double* bm = b.data() + static_cast<std::size_t>(m) * q;
    for (int j = 0; j < n; ++j) {
      cd acc(0.0, 0.0);
      for (int i = 0; i < q; ++i) acc += bm[i] * kmat[static_cast<std::size_t>(i) * n + j];
      rho(m, j) = acc;
    }
  }
  double trace = 0.0;
  for (int m = 0; m < n; ++m) trace += rho(m, m).real();
  return detail::finish_fock(std::move(rho), 1.0 - trace, tail_tol);
}

inline FockDensityMatrix fock_matrix(const PureGaussianState& s, int n,
                                     double tail_tol = kDefaultTailTol) {
  return fock_matrix(s, n, detail::default_grid_for(n), tail_tol);
}

inline FockDensityMatrix fock_matrix(const MixedGaussianState& s, int n,
                                     double tail_tol = kDefaultTailTol) {
  return fock_matrix(s, n, detail::default_grid_for(n), tail_tol);
}

/// Uhlmann fidelity [Tr sqrt(sqrt(r1) r2 sqrt(r1))]^2 evaluated by two
/// Hermitian eigendecompositions, eigenvalues clipped at zero.
inline double fidelity_fock(const FockDensityMatrix& r1, const FockDensityMatrix& r2) {
  if (r1.dim != r2.dim) {
    throw std::invalid_argument("fidelity_fock: dimension mismatch (" +
                                std::to_string(r1.dim) + " vs " + std::to_string(r2.dim) + ")");
  }
  if (detail::max_hermiticity_defect(r1.entries) > 1e-12 ||
      detail::max_hermiticity_defect(r2.entries) > 1e-12) {
    throw std::invalid_argument("fidelity_fock: input matrix is not Hermitian");
  }
  // Eigenvalues below the eigensolver's noise floor are discarded, not just
  // clipped at zero: sqrt() would turn +-eps-sized noise into ~1e-8 phantom
  // mass per mode, which accumulates with the dimension and dominates the
  // truncation error. Density matrices have unit trace, so an absolute floor
  // is scale-correct here.
  constexpr double kSpectrumFloor = 1e-15;
  const auto eig1 = detail::eigh(r1.entries);
  const auto sqrt1 = detail::spectral_apply(
      eig1, [](double v) { return v > kSpectrumFloor ? std::sqrt(v) : 0.0; });
  auto inner = detail::multiply(detail::multiply(sqrt1, r2.entries), sqrt1);
  detail::hermitize(inner);
  const auto eig2 = detail::eigh(inner);
  double acc = 0.0;
  for (double v : eig2.values) {
    if (v > kSpectrumFloor) acc += std::sqrt(v);
  }
  return std::clamp(acc * acc, 0.0, 1.0);
}

/// Tr[rho (n_hat + 1/2)] over the truncated block.
inline double energy_fock(const FockDensityMatrix& r) {
  double acc = 0.0;
  for (int m = 0; m < r.dim; ++m) acc += (m + 0.5) * r.entries(m, m).real();
  return acc;
}

/// Tr(rho^2) = squared Frobenius norm for Hermitian rho.
inline double purity_fock(const FockDensityMatrix& r) {
  double acc = 0.0;
  for (int i = 0; i < r.dim; ++i)
    for (int j = 0; j < r.dim; ++j) acc += std::norm(r.entries(i, j));
  return acc;
}

/// Quadrature second moments from the band structure of x^2, p^2, (xp+px)/2
/// in the Fock basis.
inline SecondMoments moments_fock(const FockDensityMatrix& r) {
  double diag = 0.0, off_re = 0.0, off_im = 0.0;
  for (int m = 0; m < r.dim; ++m) diag += (m + 0.5) * r.entries(m, m).real();
  for (int m = 0; m + 2 < r.dim; ++m) {
    const double g = std::sqrt(static_cast<double>(m + 1) * (m + 2));
    off_re += g * r.entries(m, m + 2).real();
    off_im += g * r.entries(m, m + 2).imag();
  }
  return {diag + off_re, diag - off_re, -off_im};
}

}  // namespace gaussbound
