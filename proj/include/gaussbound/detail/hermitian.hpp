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
#include <vector>

namespace gaussbound::detail {

using cd = std::complex<double>;

/// Dense square complex matrix, row-major.
class CMatrix {
 public:
  CMatrix() = default;
  explicit CMatrix(int n) : n_(n), d_(static_cast<std::size_t>(n) * n) {}

  int dim() const { return n_; }
  cd& operator()(int i, int j) { return d_[static_cast<std::size_t>(i) * n_ + j]; }
  const cd& operator()(int i, int j) const { return d_[static_cast<std::size_t>(i) * n_ + j]; }
  cd* data() { return d_.data(); }
  const cd* data() const { return d_.data(); }

  static CMatrix identity(int n) {
    CMatrix m(n);
    for (int i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

 private:
  int n_ = 0;
  std::vector<cd> d_;
};

inline CMatrix multiply(const CMatrix& a, const CMatrix& b) {
  const int n = a.dim();
  CMatrix c(n);
  for (int i = 0; i < n; ++i) {
    const cd* ai = a.data() + static_cast<std::size_t>(i) * n;
    cd* ci = c.data() + static_cast<std::size_t>(i) * n;
    for (int k = 0; k < n; ++k) {
      const cd aik = ai[k];
      if (aik == cd(0.0, 0.0)) continue;
      const cd* bk = b.data() + static_cast<std::size_t>(k) * n;
      for (int j = 0; j < n; ++j) ci[j] += aik * bk[j];
    }
  }
  return c;
}

inline CMatrix adjoint(const CMatrix& a) {
  const int n = a.dim();
  CMatrix c(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) c(i, j) = std::conj(a(j, i));
  return c;
}

inline void hermitize(CMatrix& a) {
  const int n = a.dim();
  for (int i = 0; i < n; ++i) {
    a(i, i) = cd(a(i, i).real(), 0.0);
    for (int j = i + 1; j < n; ++j) {
      const cd avg = 0.5 * (a(i, j) + std::conj(a(j, i)));
      a(i, j) = avg;
      a(j, i) = std::conj(avg);
    }
  }
}

inline double max_hermiticity_defect(const CMatrix& a) {
  const int n = a.dim();
  double worst = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j)
      worst = std::max(worst, std::abs(a(i, j) - std::conj(a(j, i))));
  return worst;
}

/// Eigendecomposition A = V diag(values) V^dagger of a Hermitian matrix.
/// Values ascending, V unitary with eigenvectors in columns.
struct EigResult {
  std::vector<double> values;
  CMatrix vectors;
};

/// Hermitian eigensolver for small dense matrices (N <= a few hundred):
/// complex Householder reduction to real symmetric tridiagonal form followed
/// by implicit-shift QL with eigenvector accumulation.
inline EigResult eigh(CMatrix a) {
  const int n = a.dim();
  if (n == 0) return {{}, CMatrix(0)};

  CMatrix q = CMatrix::identity(n);
  std::vector<double> d(n), e(n + 1, 0.0);  // e[i+1] pairs (i, i+1); e[n] is scratch

  // Householder reduction: for each column k eliminate entries below the
  // first subdiagonal, accumulating the unitary transform into q.
  std::vector<cd> v(n), w(n), u(n);
  for (int k = 0; k < n - 2; ++k) {
    const int m = n - k - 1;  // length of the column piece below the diagonal
    double scale = 0.0;
    for (int i = k + 1; i < n; ++i) scale += std::abs(a(i, k));
    if (scale == 0.0) continue;

    double norm2 = 0.0;
    for (int i = 0; i < m; ++i) {
      v[i] = a(k + 1 + i, k) / scale;
      norm2 += std::norm(v[i]);
    }
    const double norm = std::sqrt(norm2);
    // Reflect x onto alpha * e_1 with alpha = -phase(x_0) * |x|.
    cd phase(1.0, 0.0);
    if (std::abs(v[0]) > 0.0) phase = v[0] / std::abs(v[0]);
    const cd alpha = -phase * norm;
    v[0] -= alpha;
    double vnorm2 = 0.0;
    for (int i = 0; i < m; ++i) vnorm2 += std::norm(v[i]);
    if (vnorm2 == 0.0) continue;
    const double inv = 1.0 / std::sqrt(vnorm2);
    for (int i = 0; i < m; ++i) v[i] *= inv;

    // Trailing block update T <- (I - 2vv^+) T (I - 2vv^+):
    //   w = T v, mu = v^+ w, u = w - mu v, T <- T - 2(v u^+ + u v^+).
    for (int i = 0; i < m; ++i) {
      cd acc(0.0, 0.0);
      const cd* row = a.data() + static_cast<std::size_t>(k + 1 + i) * n + (k + 1);
      for (int j = 0; j < m; ++j) acc += row[j] * v[j];
      w[i] = acc;
    }
    cd mu(0.0, 0.0);
    for (int i = 0; i < m; ++i) mu += std::conj(v[i]) * w[i];
    for (int i = 0; i < m; ++i) u[i] = w[i] - mu * v[i];
    for (int i = 0; i < m; ++i) {
      cd* row = a.data() + static_cast<std::size_t>(k + 1 + i) * n + (k + 1);
      for (int j = 0; j < m; ++j)
        row[j] -= 2.0 * (v[i] * std::conj(u[j]) + u[i] * std::conj(v[j]));
    }
    // Column k itself becomes (alpha*scale) e_1.
    a(k + 1, k) = alpha * scale;
    a(k, k + 1) = std::conj(alpha) * scale;
    for (int i = k + 2; i < n; ++i) {
      a(i, k) = 0.0;
      a(k, i) = 0.0;
    }
    // q <- q (I - 2 v v^+), acting on columns k+1..n-1.
    for (int r = 0; r < n; ++r) {
      cd acc(0.0, 0.0);
      cd* qr = q.data() + static_cast<std::size_t>(r) * n + (k + 1);
      for (int j = 0; j < m; ++j) acc += qr[j] * v[j];
      acc *= 2.0;
      for (int j = 0; j < m; ++j) qr[j] -= acc * std::conj(v[j]);
    }
  }

  // Absorb the phases of the complex subdiagonal into a diagonal unitary so
  // that the tridiagonal matrix becomes real symmetric.
  {
    cd dk(1.0, 0.0);
    for (int k = 0; k + 1 < n; ++k) {
      const cd t = a(k + 1, k);
      const double mag = std::abs(t);
      e[k + 1] = mag;
      cd dk1 = dk;
      if (mag > 0.0) dk1 = (t / mag) * dk;
      if (dk1 != cd(1.0, 0.0)) {
        for (int r = 0; r < n; ++r) q(r, k + 1) *= dk1;
      }
      dk = dk1;
    }
    for (int k = 0; k < n; ++k) d[k] = a(k, k).real();
  }

  // Implicit-shift QL on the real tridiagonal (d, e), rotations accumulated
  // into the complex eigenvector matrix q.
  for (int l = 0; l < n; ++l) {
    int iter = 0;
    for (;;) {
      int m = l;
      for (; m < n - 1; ++m) {
        const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
        if (std::abs(e[m + 1]) <= 1e-300 || std::abs(e[m + 1]) <= 2.3e-16 * dd) break;
      }
      if (m == l) break;
      if (++iter > 50) throw std::runtime_error("eigh: QL iteration failed to converge");
      double g = (d[l + 1] - d[l]) / (2.0 * e[l + 1]);
      double r = std::hypot(g, 1.0);
      g = d[m] - d[l] + e[l + 1] / (g + (g >= 0.0 ? std::abs(r) : -std::abs(r)));
      double s = 1.0, c = 1.0, p = 0.0;
      bool underflowed = false;
      for (int i = m - 1; i >= l; --i) {
        double f = s * e[i + 1];
        const double b = c * e[i + 1];
        r = std::hypot(f, g);
        e[i + 2] = r;
        if (r == 0.0) {
          d[i + 1] -= p;
          e[m + 1] = 0.0;
          underflowed = true;
          break;
        }
        s = f / r;
        c = g / r;
        g = d[i + 1] - p;
        r = (d[i] - g) * s + 2.0 * c * b;
        p = s * r;
        d[i + 1] = g + p;
        g = c * r - b;
        for (int k = 0; k < n; ++k) {
          const cd qk1 = q(k, i + 1);
          const cd qk0 = q(k, i);
          q(k, i + 1) = s * qk0 + c * qk1;
          q(k, i) = c * qk0 - s * qk1;
        }
      }
      if (underflowed) continue;
      d[l] -= p;
      e[l + 1] = g;
      e[m + 1] = 0.0;
    }
  }

  // Sort ascending, permuting eigenvector columns alongside.
  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](int i, int j) { return d[i] < d[j]; });
  EigResult out;
  out.values.resize(n);
  out.vectors = CMatrix(n);
  for (int j = 0; j < n; ++j) {
    out.values[j] = d[order[j]];
    for (int i = 0; i < n; ++i) out.vectors(i, j) = q(i, order[j]);
  }
  return out;
}

/// V f(diag) V^dagger for a spectral function applied to clipped eigenvalues.
template <typename F>
inline CMatrix spectral_apply(const EigResult& eig, F&& f) {
  const int n = eig.vectors.dim();
  CMatrix out(n);
  std::vector<double> fv(n);
  for (int k = 0; k < n; ++k) fv[k] = f(eig.values[k]);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      cd acc(0.0, 0.0);
      for (int k = 0; k < n; ++k)
        acc += eig.vectors(i, k) * fv[k] * std::conj(eig.vectors(j, k));
      out(i, j) = acc;
    }
  }
  return out;
}

}  // namespace gaussbound::detail
