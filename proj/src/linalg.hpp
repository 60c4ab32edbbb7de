#ifndef TAUSPEC_LINALG_HPP
#define TAUSPEC_LINALG_HPP

// Small dense/banded eigen kernels used by the spectral oracles: symmetric
// banded Sturm bisection (inertia counts from LDL^T), banded LDL^T solves
// for inverse iteration, cyclic Jacobi for dense symmetric matrices, and
// Gauss-Legendre nodes.

#include <cmath>
#include <vector>

#include "tauspec/errors.hpp"

namespace tauspec::linalg {

// Symmetric banded matrix, half bandwidth `hb`: band[d][i] = A(i, i+d),
// d = 0..hb, i = 0..n-1 (entries past the edge unused).
struct SymBand {
  int n = 0, hb = 0;
  std::vector<std::vector<double>> band;
  SymBand(int n_, int hb_) : n(n_), hb(hb_), band(hb_ + 1) {
    for (auto& row : band) row.assign(n_, 0.0);
  }
  double at(int i, int j) const {
    int d = j - i;
    if (d < 0) {
      i = j;
      d = -d;
    }
    return (d > hb) ? 0.0 : band[d][i];
  }
};

// Number of eigenvalues strictly below x (inertia of A - x I via LDL^T).
// Scratch buffers grow once and are reused across calls (not thread-safe
// across concurrent counts on different matrices; root scans keep their
// own matrices sequential).
inline int sturm_count(const SymBand& A, double x, std::vector<double>& d,
                       std::vector<double>& L) {
  const int n = A.n, hb = A.hb;
  d.assign(n, 0.0);
  L.assign(static_cast<std::size_t>(n) * hb, 0.0);
  int count = 0;
  for (int i = 0; i < n; ++i) {
    double dii = A.band[0][i] - x;
    const int base_i = i * hb - (i - hb);  // L(i,k) at L[base_i + k]
    for (int k = std::max(0, i - hb); k < i; ++k) {
      double s = A.at(k, i);
      const int base_k = k * hb - (k - hb);
      for (int p = std::max(0, i - hb); p < k; ++p)
        s -= L[base_i + p] * d[p] * L[base_k + p];
      double lik = s / d[k];
      L[base_i + k] = lik;
      dii -= lik * lik * d[k];
    }
    if (dii == 0.0) dii = -1e-300;
    d[i] = dii;
    if (dii < 0.0) ++count;
  }
  return count;
}

inline int sturm_count(const SymBand& A, double x) {
  std::vector<double> d, L;
  return sturm_count(A, x, d, L);
}

// k-th smallest eigenvalue (0-based) by bisection on the inertia count.
inline double sturm_eigenvalue(const SymBand& A, int k, double tol = 1e-13) {
  // Gershgorin bounds
  double lo = 1e300, hi = -1e300;
  for (int i = 0; i < A.n; ++i) {
    double r = 0.0;
    for (int d = 1; d <= A.hb; ++d) {
      if (i + d < A.n) r += std::abs(A.band[d][i]);
      if (i - d >= 0) r += std::abs(A.band[d][i - d]);
    }
    lo = std::min(lo, A.band[0][i] - r);
    hi = std::max(hi, A.band[0][i] + r);
  }
  std::vector<double> d, L;
  // bisect to a tolerance relative to the eigenvalue, not to the
  // Gershgorin scale (which grows like 1/h^2 for difference operators)
  while (hi - lo > tol * std::max(1.0, std::min(std::abs(lo), std::abs(hi)))) {
    double mid = 0.5 * (lo + hi);
    if (sturm_count(A, mid, d, L) >= k + 1)
      hi = mid;
    else
      lo = mid;
  }
  return 0.5 * (lo + hi);
}

// Solve (A - s I) x = b through banded LDL^T (no pivoting; `s` must not be
// an eigenvalue up to the inverse-iteration perturbation).
inline std::vector<double> banded_shifted_solve(const SymBand& A, double s,
                                                std::vector<double> b) {
  const int n = A.n, hb = A.hb;
  std::vector<double> d(n, 0.0);
  std::vector<std::vector<double>> L(n, std::vector<double>(hb, 0.0));
  for (int i = 0; i < n; ++i) {
    double dii = A.band[0][i] - s;
    for (int k = std::max(0, i - hb); k < i; ++k) {
      double sum = A.at(k, i);
      for (int p = std::max(0, i - hb); p < k; ++p)
        if (k - p <= hb) sum -= L[i][p - (i - hb)] * d[p] * L[k][p - (k - hb)];
      double lik = sum / d[k];
      L[i][k - (i - hb)] = lik;
      dii -= lik * lik * d[k];
    }
    if (std::abs(dii) < 1e-280) dii = 1e-280;
    d[i] = dii;
    // forward substitution inline
    for (int k = std::max(0, i - hb); k < i; ++k)
      b[i] -= L[i][k - (i - hb)] * b[k];
  }
  for (int i = 0; i < n; ++i) b[i] /= d[i];
  for (int i = n - 1; i >= 0; --i)
    for (int k = std::max(0, i - hb); k < i; ++k)
      b[k] -= L[i][k - (i - hb)] * b[i];
  return b;
}

// Ground-vector style inverse iteration near eigenvalue `ev`.
inline std::vector<double> inverse_iteration(const SymBand& A, double ev,
                                             int iters = 4) {
  std::vector<double> v(A.n, 1.0);
  for (int i = 0; i < A.n; ++i) v[i] = 1.0 / (1.0 + i % 7);
  double shift = ev + 1e-9 * std::max(1.0, std::abs(ev));
  for (int it = 0; it < iters; ++it) {
    v = banded_shifted_solve(A, shift, v);
    double nrm = 0.0;
    for (double x : v) nrm += x * x;
    nrm = std::sqrt(nrm);
    for (double& x : v) x /= nrm;
  }
  return v;
}

// Cyclic Jacobi for dense symmetric matrices; returns eigenvalues ascending.
inline std::vector<double> jacobi_eigenvalues(std::vector<std::vector<double>> a) {
  const int n = static_cast<int>(a.size());
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) off += a[i][j] * a[i][j];
    if (off < 1e-26 * n * n) break;
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        if (std::abs(a[p][q]) < 1e-300) continue;
        double theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
        double t = (theta >= 0 ? 1.0 : -1.0) /
                   (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        double c = 1.0 / std::sqrt(t * t + 1.0), s = t * c;
        for (int k = 0; k < n; ++k) {
          double akp = a[k][p], akq = a[k][q];
          a[k][p] = c * akp - s * akq;
          a[k][q] = s * akp + c * akq;
        }
        for (int k = 0; k < n; ++k) {
          double apk = a[p][k], aqk = a[q][k];
          a[p][k] = c * apk - s * aqk;
          a[q][k] = s * apk + c * aqk;
        }
      }
    }
  }
  std::vector<double> ev(n);
  for (int i = 0; i < n; ++i) ev[i] = a[i][i];
  std::sort(ev.begin(), ev.end());
  return ev;
}

// Gauss-Legendre nodes/weights on [0,1].
inline void gauss_legendre_01(int n, std::vector<double>& x,
                              std::vector<double>& w) {
  x.assign(n, 0.0);
  w.assign(n, 0.0);
  for (int i = 0; i < n; ++i) {
    double t = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = t;
      for (int k = 2; k <= n; ++k) {
        double p2 = ((2.0 * k - 1.0) * t * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      double dp = n * (t * p1 - p0) / (t * t - 1.0);
      double dt = p1 / dp;
      t -= dt;
      if (std::abs(dt) < 1e-15) break;
    }
    double p0 = 1.0, p1 = t;
    for (int k = 2; k <= n; ++k) {
      double p2 = ((2.0 * k - 1.0) * t * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    double dp = n * (t * p1 - p0) / (t * t - 1.0);
    x[i] = 0.5 * (1.0 - t);
    w[i] = 1.0 / ((1.0 - t * t) * dp * dp);
  }
}

}  // namespace tauspec::linalg

#endif
