// Copyright 2026 The MeasureKit Authors
// SPDX-License-Identifier: Apache-2.0

#include "measurekit/hermitian.hpp"

#include <algorithm>
#include <cmath>

#include "measurekit/error.hpp"

namespace measurekit {

std::vector<double> jacobi_eigenvalues(std::vector<double> a, int n) {
  auto at = [&](int r, int c) -> double& { return a[static_cast<std::size_t>(r) * n + c]; };
  double scale = 0.0;
  for (double x : a) scale += x * x;
  const double stop = 1e-30 * std::max(scale, 1e-300);

  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (int p = 0; p < n; ++p) {
      for (int q = p + 1; q < n; ++q) off += at(p, q) * at(p, q);
    }
    if (off <= stop) break;
    for (int p = 0; p < n; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const double apq = at(p, q);
        if (apq == 0.0) continue;
        const double theta = (at(q, q) - at(p, p)) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (int k = 0; k < n; ++k) {
          const double akp = at(k, p);
          const double akq = at(k, q);
          at(k, p) = c * akp - s * akq;
          at(k, q) = s * akp + c * akq;
        }
        for (int k = 0; k < n; ++k) {
          const double apk = at(p, k);
          const double aqk = at(q, k);
          at(p, k) = c * apk - s * aqk;
          at(q, k) = s * apk + c * aqk;
        }
      }
    }
  }
  std::vector<double> ev(n);
  for (int i = 0; i < n; ++i) ev[i] = at(i, i);
  std::sort(ev.begin(), ev.end());
  return ev;
}

std::vector<double> hermitian_eigenvalues(const CMatrix& h) {
  if (h.rows() != h.cols()) throw DimensionMismatch("eigenvalues need a square matrix");
  const int n = static_cast<int>(h.rows());
  const CMatrix herm = 0.5 * (h + h.adjoint());
  const int m = 2 * n;
  std::vector<double> a(static_cast<std::size_t>(m) * m);
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) {
      const double re = herm(r, c).real();
      const double im = herm(r, c).imag();
      a[r * m + c] = re;
      a[(r + n) * m + (c + n)] = re;
      a[r * m + (c + n)] = -im;
      a[(r + n) * m + c] = im;
    }
  }
  const auto doubled = jacobi_eigenvalues(std::move(a), m);
  std::vector<double> ev(n);
  for (int i = 0; i < n; ++i) ev[i] = 0.5 * (doubled[2 * i] + doubled[2 * i + 1]);
  return ev;
}

double min_eigenvalue(const CMatrix& h) { return hermitian_eigenvalues(h).front(); }

double hermiticity_defect(const CMatrix& h) {
  if (h.rows() != h.cols()) return INFINITY;
  return (h - h.adjoint()).cwiseAbs().maxCoeff();
}

}  // namespace measurekit
