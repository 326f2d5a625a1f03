// Test-only numerical oracles, kept independent of the library's training
// and gradient paths.
#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "mmae/matrix.hpp"

namespace mmae::testing {

// Max relative error between two gradients, with an absolute floor so
// near-zero coordinates do not blow the ratio up.
inline double max_rel_error(const std::vector<double>& a,
                            const std::vector<double>& b,
                            double floor = 1e-8) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double denom = std::max({std::abs(a[i]), std::abs(b[i]), floor});
    worst = std::max(worst, std::abs(a[i] - b[i]) / denom);
  }
  return worst;
}

// Eigen-decomposition of a symmetric matrix by cyclic Jacobi rotations.
// Returns eigenvalues in descending order; eigenvectors as columns of V.
inline void jacobi_eigen(RealMatrix a, std::vector<double>& eigenvalues,
                         RealMatrix& v) {
  const std::size_t n = a.rows();
  v = RealMatrix::identity(n);
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) off += a(p, q) * a(p, q);
    if (off < 1e-24) break;
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        if (std::abs(a(p, q)) < 1e-300) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * a(p, q));
        const double t = (theta >= 0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double vkp = v(k, p), vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
    }
  }
  eigenvalues.resize(n);
  for (std::size_t i = 0; i < n; ++i) eigenvalues[i] = a(i, i);
  // Sort descending, permuting eigenvector columns to match.
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    return eigenvalues[x] > eigenvalues[y];
  });
  std::vector<double> ev(n);
  RealMatrix vv(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    ev[i] = eigenvalues[order[i]];
    for (std::size_t k = 0; k < n; ++k) vv(k, i) = v(k, order[i]);
  }
  eigenvalues = ev;
  v = vv;
}

// Mean per-sample squared reconstruction error of the optimal rank-h linear
// reconstruction (PCA with mean removal): the sum of discarded covariance
// eigenvalues.
inline double pca_optimal_error(const RealMatrix& x, std::size_t h) {
  const std::size_t d = x.rows(), n = x.cols();
  std::vector<double> mean(d, 0.0);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < n; ++j) mean[i] += x(i, j);
    mean[i] /= static_cast<double>(n);
  }
  RealMatrix cov(d, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t k = i; k < d; ++k) {
      double s = 0.0;
      for (std::size_t j = 0; j < n; ++j)
        s += (x(i, j) - mean[i]) * (x(k, j) - mean[k]);
      cov(i, k) = cov(k, i) = s / static_cast<double>(n);
    }
  std::vector<double> ev;
  RealMatrix v;
  jacobi_eigen(cov, ev, v);
  double err = 0.0;
  for (std::size_t i = h; i < d; ++i) err += ev[i];
  return err;
}

// First canonical correlation between the columns-as-samples datasets x and
// y, via the symmetric eigenproblem on ridge-regularized covariances.
inline double first_canonical_correlation(const RealMatrix& x,
                                          const RealMatrix& y,
                                          double ridge = 1e-6) {
  const std::size_t dx = x.rows(), dy = y.rows(), n = x.cols();
  auto centered = [n](const RealMatrix& m) {
    RealMatrix out = m;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      double mu = 0.0;
      for (std::size_t j = 0; j < n; ++j) mu += m(i, j);
      mu /= static_cast<double>(n);
      for (std::size_t j = 0; j < n; ++j) out(i, j) -= mu;
    }
    return out;
  };
  const RealMatrix xc = centered(x), yc = centered(y);
  auto cov = [n](const RealMatrix& a, const RealMatrix& b) {
    return scaled(multiply_a_bt(a, b), 1.0 / static_cast<double>(n));
  };
  RealMatrix cxx = cov(xc, xc), cyy = cov(yc, yc), cxy = cov(xc, yc);
  for (std::size_t i = 0; i < dx; ++i) cxx(i, i) += ridge;
  for (std::size_t i = 0; i < dy; ++i) cyy(i, i) += ridge;

  // Inverse square roots via Jacobi.
  auto inv_sqrt = [](const RealMatrix& m) {
    std::vector<double> ev;
    RealMatrix v;
    jacobi_eigen(m, ev, v);
    RealMatrix d(m.rows(), m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i)
      d(i, i) = 1.0 / std::sqrt(std::max(ev[i], 1e-12));
    return multiply(multiply(v, d), v.transposed());
  };
  const RealMatrix t =
      multiply(multiply(inv_sqrt(cxx), cxy), inv_sqrt(cyy));
  // Largest singular value of t = sqrt of largest eigenvalue of t t^T.
  std::vector<double> ev;
  RealMatrix v;
  jacobi_eigen(multiply_a_bt(t, t), ev, v);
  return std::sqrt(std::max(ev.front(), 0.0));
}

}  // namespace mmae::testing
