/*
 * Copyright 2026 The csimplex Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#include "csimplex/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Eigenvalues>

namespace csimplex {

namespace {

void require_square_finite(const Matrix& M) {
  if (M.rows() != M.cols()) throw DomainError("spectral radius needs a square matrix");
  if (!M.allFinite()) throw DomainError("spectral radius needs finite entries");
}

}  // namespace

std::vector<double> characteristic_polynomial(const Matrix& M) {
  require_square_finite(M);
  const Eigen::Index n = M.rows();
  std::vector<double> c(static_cast<std::size_t>(n) + 1, 0.0);
  c[static_cast<std::size_t>(n)] = 1.0;
  Matrix Mk = Matrix::Zero(n, n);
  for (Eigen::Index k = 1; k <= n; ++k) {
    Mk = M * Mk;
    Mk.diagonal().array() += c[static_cast<std::size_t>(n - k + 1)];
    c[static_cast<std::size_t>(n - k)] = -(M * Mk).trace() / double(k);
  }
  return c;
}

std::vector<std::complex<double>> polynomial_roots(const std::vector<double>& coeffs) {
  if (coeffs.empty() || coeffs.back() == 0.0) {
    throw DomainError("polynomial needs a non-zero leading coefficient");
  }
  const std::size_t deg = coeffs.size() - 1;
  std::vector<std::complex<double>> roots;
  if (deg == 0) return roots;
  const double lead = coeffs.back();
  if (deg == 1) {
    roots.emplace_back(-coeffs[0] / lead);
    return roots;
  }
  if (deg == 2) {
    const double b = coeffs[1] / lead, c = coeffs[0] / lead;
    const double disc = b * b - 4.0 * c;
    if (disc >= 0.0) {
      // avoid cancellation in the smaller root
      const double q = -0.5 * (b + std::copysign(std::sqrt(disc), b));
      roots.emplace_back(q);
      roots.emplace_back(q != 0.0 ? c / q : 0.0);
    } else {
      const double im = 0.5 * std::sqrt(-disc);
      roots.emplace_back(-0.5 * b, im);
      roots.emplace_back(-0.5 * b, -im);
    }
    return roots;
  }
  const auto d = static_cast<Eigen::Index>(deg);
  Matrix companion = Matrix::Zero(d, d);
  for (Eigen::Index i = 1; i < d; ++i) companion(i, i - 1) = 1.0;
  for (Eigen::Index i = 0; i < d; ++i) {
    companion(i, d - 1) = -coeffs[static_cast<std::size_t>(i)] / lead;
  }
  Eigen::EigenSolver<Matrix> solver(companion, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success) throw DomainError("companion eigenvalue solve failed");
  for (Eigen::Index i = 0; i < d; ++i) roots.push_back(solver.eigenvalues()[i]);
  return roots;
}

SpectralEstimate perron_root(const Matrix& M, int max_iter, double tol) {
  require_square_finite(M);
  const Eigen::Index n = M.rows();
  SpectralEstimate est;
  est.method = "power_iteration";
  if (n == 0) return est;
  if ((M.array() < 0.0).any()) throw DomainError("perron_root needs a non-negative matrix");

  const bool positive = (M.array() > 0.0).all();
  const double shift = positive ? 0.0 : 1.0;
  Matrix iter = M;
  iter.diagonal().array() += shift;

  Vector v = Vector::Constant(n, 1.0 / double(n));
  double previous = std::numeric_limits<double>::infinity();
  est.converged = false;
  for (int k = 1; k <= max_iter; ++k) {
    const Vector w = iter * v;
    double lo = std::numeric_limits<double>::infinity();
    double hi = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
      const double ratio = w[i] / v[i];
      lo = std::min(lo, ratio);
      hi = std::max(hi, ratio);
    }
    const double norm = w.sum();
    est.iterations = k;
    est.lower = std::max(0.0, lo - shift);
    est.upper = hi - shift;
    // w.sum() / v.sum() with v.sum() == 1
    est.value = std::clamp(norm - shift, est.lower, est.upper);
    if (norm == 0.0) {
      est.value = est.lower = est.upper = 0.0;
      est.converged = true;
      break;
    }
    v = w / norm;
    const double scale = std::max(1.0, est.upper);
    const bool bracket_closed = est.upper - est.lower <= tol * scale;
    // Reducible matrices keep a gap in the bracket forever; fall back to drift.
    const bool settled = !positive && std::abs(est.value - previous) <= tol * scale;
    if (bracket_closed || settled) {
      est.converged = true;
      break;
    }
    previous = est.value;
  }
  return est;
}

SpectralEstimate spectral_radius(const Matrix& M) {
  require_square_finite(M);
  const Eigen::Index n = M.rows();
  SpectralEstimate est;
  if (n == 0) {
    est.method = "empty";
    return est;
  }
  if (n <= 4) {
    est.method = "characteristic_polynomial";
    double rho = 0.0;
    for (const auto& r : polynomial_roots(characteristic_polynomial(M))) {
      rho = std::max(rho, std::abs(r));
    }
    est.value = est.lower = est.upper = rho;
    return est;
  }
  if ((M.array() >= 0.0).all()) return perron_root(M);
  est.method = "schur";
  Eigen::EigenSolver<Matrix> solver(M, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success) {
    est.converged = false;
    est.lower = 0.0;
    est.upper = M.cwiseAbs().rowwise().sum().maxCoeff();
    est.value = est.upper;
    return est;
  }
  est.value = solver.eigenvalues().cwiseAbs().maxCoeff();
  est.lower = est.upper = est.value;
  return est;
}

}  // namespace csimplex
