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
#ifndef CSIMPLEX_SPECTRAL_HPP
#define CSIMPLEX_SPECTRAL_HPP

#include <complex>
#include <string>
#include <vector>

#include "csimplex/order.hpp"

namespace csimplex {

struct SpectralEstimate {
  double value = 0.0;
  // Bracket on the spectral radius. Equal to value for the direct methods;
  // Collatz-Wielandt bounds for power iteration.
  double lower = 0.0;
  double upper = 0.0;
  bool converged = true;
  int iterations = 0;
  std::string method;
};

/// Coefficients c_0..c_n of det(lambda I - M) = sum_k c_k lambda^k, c_n = 1
/// (Faddeev-LeVerrier).
std::vector<double> characteristic_polynomial(const Matrix& M);

/// Roots of a real polynomial given by ascending coefficients, leading
/// coefficient non-zero. Closed form up to degree 2, companion matrix
/// eigenvalues above.
std::vector<std::complex<double>> polynomial_roots(const std::vector<double>& coeffs);

/// Perron root of a non-negative matrix by power iteration.
///
/// Iterates on M (strictly positive M) or M + I (non-negative M with zeros, so
/// the iteration matrix is aperiodic) and tracks the Collatz-Wielandt bracket
/// min_i (Mv)_i / v_i <= rho <= max_i (Mv)_i / v_i. Stops when the bracket is
/// narrower than tol * max(1, rho) or the estimate drifts by less than tol;
/// otherwise reports converged = false with the last bracket.
SpectralEstimate perron_root(const Matrix& M, int max_iter = 10000, double tol = 1e-12);

/// Largest eigenvalue modulus. n <= 4: roots of the characteristic polynomial;
/// larger non-negative matrices: perron_root; otherwise a real Schur
/// decomposition.
SpectralEstimate spectral_radius(const Matrix& M);

}  // namespace csimplex

#endif  // CSIMPLEX_SPECTRAL_HPP
