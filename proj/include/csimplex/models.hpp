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
#ifndef CSIMPLEX_MODELS_HPP
#define CSIMPLEX_MODELS_HPP

#include <cstddef>
#include <functional>
#include <stdexcept>
#include <string>

#include "csimplex/order.hpp"

namespace csimplex {

/// Invalid model parameters; raised at construction, parameters are never
/// clamped.
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A growth factor (or its derivative) came out NaN/inf.
class ModelEvaluationError : public std::runtime_error {
 public:
  ModelEvaluationError(const std::string& what, std::size_t index)
      : std::runtime_error(what), index_(index) {}
  /// 0-based offending coordinate.
  std::size_t index() const { return index_; }

 private:
  std::size_t index_;
};

/// An axis has no positive fixed point (or it could not be located).
class NoAxialFixedPoint : public std::runtime_error {
 public:
  NoAxialFixedPoint(const std::string& what, std::size_t index)
      : std::runtime_error(what), index_(index) {}
  std::size_t index() const { return index_; }

 private:
  std::size_t index_;
};

/// Map of K of the form T_i(x) = x_i * G_i(x).
///
/// Implementations provide the per-capita growth factors G, their Jacobian
/// and the axial fixed points. The virtual evaluators are unchecked: they
/// accept any vector in the model's natural domain (finite-difference stencils
/// may step slightly outside K). Use the free functions below for validated
/// evaluation.
class CompetitionModel {
 public:
  explicit CompetitionModel(std::size_t n) : n_(n) {}
  virtual ~CompetitionModel() = default;

  std::size_t dimension() const { return n_; }
  /// Identifier used in model files and reports.
  virtual std::string family() const = 0;

  virtual Vector growth(const Vector& x) const = 0;
  virtual Matrix growth_jacobian(const Vector& x) const = 0;
  /// q_i, the positive fixed point of T restricted to axis i.
  virtual Vector axial_fixed_points() const = 0;

  /// x .* G(x); overridden when T can be produced more cheaply.
  virtual Vector map(const Vector& x) const { return x.cwiseProduct(growth(x)); }

 private:
  std::size_t n_;
};

/// T_i(x) = x_i exp(B_i - sum_j A_ij x_j), B_i, A_ii > 0, A_ij >= 0.
class MayOsterModel final : public CompetitionModel {
 public:
  MayOsterModel(Vector B, Matrix A);

  std::string family() const override { return "may_oster"; }
  Vector growth(const Vector& x) const override;
  Matrix growth_jacobian(const Vector& x) const override;
  Vector axial_fixed_points() const override;

  const Vector& B() const { return B_; }
  const Matrix& A() const { return A_; }

 private:
  Vector B_;
  Matrix A_;
};

/// T_i(x) = C_i x_i / (1 + sum_j A_ij x_j), C_i, A_ii > 0, A_ij >= 0.
class LeslieGowerModel final : public CompetitionModel {
 public:
  LeslieGowerModel(Vector C, Matrix A);

  std::string family() const override { return "leslie_gower"; }
  Vector growth(const Vector& x) const override;
  Matrix growth_jacobian(const Vector& x) const override;
  /// Requires C_i > 1 for every i; otherwise throws NoAxialFixedPoint.
  Vector axial_fixed_points() const override;

  const Vector& C() const { return C_; }
  const Matrix& A() const { return A_; }

 private:
  Vector C_;
  Matrix A_;
};

/// Transfer function sigma of the neural network model. Must satisfy
/// sigma(0) = 0, sigma' > 0 and sup sigma' = gain.
class Transfer {
 public:
  using Fn = std::function<double(double)>;

  /// gain * (log(1 + e^s) - log 2)
  static Transfer softplus(double gain);
  /// gain * tanh(s)
  static Transfer tanh(double gain);
  static Transfer custom(std::string name, Fn value, Fn derivative, double gain);

  double operator()(double s) const { return value_(s); }
  double derivative(double s) const { return derivative_(s); }
  double gain() const { return gain_; }
  const std::string& name() const { return name_; }

 private:
  Transfer(std::string name, Fn value, Fn derivative, double gain);

  std::string name_;
  Fn value_;
  Fn derivative_;
  double gain_;
};

/// T_i(x) = x_i exp(sigma(s_i(x))), s_i(x) = B_i - sum_j A_ij x_j.
class NeuralNetModel final : public CompetitionModel {
 public:
  NeuralNetModel(Vector B, Matrix A, Transfer transfer);

  std::string family() const override { return "neural_net"; }
  Vector growth(const Vector& x) const override;
  Matrix growth_jacobian(const Vector& x) const override;
  Vector axial_fixed_points() const override;

  const Vector& B() const { return B_; }
  const Matrix& A() const { return A_; }
  const Transfer& transfer() const { return transfer_; }
  double gain() const { return transfer_.gain(); }
  Vector input(const Vector& x) const { return B_ - A_ * x; }

 private:
  Vector B_;
  Matrix A_;
  Transfer transfer_;
};

/// Central differences with step h_j = 1e-6 * (1 + |x_j|).
Matrix central_difference_jacobian(const std::function<Vector(const Vector&)>& f,
                                   const Vector& x);

// Validated evaluation. All of these require x in K with the model's
// dimension (DomainError otherwise) and throw ModelEvaluationError naming the
// first non-finite coordinate.

/// T(x); coordinate i is exactly zero when x_i is.
StateVector eval_map(const CompetitionModel& model, const StateVector& x);
Vector eval_growth(const CompetitionModel& model, const StateVector& x);
Matrix eval_growth_jacobian(const CompetitionModel& model, const StateVector& x);
/// T'(x) = diag(G(x)) + diag(x) G'(x).
Matrix map_jacobian(const CompetitionModel& model, const StateVector& x);

/// q, checked a posteriori: T(q_i e_i)_i equals q_i to 1e-10 (scaled by
/// max(1, q_i)).
StateVector axial_fixed_points(const CompetitionModel& model);

}  // namespace csimplex

#endif  // CSIMPLEX_MODELS_HPP
