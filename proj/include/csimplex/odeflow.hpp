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
#ifndef CSIMPLEX_ODEFLOW_HPP
#define CSIMPLEX_ODEFLOW_HPP

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "csimplex/models.hpp"
#include "csimplex/report.hpp"

/// Period-1 Lotka-Volterra systems u'_i = u_i (B_i(t) - sum_j A_ij(t) u_j),
/// their fixed-step RK4 flow and the Poincare (time-1) map.
namespace csimplex {

class IntegrationError : public std::runtime_error {
 public:
  IntegrationError(const std::string& what, double t) : std::runtime_error(what), t_(t) {}
  double time() const { return t_; }

 private:
  double t_;
};

/// c + sum_k c_k cos(2 pi k t) + s_k sin(2 pi k t); period 1 by construction.
struct FourierSeries {
  double constant = 0.0;
  std::vector<double> cos;
  std::vector<double> sin;

  double operator()(double t) const;
  static FourierSeries constant_value(double c) { return FourierSeries{c, {}, {}}; }
};

class PeriodicSystem {
 public:
  /// B has n entries, A has n*n entries in row-major order. Only shape and
  /// finiteness are validated here: sign conditions are what
  /// check_A_conditions reports on.
  PeriodicSystem(std::vector<FourierSeries> B, std::vector<FourierSeries> A);

  /// Constant coefficients (autonomous Lotka-Volterra).
  static PeriodicSystem autonomous(const Vector& B, const Matrix& A);

  std::size_t dimension() const { return B_.size(); }
  Vector B(double t) const;
  Matrix A(double t) const;
  const FourierSeries& B_series(std::size_t i) const { return B_[i]; }
  const FourierSeries& A_series(std::size_t i, std::size_t j) const { return A_[i * dimension() + j]; }
  /// G(t, u) = B(t) - A(t) u.
  Vector per_capita(double t, const Vector& u) const;

 private:
  std::vector<FourierSeries> B_;
  std::vector<FourierSeries> A_;
};

struct IntegrationConfig {
  int steps_per_period = 256;  // >= 64, fixed-step RK4
};

struct Trajectory {
  std::vector<double> times;
  std::vector<Vector> states;
  /// max-norm difference of the final state against a run with half the step.
  double error_estimate = 0.0;
};

/// Fixed-step RK4 in per-capita form: u_i = x0_i exp(c_i), c'_i = G_i(t, u).
/// Zero coordinates stay exactly zero. Returns the state at every step
/// boundary of [t0, t1].
Trajectory integrate(const PeriodicSystem& system, const StateVector& x0, double t0, double t1,
                     const IntegrationConfig& config = {});

/// exp(c(t1)) for the per-capita integration started at x (any real vector);
/// the building block of the Poincare map.
Vector flow_growth(const PeriodicSystem& system, const Vector& x, double t0, double t1,
                   int steps_per_period);

/// T = time-1 map of a PeriodicSystem, as a CompetitionModel. G is produced by
/// the per-capita integral so that T_i(x) = x_i G_i(x) holds exactly; the
/// Jacobian of G is a central finite difference; axial fixed points come from
/// 1-D fixed-point iteration on each axis.
class PoincareModel final : public CompetitionModel {
 public:
  PoincareModel(PeriodicSystem system, IntegrationConfig config = {}, int max_iter = 10000);

  std::string family() const override { return "periodic_lv"; }
  Vector growth(const Vector& x) const override;
  Matrix growth_jacobian(const Vector& x) const override;
  Vector axial_fixed_points() const override;

  const PeriodicSystem& system() const { return system_; }
  const IntegrationConfig& config() const { return config_; }

 private:
  PeriodicSystem system_;
  IntegrationConfig config_;
  std::optional<Vector> axial_;
  std::string axial_error_;
  std::size_t axial_error_index_ = 0;
};

PoincareModel poincare_map(const PeriodicSystem& system, const IntegrationConfig& config = {});

/// (A1)..(A4) for the Lotka-Volterra form, each on `grid_points` equally
/// spaced times in [0, 1).
std::vector<CriterionRecord> check_A_conditions(const PeriodicSystem& system,
                                                std::size_t grid_points = 1024);

struct WangJiangResult {
  Verdict verdict = Verdict::kInconclusive;
  double min_slope = 0.0;    // smallest finite-difference slope of u_i / v_i
  double checked_until = 0.0;
  std::size_t steps_checked = 0;
  bool ordering_broke = false;
  std::size_t steps = 0;
};

/// Integrates u and v from u0 << v0 and checks that every ratio u_i / v_i
/// increases (slope > -1e-12) for as long as u << v holds.
WangJiangResult wang_jiang_check(const PeriodicSystem& system, const StateVector& u0,
                                 const StateVector& v0, double t0, double t1,
                                 const IntegrationConfig& config = {});

}  // namespace csimplex

#endif  // CSIMPLEX_ODEFLOW_HPP
