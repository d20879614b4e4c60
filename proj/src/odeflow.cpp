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
#include "csimplex/odeflow.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace csimplex {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void require_finite_series(const FourierSeries& f, const std::string& name) {
  auto bad = [](double v) { return !std::isfinite(v); };
  if (bad(f.constant) || std::any_of(f.cos.begin(), f.cos.end(), bad) ||
      std::any_of(f.sin.begin(), f.sin.end(), bad)) {
    throw ParameterError(name + " has a non-finite Fourier coefficient");
  }
}

void require_config(const IntegrationConfig& config) {
  if (config.steps_per_period < 64) {
    throw ParameterError("steps per period must be >= 64");
  }
}

std::size_t step_count(double t0, double t1, int steps_per_period) {
  if (!(t1 >= t0)) throw DomainError("integration span must satisfy t0 <= t1");
  return static_cast<std::size_t>(std::llround((t1 - t0) * double(steps_per_period)));
}

/// One RK4 step of c' = G(t, x .* exp(c)).
void rk4_step(const PeriodicSystem& sys, const Vector& x, double t, double h, Vector& c) {
  auto rhs = [&](double tt, const Vector& cc) {
    return sys.per_capita(tt, x.cwiseProduct(cc.array().exp().matrix()));
  };
  const Vector k1 = rhs(t, c);
  const Vector k2 = rhs(t + 0.5 * h, c + 0.5 * h * k1);
  const Vector k3 = rhs(t + 0.5 * h, c + 0.5 * h * k2);
  const Vector k4 = rhs(t + h, c + h * k3);
  c += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

/// Integrates the accumulators c over [t0, t1]; calls record(t, c) after every
/// step (and once at t0) when given.
template <class Record>
Vector run_flow(const PeriodicSystem& sys, const Vector& x, double t0, double t1,
                int steps_per_period, Record&& record) {
  const std::size_t steps = step_count(t0, t1, steps_per_period);
  Vector c = Vector::Zero(x.size());
  record(t0, c);
  if (steps == 0) return c;
  const double h = (t1 - t0) / double(steps);
  for (std::size_t k = 0; k < steps; ++k) {
    const double t = t0 + double(k) * h;
    rk4_step(sys, x, t, h, c);
    if (!c.allFinite()) {
      throw IntegrationError("integration produced a non-finite value at t = " +
                                 std::to_string(t + h),
                             t + h);
    }
    record(k + 1 == steps ? t1 : t0 + double(k + 1) * h, c);
  }
  return c;
}

Vector state_of(const Vector& x, const Vector& c) {
  return x.cwiseProduct(c.array().exp().matrix());
}

}  // namespace

double FourierSeries::operator()(double t) const {
  double v = constant;
  for (std::size_t k = 0; k < cos.size(); ++k) v += cos[k] * std::cos(kTwoPi * double(k + 1) * t);
  for (std::size_t k = 0; k < sin.size(); ++k) v += sin[k] * std::sin(kTwoPi * double(k + 1) * t);
  return v;
}

PeriodicSystem::PeriodicSystem(std::vector<FourierSeries> B, std::vector<FourierSeries> A)
    : B_(std::move(B)), A_(std::move(A)) {
  if (B_.empty()) throw ParameterError("B must be non-empty");
  if (A_.size() != B_.size() * B_.size()) {
    throw ParameterError("A must be " + std::to_string(B_.size()) + "x" +
                         std::to_string(B_.size()));
  }
  for (std::size_t i = 0; i < B_.size(); ++i) {
    require_finite_series(B_[i], "B[" + std::to_string(i + 1) + "]");
  }
  for (std::size_t k = 0; k < A_.size(); ++k) {
    require_finite_series(A_[k], "A[" + std::to_string(k / B_.size() + 1) + "][" +
                                     std::to_string(k % B_.size() + 1) + "]");
  }
}

PeriodicSystem PeriodicSystem::autonomous(const Vector& B, const Matrix& A) {
  if (A.rows() != B.size() || A.cols() != B.size()) throw ParameterError("A must be n x n");
  std::vector<FourierSeries> b, a;
  for (Eigen::Index i = 0; i < B.size(); ++i) b.push_back(FourierSeries::constant_value(B[i]));
  for (Eigen::Index i = 0; i < A.rows(); ++i) {
    for (Eigen::Index j = 0; j < A.cols(); ++j) a.push_back(FourierSeries::constant_value(A(i, j)));
  }
  return PeriodicSystem(std::move(b), std::move(a));
}

Vector PeriodicSystem::B(double t) const {
  Vector b(static_cast<Eigen::Index>(dimension()));
  for (std::size_t i = 0; i < dimension(); ++i) b[static_cast<Eigen::Index>(i)] = B_[i](t);
  return b;
}

Matrix PeriodicSystem::A(double t) const {
  const auto n = static_cast<Eigen::Index>(dimension());
  Matrix a(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) a(i, j) = A_[static_cast<std::size_t>(i * n + j)](t);
  }
  return a;
}

Vector PeriodicSystem::per_capita(double t, const Vector& u) const { return B(t) - A(t) * u; }

Trajectory integrate(const PeriodicSystem& system, const StateVector& x0, double t0, double t1,
                     const IntegrationConfig& config) {
  require_config(config);
  if (x0.size() != system.dimension()) throw DomainError("initial state has wrong dimension");
  Trajectory traj;
  const Vector& x = x0.vec();
  const Vector c_end = run_flow(system, x, t0, t1, config.steps_per_period,
                                [&](double t, const Vector& c) {
                                  traj.times.push_back(t);
                                  traj.states.push_back(state_of(x, c));
                                });
  const Vector c_fine = run_flow(system, x, t0, t1, 2 * config.steps_per_period,
                                 [](double, const Vector&) {});
  traj.error_estimate = (state_of(x, c_end) - state_of(x, c_fine)).cwiseAbs().maxCoeff();
  return traj;
}

Vector flow_growth(const PeriodicSystem& system, const Vector& x, double t0, double t1,
                   int steps_per_period) {
  const Vector c = run_flow(system, x, t0, t1, steps_per_period, [](double, const Vector&) {});
  return c.array().exp().matrix();
}

// ---------------------------------------------------------------------------

PoincareModel::PoincareModel(PeriodicSystem system, IntegrationConfig config, int max_iter)
    : CompetitionModel(system.dimension()), system_(std::move(system)), config_(config) {
  require_config(config_);
  const std::size_t n = dimension();
  Vector q(static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) {
    const auto k = static_cast<Eigen::Index>(i);
    double x = 1.0;
    bool converged = false;
    for (int it = 0; it < max_iter; ++it) {
      Vector p = Vector::Zero(static_cast<Eigen::Index>(n));
      p[k] = x;
      double next = x;
      try {
        next = x * growth(p)[k];
      } catch (const IntegrationError&) {
        break;
      }
      if (!std::isfinite(next) || next <= 0.0) break;
      const bool done = std::abs(next - x) <= 1e-13 * std::max(1.0, x);
      x = next;
      if (done) {
        converged = true;
        break;
      }
    }
    if (!converged) {
      axial_error_ = "axial fixed-point iteration did not converge for species " +
                     std::to_string(i + 1);
      axial_error_index_ = i;
      return;
    }
    q[k] = x;
  }
  axial_ = q;
}

Vector PoincareModel::growth(const Vector& x) const {
  return flow_growth(system_, x, 0.0, 1.0, config_.steps_per_period);
}

Matrix PoincareModel::growth_jacobian(const Vector& x) const {
  return central_difference_jacobian([this](const Vector& p) { return growth(p); }, x);
}

Vector PoincareModel::axial_fixed_points() const {
  if (!axial_) throw NoAxialFixedPoint(axial_error_, axial_error_index_);
  return *axial_;
}

PoincareModel poincare_map(const PeriodicSystem& system, const IntegrationConfig& config) {
  return PoincareModel(system, config);
}

// ---------------------------------------------------------------------------

std::vector<CriterionRecord> check_A_conditions(const PeriodicSystem& system,
                                                std::size_t grid_points) {
  if (grid_points == 0) throw DomainError("time grid needs at least one point");
  const auto n = static_cast<Eigen::Index>(system.dimension());
  constexpr double kInf = std::numeric_limits<double>::infinity();

  auto record = [](const char* id, double worst) {
    CriterionRecord r;
    r.id = id;
    r.verdict = Verdict::kPassSampled;
    r.worst = worst;
    return r;
  };
  CriterionRecord a1 = record("A1", kInf), a2 = record("A2", kInf), a3 = record("A3", 0.0),
                  a4 = record("A4", kInf);
  Vector max_b = Vector::Constant(n, -kInf);
  Vector min_aii = Vector::Constant(n, kInf);
  Vector argmin_aii_t = Vector::Zero(n);

  for (std::size_t k = 0; k < grid_points; ++k) {
    const double t = double(k) / double(grid_points);
    const Vector b = system.B(t);
    const Matrix a = system.A(t);
    for (Eigen::Index i = 0; i < n; ++i) {
      for (Eigen::Index j = 0; j < n; ++j) {
        if (a(i, j) < a1.worst) {
          a1.worst = a(i, j);
          if (a1.worst < 0.0) {
            a1.witness = nlohmann::json{{"t", t}, {"i", i + 1}, {"j", j + 1}, {"A_ij", a(i, j)}};
          }
        }
      }
      // For every nonempty support the diagonal sum is positive iff each
      // diagonal entry is.
      if (a(i, i) < a2.worst) {
        a2.worst = a(i, i);
        if (a2.worst <= 0.0) a2.witness = nlohmann::json{{"t", t}, {"k", i + 1}, {"A_kk", a(i, i)}};
      }
      if (b[i] < a4.worst) {
        a4.worst = b[i];
        if (a4.worst <= 0.0) a4.witness = nlohmann::json{{"t", t}, {"i", i + 1}, {"B_i", b[i]}};
      }
      max_b[i] = std::max(max_b[i], b[i]);
      if (a(i, i) < min_aii[i]) {
        min_aii[i] = a(i, i);
        argmin_aii_t[i] = t;
      }
    }
  }
  for (auto* r : {&a1, &a2, &a3, &a4}) {
    r->samples = grid_points;
  }
  if (a1.worst < 0.0) a1.verdict = Verdict::kFail;
  if (!(a2.worst > 0.0)) a2.verdict = Verdict::kFail;
  if (!(a4.worst > 0.0)) a4.verdict = Verdict::kFail;

  // G_i(t, x) <= B_i(t) - A_ii(t) x_i when the off-diagonal entries are >= 0,
  // which is negative once x_i exceeds max_t B_i / min_t A_ii.
  nlohmann::json thresholds = nlohmann::json::array();
  for (Eigen::Index i = 0; i < n; ++i) {
    if (!(min_aii[i] > 0.0)) {
      a3.verdict = Verdict::kFail;
      a3.worst = kInf;
      a3.witness = nlohmann::json{{"t", argmin_aii_t[i]}, {"i", i + 1}, {"A_ii", min_aii[i]}};
      a3.detail = "self-competition not positive, no finite threshold";
      break;
    }
    const double threshold = std::max(0.0, max_b[i]) / min_aii[i];
    thresholds.push_back(threshold);
    a3.worst = std::max(a3.worst, threshold);
  }
  if (a3.verdict != Verdict::kFail) {
    if (a1.verdict == Verdict::kFail) {
      a3.verdict = Verdict::kInconclusive;
      a3.detail = "threshold bound assumes (A1)";
    } else {
      a3.detail = "G_i < 0 for x_i above thresholds " + thresholds.dump();
    }
    a3.witness = thresholds;
  }
  return {a1, a2, a3, a4};
}

WangJiangResult wang_jiang_check(const PeriodicSystem& system, const StateVector& u0,
                                 const StateVector& v0, double t0, double t1,
                                 const IntegrationConfig& config) {
  if (u0.is_zero() || v0.is_zero()) throw DomainError("wang_jiang_check needs nonzero starts");
  if (compare(v0, u0) != Order::kStrictlyGreater) {
    throw DomainError("wang_jiang_check needs u0 << v0 componentwise");
  }
  const Trajectory u = integrate(system, u0, t0, t1, config);
  const Trajectory v = integrate(system, v0, t0, t1, config);

  auto ordered = [&](std::size_t k) {
    return (u.states[k].array() < v.states[k].array()).all();
  };
  WangJiangResult res;
  res.steps = u.states.size() - 1;
  res.min_slope = std::numeric_limits<double>::infinity();
  res.checked_until = t0;
  for (std::size_t k = 0; k + 1 < u.states.size(); ++k) {
    if (!ordered(k + 1)) {
      res.ordering_broke = true;
      break;
    }
    const double dt = u.times[k + 1] - u.times[k];
    const Vector r0 = u.states[k].cwiseQuotient(v.states[k]);
    const Vector r1 = u.states[k + 1].cwiseQuotient(v.states[k + 1]);
    res.min_slope = std::min(res.min_slope, ((r1 - r0) / dt).minCoeff());
    res.checked_until = u.times[k + 1];
    ++res.steps_checked;
  }
  if (res.steps_checked == 0) {
    res.verdict = Verdict::kInconclusive;
  } else {
    res.verdict = res.min_slope > -1e-12 ? Verdict::kPassSampled : Verdict::kFail;
  }
  return res;
}

}  // namespace csimplex
