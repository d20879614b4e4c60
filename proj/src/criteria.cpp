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
#include "csimplex/criteria.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "csimplex/odeflow.hpp"
#include "csimplex/sampling.hpp"

namespace csimplex {

namespace {

constexpr double kNearTie = 1e-12;
constexpr double kInf = std::numeric_limits<double>::infinity();

/// Calls fn on every point q .* (k / g), k in {1..g}^n.
void for_each_grid_point(const Vector& q, std::size_t g,
                         const std::function<void(const StateVector&)>& fn) {
  const auto n = static_cast<std::size_t>(q.size());
  std::vector<std::size_t> k(n, 1);
  while (true) {
    Vector x(q.size());
    for (std::size_t i = 0; i < n; ++i) {
      x[static_cast<Eigen::Index>(i)] = q[static_cast<Eigen::Index>(i)] * double(k[i]) / double(g);
    }
    fn(StateVector(std::move(x)));
    std::size_t i = 0;
    while (i < n && k[i] == g) k[i++] = 1;
    if (i == n) break;
    ++k[i];
  }
}

/// Points x* + (j / 4) * q / g, j in {-4..4}^n, clipped to (0, q].
void for_each_refined_point(const Vector& q, std::size_t g, const StateVector& center,
                            const std::function<void(const StateVector&)>& fn) {
  const auto n = static_cast<std::size_t>(q.size());
  std::vector<int> j(n, -4);
  while (true) {
    Vector x(q.size());
    bool inside = true;
    for (std::size_t i = 0; i < n; ++i) {
      const auto k = static_cast<Eigen::Index>(i);
      x[k] = center[i] + double(j[i]) * q[k] / (4.0 * double(g));
      if (!(x[k] > 0.0) || x[k] > q[k]) inside = false;
    }
    if (inside) fn(StateVector(std::move(x)));
    std::size_t i = 0;
    while (i < n && j[i] == 4) j[i++] = -4;
    if (i == n) break;
    ++j[i];
  }
}

std::optional<Vector> try_axial(const CompetitionModel& model) {
  try {
    return axial_fixed_points(model).vec();
  } catch (const NoAxialFixedPoint&) {
    return std::nullopt;
  }
}

CriterionRecord unavailable(const std::string& id, const std::string& why) {
  CriterionRecord r;
  r.id = id;
  r.verdict = Verdict::kInconclusive;
  r.worst = kInf;
  r.detail = why;
  return r;
}

/// Shared grid driver for Eq4/Eq3a/Eq3b: evaluates `value(M)` and requires it
/// to stay below 1.
CriterionRecord grid_check(const CompetitionModel& model, const GridOptions& grid,
                           const std::string& id,
                           const std::function<SpectralEstimate(const Matrix&)>& value) {
  const auto q = try_axial(model);
  if (!q) return unavailable(id, "axial fixed points unavailable");
  if (grid.resolution < 1) throw DomainError("grid resolution must be >= 1");

  CriterionRecord r;
  r.id = id;
  r.worst = -kInf;
  bool undefined = false;
  bool unconverged_above = false;
  StateVector argmax = StateVector::zero(model.dimension());

  auto visit = [&](const StateVector& x) {
    if (undefined) return;
    ++r.samples;
    SpectralEstimate est;
    try {
      est = value(competition_matrix(model, x).entries);
    } catch (const CompetitionMatrixUndefined& e) {
      undefined = true;
      r.witness = to_json_array(x);
      r.detail = e.what();
      return;
    }
    if (!est.converged && est.upper >= 1.0 && est.lower < 1.0) unconverged_above = true;
    if (est.value > r.worst) {
      r.worst = est.value;
      argmax = x;
    }
  };
  for_each_grid_point(*q, grid.resolution, visit);
  if (grid.refine && !undefined) {
    const StateVector center = argmax;
    for_each_refined_point(*q, grid.resolution, center, visit);
  }

  if (undefined) {
    r.verdict = Verdict::kFail;
    return r;
  }
  r.witness = to_json_array(argmax);
  if (r.worst >= 1.0) {
    r.verdict = Verdict::kFail;
  } else if (unconverged_above) {
    r.verdict = Verdict::kInconclusive;
    r.detail = "power iteration did not separate the spectral radius from 1";
  } else {
    r.verdict = Verdict::kPassSampled;
    if (1.0 - r.worst < kNearTie) r.near_ties = 1;
  }
  return r;
}

}  // namespace

CompetitionMatrix competition_matrix(const CompetitionModel& model, const StateVector& x) {
  const Vector g = eval_growth(model, x);
  for (Eigen::Index i = 0; i < g.size(); ++i) {
    if (!(g[i] > 0.0)) {
      throw CompetitionMatrixUndefined(
          "competition matrix undefined (nonpositive growth factor at index " +
          std::to_string(i + 1) + ")");
    }
  }
  const Matrix J = eval_growth_jacobian(model, x);
  Matrix M = -(x.vec().cwiseQuotient(g).asDiagonal() * J);
  return CompetitionMatrix{std::move(M), x};
}

bool gershgorin_row_check(const CompetitionModel& model, const StateVector& x) {
  const Matrix M = competition_matrix(model, x).entries;
  return (M.rowwise().sum().array() < 1.0).all();
}

bool gershgorin_col_check(const CompetitionModel& model, const StateVector& x) {
  const Matrix M = competition_matrix(model, x).entries;
  return (M.colwise().sum().array() < 1.0).all();
}

CriterionRecord check_spectral_condition(const CompetitionModel& model, const GridOptions& grid) {
  return grid_check(model, grid, "Eq4", [](const Matrix& M) { return spectral_radius(M); });
}

CriterionRecord check_gershgorin_rows(const CompetitionModel& model, const GridOptions& grid) {
  return grid_check(model, grid, "Eq3b", [](const Matrix& M) {
    SpectralEstimate e;
    e.value = e.lower = e.upper = M.rowwise().sum().maxCoeff();
    e.method = "max_row_sum";
    return e;
  });
}

CriterionRecord check_gershgorin_cols(const CompetitionModel& model, const GridOptions& grid) {
  return grid_check(model, grid, "Eq3a", [](const Matrix& M) {
    SpectralEstimate e;
    e.value = e.lower = e.upper = M.colwise().sum().maxCoeff();
    e.method = "max_col_sum";
    return e;
  });
}

CriterionRecord check_C0(const CompetitionModel& model) {
  CriterionRecord r;
  r.id = "C0";
  r.samples = 1;
  const Vector g0 = eval_growth(model, StateVector::zero(model.dimension()));
  Eigen::Index worst_i = 0;
  r.worst = g0.minCoeff(&worst_i);
  // T'(0) = diag(G(0)); its eigenvalues are the growth factors themselves.
  r.detail = "eigenvalues of T'(0): " + to_json_array(g0).dump();
  if (r.worst > 1.0) {
    r.verdict = Verdict::kPass;
  } else {
    r.verdict = Verdict::kFail;
    r.witness = nlohmann::json{{"species", worst_i + 1}, {"growth_at_origin", g0[worst_i]}};
  }
  return r;
}

CriterionRecord check_C1(const CompetitionModel& model, const SamplingOptions& opts) {
  constexpr std::size_t kStarts = 64;
  constexpr std::size_t kMaxSteps = 1000;
  const auto q = try_axial(model);
  if (!q) return unavailable("C1", "axial fixed points unavailable");

  CriterionRecord r;
  r.id = "C1";
  r.seed = opts.seed;
  r.detail = "empirical: orbits from [0, 2q] enter [0, 1.1q]";
  const OrderInterval target(StateVector(1.1 * *q));
  Rng rng(opts.seed);
  std::vector<StateVector> starts{StateVector(2.0 * *q)};
  while (starts.size() < kStarts) {
    Vector x(q->size());
    for (Eigen::Index i = 0; i < x.size(); ++i) x[i] = rng.uniform(0.0, 2.0 * (*q)[i]);
    starts.emplace_back(std::move(x));
  }

  r.worst = 0.0;
  for (const auto& start : starts) {
    ++r.samples;
    StateVector x = start;
    std::size_t k = 0;
    while (!target.contains(x) && k < kMaxSteps) {
      x = eval_map(model, x);
      ++k;
    }
    r.worst = std::max(r.worst, double(k));
    if (!target.contains(x)) {
      r.verdict = Verdict::kFail;
      r.witness = to_json_array(start);
      return r;
    }
  }
  r.verdict = Verdict::kPassSampled;
  return r;
}

CriterionRecord check_sublinearity(const CompetitionModel& model, const OrderInterval& region,
                                   const SamplingOptions& opts) {
  CriterionRecord r;
  r.id = "C2";
  r.seed = opts.seed;
  r.worst = kInf;
  Rng rng(opts.seed);
  const auto points = sample_region(region, opts.samples, rng);
  for (const auto& x : points) {
    if (x.is_zero()) continue;
    double lambda = rng.uniform();
    while (lambda <= 0.0 || lambda > 1.0 - 1e-6) lambda = rng.uniform();
    ++r.samples;
    const Vector scaled_image = lambda * eval_map(model, x).vec();
    const Vector image_scaled = eval_map(model, StateVector(lambda * x.vec())).vec();
    const Vector margin = image_scaled - scaled_image;
    double min_margin = kInf;
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (x[i] > 0.0) min_margin = std::min(min_margin, margin[static_cast<Eigen::Index>(i)]);
    }
    r.worst = std::min(r.worst, min_margin);
    const bool ordered = (margin.array() >= 0.0).all() && (margin.array() > 0.0).any();
    if (!ordered) {
      r.verdict = Verdict::kFail;
      r.witness = nlohmann::json{{"x", to_json_array(x)}, {"lambda", lambda}};
      return r;
    }
    if (margin.maxCoeff() < kNearTie) ++r.near_ties;
  }
  r.verdict = r.samples > 0 ? Verdict::kPassSampled : Verdict::kInconclusive;
  return r;
}

CriterionRecord check_retrotone(const CompetitionModel& model, const OrderInterval& region,
                                const SamplingOptions& opts) {
  constexpr double kLocalScale = 0.05;
  CriterionRecord r;
  r.id = "C3";
  r.seed = opts.seed;
  r.worst = kInf;
  Rng rng(opts.seed);
  const auto base = sample_region(region, opts.samples, rng);
  const Vector& lo = region.lower().vec();
  const Vector& hi = region.upper().vec();

  std::size_t accepted = 0;
  for (std::size_t s = 0; s < base.size(); ++s) {
    const StateVector& y = base[s];
    const Support facet = support(y);
    if (facet.empty()) continue;
    Vector xv(y.vec().size());
    if (s % 2 == 0) {
      xv = sample_in_facet(region, facet, rng).vec();
    } else {
      xv = y.vec();
      for (std::size_t i : facet.indices()) {
        const auto k = static_cast<Eigen::Index>(i);
        const double step = kLocalScale * (hi[k] - lo[k]) * rng.uniform(-1.0, 1.0);
        xv[k] = std::clamp(xv[k] + step, lo[k], hi[k]);
      }
    }
    StateVector x(std::move(xv));
    StateVector tx = eval_map(model, x);
    StateVector ty = eval_map(model, y);
    const StateVector* big = &x;
    const StateVector* small = &y;
    if (succ(ty, tx)) {
      std::swap(big, small);
    } else if (!succ(tx, ty)) {
      continue;
    }
    ++accepted;
    double min_gap = kInf;
    for (std::size_t i = 0; i < big->size(); ++i) {
      if ((*big)[i] > 0.0) min_gap = std::min(min_gap, (*big)[i] - (*small)[i]);
    }
    r.worst = std::min(r.worst, min_gap);
    if (!strictly_majorizes(*big, *small)) {
      r.samples = accepted;
      r.verdict = Verdict::kFail;
      r.witness = nlohmann::json{{"x", to_json_array(*big)}, {"y", to_json_array(*small)}};
      r.detail = "T(x) > T(y) but x does not strictly majorize y";
      return r;
    }
    if (min_gap < kNearTie) ++r.near_ties;
  }
  r.samples = accepted;
  const std::size_t needed = std::max<std::size_t>(10, opts.samples / 100);
  if (accepted < needed) {
    r.verdict = Verdict::kInconclusive;
    r.detail = "only " + std::to_string(accepted) + " ordered image pairs found";
  } else {
    r.verdict = Verdict::kPassSampled;
  }
  return r;
}

CriterionRecord check_C4(const CompetitionModel& model) {
  constexpr std::size_t kStarts = 16;
  constexpr std::size_t kMaxSteps = 5000;
  CriterionRecord r;
  r.id = "C4";
  const std::size_t n = model.dimension();
  Vector q;
  try {
    q = axial_fixed_points(model).vec();
  } catch (const NoAxialFixedPoint& e) {
    r.verdict = Verdict::kFail;
    r.worst = kInf;
    r.witness = nlohmann::json{{"species", e.index() + 1}};
    r.detail = e.what();
    return r;
  }
  r.worst = 0.0;
  r.detail = "q = " + to_json_array(q).dump();
  for (std::size_t i = 0; i < n; ++i) {
    const double qi = q[static_cast<Eigen::Index>(i)];
    const double tol = 1e-8 * std::max(1.0, qi);
    for (std::size_t k = 1; k <= kStarts; ++k) {
      ++r.samples;
      const double start = 2.0 * qi * double(k) / double(kStarts);
      double x = start;
      for (std::size_t step = 0; step < kMaxSteps && std::abs(x - qi) > tol; ++step) {
        x = eval_map(model, StateVector::axis(n, i, x))[i];
      }
      const double dist = std::abs(x - qi);
      r.worst = std::max(r.worst, dist);
      if (dist > tol) {
        r.verdict = Verdict::kFail;
        r.witness = nlohmann::json{{"species", i + 1}, {"start", start}, {"final", x}};
        r.detail = "orbit on axis " + std::to_string(i + 1) + " does not converge to q_i";
        return r;
      }
    }
  }
  r.verdict = Verdict::kPassSampled;
  return r;
}

CriterionRecord check_C5(const CompetitionModel& model, const OrderInterval& region,
                         const SamplingOptions& opts) {
  CriterionRecord r;
  r.id = "C5";
  r.seed = opts.seed;
  r.worst = -kInf;
  Rng rng(opts.seed);
  for (const auto& x : sample_region(region, opts.samples, rng)) {
    ++r.samples;
    const Support I = support(x);
    if (I.empty()) continue;  // vacuous at the origin
    const Matrix J = eval_growth_jacobian(model, x);
    for (std::size_t i : I.indices()) {
      for (std::size_t j : I.indices()) {
        const double v = J(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
        r.worst = std::max(r.worst, v);
        if (!(v < 0.0)) {
          r.verdict = Verdict::kFail;
          r.witness = nlohmann::json{{"x", to_json_array(x)}, {"i", i + 1}, {"j", j + 1}};
          return r;
        }
        if (v > -kNearTie) ++r.near_ties;
      }
    }
  }
  r.verdict = Verdict::kPassSampled;
  return r;
}

CriterionRecord check_inverse_positivity(const CompetitionModel& model,
                                         const std::vector<StateVector>& points) {
  CriterionRecord r;
  r.id = "inverse_positivity";
  r.worst = kInf;
  for (const auto& x : points) {
    const Support I = support(x);
    if (I.empty()) continue;
    ++r.samples;
    const Matrix T = map_jacobian(model, x);
    const auto k = static_cast<Eigen::Index>(I.size());
    Matrix sub(k, k);
    for (Eigen::Index a = 0; a < k; ++a) {
      for (Eigen::Index b = 0; b < k; ++b) {
        sub(a, b) = T(static_cast<Eigen::Index>(I.indices()[static_cast<std::size_t>(a)]),
                      static_cast<Eigen::Index>(I.indices()[static_cast<std::size_t>(b)]));
      }
    }
    Eigen::FullPivLU<Matrix> lu(sub);
    if (!lu.isInvertible()) {
      r.verdict = Verdict::kFail;
      r.witness = to_json_array(x);
      r.detail = "principal submatrix of T'(x) is singular";
      return r;
    }
    const Matrix inv = lu.inverse();
    const double m = inv.minCoeff();
    r.worst = std::min(r.worst, m);
    if (!(m > 0.0)) {
      r.verdict = Verdict::kFail;
      r.witness = to_json_array(x);
      r.detail = "inverse has a non-positive entry";
      return r;
    }
    if (m < kNearTie) ++r.near_ties;
  }
  r.verdict = r.samples > 0 ? Verdict::kPassSampled : Verdict::kInconclusive;
  return r;
}

double neural_gain_bound(const NeuralNetModel& model) {
  const Vector q = model.B().cwiseQuotient(model.A().diagonal());
  const Vector rows = q.cwiseProduct(model.A().rowwise().sum());
  return 1.0 / rows.maxCoeff();
}

CriterionRecord model_criterion(const CompetitionModel& model) {
  CriterionRecord r;
  r.id = "model_criterion";
  r.samples = 0;

  if (const auto* may = dynamic_cast<const MayOsterModel*>(&model)) {
    const Vector q = may->B().cwiseQuotient(may->A().diagonal());
    // (B_i / A_ii) sum_j A_ij and sum_i (B_i / A_ii) A_ij
    const Vector rows = q.cwiseProduct(may->A().rowwise().sum());
    const Vector cols = (q.asDiagonal() * may->A()).colwise().sum().transpose();
    const double row_max = rows.maxCoeff(), col_max = cols.maxCoeff();
    r.worst = std::min(row_max, col_max);
    r.witness = nlohmann::json{{"row_values", to_json_array(rows)},
                               {"col_values", to_json_array(cols)}};
    if (row_max < 1.0 || col_max < 1.0) {
      r.verdict = Verdict::kPass;
      r.detail = std::string("exists: unique carrying simplex guaranteed (") +
                 (row_max < 1.0 ? "row" : "column") + " test)";
    } else if (row_max > 2.0 || col_max > 2.0) {
      r.verdict = Verdict::kFail;
      r.worst = std::max(row_max, col_max);
      r.detail = "not-exists: no carrying simplex (value > 2)";
    } else {
      r.verdict = Verdict::kInconclusive;
      r.detail = "indeterminate: neither the existence nor the non-existence test applies";
    }
    return r;
  }

  if (const auto* lg = dynamic_cast<const LeslieGowerModel*>(&model)) {
    const Vector& C = lg->C();
    const Matrix& A = lg->A();
    r.worst = 0.0;
    for (Eigen::Index i = 0; i < C.size(); ++i) {
      const double row = A.row(i).sum();
      const double upper = 1.0 + A(i, i) / row;
      r.worst = std::max(r.worst, (C[i] - 1.0) / A(i, i) * row);
      if (!(C[i] > 1.0) || !(C[i] < upper)) {
        r.verdict = Verdict::kFail;
        r.witness = nlohmann::json{{"species", i + 1}, {"C", C[i]}, {"upper", upper}};
        r.detail = "1 < C_i < 1 + A_ii / sum_j A_ij violated";
        return r;
      }
    }
    r.verdict = Verdict::kPass;
    r.detail = "exists: 1 < C_i < 1 + A_ii / sum_j A_ij for all i";
    return r;
  }

  if (const auto* nn = dynamic_cast<const NeuralNetModel*>(&model)) {
    const double bound = neural_gain_bound(*nn);
    r.worst = nn->gain() / bound;
    r.witness = nlohmann::json{{"gain", nn->gain()}, {"bound", bound}};
    if (nn->gain() < bound) {
      r.verdict = Verdict::kPass;
      r.detail = "exists: gain below bound";
    } else {
      r.verdict = Verdict::kFail;
      r.detail = "gain bound violated";
    }
    return r;
  }

  r.verdict = Verdict::kInconclusive;
  r.worst = kInf;
  r.detail = "no closed-form criterion for family " + model.family();
  return r;
}

OrderInterval default_region(const CompetitionModel& model) {
  return OrderInterval(StateVector(1.5 * axial_fixed_points(model).vec()));
}

CriteriaReport check_all(const CompetitionModel& model, const CheckOptions& opts) {
  CriteriaReport report;
  report.model = model.family();
  report.seed = opts.sampling.seed;
  report.records.push_back(check_C0(model));
  report.records.push_back(check_C1(model, opts.sampling));
  const auto q = try_axial(model);
  if (q) {
    const OrderInterval region = default_region(model);
    report.records.push_back(check_sublinearity(model, region, opts.sampling));
    report.records.push_back(check_retrotone(model, region, opts.sampling));
  } else {
    report.records.push_back(unavailable("C2", "axial fixed points unavailable"));
    report.records.push_back(unavailable("C3", "axial fixed points unavailable"));
  }
  report.records.push_back(check_C4(model));
  if (q) {
    report.records.push_back(check_C5(model, default_region(model), opts.sampling));
  } else {
    report.records.push_back(unavailable("C5", "axial fixed points unavailable"));
  }
  report.records.push_back(check_gershgorin_cols(model, opts.grid));
  report.records.push_back(check_gershgorin_rows(model, opts.grid));
  report.records.push_back(check_spectral_condition(model, opts.grid));
  report.records.push_back(model_criterion(model));
  if (const auto* pm = dynamic_cast<const PoincareModel*>(&model)) {
    for (auto& rec : check_A_conditions(pm->system())) report.records.push_back(std::move(rec));
  }
  return report;
}

}  // namespace csimplex
