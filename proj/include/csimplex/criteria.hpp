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
#ifndef CSIMPLEX_CRITERIA_HPP
#define CSIMPLEX_CRITERIA_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "csimplex/models.hpp"
#include "csimplex/report.hpp"
#include "csimplex/spectral.hpp"

/// Numerical checks of the hypotheses that guarantee a unique carrying
/// simplex for a competitive map T_i(x) = x_i G_i(x).
///
/// Condition ids used in reports:
///   C0  G_i(0) > 1                      C1  empirical boundedness
///   C2  strict sublinearity (sampled)    C3  strict retrotonicity (sampled)
///   C4  axial fixed points attract       C5  sign of [G'(x)]_I(x) (sampled)
///   Eq3a column sums of M(x) < 1        Eq3b row sums of M(x) < 1
///   Eq4  rho(M(x)) < 1 on (0, q]        model_criterion  closed-form test
///   inverse_positivity  [T'(x)_I]^-1 > 0 at given points
namespace csimplex {

class CompetitionMatrixUndefined : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// M(x) = -diag(x_i / G_i(x)) G'(x).
struct CompetitionMatrix {
  Matrix entries;
  StateVector basepoint;
};

/// Requires G_i(x) > 0 for every i, else CompetitionMatrixUndefined.
CompetitionMatrix competition_matrix(const CompetitionModel& model, const StateVector& x);

/// Every row sum of M(x) is < 1.
bool gershgorin_row_check(const CompetitionModel& model, const StateVector& x);
/// Every column sum of M(x) is < 1.
bool gershgorin_col_check(const CompetitionModel& model, const StateVector& x);

struct SamplingOptions {
  std::size_t samples = 10000;
  std::uint64_t seed = 42;
};

struct GridOptions {
  std::size_t resolution = 16;  // points per axis over (0, q]
  bool refine = true;
};

/// rho(M(x)) < 1 on a regular grid over (0, q], optionally refined once
/// around the argmax.
CriterionRecord check_spectral_condition(const CompetitionModel& model,
                                         const GridOptions& grid = {});
/// Row sums (Eq3b) or column sums (Eq3a) of M(x) below 1 on the same grid.
CriterionRecord check_gershgorin_rows(const CompetitionModel& model, const GridOptions& grid = {});
CriterionRecord check_gershgorin_cols(const CompetitionModel& model, const GridOptions& grid = {});

CriterionRecord check_C0(const CompetitionModel& model);
/// Orbits from 2q and random points of [0, 2q] enter [0, 1.1 q].
CriterionRecord check_C1(const CompetitionModel& model, const SamplingOptions& opts = {});
/// lambda T(x) < T(lambda x) for sampled x in region \ {0}, lambda in (0, 1).
CriterionRecord check_sublinearity(const CompetitionModel& model, const OrderInterval& region,
                                   const SamplingOptions& opts = {});
/// T(x) > T(y) implies x strictly majorizes y, for sampled pairs in a common
/// facet closure of region.
CriterionRecord check_retrotone(const CompetitionModel& model, const OrderInterval& region,
                                const SamplingOptions& opts = {});
/// Axial fixed points exist and attract orbits started on their axis.
CriterionRecord check_C4(const CompetitionModel& model);
/// [G'(x)]_I(x) has strictly negative entries at sampled x != 0.
CriterionRecord check_C5(const CompetitionModel& model, const OrderInterval& region,
                         const SamplingOptions& opts = {});
/// [T'(x)_I(x)]^-1 exists and is entrywise positive at every point.
CriterionRecord check_inverse_positivity(const CompetitionModel& model,
                                         const std::vector<StateVector>& points);

/// Exact closed-form sufficient criterion of the three analytic families.
/// Poincare (and other) models yield an inconclusive record.
CriterionRecord model_criterion(const CompetitionModel& model);

/// Gain bound [max_i (B_i / A_ii) sum_j A_ij]^-1 of the neural network model.
double neural_gain_bound(const NeuralNetModel& model);

/// Default region [0, 1.5 q] for the sampled checks.
OrderInterval default_region(const CompetitionModel& model);

struct CheckOptions {
  GridOptions grid;
  SamplingOptions sampling;
};

/// Runs C0..C5, Eq3a, Eq3b, Eq4 and the model criterion, plus A1..A4 for a
/// Poincare map. Without axial fixed points the q-dependent checks are
/// inconclusive.
CriteriaReport check_all(const CompetitionModel& model, const CheckOptions& opts = {});

}  // namespace csimplex

#endif  // CSIMPLEX_CRITERIA_HPP
