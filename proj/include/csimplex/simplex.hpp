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
#ifndef CSIMPLEX_SIMPLEX_HPP
#define CSIMPLEX_SIMPLEX_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "csimplex/models.hpp"
#include "csimplex/report.hpp"
#include "csimplex/sampling.hpp"

namespace csimplex {

class SurfaceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Regular simplicial grid on the unit simplex: nodes are the barycentric
/// points k / m with k a composition of m into n non-negative parts. For n = 1
/// the grid is the single node (1).
class SimplexGrid {
 public:
  SimplexGrid(std::size_t n, std::size_t m);

  std::size_t dimension() const { return n_; }
  std::size_t resolution() const { return m_; }
  std::size_t size() const { return nodes_.size(); }
  /// Integer composition of node `i`.
  const std::vector<std::size_t>& composition(std::size_t i) const { return nodes_[i]; }
  Vector direction(std::size_t i) const;
  /// Index of the node with the given composition.
  std::size_t index_of(const std::vector<std::size_t>& k) const;

 private:
  std::size_t n_;
  std::size_t m_;
  std::vector<std::vector<std::size_t>> nodes_;
};

/// A candidate carrying simplex as a radial graph r(d) over the unit simplex,
/// piecewise linear on the grid cells.
struct RadialSurface {
  SimplexGrid grid;
  std::vector<double> radii;
  std::size_t iterations = 0;
  double final_delta = 0.0;
  bool converged = false;
  double tol = 0.0;
  /// Node updates that increased a radius by more than 1e-12 after the first
  /// iteration (the descent from above is expected to be monotone).
  std::size_t monotone_violations = 0;

  std::size_t dimension() const { return grid.dimension(); }
  /// Interpolated radius in direction d (d on the unit simplex).
  double radius_at(const Vector& d) const;
  /// r(d) d for node i.
  Vector node_point(std::size_t i) const;
};

struct SimplexOptions {
  std::size_t m = 0;  // 0: 64 for n = 2, 24 for n = 3
  double tol = 1e-10;
  std::size_t max_iter = 5000;
};

std::size_t default_resolution(std::size_t n);

/// Iterates the radial graph under T until the largest node change drops
/// below tol: push every node point forward, reproject radially, and rebuild
/// the radii on the fixed grid by barycentric interpolation over the image
/// cells, facet by facet. n must be 1, 2 or 3. Throws SurfaceError when an
/// image cell degenerates or flips orientation. Non-convergence returns the
/// last surface with converged = false.
RadialSurface compute_carrying_simplex(const CompetitionModel& model,
                                       const SimplexOptions& opts = {});

/// max over random directions d of |r(dir T(p)) - |T(p)|_1| / |q|_1 with
/// p = r(d) d.
double invariance_residual(const RadialSurface& surface, const CompetitionModel& model,
                           std::size_t samples, Rng& rng);

struct UnorderedResult {
  bool pass = true;
  // Pair (i, j) maximizing min_k (x_i - x_j)_k over distinct node points; it
  // is a violation when pass is false.
  std::size_t first = 0;
  std::size_t second = 0;
  double margin = 0.0;
};

/// Pairwise comparison of all node points; fails iff some x_i >= x_j with
/// x_i != x_j.
UnorderedResult unordered_check(const RadialSurface& surface);
/// Same test on explicit points.
UnorderedResult unordered_check(const std::vector<Vector>& points);

struct AsymptoticResult {
  bool pass = true;
  std::size_t checked = 0;
  double worst_gap = 0.0;
  std::optional<Vector> witness;
  std::string reason;
};

/// Iterates each start `steps` times and compares the radial gap
/// |r(dir x_k) - |x_k|_1| at k = steps / 2 and k = steps. A start passes when
/// the final gap is below 10 tol and does not exceed the midway gap by more
/// than rounding (gaps already below tol count as settled). Leaving [0, 10 q]
/// fails.
AsymptoticResult asymptotic_check(const RadialSurface& surface, const CompetitionModel& model,
                                  const std::vector<StateVector>& initial_points,
                                  std::size_t steps);

struct VerificationReport {
  double invariance_residual = 0.0;
  UnorderedResult unordered;
  AsymptoticResult asymptotic;
  std::vector<double> axial_errors;  // |r(e_i) - q_i|
  CriterionRecord inverse_positivity;

  bool pass(double tol) const;
  nlohmann::json to_json() const;
};

struct VerifyOptions {
  std::size_t residual_samples = 1000;
  std::size_t asymptotic_starts = 100;
  std::size_t asymptotic_steps = 200;
  std::uint64_t seed = 42;
};

/// Residual, unordered, asymptotic, axial and inverse-positivity checks.
VerificationReport verify_surface(const RadialSurface& surface, const CompetitionModel& model,
                                  const VerifyOptions& opts = {});

/// Iterates `seeds` random starts from [0, 1.5 q] \ {0} for `steps` steps.
/// Used for n >= 4 where no surface is reconstructed.
std::vector<Vector> compute_point_cloud(const CompetitionModel& model, std::size_t seeds,
                                        std::size_t steps, Rng& rng);

/// Unordered test for a cloud: x counts as above y only if x >= y and the
/// two differ by more than rel_tol * |x|_1 in L1.
UnorderedResult unordered_check_cloud(const std::vector<Vector>& points, double rel_tol = 1e-9);

struct SweepRow {
  double b = 0.0;
  std::string cls;  // converges | periodic | non-convergent | divergent
  std::size_t period = 0;
  std::vector<double> points;
  double final_distance = 0.0;  // |x_last - b / a|
};

/// Orbit diagram of T x = x exp(b - a x) for `count` values of b in
/// [b_min, b_max], started at 0.1 b / a.
std::vector<SweepRow> sweep_1d(double a, double b_min, double b_max, std::size_t count,
                               std::size_t burn_in, std::size_t record);

}  // namespace csimplex

#endif  // CSIMPLEX_SIMPLEX_HPP
