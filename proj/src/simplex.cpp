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
#include "csimplex/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

#include "csimplex/criteria.hpp"

namespace csimplex {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kCoverSlack = 1e-9;

std::vector<std::size_t> composition_of(std::size_t n, std::size_t m,
                                        const std::vector<std::size_t>& facet,
                                        const std::vector<std::size_t>& local) {
  // local holds the first |facet| - 1 parts; the last part takes the rest.
  std::vector<std::size_t> k(n, 0);
  std::size_t used = 0;
  for (std::size_t a = 0; a + 1 < facet.size(); ++a) {
    k[facet[a]] = local[a];
    used += local[a];
  }
  k[facet.back()] = m - used;
  return k;
}

/// A facet of the grid: the nodes whose support is exactly `indices`, and the
/// (|indices|-1)-cells of the grid restricted to its closure.
struct FacetMesh {
  std::vector<std::size_t> indices;
  std::vector<std::vector<std::size_t>> cells;  // node indices, |indices| per cell
  std::vector<std::size_t> targets;             // relative-interior node indices
};

std::vector<FacetMesh> build_facets(const SimplexGrid& grid) {
  const std::size_t n = grid.dimension(), m = grid.resolution();
  std::vector<FacetMesh> facets;
  for (std::size_t mask = 1; mask < (std::size_t{1} << n); ++mask) {
    FacetMesh f;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask & (std::size_t{1} << i)) f.indices.push_back(i);
    }
    const std::size_t k = f.indices.size();
    if (k < 2) continue;
    auto node = [&](std::vector<std::size_t> local) {
      return grid.index_of(composition_of(n, m, f.indices, local));
    };
    if (k == 2) {
      for (std::size_t j = 0; j < m; ++j) f.cells.push_back({node({j}), node({j + 1})});
      for (std::size_t j = 1; j < m; ++j) f.targets.push_back(node({j}));
    } else if (k == 3) {
      for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; i + j < m; ++j) {
          f.cells.push_back({node({i, j}), node({i + 1, j}), node({i, j + 1})});
          if (i + j + 2 <= m) {
            f.cells.push_back({node({i + 1, j}), node({i, j + 1}), node({i + 1, j + 1})});
          }
        }
      }
      for (std::size_t i = 1; i < m; ++i) {
        for (std::size_t j = 1; i + j < m; ++j) f.targets.push_back(node({i, j}));
      }
    } else {
      throw SurfaceError("surface mode supports n <= 3");
    }
    facets.push_back(std::move(f));
  }
  return facets;
}

/// Local coordinates of a direction on a facet: its first |facet| - 1 parts.
Eigen::VectorXd local_coords(const Vector& d, const std::vector<std::size_t>& facet) {
  Eigen::VectorXd y(static_cast<Eigen::Index>(facet.size() - 1));
  for (std::size_t a = 0; a + 1 < facet.size(); ++a) {
    y[static_cast<Eigen::Index>(a)] = d[static_cast<Eigen::Index>(facet[a])];
  }
  return y;
}

/// Edge matrix [y_1 - y_0, ..., y_{k-1} - y_0].
Matrix edge_matrix(const std::vector<Eigen::VectorXd>& y) {
  const auto dim = static_cast<Eigen::Index>(y.size() - 1);
  Matrix E(dim, dim);
  for (Eigen::Index v = 1; v <= dim; ++v) E.col(v - 1) = y[static_cast<std::size_t>(v)] - y[0];
  return E;
}

struct Image {
  Vector direction;
  double radius;
};

Image push_forward(const CompetitionModel& model, const Vector& point) {
  const Vector y = model.map(point);
  if (!y.allFinite()) throw SurfaceError("map produced a non-finite value on the surface");
  const double r = y.sum();
  if (!(r > 0.0)) throw SurfaceError("surface point mapped to the origin");
  return Image{y / r, r};
}

/// One rebuild of the radii on the fixed grid from the images of the nodes.
std::vector<double> rebuild(const SimplexGrid& grid, const std::vector<FacetMesh>& facets,
                            const std::vector<Image>& images) {
  const std::size_t n = grid.dimension(), m = grid.resolution();
  std::vector<double> next(grid.size(), std::numeric_limits<double>::quiet_NaN());

  // Vertices stay on their axis.
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const auto& k = grid.composition(i);
    if (std::count(k.begin(), k.end(), std::size_t{0}) + 1 == static_cast<long>(n)) {
      next[i] = images[i].radius;
    }
  }

  std::vector<double> best(grid.size(), -kInf);
  for (const auto& f : facets) {
    const std::size_t k = f.indices.size();
    for (const auto& cell : f.cells) {
      std::vector<Eigen::VectorXd> ref, img;
      for (std::size_t v : cell) {
        ref.push_back(local_coords(grid.direction(v), f.indices));
        img.push_back(local_coords(images[v].direction, f.indices));
      }
      const Matrix Eref = edge_matrix(ref);
      const Matrix E = edge_matrix(img);
      const double det_ref = Eref.determinant();
      const double det = E.determinant();
      if (!(std::abs(det) > 1e-12 * std::abs(det_ref)) || (det > 0.0) != (det_ref > 0.0)) {
        throw SurfaceError("direction map not injective at resolution " + std::to_string(m) +
                           "; refine grid");
      }
      const Eigen::PartialPivLU<Matrix> lu(E);

      // candidate target nodes from the bounding box of the image cell
      Eigen::VectorXd lo = img[0], hi = img[0];
      for (const auto& y : img) {
        lo = lo.cwiseMin(y);
        hi = hi.cwiseMax(y);
      }
      auto first = [&](Eigen::Index a) {
        return static_cast<long>(std::ceil(lo[a] * double(m) - kCoverSlack * double(m)));
      };
      auto last = [&](Eigen::Index a) {
        return static_cast<long>(std::floor(hi[a] * double(m) + kCoverSlack * double(m)));
      };
      auto consider = [&](const std::vector<std::size_t>& local) {
        std::size_t used = 0;
        for (auto v : local) used += v;
        if (used >= m) return;
        for (auto v : local) {
          if (v == 0) return;  // lower-dimensional facet, handled separately
        }
        const std::size_t node = grid.index_of(composition_of(n, m, f.indices, local));
        const Eigen::VectorXd t = local_coords(grid.direction(node), f.indices);
        const Eigen::VectorXd w = lu.solve(t - img[0]);
        const double w0 = 1.0 - w.sum();
        const double wmin = std::min(w0, w.size() ? w.minCoeff() : kInf);
        if (wmin < -kCoverSlack || wmin <= best[node]) return;
        double r = w0 * images[cell[0]].radius;
        for (Eigen::Index v = 0; v < w.size(); ++v) {
          r += w[v] * images[cell[static_cast<std::size_t>(v + 1)]].radius;
        }
        best[node] = wmin;
        next[node] = r;
      };
      if (k == 2) {
        for (long j = std::max(1L, first(0)); j <= last(0); ++j) {
          consider({static_cast<std::size_t>(j)});
        }
      } else {
        for (long i = std::max(1L, first(0)); i <= last(0); ++i) {
          for (long j = std::max(1L, first(1)); j <= last(1); ++j) {
            consider({static_cast<std::size_t>(i), static_cast<std::size_t>(j)});
          }
        }
      }
    }
    for (std::size_t t : f.targets) {
      if (!(best[t] >= -kCoverSlack)) {
        throw SurfaceError("direction map does not cover the simplex at resolution " +
                           std::to_string(m) + "; refine grid");
      }
    }
  }
  return next;
}

double l1_gap(const RadialSurface& s, const Vector& x) {
  const double r = x.sum();
  return std::abs(s.radius_at(x / r) - r);
}

}  // namespace

// ---------------------------------------------------------------------------
// SimplexGrid

SimplexGrid::SimplexGrid(std::size_t n, std::size_t m) : n_(n), m_(n == 1 ? 1 : m) {
  if (n < 1 || n > 3) throw DomainError("simplex grid supports n = 1, 2, 3");
  if (n > 1 && m < 2) throw DomainError("grid resolution must be >= 2");
  if (n == 1) {
    nodes_.push_back({1});
  } else if (n == 2) {
    for (std::size_t j = 0; j <= m_; ++j) nodes_.push_back({j, m_ - j});
  } else {
    for (std::size_t i = 0; i <= m_; ++i) {
      for (std::size_t j = 0; i + j <= m_; ++j) nodes_.push_back({i, j, m_ - i - j});
    }
  }
}

Vector SimplexGrid::direction(std::size_t i) const {
  Vector d(static_cast<Eigen::Index>(n_));
  for (std::size_t a = 0; a < n_; ++a) {
    d[static_cast<Eigen::Index>(a)] = double(nodes_[i][a]) / double(m_);
  }
  return d;
}

std::size_t SimplexGrid::index_of(const std::vector<std::size_t>& k) const {
  if (n_ == 1) return 0;
  if (n_ == 2) return k[0];
  // rows i = 0..k0-1 hold m - i + 1 nodes each
  const std::size_t i = k[0];
  return i * (m_ + 1) - i * (i - 1) / 2 + k[1];
}

// ---------------------------------------------------------------------------
// RadialSurface

double RadialSurface::radius_at(const Vector& d) const {
  const std::size_t n = grid.dimension(), m = grid.resolution();
  if (static_cast<std::size_t>(d.size()) != n) throw DomainError("direction has wrong dimension");
  if (n == 1) return radii[0];
  if (n == 2) {
    const double u = std::clamp(d[0], 0.0, 1.0) * double(m);
    const std::size_t j = std::min(static_cast<std::size_t>(u), m - 1);
    const double w = u - double(j);
    return (1.0 - w) * radii[grid.index_of({j, m - j})] +
           w * radii[grid.index_of({j + 1, m - j - 1})];
  }
  const double a = std::clamp(d[0], 0.0, 1.0) * double(m);
  const double b = std::clamp(d[1], 0.0, 1.0) * double(m);
  const std::size_t i = std::min(static_cast<std::size_t>(a), m);
  const std::size_t j = std::min(static_cast<std::size_t>(b), m - i);
  auto r = [&](std::size_t ii, std::size_t jj) { return radii[grid.index_of({ii, jj, m - ii - jj})]; };
  if (i + j >= m) return r(i, j);
  const double fa = a - double(i), fb = b - double(j);
  if (fa + fb <= 1.0) {
    return (1.0 - fa - fb) * r(i, j) + fa * r(i + 1, j) + fb * r(i, j + 1);
  }
  return (1.0 - fb) * r(i + 1, j) + (1.0 - fa) * r(i, j + 1) + (fa + fb - 1.0) * r(i + 1, j + 1);
}

Vector RadialSurface::node_point(std::size_t i) const { return radii[i] * grid.direction(i); }

std::size_t default_resolution(std::size_t n) { return n == 3 ? 24 : 64; }

RadialSurface compute_carrying_simplex(const CompetitionModel& model, const SimplexOptions& opts) {
  const std::size_t n = model.dimension();
  if (n > 3) throw DomainError("surface mode supports n <= 3; use the point cloud for n >= 4");
  if (!(opts.tol > 0.0)) throw DomainError("tolerance must be > 0");
  const std::size_t m = opts.m == 0 ? default_resolution(n) : opts.m;
  const Vector q = axial_fixed_points(model).vec();

  RadialSurface s{SimplexGrid(n, m), {}};
  s.tol = opts.tol;
  const auto facets = build_facets(s.grid);

  // Start on the outer boundary of [0, 1.5 q]: above [0, q] along every ray.
  s.radii.resize(s.grid.size());
  for (std::size_t i = 0; i < s.grid.size(); ++i) {
    const Vector d = s.grid.direction(i);
    double r = kInf;
    for (Eigen::Index a = 0; a < d.size(); ++a) {
      if (d[a] > 0.0) r = std::min(r, q[a] / d[a]);
    }
    s.radii[i] = 1.5 * r;
  }

  std::vector<Image> images(s.grid.size());
  for (std::size_t it = 1; it <= opts.max_iter; ++it) {
    for (std::size_t i = 0; i < s.grid.size(); ++i) images[i] = push_forward(model, s.node_point(i));
    std::vector<double> next = rebuild(s.grid, facets, images);
    double delta = 0.0;
    for (std::size_t i = 0; i < next.size(); ++i) {
      if (!(next[i] > 0.0) || !std::isfinite(next[i])) {
        throw SurfaceError("rebuilt radius is not positive at node " + std::to_string(i));
      }
      delta = std::max(delta, std::abs(next[i] - s.radii[i]));
      if (it > 1 && next[i] > s.radii[i] + 1e-12) ++s.monotone_violations;
    }
    s.radii = std::move(next);
    s.iterations = it;
    s.final_delta = delta;
    if (delta < opts.tol) {
      s.converged = true;
      break;
    }
  }
  return s;
}

double invariance_residual(const RadialSurface& surface, const CompetitionModel& model,
                           std::size_t samples, Rng& rng) {
  const std::size_t n = surface.dimension();
  const double scale = axial_fixed_points(model).l1_norm();
  double worst = 0.0;
  for (std::size_t k = 0; k < samples; ++k) {
    const Vector d = rng.simplex_point(n);
    const Vector p = surface.radius_at(d) * d;
    const Vector y = eval_map(model, StateVector(p)).vec();
    const double r = y.sum();
    if (!(r > 0.0)) throw SurfaceError("surface point mapped to the origin");
    worst = std::max(worst, std::abs(surface.radius_at(y / r) - r) / scale);
  }
  return worst;
}

namespace {

// Plane case: after sorting by (x_1, x_2) a later point dominates an earlier
// one iff its x_2 is not below the earlier x_2, so a running minimum of x_2
// decides every pair. Exact, and the same verdict as the pairwise scan.
UnorderedResult unordered_plane(const std::vector<Vector>& points) {
  std::vector<std::size_t> order(points.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return std::make_pair(points[a][0], points[a][1]) < std::make_pair(points[b][0], points[b][1]);
  });
  UnorderedResult res;
  res.margin = -kInf;
  std::size_t low = order.empty() ? 0 : order[0];
  for (std::size_t k = 1; k < order.size(); ++k) {
    const std::size_t j = order[k];
    if (points[j] != points[low]) {
      // min over both coordinates of points[j] - points[low]
      const double margin = (points[j] - points[low]).minCoeff();
      if (points[j][1] >= points[low][1]) {
        res.pass = false;
        res.first = j;
        res.second = low;
        res.margin = margin;
        return res;
      }
      if (margin > res.margin) {
        res.margin = margin;
        res.first = j;
        res.second = low;
      }
    }
    if (points[j][1] < points[low][1]) low = j;
  }
  return res;
}

}  // namespace

UnorderedResult unordered_check(const std::vector<Vector>& points) {
  if (!points.empty() && points[0].size() == 2) return unordered_plane(points);
  UnorderedResult res;
  res.margin = -kInf;
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t j = 0; j < points.size(); ++j) {
      if (i == j || points[i] == points[j]) continue;
      const double margin = (points[i] - points[j]).minCoeff();
      if (margin >= 0.0) {
        res.pass = false;
        res.first = i;
        res.second = j;
        res.margin = margin;
        return res;
      }
      if (margin > res.margin) {
        res.margin = margin;
        res.first = i;
        res.second = j;
      }
    }
  }
  return res;
}

UnorderedResult unordered_check(const RadialSurface& surface) {
  std::vector<Vector> pts;
  pts.reserve(surface.grid.size());
  for (std::size_t i = 0; i < surface.grid.size(); ++i) pts.push_back(surface.node_point(i));
  return unordered_check(pts);
}

UnorderedResult unordered_check_cloud(const std::vector<Vector>& points, double rel_tol) {
  UnorderedResult res;
  res.margin = -kInf;
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t j = 0; j < points.size(); ++j) {
      if (i == j) continue;
      const Vector diff = points[i] - points[j];
      const double margin = diff.minCoeff();
      const bool distinct = diff.cwiseAbs().sum() > rel_tol * points[i].sum();
      if (margin >= 0.0 && distinct) {
        res.pass = false;
        res.first = i;
        res.second = j;
        res.margin = margin;
        return res;
      }
      if (distinct && margin > res.margin) {
        res.margin = margin;
        res.first = i;
        res.second = j;
      }
    }
  }
  return res;
}

AsymptoticResult asymptotic_check(const RadialSurface& surface, const CompetitionModel& model,
                                  const std::vector<StateVector>& initial_points,
                                  std::size_t steps) {
  AsymptoticResult res;
  const Vector box = 10.0 * axial_fixed_points(model).vec();
  const double tol = surface.tol;
  const std::size_t mid = steps / 2;
  for (const auto& x0 : initial_points) {
    if (x0.is_zero()) throw DomainError("asymptotic_check needs nonzero starts");
    ++res.checked;
    Vector x = x0.vec();
    double gap_mid = kInf;
    for (std::size_t k = 1; k <= steps; ++k) {
      x = eval_map(model, StateVector(x)).vec();
      if ((x.array() > box.array()).any()) {
        res.pass = false;
        res.witness = x0.vec();
        res.reason = "trajectory left [0, 10q] at step " + std::to_string(k);
        return res;
      }
      if (x.sum() == 0.0) {
        res.pass = false;
        res.witness = x0.vec();
        res.reason = "trajectory reached the origin";
        return res;
      }
      if (k == mid) gap_mid = l1_gap(surface, x);
    }
    const double gap_end = l1_gap(surface, x);
    res.worst_gap = std::max(res.worst_gap, gap_end);
    const bool small = gap_end < 10.0 * tol;
    // equal gaps at two points of a converged orbit differ by rounding only
    const double ulps = 64.0 * std::numeric_limits<double>::epsilon() * x.sum();
    const bool settled = gap_end <= gap_mid + ulps || gap_end < tol;
    if (!small || !settled) {
      res.pass = false;
      res.witness = x0.vec();
      res.reason = small ? "radial gap grew between steps/2 and steps"
                         : "radial gap " + std::to_string(gap_end) + " >= 10 tol";
      return res;
    }
  }
  return res;
}

bool VerificationReport::pass(double tol) const {
  if (!unordered.pass || !asymptotic.pass) return false;
  if (!(invariance_residual < 10.0 * tol)) return false;
  for (double e : axial_errors) {
    if (!(e < 10.0 * tol)) return false;
  }
  return inverse_positivity.verdict != Verdict::kFail;
}

nlohmann::json VerificationReport::to_json() const {
  nlohmann::json j;
  j["invariance_residual"] = invariance_residual;
  j["unordered"] = {{"pass", unordered.pass},
                    {"worst_pair", {unordered.first, unordered.second}},
                    {"margin", std::isfinite(unordered.margin) ? nlohmann::json(unordered.margin)
                                                               : nlohmann::json(nullptr)}};
  j["asymptotic"] = {{"pass", asymptotic.pass},
                     {"checked", asymptotic.checked},
                     {"worst_gap", asymptotic.worst_gap}};
  if (asymptotic.witness) j["asymptotic"]["witness"] = to_json_array(*asymptotic.witness);
  if (!asymptotic.reason.empty()) j["asymptotic"]["reason"] = asymptotic.reason;
  j["axial_errors"] = axial_errors;
  j["inverse_positivity"] = inverse_positivity.to_json();
  return j;
}

VerificationReport verify_surface(const RadialSurface& surface, const CompetitionModel& model,
                                  const VerifyOptions& opts) {
  VerificationReport rep;
  const std::size_t n = surface.dimension();
  const Vector q = axial_fixed_points(model).vec();
  Rng rng(opts.seed);
  rep.invariance_residual = invariance_residual(surface, model, opts.residual_samples, rng);
  rep.unordered = unordered_check(surface);

  std::vector<StateVector> starts;
  while (starts.size() < opts.asymptotic_starts) {
    Vector x(static_cast<Eigen::Index>(n));
    for (Eigen::Index i = 0; i < x.size(); ++i) x[i] = rng.uniform(0.0, 1.5 * q[i]);
    if (x.sum() > 0.0) starts.emplace_back(std::move(x));
  }
  rep.asymptotic = asymptotic_check(surface, model, starts, opts.asymptotic_steps);

  for (std::size_t i = 0; i < n; ++i) {
    const Vector e = Vector::Unit(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(i));
    rep.axial_errors.push_back(std::abs(surface.radius_at(e) - q[static_cast<Eigen::Index>(i)]));
  }
  std::vector<StateVector> nodes;
  for (std::size_t i = 0; i < surface.grid.size(); ++i) nodes.emplace_back(surface.node_point(i));
  rep.inverse_positivity = check_inverse_positivity(model, nodes);
  return rep;
}

std::vector<Vector> compute_point_cloud(const CompetitionModel& model, std::size_t seeds,
                                        std::size_t steps, Rng& rng) {
  const Vector q = axial_fixed_points(model).vec();
  std::vector<Vector> cloud;
  cloud.reserve(seeds);
  while (cloud.size() < seeds) {
    Vector x(q.size());
    for (Eigen::Index i = 0; i < x.size(); ++i) x[i] = rng.uniform(0.0, 1.5 * q[i]);
    if (!(x.sum() > 0.0)) continue;
    for (std::size_t k = 0; k < steps; ++k) x = eval_map(model, StateVector(x)).vec();
    cloud.push_back(std::move(x));
  }
  return cloud;
}

std::vector<SweepRow> sweep_1d(double a, double b_min, double b_max, std::size_t count,
                               std::size_t burn_in, std::size_t record) {
  constexpr double kClose = 1e-8;
  constexpr std::size_t kMaxPeriod = 64;
  if (!(a > 0.0) || !(b_min > 0.0) || !(b_max > b_min)) {
    throw DomainError("sweep needs a > 0 and 0 < b_min < b_max");
  }
  if (count == 0 || record == 0) throw DomainError("sweep needs count >= 1 and record >= 1");
  std::vector<SweepRow> rows;
  for (std::size_t k = 0; k < count; ++k) {
    SweepRow row;
    row.b = count == 1 ? b_min : b_min + (b_max - b_min) * double(k) / double(count - 1);
    const double fixed = row.b / a;
    auto step = [&](double x) { return x * std::exp(row.b - a * x); };
    double x = 0.1 * fixed;
    for (std::size_t i = 0; i < burn_in; ++i) x = step(x);
    std::vector<double> orbit;
    orbit.reserve(record);
    orbit.push_back(x);
    for (std::size_t i = 1; i < record; ++i) orbit.push_back(x = step(x));
    row.final_distance = std::abs(orbit.back() - fixed);

    if (std::any_of(orbit.begin(), orbit.end(), [](double v) { return !std::isfinite(v); })) {
      row.cls = "divergent";
    } else if (row.final_distance < kClose) {
      row.cls = "converges";
      row.period = 1;
      row.points = {orbit.back()};
    } else {
      for (std::size_t p = 1; p <= std::min(kMaxPeriod, orbit.size() - 1) && row.period == 0; ++p) {
        bool repeats = true;
        for (std::size_t j = p; j < orbit.size() && repeats; ++j) {
          repeats = std::abs(orbit[j] - orbit[j - p]) < kClose;
        }
        if (repeats) row.period = p;
      }
      if (row.period > 0) {
        row.cls = "periodic";
        row.points.assign(orbit.end() - static_cast<long>(row.period), orbit.end());
      } else {
        row.cls = "non-convergent";
        row.points = orbit;
      }
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace csimplex
