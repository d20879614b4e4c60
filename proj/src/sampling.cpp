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
#include "csimplex/sampling.hpp"

#include <cmath>

namespace csimplex {

Vector Rng::simplex_point(std::size_t n) {
  // normalized exponentials
  Vector v(static_cast<Eigen::Index>(n));
  for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = -std::log(1.0 - uniform());
  const double s = v.sum();
  return s > 0.0 ? Vector(v / s) : Vector(Vector::Constant(v.size(), 1.0 / double(n)));
}

StateVector sample_in_facet(const OrderInterval& region, const Support& keep, Rng& rng) {
  const Vector& lo = region.lower().vec();
  const Vector& hi = region.upper().vec();
  Vector x = Vector::Zero(lo.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    if (keep.contains(static_cast<std::size_t>(i))) x[i] = rng.uniform(lo[i], hi[i]);
  }
  return StateVector(std::move(x));
}

std::vector<StateVector> sample_region(const OrderInterval& region, std::size_t count, Rng& rng) {
  constexpr std::size_t kAxisPoints = 16;
  const std::size_t n = region.size();
  const Vector& lo = region.lower().vec();
  const Vector& hi = region.upper().vec();
  const bool from_origin = region.lower().is_zero();

  std::vector<StateVector> out;
  out.reserve(count);
  if (from_origin && out.size() < count) out.push_back(StateVector::zero(n));
  if (from_origin) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t k = 1; k <= kAxisPoints && out.size() < count; ++k) {
        const double t = double(k) / double(kAxisPoints);
        out.push_back(StateVector::axis(n, i, t * hi[static_cast<Eigen::Index>(i)]));
      }
    }
  }
  while (out.size() < count) {
    Vector x(static_cast<Eigen::Index>(n));
    for (Eigen::Index i = 0; i < x.size(); ++i) x[i] = rng.uniform(lo[i], hi[i]);
    if (from_origin && n > 1 && rng.index(4) == 0) {
      // zero a random non-empty proper subset
      const std::size_t drop = 1 + rng.index(n - 1);
      for (std::size_t k = 0; k < drop; ++k) x[static_cast<Eigen::Index>(rng.index(n))] = 0.0;
    }
    out.emplace_back(std::move(x));
  }
  return out;
}

}  // namespace csimplex
