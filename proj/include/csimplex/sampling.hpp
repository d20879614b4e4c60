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
#ifndef CSIMPLEX_SAMPLING_HPP
#define CSIMPLEX_SAMPLING_HPP

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include "csimplex/order.hpp"

namespace csimplex {

/// Seeded generator. Uniform draws are built from raw 64-bit output rather
/// than std::uniform_real_distribution so sequences are identical across
/// standard library implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : seed_(seed), engine_(seed) {}

  std::uint64_t seed() const { return seed_; }
  /// Uniform in [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// Uniform in {0, ..., n-1}; n > 0.
  std::size_t index(std::size_t n) { return static_cast<std::size_t>(engine_() % n); }
  /// Uniform over the unit simplex of dimension n - 1.
  Vector simplex_point(std::size_t n);

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

/// Sample points of an order interval for the sampled hypothesis checks.
///
/// The set always contains the origin (when it is the lower corner) and 16
/// points on every axis segment; the remainder is uniform in the box, with
/// one in four points pushed onto a random boundary facet.
std::vector<StateVector> sample_region(const OrderInterval& region, std::size_t count, Rng& rng);

/// Uniform point of the box with the coordinates outside `keep` zeroed.
StateVector sample_in_facet(const OrderInterval& region, const Support& keep, Rng& rng);

}  // namespace csimplex

#endif  // CSIMPLEX_SAMPLING_HPP
