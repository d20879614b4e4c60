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
#ifndef CSIMPLEX_ORDER_HPP
#define CSIMPLEX_ORDER_HPP

#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

/// Geometry of the closed positive cone K = [0, inf)^n: the componentwise
/// vector order, supports (facets), order intervals and radial coordinates
/// over the unit simplex.
namespace csimplex {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Raised when a value lies outside the domain an operation requires
/// (negative or non-finite coordinates, mismatched dimensions, the origin
/// where a direction is needed, ...).
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A point of K. Every coordinate is finite and >= 0; the dimension is fixed
/// at construction.
class StateVector {
 public:
  explicit StateVector(Vector coords);
  StateVector(std::initializer_list<double> coords);

  static StateVector zero(std::size_t n);
  /// t * e_i (0-based axis index).
  static StateVector axis(std::size_t n, std::size_t i, double t);

  std::size_t size() const { return static_cast<std::size_t>(coords_.size()); }
  double operator[](std::size_t i) const { return coords_[static_cast<Eigen::Index>(i)]; }
  const Vector& vec() const { return coords_; }
  bool is_zero() const;
  double l1_norm() const { return coords_.sum(); }

  friend bool operator==(const StateVector& a, const StateVector& b);

 private:
  Vector coords_;
};

/// True iff every coordinate is finite and non-negative.
bool in_cone(const Vector& x);

/// Sorted set of 0-based coordinate indices with x_i > 0. Reports and file
/// formats print them 1-based.
class Support {
 public:
  Support() = default;
  explicit Support(std::vector<std::size_t> indices);

  const std::vector<std::size_t>& indices() const { return indices_; }
  std::size_t size() const { return indices_.size(); }
  bool empty() const { return indices_.empty(); }
  bool contains(std::size_t i) const;
  /// Indices shifted to 1-based, as printed in reports.
  std::vector<std::size_t> one_based() const;

  friend bool operator==(const Support&, const Support&) = default;

 private:
  std::vector<std::size_t> indices_;
};

/// Closed order interval [lower, upper] in K.
class OrderInterval {
 public:
  OrderInterval(StateVector lower, StateVector upper);
  /// [0, upper]
  explicit OrderInterval(StateVector upper);

  const StateVector& lower() const { return lower_; }
  const StateVector& upper() const { return upper_; }
  std::size_t size() const { return lower_.size(); }
  bool contains(const StateVector& x) const;

 private:
  StateVector lower_;
  StateVector upper_;
};

struct RadialCoords {
  Vector direction;  // barycentric point of the unit simplex
  double radius;     // L1 norm of the original point

  Vector reconstruct() const { return radius * direction; }
};

enum class Order {
  kEqual,
  kGreater,          // x > y: x - y in K, x != y, but not strict everywhere
  kStrictlyGreater,  // x >> y: x_i > y_i for every i
  kLess,
  kStrictlyLess,
  kIncomparable,
};

const char* to_string(Order o);

/// Support I(x) = {i : x_i > 0}; zero means bitwise zero.
Support support(const StateVector& x);

/// Componentwise order relation of x relative to y. kStrictlyGreater implies
/// kGreater (and likewise for the reverse), callers that only need "x > y"
/// should use succ().
Order compare(const StateVector& x, const StateVector& y);

/// x >= y componentwise.
bool succeq(const StateVector& x, const StateVector& y);
/// x >= y and x != y.
bool succ(const StateVector& x, const StateVector& y);

/// x >= y and x_i > y_i wherever x_i > 0.
bool strictly_majorizes(const StateVector& x, const StateVector& y);

/// direction = x / sum(x), radius = sum(x). Throws DomainError at the origin.
RadialCoords radial_project(const StateVector& x);

}  // namespace csimplex

#endif  // CSIMPLEX_ORDER_HPP
