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
#include "csimplex/order.hpp"

#include <algorithm>
#include <cmath>

namespace csimplex {

namespace {

void require_same_size(const StateVector& x, const StateVector& y) {
  if (x.size() != y.size()) {
    throw DomainError("dimension mismatch: " + std::to_string(x.size()) + " vs " +
                      std::to_string(y.size()));
  }
}

}  // namespace

bool in_cone(const Vector& x) {
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    if (!std::isfinite(x[i]) || x[i] < 0.0) return false;
  }
  return true;
}

StateVector::StateVector(Vector coords) : coords_(std::move(coords)) {
  if (coords_.size() == 0) throw DomainError("state vector must have dimension >= 1");
  for (Eigen::Index i = 0; i < coords_.size(); ++i) {
    if (!std::isfinite(coords_[i]) || coords_[i] < 0.0) {
      throw DomainError("coordinate " + std::to_string(i + 1) +
                        " is not a finite non-negative number");
    }
  }
}

StateVector::StateVector(std::initializer_list<double> coords)
    : StateVector(Vector(Eigen::Map<const Vector>(coords.begin(),
                                                  static_cast<Eigen::Index>(coords.size())))) {}

StateVector StateVector::zero(std::size_t n) {
  return StateVector(Vector::Zero(static_cast<Eigen::Index>(n)));
}

StateVector StateVector::axis(std::size_t n, std::size_t i, double t) {
  Vector v = Vector::Zero(static_cast<Eigen::Index>(n));
  v[static_cast<Eigen::Index>(i)] = t;
  return StateVector(std::move(v));
}

bool StateVector::is_zero() const {
  return std::all_of(coords_.begin(), coords_.end(), [](double c) { return c == 0.0; });
}

bool operator==(const StateVector& a, const StateVector& b) {
  return a.coords_.size() == b.coords_.size() && a.coords_ == b.coords_;
}

Support::Support(std::vector<std::size_t> indices) : indices_(std::move(indices)) {
  std::sort(indices_.begin(), indices_.end());
  indices_.erase(std::unique(indices_.begin(), indices_.end()), indices_.end());
}

bool Support::contains(std::size_t i) const {
  return std::binary_search(indices_.begin(), indices_.end(), i);
}

std::vector<std::size_t> Support::one_based() const {
  std::vector<std::size_t> out(indices_);
  for (auto& i : out) ++i;
  return out;
}

OrderInterval::OrderInterval(StateVector lower, StateVector upper)
    : lower_(std::move(lower)), upper_(std::move(upper)) {
  require_same_size(lower_, upper_);
  if (!succeq(upper_, lower_)) throw DomainError("order interval requires lower <= upper");
}

OrderInterval::OrderInterval(StateVector upper)
    : lower_(StateVector::zero(upper.size())), upper_(std::move(upper)) {}

bool OrderInterval::contains(const StateVector& x) const {
  return succeq(x, lower_) && succeq(upper_, x);
}

const char* to_string(Order o) {
  switch (o) {
    case Order::kEqual: return "equal";
    case Order::kGreater: return "greater";
    case Order::kStrictlyGreater: return "strictly_greater";
    case Order::kLess: return "less";
    case Order::kStrictlyLess: return "strictly_less";
    case Order::kIncomparable: return "incomparable";
  }
  return "unknown";
}

Support support(const StateVector& x) {
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] > 0.0) idx.push_back(i);
  }
  return Support(std::move(idx));
}

Order compare(const StateVector& x, const StateVector& y) {
  require_same_size(x, y);
  bool any_gt = false, any_lt = false, all_gt = true, all_lt = true;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] > y[i]) {
      any_gt = true;
      all_lt = false;
    } else if (x[i] < y[i]) {
      any_lt = true;
      all_gt = false;
    } else {
      all_gt = false;
      all_lt = false;
    }
  }
  if (!any_gt && !any_lt) return Order::kEqual;
  if (any_gt && any_lt) return Order::kIncomparable;
  if (any_gt) return all_gt ? Order::kStrictlyGreater : Order::kGreater;
  return all_lt ? Order::kStrictlyLess : Order::kLess;
}

bool succeq(const StateVector& x, const StateVector& y) {
  require_same_size(x, y);
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] < y[i]) return false;
  }
  return true;
}

bool succ(const StateVector& x, const StateVector& y) {
  const Order o = compare(x, y);
  return o == Order::kGreater || o == Order::kStrictlyGreater;
}

bool strictly_majorizes(const StateVector& x, const StateVector& y) {
  if (!succeq(x, y)) return false;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] > 0.0 && !(x[i] > y[i])) return false;
  }
  return true;
}

RadialCoords radial_project(const StateVector& x) {
  const double r = x.l1_norm();
  if (!(r > 0.0)) throw DomainError("no radial projection at origin");
  return RadialCoords{x.vec() / r, r};
}

}  // namespace csimplex
