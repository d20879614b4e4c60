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
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

#include "csimplex/order.hpp"

using namespace csimplex;

TEST_CASE("state vectors live in the closed cone") {
  CHECK_NOTHROW(StateVector({0.0, 1.5}));
  CHECK_THROWS_AS(StateVector({-1e-300, 1.0}), DomainError);
  CHECK_THROWS_AS(StateVector({std::nan(""), 1.0}), DomainError);
  CHECK_THROWS_AS(StateVector({std::numeric_limits<double>::infinity()}), DomainError);
  CHECK_THROWS_AS(StateVector{Vector()}, DomainError);
  CHECK(StateVector::zero(3).is_zero());
  CHECK(StateVector::axis(3, 1, 2.0) == StateVector({0.0, 2.0, 0.0}));
}

TEST_CASE("support is the set of positive coordinates") {
  CHECK(support(StateVector({0.0, 3.0, 1e-300})).indices() == std::vector<std::size_t>{1, 2});
  CHECK(support(StateVector::zero(4)).empty());
  CHECK(support(StateVector({1.0, 0.0, 2.0})).one_based() == std::vector<std::size_t>{1, 3});
}

TEST_CASE("compare distinguishes the three orders") {
  const StateVector a{2.0, 3.0}, b{1.0, 3.0}, c{1.0, 2.0}, d{3.0, 1.0};
  CHECK(compare(a, a) == Order::kEqual);
  CHECK(compare(a, b) == Order::kGreater);
  CHECK(compare(a, c) == Order::kStrictlyGreater);
  CHECK(compare(c, a) == Order::kStrictlyLess);
  CHECK(compare(b, a) == Order::kLess);
  CHECK(compare(a, d) == Order::kIncomparable);
  CHECK(succ(a, b));
  CHECK_FALSE(succ(a, a));
  CHECK(succeq(a, a));
}

TEST_CASE("strict majorization needs growth on the support of x") {
  CHECK(strictly_majorizes(StateVector({2.0, 0.0}), StateVector({1.0, 0.0})));
  CHECK_FALSE(strictly_majorizes(StateVector({2.0, 1.0}), StateVector({1.0, 1.0})));
  // x_i > y_i on supp(x) alone is not enough without x >= y
  CHECK_FALSE(strictly_majorizes(StateVector({2.0, 0.0}), StateVector({1.0, 1.0})));
}

TEST_CASE("order intervals") {
  const OrderInterval box(StateVector({1.0, 2.0}));
  CHECK(box.contains(StateVector({1.0, 0.0})));
  CHECK_FALSE(box.contains(StateVector({1.0 + 1e-12, 0.0})));
  CHECK_THROWS_AS(OrderInterval(StateVector({1.0, 1.0}), StateVector({0.5, 2.0})), DomainError);
  CHECK(box.lower() == StateVector::zero(2));
}

TEST_CASE("radial projection round-trips") {
  std::mt19937_64 gen(7);
  std::uniform_real_distribution<double> u(0.0, 5.0);
  for (int k = 0; k < 200; ++k) {
    const StateVector x{u(gen), u(gen), u(gen)};
    const RadialCoords rc = radial_project(x);
    CHECK(rc.direction.sum() == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(rc.radius == doctest::Approx(x.l1_norm()));
    CHECK((rc.reconstruct() - x.vec()).cwiseAbs().maxCoeff() <= 1e-14 * rc.radius);
  }
  CHECK_THROWS_AS(radial_project(StateVector::zero(2)), DomainError);
}

TEST_CASE("order properties on random triples") {
  std::mt19937_64 gen(11);
  std::uniform_int_distribution<int> u(0, 3);
  for (int k = 0; k < 2000; ++k) {
    const StateVector x{double(u(gen)), double(u(gen))};
    const StateVector y{double(u(gen)), double(u(gen))};
    const StateVector z{double(u(gen)), double(u(gen))};
    CHECK(succeq(x, x));
    if (succeq(x, y) && succeq(y, x)) CHECK(x == y);
    if (succeq(x, y) && succeq(y, z)) CHECK(succeq(x, z));
    if (strictly_majorizes(x, y)) CHECK((succ(x, y) || (x.is_zero() && y.is_zero())));
    if (compare(x, y) == Order::kStrictlyGreater) CHECK(strictly_majorizes(x, y));
  }
}
