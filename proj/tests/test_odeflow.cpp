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
#include <numbers>
#include <random>

#include "csimplex/criteria.hpp"
#include "csimplex/odeflow.hpp"
#include "support.hpp"

using namespace csimplex;
using testing::mat2;
using testing::vec;

namespace {

PeriodicSystem logistic_system(double r, double K) {
  Matrix A(1, 1);
  A << r / K;
  return PeriodicSystem::autonomous(vec({r}), A);
}

// Coefficients positive for all t.
PeriodicSystem reference_periodic() {
  return PeriodicSystem({FourierSeries{1.0, {0.3}, {}}, FourierSeries{0.8, {}, {0.2}}},
                        {FourierSeries{1.0, {0.2}, {}}, FourierSeries::constant_value(0.3),
                         FourierSeries{0.4, {}, {0.1}}, FourierSeries::constant_value(1.0)});
}

double logistic_error(int steps) {
  const Trajectory tr =
      integrate(logistic_system(1.0, 1.0), StateVector({0.5}), 0.0, 1.0, IntegrationConfig{steps});
  return std::abs(tr.states.back()[0] - testing::logistic(1.0, 1.0, 0.5, 1.0));
}

}  // namespace

TEST_CASE("Fourier series evaluation") {
  const FourierSeries s{0.5, {0.6, 0.1}, {0.2}};
  for (double t : {0.0, 0.1, 0.37, 0.5}) {
    const double w = 2.0 * std::numbers::pi * t;
    const double expected = 0.5 + 0.6 * std::cos(w) + 0.1 * std::cos(2 * w) + 0.2 * std::sin(w);
    CHECK(s(t) == doctest::Approx(expected).epsilon(1e-14));
    CHECK(s(t + 1.0) == doctest::Approx(s(t)).epsilon(1e-12));
  }
}

TEST_CASE("RK4 against the logistic closed form") {
  CHECK(logistic_error(256) < 1e-8);
  const double ratio = logistic_error(64) / logistic_error(128);
  CAPTURE(ratio);
  CHECK(ratio >= 12.0);
  CHECK(ratio <= 20.0);
  const Trajectory tr =
      integrate(logistic_system(1.0, 1.0), StateVector({0.5}), 0.0, 1.0, IntegrationConfig{256});
  CHECK(tr.states.size() == 257);
  CHECK(tr.error_estimate < 1e-8);
}

TEST_CASE("integration keeps zero coordinates at zero") {
  const Trajectory tr = integrate(reference_periodic(), StateVector({0.0, 0.3}), 0.0, 2.0);
  for (const auto& s : tr.states) CHECK(s[0] == 0.0);
  CHECK_THROWS_AS(integrate(reference_periodic(), StateVector({0.1, 0.1}), 0.0, 1.0,
                            IntegrationConfig{32}),
                  ParameterError);
}

TEST_CASE("Poincare map of the logistic equation") {
  const PoincareModel m(logistic_system(1.0, 2.0));
  CHECK(eval_map(m, StateVector({0.5}))[0] ==
        doctest::Approx(testing::logistic(1.0, 2.0, 0.5, 1.0)).epsilon(1e-9));
  CHECK(axial_fixed_points(m)[0] == doctest::Approx(2.0).epsilon(1e-10));
}

TEST_CASE("Poincare growth Jacobian matches a five-point stencil") {
  const PoincareModel m(reference_periodic());
  const Vector x = vec({0.3, 0.4});
  const Matrix J = eval_growth_jacobian(m, StateVector(x));
  const Matrix F = testing::fd5_jacobian([&](const Vector& y) { return m.growth(y); }, x, 1e-3);
  CHECK((J - F).cwiseAbs().maxCoeff() < 1e-6);
}

TEST_CASE("coefficient conditions") {
  SUBCASE("positive periodic instance") {
    for (const auto& r : check_A_conditions(reference_periodic())) {
      CAPTURE(r.id);
      CHECK(is_pass(r.verdict));
    }
  }
  SUBCASE("B_1 changes sign") {
    const PeriodicSystem sys({FourierSeries{0.5, {0.6}, {}}, FourierSeries::constant_value(0.8)},
                             {FourierSeries::constant_value(1.0), FourierSeries::constant_value(0.3),
                              FourierSeries::constant_value(0.4), FourierSeries::constant_value(1.0)});
    const auto recs = check_A_conditions(sys);
    REQUIRE(recs.size() == 4);
    CHECK(recs[3].id == "A4");
    CHECK(recs[3].verdict == Verdict::kFail);
    CHECK(std::abs(recs[3].witness["t"].get<double>() - 0.5) < 0.15);
  }
  SUBCASE("negative competition coefficient") {
    const PeriodicSystem sys = PeriodicSystem::autonomous(vec({1.0, 0.8}), mat2(1, -0.3, 0.4, 1));
    const auto recs = check_A_conditions(sys);
    CHECK(recs[0].verdict == Verdict::kFail);
    CHECK(recs[0].witness["i"] == 1);
    CHECK(recs[0].witness["j"] == 2);
  }
}

TEST_CASE("Wang-Jiang ratio monotonicity") {
  const WangJiangResult r = wang_jiang_check(reference_periodic(), StateVector({0.1, 0.1}),
                                             StateVector({0.2, 0.2}), 0.0, 3.0);
  CHECK(is_pass(r.verdict));
  CHECK(r.min_slope > -1e-12);
  CHECK_THROWS_AS(wang_jiang_check(reference_periodic(), StateVector({0.1, 0.1}),
                                   StateVector({0.1, 0.1}), 0.0, 3.0),
                  DomainError);
}

TEST_CASE("Wang-Jiang on random competitive systems") {
  std::mt19937_64 gen(42);
  std::uniform_real_distribution<double> u(0.05, 1.0), f(1.1, 2.0);
  for (int k = 0; k < 10; ++k) {
    const PeriodicSystem sys = testing::random_periodic(2 + k % 2, gen);
    Vector a(static_cast<Eigen::Index>(sys.dimension())), b(a.size());
    for (Eigen::Index i = 0; i < a.size(); ++i) {
      a[i] = u(gen);
      b[i] = a[i] * f(gen);
    }
    const WangJiangResult r =
        wang_jiang_check(sys, StateVector(a), StateVector(b), 0.0, 3.0, IntegrationConfig{128});
    CHECK(r.min_slope > -1e-12);
  }
}
