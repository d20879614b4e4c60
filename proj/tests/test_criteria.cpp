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
#include <random>

#include <Eigen/Eigenvalues>

#include "csimplex/criteria.hpp"
#include "csimplex/spectral.hpp"
#include "support.hpp"

using namespace csimplex;
using testing::mat2;
using testing::vec;

namespace {

double eigen_rho(const Matrix& m) { return m.eigenvalues().cwiseAbs().maxCoeff(); }

}  // namespace

TEST_CASE("competition matrix of May-Oster is diag(x) A") {
  const auto m = testing::may2();
  const StateVector x{0.3, 0.2};
  const Matrix M = competition_matrix(m, x).entries;
  const Matrix expected = x.vec().asDiagonal() * mat2(1, 0.2, 0.3, 1);
  CHECK((M - expected).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("Gershgorin checks at q") {
  const auto m = testing::may2();
  const StateVector q{0.5, 0.4};
  const Matrix M = competition_matrix(m, q).entries;
  CHECK(M.row(0).sum() == doctest::Approx(0.6));
  CHECK(M.row(1).sum() == doctest::Approx(0.52));
  CHECK(M.col(0).sum() == doctest::Approx(0.62));
  CHECK(M.col(1).sum() == doctest::Approx(0.5));
  CHECK(gershgorin_row_check(m, q));
  CHECK(gershgorin_col_check(m, q));
}

TEST_CASE("spectral condition on the May instance matches an exhaustive grid") {
  const auto m = testing::may2();
  const CriterionRecord r = check_spectral_condition(m, GridOptions{16, true});
  double oracle = 0.0;
  for (int i = 1; i <= 16; ++i) {
    for (int j = 1; j <= 16; ++j) {
      const Vector x = vec({0.5 * i / 16.0, 0.4 * j / 16.0});
      oracle = std::max(oracle, testing::rho2x2(x.asDiagonal() * mat2(1, 0.2, 0.3, 1)));
    }
  }
  CHECK(is_pass(r.verdict));
  CHECK(r.worst <= 0.6 + 1e-9);
  CHECK(r.worst == doctest::Approx(oracle).epsilon(1e-12));
}

TEST_CASE("Leslie-Gower row sums stay below q_i sum_j A_ij") {
  const auto m = testing::leslie_gower2();
  const CriterionRecord r = check_gershgorin_rows(m);
  CHECK(is_pass(r.verdict));
  CHECK(r.worst < 0.45);
  CHECK(is_pass(check_spectral_condition(m).verdict));
}

TEST_CASE("sampled conditions on the May instance") {
  const auto m = testing::may2();
  const OrderInterval region = default_region(m);
  const SamplingOptions opts{2000, 42};
  CHECK(is_pass(check_C0(m).verdict));
  CHECK(is_pass(check_C1(m, opts).verdict));
  CHECK(is_pass(check_sublinearity(m, region, opts).verdict));
  CHECK(is_pass(check_retrotone(m, region, opts).verdict));
  CHECK(is_pass(check_C4(m).verdict));
  CHECK(is_pass(check_C5(m, region, opts).verdict));
}

TEST_CASE("C0 names the species without growth at the origin") {
  const LeslieGowerModel m(vec({1.3, 0.9}), mat2(1, 0.5, 0.4, 1));
  const CriterionRecord r = check_C0(m);
  CHECK(r.verdict == Verdict::kFail);
  CHECK(r.witness["species"] == 2);
}

TEST_CASE("retrotone fails with a witness for the overcompensating scalar map") {
  const auto m = testing::may1(3.0);
  const CriterionRecord r = check_retrotone(m, default_region(m), SamplingOptions{10000, 42});
  REQUIRE(r.verdict == Verdict::kFail);
  const StateVector x(vec({r.witness["x"][0].get<double>()}));
  const StateVector y(vec({r.witness["y"][0].get<double>()}));
  // T x >= T y yet x does not strictly majorize y
  CHECK(succeq(eval_map(m, x), eval_map(m, y)));
  CHECK_FALSE(strictly_majorizes(x, y));
}

TEST_CASE("inverse positivity at surface-like points") {
  const auto m = testing::may2();
  std::vector<StateVector> pts;
  for (int k = 0; k <= 20; ++k) pts.emplace_back(vec({0.5 * k / 20.0, 0.4 * (20 - k) / 20.0}));
  CHECK(is_pass(check_inverse_positivity(m, pts).verdict));
}

TEST_CASE("model criteria") {
  SUBCASE("May row test") {
    const CriterionRecord r = model_criterion(testing::may2());
    CHECK(r.verdict == Verdict::kPass);
    CHECK(r.witness["row_values"][0].get<double>() == doctest::Approx(0.6));
    CHECK(r.witness["row_values"][1].get<double>() == doctest::Approx(0.52));
  }
  SUBCASE("May scalar b = 3 has no carrying simplex") {
    const CriterionRecord r = model_criterion(testing::may1(3.0));
    CHECK(r.verdict == Verdict::kFail);
    CHECK(r.detail.find("no carrying simplex") != std::string::npos);
  }
  SUBCASE("May scalar b = 1.5 is indeterminate") {
    CHECK(model_criterion(testing::may1(1.5)).verdict == Verdict::kInconclusive);
  }
  SUBCASE("Leslie-Gower") {
    CHECK(model_criterion(testing::leslie_gower2()).verdict == Verdict::kPass);
    const LeslieGowerModel hi(vec({1.7, 1.2}), mat2(1, 0.5, 0.4, 1));
    CHECK(model_criterion(hi).verdict == Verdict::kFail);
  }
  SUBCASE("neural gain bound") {
    CHECK(std::abs(neural_gain_bound(testing::neural2(1.0)) - 1.0 / 0.6) < 1e-12);
    CHECK(model_criterion(testing::neural2(1.0)).verdict == Verdict::kPass);
    CHECK(model_criterion(testing::neural2(2.0)).verdict == Verdict::kFail);
  }
}

TEST_CASE("check_all report and exit codes") {
  CheckOptions opts;
  opts.sampling.samples = 1000;
  CHECK(check_all(testing::may2(), opts).exit_code() == 0);
  CHECK(check_all(testing::may1(3.0), opts).exit_code() == 1);
  const CriteriaReport rep = check_all(testing::may1(1.5), opts);
  CHECK(rep.find("model_criterion")->verdict == Verdict::kInconclusive);
  const nlohmann::json j = rep.to_json();
  CHECK(j["seed"] == 42);
  CHECK(j["records"].size() == rep.records.size());
}

TEST_CASE("non-finite worst values serialize as null") {
  CriterionRecord r;
  r.id = "x";
  r.worst = std::numeric_limits<double>::infinity();
  CHECK(r.to_json()["worst"].is_null());
}

TEST_CASE("Perron root of the 2x2 reference matrix") {
  const SpectralEstimate e = perron_root(mat2(0.5, 0.1, 0.2, 0.4));
  CHECK(e.converged);
  CHECK(std::abs(e.value - 0.6) < 1e-10);
  CHECK(e.lower <= 0.6 + 1e-12);
  CHECK(e.upper >= 0.6 - 1e-12);
  CHECK_THROWS_AS(perron_root(mat2(0.5, -0.1, 0.2, 0.4)), DomainError);
}

TEST_CASE("spectral radius is bounded by row and column sums") {
  std::mt19937_64 gen(17);
  std::uniform_real_distribution<double> u(0.001, 1.0);
  std::uniform_int_distribution<int> dim(2, 7);
  for (int k = 0; k < 100; ++k) {
    const int n = dim(gen);
    Matrix M(n, n);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) M(i, j) = u(gen);
    }
    const double rho = spectral_radius(M).value;
    const double bound =
        std::min(M.rowwise().sum().maxCoeff(), M.colwise().sum().maxCoeff());
    CHECK(rho <= bound + 1e-9);
    CHECK(rho == doctest::Approx(eigen_rho(M)).epsilon(1e-9));
    CHECK(perron_root(M).value == doctest::Approx(eigen_rho(M)).epsilon(1e-9));
  }
}

TEST_CASE("spectral radius of sign-indefinite matrices") {
  std::mt19937_64 gen(23);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int n : {2, 3, 4, 6}) {
    for (int k = 0; k < 20; ++k) {
      const Matrix M = Matrix::NullaryExpr(n, n, [&] { return u(gen); });
      CHECK(spectral_radius(M).value == doctest::Approx(eigen_rho(M)).epsilon(1e-9));
    }
  }
}

TEST_CASE("characteristic polynomial") {
  const auto c = characteristic_polynomial(mat2(0.5, 0.1, 0.2, 0.4));
  // lambda^2 - 0.9 lambda + 0.18, ascending
  REQUIRE(c.size() == 3);
  CHECK(c[0] == doctest::Approx(0.18).epsilon(1e-14));
  CHECK(c[1] == doctest::Approx(-0.9).epsilon(1e-14));
  CHECK(c[2] == 1.0);
  const auto roots = polynomial_roots(c);
  REQUIRE(roots.size() == 2);
  CHECK(std::max(std::abs(roots[0]), std::abs(roots[1])) == doctest::Approx(0.6).epsilon(1e-14));

  std::mt19937_64 gen(29);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int n = 1; n <= 4; ++n) {
    const Matrix M = Matrix::NullaryExpr(n, n, [&] { return u(gen); });
    const auto p = characteristic_polynomial(M);
    for (const auto& lambda : M.eigenvalues()) {
      std::complex<double> acc = 0.0, pw = 1.0;
      for (double ci : p) {
        acc += ci * pw;
        pw *= lambda;
      }
      CHECK(std::abs(acc) < 1e-10);
    }
  }
}
