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
#include <filesystem>
#include <fstream>
#include <sstream>

#include "csimplex/cli.hpp"
#include "csimplex/model_io.hpp"

namespace fs = std::filesystem;
using namespace csimplex;

namespace {

const std::string kModels = CSIMPLEX_MODELS_DIR;

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "csimplex");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string model(const std::string& name) { return kModels + "/" + name + ".json"; }

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "csimplex_cli_tests";
  fs::create_directories(dir);
  return dir / name;
}

std::vector<std::vector<double>> csv_numbers(const std::string& text) {
  std::vector<std::vector<double>> rows;
  std::istringstream in(text);
  std::string line;
  std::getline(in, line);  // header
  while (std::getline(in, line)) {
    std::vector<double> row;
    std::istringstream cells(line);
    std::string cell;
    while (std::getline(cells, cell, ',')) row.push_back(std::stod(cell));
    rows.push_back(row);
  }
  return rows;
}

}  // namespace

TEST_CASE("exit codes on the golden model set") {
  CHECK(run({"check", "--model", model("may2"), "--grid", "16", "--seed", "42"}).code == 0);
  CHECK(run({"check", "--model", model("leslie_gower2")}).code == 0);
  CHECK(run({"check", "--model", model("neural2")}).code == 0);
  CHECK(run({"check", "--model", model("neural2_gain2")}).code == 1);
  CHECK(run({"check", "--model", model("may1_b05")}).code == 0);
  CHECK(run({"check", "--model", model("periodic2"), "--samples", "100"}).code == 2);
}

TEST_CASE("scalar map beyond the threshold") {
  const Run r = run({"check", "--model", model("may1_b3")});
  CHECK(r.code == 1);
  const auto j = nlohmann::json::parse(r.out);
  for (const auto& rec : j["records"]) {
    if (rec["id"] == "Eq4") CHECK(rec["verdict"] == "fail");
    if (rec["id"] == "model_criterion") {
      CHECK(rec["verdict"] == "fail");
      CHECK(rec["detail"].get<std::string>().find("no carrying simplex") != std::string::npos);
    }
  }
}

TEST_CASE("malformed model files exit 64 and name the field") {
  Run r = run({"check", "--model", model("bad_negative_diag")});
  CHECK(r.code == 64);
  CHECK(r.err.find("A[1][1]") != std::string::npos);
  r = run({"check", "--model", model("bad_unknown_field")});
  CHECK(r.code == 64);
  CHECK(r.err.find("gamma") != std::string::npos);
  CHECK(run({"check", "--model", kModels + "/missing.json"}).code == 64);
  CHECK(run({"check"}).code == 64);
  CHECK(run({"frobnicate"}).code == 64);
  CHECK(run({"simplex", "--model", model("may2"), "--tol", "-1"}).code == 64);
}

TEST_CASE("model parsing") {
  using nlohmann::json;
  auto field_of = [](const json& doc) {
    try {
      parse_model(doc);
    } catch (const ModelFileError& e) {
      return e.field();
    }
    return std::string("<none>");
  };
  CHECK(field_of(json{{"n", 1}, {"B", {1}}, {"A", {{1}}}}) == "type");
  CHECK(field_of(json{{"type", "may_oster"}, {"n", 2}, {"B", {1}}, {"A", {{1}}}}) == "B");
  CHECK(field_of(json{{"type", "may_oster"}, {"n", 1}, {"B", {1}}, {"A", {{"x"}}}}) == "A[0][0]");
  CHECK(field_of(json{{"type", "neural_net"}, {"n", 1}, {"B", {1}}, {"A", {{1}}}, {"gamma", 1},
                      {"transfer", "relu"}}) == "transfer");
  CHECK(field_of(json{{"type", "periodic_lv"}, {"n", 1},
                      {"fourier", {{"B", {{{"const", 1}, {"tan", {1}}}}}, {"A", {{1}}}}}}) ==
        "fourier.B[0].tan");
  CHECK(field_of(json{{"type", "periodic_lv"}, {"n", 1}, {"steps_per_period", 8},
                      {"fourier", {{"B", {1}}, {"A", {{1}}}}}}) == "steps_per_period");

  const LoadedModel lm = parse_model(json::parse(slurp(model("periodic2"))));
  REQUIRE(lm.system.has_value());
  CHECK(lm.system->B_series(0)(0.0) == doctest::Approx(1.3));
  CHECK(lm.model->family() == "periodic_lv");
  const LoadedModel tanh_nn = parse_model(json{{"type", "neural_net"}, {"n", 1}, {"B", {0.5}},
                                               {"A", {{1}}}, {"gamma", 1}, {"transfer", "tanh"}});
  CHECK(tanh_nn.model->family() == "neural_net");
}

TEST_CASE("check report echoes the seed") {
  const auto j = nlohmann::json::parse(run({"check", "--model", model("may2"), "--seed", "7"}).out);
  CHECK(j["seed"] == 7);
  CHECK(j["run"]["seed"] == 7);
  CHECK(j["overall"] == "pass_sampled");
  const Run csv = run({"check", "--model", model("may2"), "--format", "csv"});
  CHECK(csv.out.rfind("id,verdict,worst,samples,seed\n", 0) == 0);
}

TEST_CASE("identical flags give byte-identical outputs") {
  const std::string a = run({"check", "--model", model("may2"), "--seed", "42"}).out;
  const std::string b = run({"check", "--model", model("may2"), "--seed", "42"}).out;
  CHECK(a == b);
  const fs::path p1 = scratch("s1.csv"), p2 = scratch("s2.csv");
  CHECK(run({"simplex", "--model", model("may2"), "--out", p1.string()}).code != 64);
  CHECK(run({"simplex", "--model", model("may2"), "--out", p2.string()}).code != 64);
  CHECK(slurp(p1) == slurp(p2));
  CHECK(slurp(p1.string() + ".json").size() > 0);
  CHECK(slurp(p1.string() + ".json") == slurp(p2.string() + ".json"));
}

TEST_CASE("simplex output") {
  SUBCASE("scalar map") {
    const fs::path p = scratch("b05.csv");
    CHECK(run({"simplex", "--model", model("may1_b05"), "--out", p.string()}).code == 0);
    const auto rows = csv_numbers(slurp(p));
    REQUIRE(rows.size() == 1);
    CHECK(rows[0][1] == doctest::Approx(0.5).epsilon(1e-9));
    const auto meta = nlohmann::json::parse(slurp(p.string() + ".json"));
    for (const char* key : {"iterations", "final_delta", "m", "tol", "seed", "verification"}) {
      CHECK(meta.contains(key));
    }
  }
  SUBCASE("May 2-D surface") {
    const fs::path p = scratch("may2.csv");
    const Run r = run({"simplex", "--model", model("may2"), "--grid", "32768", "--tol", "1e-9",
                       "--out", p.string()});
    CHECK(r.code == 0);
    const std::string text = slurp(p);
    CHECK(text.rfind("d_1,d_2,r,x_1,x_2\n", 0) == 0);
    const auto rows = csv_numbers(text);
    CHECK(rows.size() == 32769);
    CHECK(rows.front()[3] == 0.0);
    CHECK(rows.front()[4] == doctest::Approx(0.4).epsilon(1e-8));
    CHECK(rows.back()[3] == doctest::Approx(0.5).epsilon(1e-8));
    const auto meta = nlohmann::json::parse(slurp(p.string() + ".json"));
    CHECK(meta["verification_pass"] == true);
  }
  SUBCASE("Leslie-Gower surface") {
    const fs::path p = scratch("lg.csv");
    CHECK(run({"simplex", "--model", model("leslie_gower2"), "--grid", "16384", "--tol", "1e-9",
               "--out", p.string()})
              .code == 0);
  }
  SUBCASE("refuses a model that fails its criteria unless forced") {
    CHECK(run({"simplex", "--model", model("may1_b3")}).code == 1);
  }
  SUBCASE("iteration cap reports non-convergence") {
    const fs::path p = scratch("capped.csv");
    CHECK(run({"simplex", "--model", model("may2"), "--max-iter", "3", "--out", p.string()}).code ==
          3);
    CHECK(nlohmann::json::parse(slurp(p.string() + ".json"))["converged"] == false);
  }
}

TEST_CASE("simulate") {
  SUBCASE("scalar orbit from 2 drops below 0.5, then climbs to it") {
    const auto rows = csv_numbers(
        run({"simulate", "--model", model("may1_b05"), "--x0", "2", "--steps", "60"}).out);
    REQUIRE(rows.size() == 61);
    CHECK(rows[1][1] == doctest::Approx(2.0 * std::exp(-1.5)).epsilon(1e-15));
    for (std::size_t k = 2; k < rows.size(); ++k) {
      CHECK(rows[k][1] >= rows[k - 1][1]);
      CHECK(rows[k][1] <= 0.5);
    }
    CHECK(rows.back()[1] == doctest::Approx(0.5).epsilon(1e-9));
  }
  SUBCASE("scalar orbit that stays above 0.5 decreases") {
    const auto rows = csv_numbers(
        run({"simulate", "--model", model("may1_b05"), "--x0", "0.6", "--steps", "60"}).out);
    for (std::size_t k = 1; k < rows.size(); ++k) {
      CHECK(rows[k][1] <= rows[k - 1][1]);
      CHECK(rows[k][1] >= 0.5);
    }
  }
  SUBCASE("origin stays at the origin") {
    const auto rows =
        csv_numbers(run({"simulate", "--model", model("may2"), "--x0", "0,0", "--steps", "5"}).out);
    for (const auto& r : rows) CHECK((r[1] == 0.0 && r[2] == 0.0));
  }
  SUBCASE("periodic system") {
    const Run r = run({"simulate", "--model", model("periodic2"), "--x0", "0.1,0.1", "--steps", "5"});
    CHECK(r.code == 0);
    CHECK(r.out.rfind("t,u_1,u_2\n", 0) == 0);
    for (const auto& row : csv_numbers(r.out)) {
      CHECK(row[1] > 0.0);
      CHECK(row[1] < 10.0);
      CHECK(row[2] > 0.0);
      CHECK(row[2] < 10.0);
    }
  }
  SUBCASE("bad start") {
    CHECK(run({"simulate", "--model", model("may2"), "--x0", "-1,0"}).code == 64);
    CHECK(run({"simulate", "--model", model("may2"), "--x0", "1"}).code == 64);
  }
}

TEST_CASE("sweep1d") {
  const Run r = run({"sweep1d", "--b-min", "0.5", "--b-max", "2.5", "--count", "3"});
  CHECK(r.code == 0);
  std::istringstream in(r.out);
  std::string header, l1, l2, l3;
  std::getline(in, header);
  std::getline(in, l1);
  std::getline(in, l2);
  std::getline(in, l3);
  CHECK(header == "b,class,points");
  CHECK(l1.rfind("0.5,converges,", 0) == 0);
  CHECK(l2.rfind("1.5,converges,", 0) == 0);
  CHECK(l3.rfind("2.5,periodic,", 0) == 0);
}

TEST_CASE("wangjiang") {
  Run r = run({"wangjiang", "--model", model("periodic2"), "--pairs", "20"});
  CHECK(r.code == 0);
  CHECK(nlohmann::json::parse(r.out)["verdict"] == "pass");
  r = run({"wangjiang", "--model", model("periodic_not_competitive")});
  CHECK(r.code == 1);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["refused"] == true);
  CHECK(j["A1"]["witness"]["j"] == 2);
  CHECK(run({"wangjiang", "--model", model("may2")}).code == 64);
}

TEST_CASE("CSV numbers round-trip") {
  for (double v : {0.1, 1.0 / 3.0, 6.02214076e23, 1e-300, 0.0}) {
    CHECK(std::stod(cli::format_number(v)) == v);
  }
}
