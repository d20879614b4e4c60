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
#include "csimplex/model_io.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>

namespace csimplex {

namespace {

using nlohmann::json;

double number(const json& j, const std::string& field) {
  if (!j.is_number()) throw ModelFileError(field, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) throw ModelFileError(field, "not finite");
  return v;
}

const json& require(const json& doc, const std::string& key) {
  if (!doc.contains(key)) throw ModelFileError(key, "missing");
  return doc.at(key);
}

Vector vector_field(const json& doc, const std::string& key, std::size_t n) {
  const json& j = require(doc, key);
  if (!j.is_array() || j.size() != n) {
    throw ModelFileError(key, "expected an array of " + std::to_string(n) + " numbers");
  }
  Vector v(static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) {
    v[static_cast<Eigen::Index>(i)] = number(j[i], key + "[" + std::to_string(i) + "]");
  }
  return v;
}

Matrix matrix_field(const json& doc, const std::string& key, std::size_t n) {
  const json& j = require(doc, key);
  if (!j.is_array() || j.size() != n) {
    throw ModelFileError(key, "expected " + std::to_string(n) + " rows");
  }
  Matrix m(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) {
    const std::string row = key + "[" + std::to_string(i) + "]";
    if (!j[i].is_array() || j[i].size() != n) {
      throw ModelFileError(row, "expected " + std::to_string(n) + " numbers");
    }
    for (std::size_t k = 0; k < n; ++k) {
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) =
          number(j[i][k], row + "[" + std::to_string(k) + "]");
    }
  }
  return m;
}

void only_fields(const json& doc, const std::set<std::string>& allowed, const std::string& where) {
  for (const auto& [key, value] : doc.items()) {
    if (!allowed.count(key)) throw ModelFileError(where + key, "unknown field");
  }
}

/// Parameter errors lead with the offending name, e.g. "A[1][1] must be > 0".
template <class F>
auto construct(const std::string& fallback, F make) {
  try {
    return make();
  } catch (const ParameterError& e) {
    const std::string msg = e.what();
    const auto space = msg.find(' ');
    throw ModelFileError(space == std::string::npos ? fallback : msg.substr(0, space), msg);
  }
}

std::vector<double> series_terms(const json& j, const std::string& field) {
  if (!j.is_array()) throw ModelFileError(field, "expected an array");
  std::vector<double> out;
  for (std::size_t k = 0; k < j.size(); ++k) {
    out.push_back(number(j[k], field + "[" + std::to_string(k) + "]"));
  }
  return out;
}

FourierSeries series(const json& j, const std::string& field) {
  if (j.is_number()) return FourierSeries::constant_value(number(j, field));
  if (!j.is_object()) throw ModelFileError(field, "expected {\"const\", \"cos\", \"sin\"}");
  only_fields(j, {"const", "cos", "sin"}, field + ".");
  FourierSeries s;
  s.constant = j.contains("const") ? number(j["const"], field + ".const") : 0.0;
  if (j.contains("cos")) s.cos = series_terms(j["cos"], field + ".cos");
  if (j.contains("sin")) s.sin = series_terms(j["sin"], field + ".sin");
  return s;
}

PeriodicSystem periodic_system(const json& doc, std::size_t n) {
  const json& f = require(doc, "fourier");
  if (!f.is_object()) throw ModelFileError("fourier", "expected an object");
  only_fields(f, {"B", "A"}, "fourier.");
  const json& b = require(f, "B");
  if (!b.is_array() || b.size() != n) {
    throw ModelFileError("fourier.B", "expected " + std::to_string(n) + " series");
  }
  std::vector<FourierSeries> B, A;
  for (std::size_t i = 0; i < n; ++i) B.push_back(series(b[i], "fourier.B[" + std::to_string(i) + "]"));
  const json& a = require(f, "A");
  if (!a.is_array() || a.size() != n) {
    throw ModelFileError("fourier.A", "expected " + std::to_string(n) + " rows");
  }
  for (std::size_t i = 0; i < n; ++i) {
    const std::string row = "fourier.A[" + std::to_string(i) + "]";
    if (!a[i].is_array() || a[i].size() != n) {
      throw ModelFileError(row, "expected " + std::to_string(n) + " series");
    }
    for (std::size_t k = 0; k < n; ++k) A.push_back(series(a[i][k], row + "[" + std::to_string(k) + "]"));
  }
  return PeriodicSystem(std::move(B), std::move(A));
}

}  // namespace

LoadedModel parse_model(const json& doc, const std::string& name) {
  if (!doc.is_object()) throw ModelFileError("<root>", "expected a JSON object");
  const json& type_j = require(doc, "type");
  if (!type_j.is_string()) throw ModelFileError("type", "expected a string");
  const std::string type = type_j.get<std::string>();
  const json& n_j = require(doc, "n");
  if (!n_j.is_number_integer() || n_j.get<long long>() < 1) {
    throw ModelFileError("n", "expected an integer >= 1");
  }
  const auto n = static_cast<std::size_t>(n_j.get<long long>());

  LoadedModel out;
  out.name = name;
  if (type == "may_oster") {
    only_fields(doc, {"type", "n", "B", "A"}, "");
    const Vector B = vector_field(doc, "B", n);
    const Matrix A = matrix_field(doc, "A", n);
    out.model = construct("A", [&] { return std::make_shared<MayOsterModel>(B, A); });
  } else if (type == "leslie_gower") {
    only_fields(doc, {"type", "n", "C", "A"}, "");
    const Vector C = vector_field(doc, "C", n);
    const Matrix A = matrix_field(doc, "A", n);
    out.model = construct("A", [&] { return std::make_shared<LeslieGowerModel>(C, A); });
  } else if (type == "neural_net") {
    only_fields(doc, {"type", "n", "B", "A", "gamma", "transfer"}, "");
    const Vector B = vector_field(doc, "B", n);
    const Matrix A = matrix_field(doc, "A", n);
    const double gamma = number(require(doc, "gamma"), "gamma");
    if (!(gamma > 0.0)) throw ModelFileError("gamma", "must be > 0");
    std::string transfer = "softplus";
    if (doc.contains("transfer")) {
      if (!doc["transfer"].is_string()) throw ModelFileError("transfer", "expected a string");
      transfer = doc["transfer"].get<std::string>();
    }
    if (transfer != "softplus" && transfer != "tanh") {
      throw ModelFileError("transfer", "expected \"softplus\" or \"tanh\"");
    }
    const Transfer sigma = transfer == "tanh" ? Transfer::tanh(gamma) : Transfer::softplus(gamma);
    out.model = construct("A", [&] { return std::make_shared<NeuralNetModel>(B, A, sigma); });
  } else if (type == "periodic_lv") {
    only_fields(doc, {"type", "n", "fourier", "steps_per_period"}, "");
    IntegrationConfig config;
    if (doc.contains("steps_per_period")) {
      const json& s = doc["steps_per_period"];
      if (!s.is_number_integer() || s.get<long long>() < 64) {
        throw ModelFileError("steps_per_period", "expected an integer >= 64");
      }
      config.steps_per_period = static_cast<int>(s.get<long long>());
    }
    out.system = construct("fourier", [&] { return periodic_system(doc, n); });
    out.model = construct("steps_per_period",
                          [&] { return std::make_shared<PoincareModel>(*out.system, config); });
  } else {
    throw ModelFileError("type", "unknown model type \"" + type + "\"");
  }
  return out;
}

LoadedModel load_model(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ModelFileError("<file>", "cannot read " + path);
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ModelFileError("<file>", std::string("invalid JSON: ") + e.what());
  }
  return parse_model(doc, std::filesystem::path(path).stem().string());
}

}  // namespace csimplex
