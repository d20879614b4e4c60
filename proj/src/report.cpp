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
#include "csimplex/report.hpp"

#include <cmath>

namespace csimplex {

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::kPass: return "pass";
    case Verdict::kPassSampled: return "pass_sampled";
    case Verdict::kFail: return "fail";
    case Verdict::kInconclusive: return "inconclusive";
  }
  return "inconclusive";
}

bool is_pass(Verdict v) { return v == Verdict::kPass || v == Verdict::kPassSampled; }

nlohmann::json CriterionRecord::to_json() const {
  nlohmann::json j;
  j["id"] = id;
  j["verdict"] = to_string(verdict);
  // JSON has no NaN/inf
  if (std::isfinite(worst)) {
    j["worst"] = worst;
  } else {
    j["worst"] = nullptr;
  }
  j["witness"] = witness;
  j["samples"] = samples;
  j["seed"] = seed;
  if (near_ties > 0) j["near_ties"] = near_ties;
  if (!detail.empty()) j["detail"] = detail;
  return j;
}

Verdict CriteriaReport::overall() const {
  bool any_inconclusive = false, any_sampled = false;
  for (const auto& r : records) {
    if (r.verdict == Verdict::kFail) return Verdict::kFail;
    if (r.verdict == Verdict::kInconclusive) any_inconclusive = true;
    if (r.verdict == Verdict::kPassSampled) any_sampled = true;
  }
  if (any_inconclusive) return Verdict::kInconclusive;
  return any_sampled ? Verdict::kPassSampled : Verdict::kPass;
}

int CriteriaReport::exit_code() const {
  switch (overall()) {
    case Verdict::kFail: return 1;
    case Verdict::kInconclusive: return 2;
    default: return 0;
  }
}

const CriterionRecord* CriteriaReport::find(const std::string& id) const {
  for (const auto& r : records) {
    if (r.id == id) return &r;
  }
  return nullptr;
}

nlohmann::json CriteriaReport::to_json() const {
  nlohmann::json j;
  j["model"] = model;
  j["seed"] = seed;
  j["overall"] = to_string(overall());
  j["records"] = nlohmann::json::array();
  for (const auto& r : records) j["records"].push_back(r.to_json());
  return j;
}

nlohmann::json to_json_array(const Vector& v) {
  nlohmann::json a = nlohmann::json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v[i]);
  return a;
}

nlohmann::json to_json_array(const StateVector& v) { return to_json_array(v.vec()); }

nlohmann::json to_json_array(const Matrix& m) {
  nlohmann::json a = nlohmann::json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) a.push_back(to_json_array(Vector(m.row(i).transpose())));
  return a;
}

}  // namespace csimplex
