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
#ifndef CSIMPLEX_REPORT_HPP
#define CSIMPLEX_REPORT_HPP

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "csimplex/order.hpp"

namespace csimplex {

/// kPassSampled is used for every verdict that rests on finitely many
/// samples or grid points; kPass only for exact closed-form checks.
enum class Verdict { kPass, kPassSampled, kFail, kInconclusive };

const char* to_string(Verdict v);
bool is_pass(Verdict v);

/// One checked condition. A failing record always carries the witness that
/// reproduces the violation (a point, a pair of points, a species index or a
/// time, depending on the condition).
struct CriterionRecord {
  std::string id;
  Verdict verdict = Verdict::kInconclusive;
  double worst = 0.0;
  nlohmann::json witness;  // null when there is nothing to show
  std::size_t samples = 0;
  std::uint64_t seed = 0;
  std::size_t near_ties = 0;
  std::string detail;

  nlohmann::json to_json() const;
};

struct CriteriaReport {
  std::string model;
  std::uint64_t seed = 0;
  std::vector<CriterionRecord> records;

  /// Any fail -> fail; else any inconclusive -> inconclusive; else pass
  /// (sampled if any record is sampled).
  Verdict overall() const;
  /// 0 all pass, 1 any fail, 2 inconclusive.
  int exit_code() const;
  const CriterionRecord* find(const std::string& id) const;
  nlohmann::json to_json() const;
};

/// JSON array of the coordinates of a vector.
nlohmann::json to_json_array(const Vector& v);
nlohmann::json to_json_array(const StateVector& v);
nlohmann::json to_json_array(const Matrix& m);

}  // namespace csimplex

#endif  // CSIMPLEX_REPORT_HPP
