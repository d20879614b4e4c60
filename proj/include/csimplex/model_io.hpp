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
#ifndef CSIMPLEX_MODEL_IO_HPP
#define CSIMPLEX_MODEL_IO_HPP

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "csimplex/models.hpp"
#include "csimplex/odeflow.hpp"

namespace csimplex {

/// Malformed model description. field() names the offending JSON path.
class ModelFileError : public std::runtime_error {
 public:
  ModelFileError(const std::string& field, const std::string& what)
      : std::runtime_error(field + ": " + what), field_(field) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

struct LoadedModel {
  std::string name;  // file stem or "<inline>"
  std::shared_ptr<CompetitionModel> model;
  /// Set for periodic_lv only.
  std::optional<PeriodicSystem> system;
};

/// Parses a model description. Parameter errors raised by the model
/// constructors are rethrown as ModelFileError naming the field.
LoadedModel parse_model(const nlohmann::json& doc, const std::string& name = "<inline>");
LoadedModel load_model(const std::string& path);

}  // namespace csimplex

#endif  // CSIMPLEX_MODEL_IO_HPP
