// Copyright 2026 The modcert Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef MODCERT_JSON_UTIL_HPP_
#define MODCERT_JSON_UTIL_HPP_

#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

#include <json.hpp>

#include "modcert/errors.hpp"

namespace modcert::json_util {

// Strict field access for configuration documents: wrong shapes become
// ValidationError with the document context in the message, and unknown keys
// are rejected rather than ignored.

inline void reject_unknown_keys(const nlohmann::json& obj,
                                std::initializer_list<const char*> allowed,
                                const std::string& context) {
  for (const auto& [key, unused] : obj.items()) {
    bool known = false;
    for (const char* candidate : allowed) {
      if (key == candidate) {
        known = true;
        break;
      }
    }
    if (!known) {
      throw ValidationError(context + ": unknown key \"" + key + "\"");
    }
  }
}

inline const nlohmann::json& require_field(const nlohmann::json& obj, const char* key,
                                           const std::string& context) {
  if (!obj.is_object() || !obj.contains(key)) {
    throw ValidationError(context + ": missing required key \"" + std::string(key) + "\"");
  }
  return obj.at(key);
}

inline std::string require_string(const nlohmann::json& obj, const char* key,
                                  const std::string& context) {
  const nlohmann::json& field = require_field(obj, key, context);
  if (!field.is_string()) {
    throw ValidationError(context + ": \"" + key + "\" must be a string");
  }
  return field.get<std::string>();
}

inline double require_number(const nlohmann::json& obj, const char* key,
                             const std::string& context) {
  const nlohmann::json& field = require_field(obj, key, context);
  if (!field.is_number()) {
    throw ValidationError(context + ": \"" + key + "\" must be a number");
  }
  return field.get<double>();
}

inline std::int64_t require_integer(const nlohmann::json& obj, const char* key,
                                    const std::string& context) {
  const nlohmann::json& field = require_field(obj, key, context);
  if (!field.is_number_integer()) {
    throw ValidationError(context + ": \"" + key + "\" must be an integer");
  }
  return field.get<std::int64_t>();
}

inline std::vector<double> require_number_list(const nlohmann::json& obj, const char* key,
                                               const std::string& context) {
  const nlohmann::json& field = require_field(obj, key, context);
  if (!field.is_array()) {
    throw ValidationError(context + ": \"" + key + "\" must be an array of numbers");
  }
  std::vector<double> values;
  values.reserve(field.size());
  for (const nlohmann::json& entry : field) {
    if (!entry.is_number()) {
      throw ValidationError(context + ": \"" + key + "\" must contain only numbers");
    }
    values.push_back(entry.get<double>());
  }
  return values;
}

}  // namespace modcert::json_util

#endif  // MODCERT_JSON_UTIL_HPP_
