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

#include "modcert/model_io.hpp"

#include <fstream>
#include <string>
#include <vector>

#include "modcert/json_util.hpp"

namespace modcert {

JointIndicatorModel parse_model_spec(const nlohmann::json& doc) {
  if (!doc.is_object()) {
    throw ValidationError("model specification must be a json object");
  }
  const std::string type = json_util::require_string(doc, "type", "model");

  if (type == "independent") {
    json_util::reject_unknown_keys(doc, {"type", "marginals"}, "model");
    return model_independent(json_util::require_number_list(doc, "marginals", "model"));
  }
  if (type == "common_cause") {
    json_util::reject_unknown_keys(doc, {"type", "q", "base_rates", "fault_rates"}, "model");
    return model_common_cause(json_util::require_number(doc, "q", "model"),
                              json_util::require_number_list(doc, "base_rates", "model"),
                              json_util::require_number_list(doc, "fault_rates", "model"));
  }
  if (type == "table") {
    json_util::reject_unknown_keys(doc, {"type", "indicator_count", "probabilities"}, "model");
    const std::int64_t count = json_util::require_integer(doc, "indicator_count", "model");
    return JointIndicatorModel(static_cast<int>(count),
                               json_util::require_number_list(doc, "probabilities", "model"));
  }
  throw ValidationError("unknown model type \"" + type +
                        "\": expected independent, common_cause or table");
}

JointIndicatorModel load_model_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw ValidationError("cannot open model file \"" + path.string() + "\"");
  }
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& err) {
    throw ValidationError("model file \"" + path.string() + "\" is not valid json: " + err.what());
  }
  return parse_model_spec(doc);
}

}  // namespace modcert
