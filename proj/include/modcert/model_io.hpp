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

#ifndef MODCERT_MODEL_IO_HPP_
#define MODCERT_MODEL_IO_HPP_

#include <filesystem>

#include <json.hpp>

#include "modcert/joint_model.hpp"

namespace modcert {

/**
 * Build a joint model from its json specification. Three forms:
 *
 *   {"type": "independent", "marginals": [p_1, ..., p_T]}
 *   {"type": "common_cause", "q": q, "base_rates": [...], "fault_rates": [...]}
 *   {"type": "table", "indicator_count": T, "probabilities": [... 2^T ...]}
 *
 * Unknown keys are rejected.
 */
JointIndicatorModel parse_model_spec(const nlohmann::json& doc);

JointIndicatorModel load_model_file(const std::filesystem::path& path);

}  // namespace modcert

#endif  // MODCERT_MODEL_IO_HPP_
