// Copyright 2026 The packcover Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "packcover/report_json.hpp"

namespace packcover {

nlohmann::json to_json(const OpCounters& c) {
  return {
      {"iterations", c.iterations},
      {"empty_iterations", c.empty_iterations},
      {"increments", c.increments},
      {"traversed", c.traversed},
      {"deletions", c.deletions},
      {"retired_columns", c.retired_columns},
      {"sampler_updates", c.sampler_updates},
  };
}

nlohmann::json to_json(const Certificate& c) {
  nlohmann::json j = {
      {"max_violation", c.max_violation},
      {"min_slack", c.min_slack},
      {"primal_value", c.primal_value},
      {"dual_value", c.dual_value},
      {"ratio", c.ratio},
      {"target", c.target},
      {"pass", c.pass},
  };
  if (c.oracle_value) j["oracle_value"] = *c.oracle_value;
  if (c.oracle_gap) j["oracle_gap"] = *c.oracle_gap;
  return j;
}

nlohmann::json to_json(const PropertyCheck& c) {
  nlohmann::json j = {
      {"name", c.name},
      {"sample_size", c.sample_size},
      {"statistic", c.statistic},
      {"threshold", c.threshold},
      {"pass", c.pass},
  };
  if (!c.detail.empty()) j["detail"] = c.detail;
  return j;
}

nlohmann::json to_json(const StatReport& r) {
  nlohmann::json checks = nlohmann::json::array();
  for (const PropertyCheck& c : r.checks) checks.push_back(to_json(c));
  return {{"pass", r.pass()}, {"checks", checks}};
}

nlohmann::json to_json(const OracleResult& r) {
  nlohmann::json j = {
      {"status", std::string(to_string(r.status))},
      {"pivots", r.pivots},
  };
  if (r.status == OracleStatus::kOptimal) {
    j["value"] = r.value;
    j["primal"] = r.primal;
    j["dual"] = r.dual;
  }
  return j;
}

}  // namespace packcover
