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

#pragma once

#include <nlohmann/json.hpp>

#include "packcover/oracle.hpp"
#include "packcover/solver.hpp"
#include "packcover/verify.hpp"

namespace packcover {

nlohmann::json to_json(const OpCounters& c);
nlohmann::json to_json(const Certificate& c);
nlohmann::json to_json(const PropertyCheck& c);
nlohmann::json to_json(const StatReport& r);
nlohmann::json to_json(const OracleResult& r);

}  // namespace packcover
