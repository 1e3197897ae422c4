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

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <vector>

#include "packcover/model.hpp"

namespace packcover {

// Reads `%%MatrixMarket matrix coordinate {real|integer|pattern} general`
// with 1-based indices. Explicit zeros are skipped; negative values,
// duplicates and malformed lines raise ParseError.
CooMatrix read_matrix_market(std::istream& in);
CooMatrix read_matrix_market(const std::filesystem::path& path);

// Writes the `coordinate real general` header and one entry per line, values
// in shortest round-trip form.
void write_matrix_market(std::ostream& out, const CooMatrix& m);
void write_matrix_market(const std::filesystem::path& path, const CooMatrix& m);

// Whitespace-separated reals.
std::vector<double> read_vector(std::istream& in);
std::vector<double> read_vector(const std::filesystem::path& path);

// Matrix plus optional b / a sidecars; a missing sidecar means all ones.
GeneralInstance load_instance(
    const std::filesystem::path& matrix_path,
    const std::optional<std::filesystem::path>& capacities_path = std::nullopt,
    const std::optional<std::filesystem::path>& objective_path = std::nullopt);

}  // namespace packcover
