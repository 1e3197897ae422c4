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

#include "packcover/matrix_market.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "packcover/errors.hpp"

namespace packcover {

namespace {

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return s;
}

bool blank(const std::string& line) {
  return std::all_of(line.begin(), line.end(),
                     [](unsigned char c) { return std::isspace(c); });
}

double parse_double(const std::string& token, const std::string& where) {
  double v = 0.0;
  const char* first = token.data();
  const char* last = token.data() + token.size();
  if (!token.empty() && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last) {
    throw ParseError(where + ": cannot parse '" + token + "' as a real");
  }
  return v;
}

std::uint64_t parse_index(const std::string& token, const std::string& where) {
  std::uint64_t v = 0;
  const auto [ptr, ec] =
      std::from_chars(token.data(), token.data() + token.size(), v);
  if (ec != std::errc() || ptr != token.data() + token.size()) {
    throw ParseError(where + ": cannot parse '" + token + "' as an index");
  }
  return v;
}

std::string format_double(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string());
  return in;
}

}  // namespace

CooMatrix read_matrix_market(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw ParseError("empty MatrixMarket input");
  std::istringstream header(line);
  std::string banner, object, format, field, symmetry;
  header >> banner >> object >> format >> field >> symmetry;
  if (banner != "%%MatrixMarket" || lower(object) != "matrix" ||
      lower(format) != "coordinate") {
    throw ParseError("expected '%%MatrixMarket matrix coordinate' header");
  }
  field = lower(field);
  const bool pattern = field == "pattern";
  if (!pattern && field != "real" && field != "integer") {
    throw ParseError("unsupported MatrixMarket field '" + field + "'");
  }
  if (lower(symmetry) != "general") {
    throw ParseError("unsupported MatrixMarket symmetry '" + symmetry + "'");
  }

  std::size_t line_no = 1;
  auto next_data_line = [&](std::string& out) {
    while (std::getline(in, out)) {
      ++line_no;
      if (blank(out) || out.front() == '%') continue;
      return true;
    }
    return false;
  };

  if (!next_data_line(line)) throw ParseError("missing size line");
  std::uint64_t rows = 0, cols = 0, count = 0;
  {
    std::istringstream ss(line);
    std::string a, b, c, extra;
    if (!(ss >> a >> b >> c) || (ss >> extra)) {
      throw ParseError("line " + std::to_string(line_no) +
                       ": size line must hold rows, cols, nnz");
    }
    const std::string where = "line " + std::to_string(line_no);
    rows = parse_index(a, where);
    cols = parse_index(b, where);
    count = parse_index(c, where);
  }

  std::vector<Triplet> entries;
  entries.reserve(static_cast<std::size_t>(std::min<std::uint64_t>(count, 1u << 24)));
  for (std::uint64_t k = 0; k < count; ++k) {
    if (!next_data_line(line)) {
      throw ParseError("expected " + std::to_string(count) + " entries, found " +
                       std::to_string(k));
    }
    const std::string where = "line " + std::to_string(line_no);
    std::istringstream ss(line);
    std::string si, sj, sv, extra;
    if (!(ss >> si >> sj) || (!pattern && !(ss >> sv)) || (ss >> extra)) {
      throw ParseError(where + ": malformed entry");
    }
    const std::uint64_t i = parse_index(si, where);
    const std::uint64_t j = parse_index(sj, where);
    if (i == 0 || j == 0 || i > rows || j > cols) {
      throw ParseError(where + ": index out of range (indices are 1-based)");
    }
    const double v = pattern ? 1.0 : parse_double(sv, where);
    if (!std::isfinite(v)) throw ParseError(where + ": non-finite value");
    if (v < 0.0) throw ParseError(where + ": negative value");
    if (v == 0.0) continue;
    entries.push_back({static_cast<Index>(i - 1), static_cast<Index>(j - 1), v});
  }
  if (next_data_line(line)) {
    throw ParseError("line " + std::to_string(line_no) +
                     ": more entries than declared");
  }
  try {
    return CooMatrix(rows, cols, std::move(entries));
  } catch (const InvalidInstance& e) {
    throw ParseError(e.what());
  }
}

CooMatrix read_matrix_market(const std::filesystem::path& path) {
  auto in = open_input(path);
  return read_matrix_market(in);
}

void write_matrix_market(std::ostream& out, const CooMatrix& m) {
  out << "%%MatrixMarket matrix coordinate real general\n";
  out << m.rows() << ' ' << m.cols() << ' ' << m.nnz() << '\n';
  for (const Triplet& t : m.entries()) {
    out << (t.row + 1) << ' ' << (t.col + 1) << ' ' << format_double(t.value)
        << '\n';
  }
}

void write_matrix_market(const std::filesystem::path& path, const CooMatrix& m) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  write_matrix_market(out, m);
  if (!out) throw Error("error writing " + path.string());
}

std::vector<double> read_vector(std::istream& in) {
  std::vector<double> out;
  std::string token;
  while (in >> token) {
    out.push_back(parse_double(token, "vector entry " + std::to_string(out.size())));
  }
  return out;
}

std::vector<double> read_vector(const std::filesystem::path& path) {
  auto in = open_input(path);
  return read_vector(in);
}

GeneralInstance load_instance(
    const std::filesystem::path& matrix_path,
    const std::optional<std::filesystem::path>& capacities_path,
    const std::optional<std::filesystem::path>& objective_path) {
  GeneralInstance inst = unit_instance(read_matrix_market(matrix_path));
  if (capacities_path) inst.capacities = read_vector(*capacities_path);
  if (objective_path) inst.objective = read_vector(*objective_path);
  return inst;
}

}  // namespace packcover
