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

#include "packcover/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "packcover/errors.hpp"
#include "packcover/rng.hpp"

namespace packcover {

CooMatrix::CooMatrix(std::size_t rows, std::size_t cols,
                     std::vector<Triplet> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
  if (rows_ > std::numeric_limits<Index>::max() - 1 ||
      cols_ > std::numeric_limits<Index>::max() - 1) {
    throw InvalidInstance("matrix dimensions exceed index range");
  }
  for (const Triplet& t : entries_) {
    if (t.row >= rows_ || t.col >= cols_) {
      throw InvalidInstance("entry (" + std::to_string(t.row) + ", " +
                            std::to_string(t.col) + ") out of range");
    }
    if (!std::isfinite(t.value) || !(t.value > 0.0)) {
      throw InvalidInstance("entry (" + std::to_string(t.row) + ", " +
                            std::to_string(t.col) +
                            ") must be finite and positive");
    }
  }
  std::sort(entries_.begin(), entries_.end(),
            [](const Triplet& a, const Triplet& b) {
              return a.row != b.row ? a.row < b.row : a.col < b.col;
            });
  const auto dup = std::adjacent_find(
      entries_.begin(), entries_.end(), [](const Triplet& a, const Triplet& b) {
        return a.row == b.row && a.col == b.col;
      });
  if (dup != entries_.end()) {
    throw InvalidInstance("duplicate entry (" + std::to_string(dup->row) +
                          ", " + std::to_string(dup->col) + ")");
  }
}

std::vector<double> CooMatrix::column_max() const {
  std::vector<double> out(cols_, 0.0);
  for (const Triplet& t : entries_) out[t.col] = std::max(out[t.col], t.value);
  return out;
}

std::vector<double> CooMatrix::row_max() const {
  std::vector<double> out(rows_, 0.0);
  for (const Triplet& t : entries_) out[t.row] = std::max(out[t.row], t.value);
  return out;
}

std::vector<std::size_t> CooMatrix::row_counts() const {
  std::vector<std::size_t> out(rows_, 0);
  for (const Triplet& t : entries_) ++out[t.row];
  return out;
}

std::vector<std::size_t> CooMatrix::column_counts() const {
  std::vector<std::size_t> out(cols_, 0);
  for (const Triplet& t : entries_) ++out[t.col];
  return out;
}

double CooMatrix::max_value() const {
  double m = 0.0;
  for (const Triplet& t : entries_) m = std::max(m, t.value);
  return m;
}

std::vector<double> CooMatrix::to_dense() const {
  std::vector<double> out(rows_ * cols_, 0.0);
  for (const Triplet& t : entries_) out[t.row * cols_ + t.col] = t.value;
  return out;
}

namespace {

void check_positive(const std::vector<double>& v, std::size_t expected,
                    const char* name) {
  if (v.size() != expected) {
    throw InvalidInstance(std::string(name) + " has " +
                          std::to_string(v.size()) + " entries, expected " +
                          std::to_string(expected));
  }
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (!std::isfinite(v[k]) || !(v[k] > 0.0)) {
      throw InvalidInstance(std::string(name) + "[" + std::to_string(k) +
                            "] must be finite and positive");
    }
  }
}

}  // namespace

NormalizedInstance normalize(const GeneralInstance& inst) {
  const CooMatrix& a = inst.matrix;
  if (a.rows() == 0 || a.cols() == 0) {
    throw InvalidInstance("instance must have at least one row and column");
  }
  check_positive(inst.capacities, a.rows(), "capacities");
  check_positive(inst.objective, a.cols(), "objective");

  const auto col_counts = a.column_counts();
  for (std::size_t j = 0; j < col_counts.size(); ++j) {
    if (col_counts[j] == 0) {
      throw EmptyColumnError("column " + std::to_string(j) +
                             " has no nonzero entries (packing LP unbounded)");
    }
  }

  NormalizedInstance out;
  NormalizationRecord& rec = out.record;
  rec.capacities = inst.capacities;
  rec.objective = inst.objective;
  rec.original_rows = a.rows();

  const auto row_counts = a.row_counts();
  std::vector<Index> new_index(a.rows(), 0);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    if (row_counts[i] == 0) {
      rec.warnings.push_back("dropped all-zero row " + std::to_string(i));
      continue;
    }
    new_index[i] = static_cast<Index>(rec.kept_rows.size());
    rec.kept_rows.push_back(static_cast<Index>(i));
  }

  std::vector<Triplet> entries;
  entries.reserve(a.nnz());
  for (const Triplet& t : a.entries()) {
    const double v = t.value / (inst.capacities[t.row] * inst.objective[t.col]);
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw InvalidInstance("normalized entry (" + std::to_string(t.row) +
                            ", " + std::to_string(t.col) +
                            ") leaves the double range");
    }
    entries.push_back({new_index[t.row], t.col, v});
  }
  out.matrix = CooMatrix(rec.kept_rows.size(), a.cols(), std::move(entries));
  return out;
}

GeneralInstance unit_instance(CooMatrix matrix) {
  GeneralInstance inst;
  inst.capacities.assign(matrix.rows(), 1.0);
  inst.objective.assign(matrix.cols(), 1.0);
  inst.matrix = std::move(matrix);
  return inst;
}

CooMatrix truncate(const CooMatrix& m, double eps) {
  if (!(eps > 0.0 && eps < 1.0)) {
    throw PreconditionError("truncate: eps must lie in (0, 1)");
  }
  if (m.nnz() == 0) throw PreconditionError("truncate: empty matrix");
  const auto col_max = m.column_max();
  double beta = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < col_max.size(); ++j) {
    if (col_max[j] == 0.0) {
      throw PreconditionError("truncate: column " + std::to_string(j) +
                              " is empty");
    }
    beta = std::min(beta, col_max[j]);
  }
  const double c = static_cast<double>(m.cols());
  const double floor_value = beta * eps / c;
  const double cap = beta * c / eps;

  std::vector<Triplet> kept;
  kept.reserve(m.nnz());
  for (const Triplet& t : m.entries()) {
    if (t.value < floor_value) continue;
    kept.push_back({t.row, t.col, std::min(cap, t.value)});
  }
  CooMatrix out(m.rows(), m.cols(), std::move(kept));
  const auto counts = out.column_counts();
  for (std::size_t j = 0; j < counts.size(); ++j) {
    if (counts[j] == 0) {
      throw InternalError("truncate emptied column " + std::to_string(j));
    }
  }
  return out;
}

std::vector<double> multiply(const CooMatrix& m, std::span<const double> x) {
  if (x.size() != m.cols()) {
    throw InvalidInstance("multiply: vector length " + std::to_string(x.size()) +
                          " != cols " + std::to_string(m.cols()));
  }
  std::vector<double> out(m.rows(), 0.0);
  for (const Triplet& t : m.entries()) out[t.row] += t.value * x[t.col];
  return out;
}

std::vector<double> multiply_transposed(const CooMatrix& m,
                                        std::span<const double> xhat) {
  if (xhat.size() != m.rows()) {
    throw InvalidInstance("multiply_transposed: vector length " +
                          std::to_string(xhat.size()) + " != rows " +
                          std::to_string(m.rows()));
  }
  std::vector<double> out(m.cols(), 0.0);
  for (const Triplet& t : m.entries()) out[t.col] += t.value * xhat[t.row];
  return out;
}

Products exact_products(const CooMatrix& m, std::span<const double> x,
                        std::span<const double> xhat) {
  if (x.size() != m.cols() || xhat.size() != m.rows()) {
    throw InvalidInstance("exact_products: dimension mismatch");
  }
  Products p{std::vector<double>(m.rows(), 0.0),
             std::vector<double>(m.cols(), 0.0)};
  for (const Triplet& t : m.entries()) {
    p.mx[t.row] += t.value * x[t.col];
    p.mtxh[t.col] += t.value * xhat[t.row];
  }
  return p;
}

GeneralInstance generate_random(std::size_t rows, std::size_t cols,
                                double density, std::uint64_t seed) {
  if (rows == 0 || cols == 0) {
    throw PreconditionError("generate_random: rows and cols must be >= 1");
  }
  if (!(density > 0.0 && density <= 1.0)) {
    throw PreconditionError("generate_random: density must lie in (0, 1]");
  }
  Rng rng(seed);
  std::vector<std::uint8_t> cell(rows * cols, 0);
  for (auto& v : cell) v = rng.uniform() < density ? 1 : 0;

  auto row_empty = [&](std::size_t i) {
    for (std::size_t j = 0; j < cols; ++j) {
      if (cell[i * cols + j]) return false;
    }
    return true;
  };
  auto col_empty = [&](std::size_t j) {
    for (std::size_t i = 0; i < rows; ++i) {
      if (cell[i * cols + j]) return false;
    }
    return true;
  };
  // Redrawing an empty line can only add ones, so fixing rows first and
  // columns second never re-empties a row.
  for (std::size_t i = 0; i < rows; ++i) {
    while (row_empty(i)) {
      for (std::size_t j = 0; j < cols; ++j) {
        cell[i * cols + j] = rng.uniform() < density ? 1 : 0;
      }
    }
  }
  for (std::size_t j = 0; j < cols; ++j) {
    while (col_empty(j)) {
      for (std::size_t i = 0; i < rows; ++i) {
        cell[i * cols + j] = rng.uniform() < density ? 1 : 0;
      }
    }
  }

  std::vector<Triplet> entries;
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) {
      if (cell[i * cols + j]) {
        entries.push_back({static_cast<Index>(i), static_cast<Index>(j), 1.0});
      }
    }
  }
  return unit_instance(CooMatrix(rows, cols, std::move(entries)));
}

int floor_log2(double v) { return std::ilogb(v); }

}  // namespace packcover
