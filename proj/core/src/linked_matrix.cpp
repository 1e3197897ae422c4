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

#include "packcover/linked_matrix.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "packcover/errors.hpp"

namespace packcover {

LinkedMatrix::LinkedMatrix(const CooMatrix& m)
    : row_head_(m.rows(), kNil),
      row_tail_(m.rows(), kNil),
      col_head_(m.cols(), kNil),
      col_tail_(m.cols(), kNil),
      row_len_(m.rows(), 0),
      col_max_(m.cols(), 0.0),
      col_deleted_(m.cols(), 0) {
  cells_.reserve(m.nnz());
  for (const Triplet& t : m.entries()) {
    cells_.push_back({t.row, t.col, t.value, kNil, kNil, kNil, kNil});
    col_max_[t.col] = std::max(col_max_[t.col], t.value);
  }
  std::vector<Index> order(cells_.size());
  std::iota(order.begin(), order.end(), Index{0});
  relink_in_order(order);
}

void LinkedMatrix::relink_in_order(const std::vector<Index>& order) {
  std::fill(row_head_.begin(), row_head_.end(), kNil);
  std::fill(row_tail_.begin(), row_tail_.end(), kNil);
  std::fill(col_head_.begin(), col_head_.end(), kNil);
  std::fill(col_tail_.begin(), col_tail_.end(), kNil);
  std::fill(row_len_.begin(), row_len_.end(), 0);
  live_nnz_ = 0;
  for (const Index id : order) {
    Cell& c = cells_[id];
    c.col_prev = col_tail_[c.col];
    c.col_next = kNil;
    if (col_tail_[c.col] == kNil) {
      col_head_[c.col] = id;
    } else {
      cells_[col_tail_[c.col]].col_next = id;
    }
    col_tail_[c.col] = id;

    c.row_prev = c.row_next = kNil;
    if (col_deleted_[c.col]) continue;
    c.row_prev = row_tail_[c.row];
    if (row_tail_[c.row] == kNil) {
      row_head_[c.row] = id;
    } else {
      cells_[row_tail_[c.row]].row_next = id;
    }
    row_tail_[c.row] = id;
    ++row_len_[c.row];
    ++live_nnz_;
  }
}

void LinkedMatrix::sort_lists() {
  std::vector<Index> order(cells_.size());
  std::iota(order.begin(), order.end(), Index{0});
  std::stable_sort(order.begin(), order.end(), [this](Index a, Index b) {
    return cells_[a].value > cells_[b].value;
  });
  relink_in_order(order);
}

void LinkedMatrix::pseudo_sort_lists() {
  if (cells_.empty()) return;
  int lo = floor_log2(cells_[0].value);
  int hi = lo;
  std::vector<int> key(cells_.size());
  for (std::size_t k = 0; k < cells_.size(); ++k) {
    key[k] = floor_log2(cells_[k].value);
    lo = std::min(lo, key[k]);
    hi = std::max(hi, key[k]);
  }
  // Counting sort, largest key first, stable within a key.
  const auto span = static_cast<std::size_t>(hi - lo) + 1;
  std::vector<std::size_t> start(span + 1, 0);
  for (const int k : key) ++start[static_cast<std::size_t>(hi - k) + 1];
  std::partial_sum(start.begin(), start.end(), start.begin());
  std::vector<Index> order(cells_.size());
  for (std::size_t id = 0; id < cells_.size(); ++id) {
    order[start[static_cast<std::size_t>(hi - key[id])]++] =
        static_cast<Index>(id);
  }
  relink_in_order(order);
}

std::vector<Index> LinkedMatrix::delete_column(Index j) {
  if (j >= cols()) throw InternalError("delete_column: index out of range");
  if (col_deleted_[j]) {
    throw InternalError("delete_column: column " + std::to_string(j) +
                        " already deleted");
  }
  col_deleted_[j] = 1;
  std::vector<Index> head_rows;
  for (Index id = col_head_[j]; id != kNil; id = cells_[id].col_next) {
    Cell& c = cells_[id];
    if (c.row_prev == kNil) {
      head_rows.push_back(c.row);
      row_head_[c.row] = c.row_next;
    } else {
      cells_[c.row_prev].row_next = c.row_next;
    }
    if (c.row_next == kNil) {
      row_tail_[c.row] = c.row_prev;
    } else {
      cells_[c.row_next].row_prev = c.row_prev;
    }
    c.row_prev = c.row_next = kNil;
    --row_len_[c.row];
    --live_nnz_;
  }
  return head_rows;
}

double LinkedMatrix::row_max(Index i) const {
  double m = 0.0;
  for (const Cell& c : row(i)) m = std::max(m, c.value);
  return m;
}

CooMatrix LinkedMatrix::to_coo() const {
  std::vector<Triplet> entries;
  entries.reserve(live_nnz_);
  for (Index i = 0; i < rows(); ++i) {
    for (const Cell& c : row(i)) entries.push_back({c.row, c.col, c.value});
  }
  return CooMatrix(rows(), cols(), std::move(entries));
}

bool LinkedMatrix::check_consistency() const {
  std::size_t live = 0;
  std::vector<std::uint8_t> seen(cells_.size(), 0);
  for (Index i = 0; i < rows(); ++i) {
    std::size_t len = 0;
    Index prev = kNil;
    for (Index id = row_head_[i]; id != kNil; id = cells_[id].row_next) {
      const Cell& c = cells_[id];
      if (c.row != i || c.row_prev != prev || col_deleted_[c.col]) return false;
      if (seen[id]++) return false;
      prev = id;
      ++len;
    }
    if (prev != row_tail_[i] || len != row_len_[i]) return false;
    live += len;
  }
  if (live != live_nnz_) return false;

  std::size_t total = 0;
  for (Index j = 0; j < cols(); ++j) {
    Index prev = kNil;
    double mx = 0.0;
    for (Index id = col_head_[j]; id != kNil; id = cells_[id].col_next) {
      const Cell& c = cells_[id];
      if (c.col != j || c.col_prev != prev) return false;
      // A live cell must be on its row list; a deleted one must not.
      if (static_cast<bool>(seen[id]) == static_cast<bool>(col_deleted_[j])) {
        return false;
      }
      mx = std::max(mx, c.value);
      prev = id;
      ++total;
    }
    if (prev != col_tail_[j] || mx != col_max_[j]) return false;
  }
  return total == cells_.size();
}

}  // namespace packcover
