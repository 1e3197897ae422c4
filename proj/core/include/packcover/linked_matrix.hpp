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

#include <cstddef>
#include <cstdint>
#include <iterator>
#include <vector>

#include "packcover/model.hpp"

namespace packcover {

// Sparse nonnegative matrix as cross-linked row and column lists.
//
// Every nonzero lives once in an arena of cells; a cell is threaded through
// a doubly linked row list and a doubly linked column list, so the row-side
// and column-side views of an entry are the same object. Columns can be
// deleted, which unlinks their cells from the row lists only: column lists
// and column maxima stay intact.
class LinkedMatrix {
 public:
  static constexpr Index kNil = ~Index{0};

  struct Cell {
    Index row;
    Index col;
    double value;
    Index row_prev, row_next;
    Index col_prev, col_next;
  };

  // Forward range over one row or column list.
  template <bool kRowWise>
  class ListRange {
   public:
    class iterator {
     public:
      using iterator_category = std::forward_iterator_tag;
      using value_type = Cell;
      using difference_type = std::ptrdiff_t;
      using pointer = const Cell*;
      using reference = const Cell&;

      iterator() = default;
      iterator(const std::vector<Cell>* cells, Index id)
          : cells_(cells), id_(id) {}
      reference operator*() const { return (*cells_)[id_]; }
      pointer operator->() const { return &(*cells_)[id_]; }
      iterator& operator++() {
        const Cell& c = (*cells_)[id_];
        id_ = kRowWise ? c.row_next : c.col_next;
        return *this;
      }
      iterator operator++(int) {
        iterator t = *this;
        ++*this;
        return t;
      }
      friend bool operator==(const iterator& a, const iterator& b) {
        return a.id_ == b.id_;
      }

     private:
      const std::vector<Cell>* cells_ = nullptr;
      Index id_ = kNil;
    };

    ListRange(const std::vector<Cell>* cells, Index head)
        : cells_(cells), head_(head) {}
    iterator begin() const { return iterator(cells_, head_); }
    iterator end() const { return iterator(cells_, kNil); }
    bool empty() const { return head_ == kNil; }

   private:
    const std::vector<Cell>* cells_;
    Index head_;
  };

  LinkedMatrix() = default;
  // Lists are built in the CooMatrix's (row, col) order.
  explicit LinkedMatrix(const CooMatrix& m);

  std::size_t rows() const { return row_head_.size(); }
  std::size_t cols() const { return col_head_.size(); }
  // Cells ever stored (deleted columns included).
  std::size_t nnz() const { return cells_.size(); }
  // Cells still present in the row lists.
  std::size_t live_nnz() const { return live_nnz_; }

  ListRange<true> row(Index i) const { return {&cells_, row_head_[i]}; }
  ListRange<false> column(Index j) const { return {&cells_, col_head_[j]}; }
  const Cell& cell(Index id) const { return cells_[id]; }

  // Exact maximum of column j (deletion does not change it). u_j.
  double column_max(Index j) const { return col_max_[j]; }
  // Value at the head of row i, or 0 for an empty row. After sort_lists()
  // this is the exact maximum of the remaining entries; after
  // pseudo_sort_lists() it is within a factor 2 of it.
  double row_head_value(Index i) const {
    const Index h = row_head_[i];
    return h == kNil ? 0.0 : cells_[h].value;
  }
  // Exact maximum over the remaining entries of row i (linear scan).
  double row_max(Index i) const;
  std::size_t row_length(Index i) const { return row_len_[i]; }
  bool column_deleted(Index j) const { return col_deleted_[j] != 0; }

  // Every row and column list in non-increasing value order. O(n log n).
  void sort_lists();
  // Every list in non-increasing order of floor(log2 value), by a counting
  // sort over the integer keys. O(n + key range).
  void pseudo_sort_lists();

  // Unlinks column j's cells from their row lists and returns the rows whose
  // head cell was removed, in column-list order. Throws InternalError if j
  // was already deleted.
  std::vector<Index> delete_column(Index j);

  // Remaining entries as a coordinate matrix.
  CooMatrix to_coo() const;

  // Full traversal check of the links against the cached counts.
  bool check_consistency() const;

 private:
  void relink_in_order(const std::vector<Index>& order);

  std::vector<Cell> cells_;
  std::vector<Index> row_head_, row_tail_;
  std::vector<Index> col_head_, col_tail_;
  std::vector<std::size_t> row_len_;
  std::vector<double> col_max_;
  std::vector<std::uint8_t> col_deleted_;
  std::size_t live_nnz_ = 0;
};

}  // namespace packcover
