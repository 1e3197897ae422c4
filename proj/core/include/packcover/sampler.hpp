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
#include <span>
#include <vector>

#include "packcover/model.hpp"
#include "packcover/rng.hpp"
#include "packcover/wide_real.hpp"

namespace packcover {

// Nonnegative weight vector supporting proportional sampling, O(1)
// multiplicative entry updates and zeroing.
//
// Entry i is held as mantissa m_i in [1, 2) and a binary key k_i, so its
// weight is m_i * 2^(k_i + scale) where `scale` is shared by the whole
// vector. Live entries are grouped into buckets by key; bucket k covers
// weights in [2^k, 2^(k+1)) and keeps the sum of its mantissas. Sampling
// picks a bucket proportionally to sum * 2^k by a linear scan from the top
// occupied key, then rejection-samples a member with acceptance m_i / 2
// (at most two expected tries).
//
// Bucket sums are updated incrementally and recomputed exactly once the
// number of updates since the last recomputation exceeds the bucket size
// (and at least kExactRefreshInterval), which keeps relative error far
// below 1e-9 at amortized O(1) cost.
class SamplableVector {
 public:
  static constexpr std::uint32_t kExactRefreshInterval = 1u << 14;

  SamplableVector() = default;
  // Throws PreconditionError if weights contain a negative or non-finite
  // value or no positive value.
  explicit SamplableVector(std::span<const double> weights);

  std::size_t size() const { return slots_.size(); }
  std::size_t live_count() const { return live_count_; }
  bool is_live(Index i) const { return slots_[i].live; }

  WideReal weight(Index i) const;
  // |v|, with the shared scale folded into the exponent.
  WideReal total() const;

  // Index i with probability v_i / |v|. Throws PreconditionError when every
  // entry is zero.
  Index sample(Rng& rng) const;

  // v_i *= factor for any finite factor > 0. Throws PreconditionError if
  // entry i is zero.
  void scale_entry(Index i, double factor);
  // v_i = 0; entry i is never sampled again. Throws PreconditionError if it
  // already is zero.
  void set_zero(Index i);
  // v_i = w; w == 0 behaves like set_zero, except that zeroing an already
  // zero entry is allowed.
  void assign(Index i, const WideReal& w);

  // Divides every weight by 2^log2_factor by moving the shared scale only.
  // No per-entry state changes, so all sampling ratios are preserved
  // bit-for-bit.
  void renormalize(std::int64_t log2_factor);
  std::int64_t scale_exponent() const { return scale_; }

  // Entries that changed bucket, over the lifetime of the vector.
  std::uint64_t bucket_moves() const { return bucket_moves_; }
  std::uint64_t exact_refreshes() const { return exact_refreshes_; }
  // Occupied key span (top - bottom + 1), 0 when empty.
  std::size_t occupied_span() const;

  // Recomputes every bucket sum from its members and compares with the
  // maintained values; also checks bucket membership. For tests.
  bool check_consistency(double rel_tol = 1e-9) const;

 private:
  struct Slot {
    double mantissa = 0.0;
    std::int64_t key = 0;
    std::uint32_t pos = 0;
    bool live = false;
  };
  struct Bucket {
    std::vector<Index> members;
    std::uint32_t updates = 0;
  };

  // Position of `key` in buckets_/sums_, growing both as needed.
  std::size_t reserve_key(std::int64_t key);
  std::size_t index_of(std::int64_t key) const {
    return static_cast<std::size_t>(key - key_offset_);
  }
  void insert(Index i, double mantissa, std::int64_t key);
  void remove(Index i);
  void touch(std::size_t b);
  void shrink_occupied_range();
  // Sum of bucket weights relative to 2^top_key_.
  double relative_total() const;

  std::vector<Slot> slots_;
  std::vector<Bucket> buckets_;
  // Mantissa sum per bucket, parallel to buckets_; exactly 0 when empty.
  std::vector<double> sums_;
  std::int64_t key_offset_ = 0;
  std::int64_t top_key_ = 0;
  std::int64_t bottom_key_ = 0;
  std::size_t live_count_ = 0;
  std::int64_t scale_ = 0;
  std::uint64_t bucket_moves_ = 0;
  std::uint64_t exact_refreshes_ = 0;
  mutable double cached_total_ = 0.0;
  mutable bool total_dirty_ = true;
};

}  // namespace packcover
