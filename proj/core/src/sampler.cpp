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

#include "packcover/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "packcover/errors.hpp"

namespace packcover {

namespace {

// Buckets more than this many binary orders below the top one hold at most
// n * 2^-96 of the total, under half an ulp for n < 2^32; totals and
// sampling treat them as zero.
constexpr std::int64_t kScanDepth = 96;

[[noreturn, gnu::cold, gnu::noinline]] void fail(const std::string& what) {
  throw PreconditionError(what);
}

}  // namespace

SamplableVector::SamplableVector(std::span<const double> weights)
    : slots_(weights.size()) {
  bool any = false;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    const double w = weights[i];
    if (!std::isfinite(w) || w < 0.0) {
      throw PreconditionError("SamplableVector: weight " + std::to_string(i) +
                              " must be finite and nonnegative");
    }
    if (w == 0.0) continue;
    any = true;
    const WideReal wr = WideReal::from_double(w);
    insert(static_cast<Index>(i), wr.mantissa(), wr.exponent());
  }
  if (!any) throw PreconditionError("SamplableVector: all weights are zero");
}

std::size_t SamplableVector::reserve_key(std::int64_t key) {
  if (buckets_.empty()) {
    key_offset_ = key;
    buckets_.emplace_back();
    sums_.push_back(0.0);
  } else if (key < key_offset_) {
    // Grow geometrically so that a steadily falling key costs O(1) amortized.
    const auto need = static_cast<std::size_t>(key_offset_ - key);
    const std::size_t grow = std::max(need, buckets_.size());
    buckets_.insert(buckets_.begin(), grow, Bucket{});
    sums_.insert(sums_.begin(), grow, 0.0);
    key_offset_ -= static_cast<std::int64_t>(grow);
  } else if (key >= key_offset_ + static_cast<std::int64_t>(buckets_.size())) {
    const auto need = static_cast<std::size_t>(key - key_offset_) + 1;
    const std::size_t size = std::max(need, 2 * buckets_.size());
    buckets_.resize(size);
    sums_.resize(size, 0.0);
  }
  return index_of(key);
}

inline void SamplableVector::touch(std::size_t b) {
  Bucket& bucket = buckets_[b];
  ++bucket.updates;
  if (bucket.updates >=
      std::max<std::size_t>(kExactRefreshInterval, bucket.members.size())) {
    double s = 0.0;
    for (const Index m : bucket.members) s += slots_[m].mantissa;
    sums_[b] = s;
    bucket.updates = 0;
    ++exact_refreshes_;
  }
}

void SamplableVector::insert(Index i, double mantissa, std::int64_t key) {
  const std::size_t b = reserve_key(key);
  Slot& s = slots_[i];
  s.mantissa = mantissa;
  s.key = key;
  s.pos = static_cast<std::uint32_t>(buckets_[b].members.size());
  s.live = true;
  buckets_[b].members.push_back(i);
  sums_[b] += mantissa;
  touch(b);
  if (live_count_ == 0) {
    top_key_ = bottom_key_ = key;
  } else {
    top_key_ = std::max(top_key_, key);
    bottom_key_ = std::min(bottom_key_, key);
  }
  ++live_count_;
  total_dirty_ = true;
}

void SamplableVector::remove(Index i) {
  Slot& s = slots_[i];
  const std::size_t b = index_of(s.key);
  auto& members = buckets_[b].members;
  const Index last = members.back();
  members[s.pos] = last;
  slots_[last].pos = s.pos;
  members.pop_back();
  --live_count_;
  if (members.empty()) {
    sums_[b] = 0.0;
    buckets_[b].updates = 0;
    if (live_count_ > 0 && (s.key == top_key_ || s.key == bottom_key_)) {
      shrink_occupied_range();
    }
  } else {
    sums_[b] -= s.mantissa;
    touch(b);
  }
  s.live = false;
  s.mantissa = 0.0;
  total_dirty_ = true;
}

void SamplableVector::shrink_occupied_range() {
  while (top_key_ > bottom_key_ && buckets_[index_of(top_key_)].members.empty()) {
    --top_key_;
  }
  while (bottom_key_ < top_key_ &&
         buckets_[index_of(bottom_key_)].members.empty()) {
    ++bottom_key_;
  }
}

WideReal SamplableVector::weight(Index i) const {
  const Slot& s = slots_[i];
  if (!s.live) return {};
  return WideReal::from_parts(s.mantissa, s.key + scale_);
}

double SamplableVector::relative_total() const {
  if (!total_dirty_) return cached_total_;
  double t = 0.0;
  if (live_count_ > 0) {
    const std::size_t top = index_of(top_key_);
    const std::size_t stop = index_of(std::max(bottom_key_, top_key_ - kScanDepth));
    double scale = 1.0;
    for (std::size_t k = top + 1; k-- > stop; scale *= 0.5) t += sums_[k] * scale;
  }
  cached_total_ = t;
  total_dirty_ = false;
  return t;
}

WideReal SamplableVector::total() const {
  if (live_count_ == 0) return {};
  return WideReal::from_parts(relative_total(), top_key_ + scale_);
}

Index SamplableVector::sample(Rng& rng) const {
  if (live_count_ == 0) {
    throw PreconditionError("SamplableVector::sample: all weights are zero");
  }
  double u = rng.uniform() * relative_total();
  const std::size_t top = index_of(top_key_);
  const std::size_t stop = index_of(std::max(bottom_key_, top_key_ - kScanDepth));
  std::size_t chosen = top;
  double scale = 1.0;
  for (std::size_t k = top + 1; k-- > stop; scale *= 0.5) {
    if (buckets_[k].members.empty()) continue;
    chosen = k;
    const double w = sums_[k] * scale;
    if (u < w) break;
    u -= w;
  }
  // chosen is the last nonempty bucket if rounding ran u past the end.
  const auto& members = buckets_[chosen].members;
  for (;;) {
    const Index i = members[rng.below(members.size())];
    if (rng.uniform() * 2.0 < slots_[i].mantissa) return i;
  }
}

void SamplableVector::scale_entry(Index i, double factor) {
  Slot& s = slots_[i];
  if (!s.live) fail("scale_entry: entry " + std::to_string(i) + " is zero");
  if (!(factor > 0.0 && factor <= std::numeric_limits<double>::max())) {
    fail("scale_entry: factor must be finite and positive");
  }
  const double m = s.mantissa * factor;
  if (m >= 1.0 && m < 2.0) {
    const std::size_t b = index_of(s.key);
    sums_[b] += m - s.mantissa;
    s.mantissa = m;
    touch(b);
    total_dirty_ = true;
    return;
  }
  const WideReal w = WideReal::from_parts(m, s.key);
  remove(i);
  insert(i, w.mantissa(), w.exponent());
  ++bucket_moves_;
}

void SamplableVector::set_zero(Index i) {
  if (!slots_[i].live) fail("set_zero: entry " + std::to_string(i) + " is already zero");
  remove(i);
}

void SamplableVector::assign(Index i, const WideReal& w) {
  if (w.is_negative()) throw PreconditionError("assign: negative weight");
  if (slots_[i].live) remove(i);
  if (w.is_zero()) return;
  insert(i, w.mantissa(), w.exponent() - scale_);
}

void SamplableVector::renormalize(std::int64_t log2_factor) {
  scale_ -= log2_factor;
}

std::size_t SamplableVector::occupied_span() const {
  if (live_count_ == 0) return 0;
  return static_cast<std::size_t>(top_key_ - bottom_key_) + 1;
}

bool SamplableVector::check_consistency(double rel_tol) const {
  std::size_t live = 0;
  for (std::size_t i = 0; i < slots_.size(); ++i) {
    const Slot& s = slots_[i];
    if (!s.live) {
      if (s.mantissa != 0.0) return false;
      continue;
    }
    ++live;
    if (!(s.mantissa >= 1.0 && s.mantissa < 2.0)) return false;
    if (s.key < bottom_key_ || s.key > top_key_) return false;
    const Bucket& b = buckets_[index_of(s.key)];
    if (s.pos >= b.members.size() || b.members[s.pos] != i) return false;
  }
  if (live != live_count_) return false;
  std::size_t members = 0;
  for (std::size_t k = 0; k < buckets_.size(); ++k) {
    const Bucket& b = buckets_[k];
    const std::int64_t key = key_offset_ + static_cast<std::int64_t>(k);
    double exact = 0.0;
    for (const Index m : b.members) {
      if (!slots_[m].live || slots_[m].key != key) return false;
      exact += slots_[m].mantissa;
    }
    members += b.members.size();
    if (b.members.empty() ? sums_[k] != 0.0
                          : std::fabs(exact - sums_[k]) > rel_tol * exact) {
      return false;
    }
  }
  if (members != live_count_) return false;
  if (live_count_ > 0 && (buckets_[index_of(top_key_)].members.empty() ||
                          buckets_[index_of(bottom_key_)].members.empty())) {
    return false;
  }
  return true;
}

}  // namespace packcover
