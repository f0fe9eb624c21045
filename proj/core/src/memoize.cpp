// Copyright 2026 The Authors.
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

#include "dataval/memoize.hpp"

#include <thread>

namespace dataval {

MemoizedUtility::MemoizedUtility(const UtilityFunction& inner, MemoOptions opt)
    : inner_(&inner), opt_(opt) {
  const std::size_t n = inner_->population();
  const std::size_t dense_cap = opt_.dense_max_n < 24 ? opt_.dense_max_n : 24;
  dense_ = n <= dense_cap;
  if (dense_) {
    const std::size_t slots = std::size_t{1} << n;
    dense_values_.assign(slots, 0.0);
    dense_state_ = std::make_unique<std::atomic<std::uint8_t>[]>(slots);
    for (std::size_t i = 0; i < slots; ++i) {
      dense_state_[i].store(0, std::memory_order_relaxed);
    }
  } else {
    shards_ = std::make_unique<Shard[]>(kShards);
  }
}

double MemoizedUtility::eval(const SubsetMask& s) const {
  require_population(s);
  return dense_ ? eval_dense(s) : eval_sparse(s);
}

double MemoizedUtility::eval_dense(const SubsetMask& s) const {
  const std::size_t idx = static_cast<std::size_t>(s.low_bits());
  std::atomic<std::uint8_t>& state = dense_state_[idx];
  if (state.load(std::memory_order_acquire) == 2) return dense_values_[idx];
  std::uint8_t expected = 0;
  if (state.compare_exchange_strong(expected, 1, std::memory_order_acq_rel)) {
    const double v = inner_->eval(s);
    evals_.fetch_add(1, std::memory_order_relaxed);
    dense_values_[idx] = v;
    state.store(2, std::memory_order_release);
    return v;
  }
  while (state.load(std::memory_order_acquire) != 2) std::this_thread::yield();
  return dense_values_[idx];
}

double MemoizedUtility::eval_sparse(const SubsetMask& s) const {
  Shard& shard = shards_[s.hash() % kShards];
  std::shared_future<double> fut;
  std::promise<double> promise;
  bool owner = false;
  {
    std::lock_guard<std::mutex> lock(shard.mutex);
    auto it = shard.map.find(s);
    if (it != shard.map.end()) {
      fut = it->second;
    } else {
      if (entries_.fetch_add(1, std::memory_order_relaxed) + 1 > opt_.max_entries) {
        entries_.fetch_sub(1, std::memory_order_relaxed);
        throw ResourceLimit("memoize: cache capacity exceeded (max " +
                            std::to_string(opt_.max_entries) + " entries)");
      }
      fut = promise.get_future().share();
      shard.map.emplace(s, fut);
      owner = true;
    }
  }
  if (owner) {
    try {
      const double v = inner_->eval(s);
      evals_.fetch_add(1, std::memory_order_relaxed);
      promise.set_value(v);
      return v;
    } catch (...) {
      promise.set_exception(std::current_exception());
      throw;
    }
  }
  return fut.get();
}

}  // namespace dataval
