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

#pragma once

#include <atomic>
#include <cstdint>
#include <future>
#include <memory>
#include <mutex>
#include <unordered_map>
#include <vector>

#include "dataval/utility.hpp"

namespace dataval {

struct MemoOptions {
  // Dense 2^n table when the population fits; hard ceiling 24.
  std::size_t dense_max_n = 20;
  // Sparse-mode entry cap. Exceeding it is an error, never an eviction, so
  // exact solvers cannot silently recompute.
  std::size_t max_entries = std::size_t{1} << 22;
};

// Memoizing wrapper: identical values, each distinct mask evaluated at most
// once, concurrent callers race only on the same key.
class MemoizedUtility final : public UtilityFunction {
 public:
  explicit MemoizedUtility(const UtilityFunction& inner, MemoOptions opt = {});

  double eval(const SubsetMask& s) const override;
  std::size_t population() const override { return inner_->population(); }

  std::uint64_t underlying_evaluations() const {
    return evals_.load(std::memory_order_relaxed);
  }

 private:
  double eval_dense(const SubsetMask& s) const;
  double eval_sparse(const SubsetMask& s) const;

  const UtilityFunction* inner_;
  MemoOptions opt_;
  bool dense_ = false;
  mutable std::atomic<std::uint64_t> evals_{0};

  // Dense mode: slot state 0 = empty, 1 = computing, 2 = ready.
  mutable std::vector<double> dense_values_;
  mutable std::unique_ptr<std::atomic<std::uint8_t>[]> dense_state_;

  // Sparse mode: sharded maps of shared futures; shard locks are held only
  // for lookup/insert, never while the inner utility runs.
  struct Shard {
    std::mutex mutex;
    std::unordered_map<SubsetMask, std::shared_future<double>, SubsetMaskHash> map;
  };
  static constexpr std::size_t kShards = 64;
  mutable std::unique_ptr<Shard[]> shards_;
  mutable std::atomic<std::size_t> entries_{0};
};

}  // namespace dataval
