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

#include "dataval/errors.hpp"
#include "dataval/subset.hpp"

namespace dataval {

// Set function over subsets of [0, n). Implementations must be
// deterministic per mask and evaluable concurrently; the value at the
// empty mask is part of each implementation's contract.
class UtilityFunction {
 public:
  virtual ~UtilityFunction() = default;

  virtual double eval(const SubsetMask& s) const = 0;
  virtual std::size_t population() const = 0;

  double empty_value() const { return eval(SubsetMask(population())); }

 protected:
  void require_population(const SubsetMask& s) const {
    if (s.population() != population()) {
      throw InvalidInput("utility: mask width does not match population");
    }
  }
};

// Pass-through wrapper counting underlying evaluations; with a nonzero
// limit it enforces an evaluation budget.
class CountingUtility final : public UtilityFunction {
 public:
  explicit CountingUtility(const UtilityFunction& inner, std::uint64_t limit = 0)
      : inner_(&inner), limit_(limit) {}

  double eval(const SubsetMask& s) const override {
    const std::uint64_t n = count_.fetch_add(1, std::memory_order_relaxed) + 1;
    if (limit_ != 0 && n > limit_) {
      throw ResourceLimit("utility evaluation budget exceeded (limit " +
                          std::to_string(limit_) + ")");
    }
    return inner_->eval(s);
  }

  std::size_t population() const override { return inner_->population(); }

  std::uint64_t evaluations() const { return count_.load(std::memory_order_relaxed); }
  std::uint64_t limit() const { return limit_; }

 private:
  const UtilityFunction* inner_;
  std::uint64_t limit_;
  mutable std::atomic<std::uint64_t> count_{0};
};

}  // namespace dataval
