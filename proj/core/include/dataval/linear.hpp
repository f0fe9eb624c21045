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

#include <cmath>
#include <vector>

#include "dataval/utility.hpp"

namespace dataval {

// Modular utility U(S) = Σ_{i∈S} w_i. Summation runs in ascending index
// order so repeated evaluations are bit-identical.
class LinearUtility final : public UtilityFunction {
 public:
  explicit LinearUtility(std::vector<double> weights) : weights_(std::move(weights)) {
    if (weights_.empty()) throw InvalidInput("LinearUtility: empty weight vector");
    for (double w : weights_) {
      if (!std::isfinite(w)) throw InvalidInput("LinearUtility: non-finite weight");
    }
  }

  double eval(const SubsetMask& s) const override {
    require_population(s);
    double sum = 0.0;
    s.for_each([&](std::size_t i) { sum += weights_[i]; });
    return sum;
  }

  std::size_t population() const override { return weights_.size(); }

  const std::vector<double>& weights() const { return weights_; }

 private:
  std::vector<double> weights_;
};

// U(S) = |S|; the fully symmetric baseline.
inline LinearUtility cardinality_utility(std::size_t n) {
  return LinearUtility(std::vector<double>(n, 1.0));
}

}  // namespace dataval
