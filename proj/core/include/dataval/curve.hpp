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

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "dataval/utility.hpp"

namespace dataval {

// Utility along the nested prefixes S_1 ⊂ S_2 ⊂ ... ⊂ S_n of a selection
// order; the sequential objective is the mean of the n utilities.
struct SelectionCurve {
  std::vector<std::pair<std::size_t, double>> points;  // (k, U(S_k)), k = 1..n
  double objective = 0.0;
};

// Evaluates the curve of `perm` (a permutation of [0, n)) under `u`.
// Utility failures carry the offending prefix size k.
SelectionCurve selection_curve(std::span<const std::size_t> perm, const UtilityFunction& u);

inline SelectionCurve selection_curve(const std::vector<std::size_t>& perm,
                                      const UtilityFunction& u) {
  return selection_curve(std::span<const std::size_t>(perm), u);
}

// Throws InvalidInput unless perm is a permutation of [0, n).
void require_permutation(std::span<const std::size_t> perm, std::size_t n);

}  // namespace dataval
