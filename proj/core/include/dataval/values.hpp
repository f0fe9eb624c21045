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
#include <string>
#include <vector>

namespace dataval {

// Per-point scores with the id of the method that produced them. Only the
// induced ranking matters for selection.
struct ValueAssignment {
  std::vector<double> values;
  std::string method_id;
};

// Descending-score permutation of [0, n); ties keep ascending original
// index so rankings are reproducible.
std::vector<std::size_t> rank_by_value(std::span<const double> values);

inline std::vector<std::size_t> rank_by_value(const ValueAssignment& v) {
  return rank_by_value(std::span<const double>(v.values));
}

}  // namespace dataval
