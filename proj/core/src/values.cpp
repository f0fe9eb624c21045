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

#include "dataval/values.hpp"

#include <algorithm>
#include <cmath>

#include "dataval/errors.hpp"

namespace dataval {

std::vector<std::size_t> rank_by_value(std::span<const double> values) {
  if (values.empty()) throw InvalidInput("rank_by_value: empty value vector");
  for (double v : values) {
    if (!std::isfinite(v)) throw InvalidInput("rank_by_value: non-finite value");
  }
  std::vector<std::size_t> perm(values.size());
  for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
  std::stable_sort(perm.begin(), perm.end(),
                   [&](std::size_t a, std::size_t b) { return values[a] > values[b]; });
  return perm;
}

}  // namespace dataval
