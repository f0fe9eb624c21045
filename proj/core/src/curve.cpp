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

#include "dataval/curve.hpp"

#include <string>
#include <vector>

#include "dataval/errors.hpp"

namespace dataval {

void require_permutation(std::span<const std::size_t> perm, std::size_t n) {
  if (perm.size() != n) throw InvalidInput("expected a permutation of [0, n)");
  std::vector<bool> seen(n, false);
  for (std::size_t p : perm) {
    if (p >= n || seen[p]) throw InvalidInput("expected a permutation of [0, n)");
    seen[p] = true;
  }
}

SelectionCurve selection_curve(std::span<const std::size_t> perm, const UtilityFunction& u) {
  const std::size_t n = u.population();
  require_permutation(perm, n);
  SelectionCurve curve;
  curve.points.reserve(n);
  SubsetMask prefix(n);
  double sum = 0.0;
  for (std::size_t k = 1; k <= n; ++k) {
    prefix.set(perm[k - 1]);
    double value = 0.0;
    try {
      value = u.eval(prefix);
    } catch (const InvalidInput& e) {
      throw InvalidInput("selection_curve at k=" + std::to_string(k) + ": " + e.what());
    } catch (const ResourceLimit& e) {
      throw ResourceLimit("selection_curve at k=" + std::to_string(k) + ": " + e.what());
    } catch (const NumericalFailure& e) {
      throw NumericalFailure("selection_curve at k=" + std::to_string(k) + ": " + e.what());
    }
    curve.points.emplace_back(k, value);
    sum += value;
  }
  curve.objective = sum / static_cast<double>(n);
  return curve;
}

}  // namespace dataval
