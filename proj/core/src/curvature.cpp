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

#include "dataval/curvature.hpp"

#include <algorithm>
#include <string>

#include "dataval/errors.hpp"

namespace dataval {

CurvatureReport curvature(const UtilityFunction& u, std::size_t exact_cap) {
  const std::size_t n = u.population();
  if (n == 0) throw InvalidInput("curvature: empty population");
  if (n > exact_cap) {
    throw ResourceLimit("curvature: population " + std::to_string(n) +
                        " exceeds exact cap " + std::to_string(exact_cap));
  }
  const SubsetMask empty(n);
  const SubsetMask full = SubsetMask::full(n);
  const double u_empty = u.eval(empty);
  const double u_full = u.eval(full);

  CurvatureReport report;
  report.ratios.resize(n);
  double min_ratio = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double gain_alone = u.eval(empty.with(i)) - u_empty;
    if (!(gain_alone > 0.0)) {
      throw InvalidInput("curvature undefined: point " + std::to_string(i) +
                         " has non-positive singleton gain");
    }
    const double gain_last = u_full - u.eval(full.without(i));
    report.ratios[i] = gain_last / gain_alone;
    if (i == 0 || report.ratios[i] < min_ratio) {
      min_ratio = report.ratios[i];
      report.argmin_index = i;
    }
  }
  report.c = std::clamp(1.0 - min_ratio, 0.0, 1.0);
  return report;
}

MonotoneSubmodularReport check_monotone_submodular(const UtilityFunction& u, double tol) {
  const std::size_t n = u.population();
  if (n == 0) throw InvalidInput("check_monotone_submodular: empty population");
  if (n > 12) {
    throw ResourceLimit("check_monotone_submodular: population " + std::to_string(n) +
                        " exceeds exhaustive cap 12");
  }
  const std::size_t slots = std::size_t{1} << n;
  std::vector<double> value(slots);
  for (std::size_t m = 0; m < slots; ++m) {
    value[m] = u.eval(SubsetMask::from_bits(m, n));
  }

  MonotoneSubmodularReport report;
  for (std::size_t m = 0; m < slots && report.monotone; ++m) {
    for (std::size_t i = 0; i < n; ++i) {
      if ((m >> i) & 1u) continue;
      const std::size_t mi = m | (std::size_t{1} << i);
      if (value[mi] < value[m] - tol) {
        report.monotone = false;
        report.witness = PropertyWitness{SubsetMask::from_bits(m, n),
                                         SubsetMask::from_bits(mi, n), i, "monotonicity"};
        break;
      }
    }
  }
  for (std::size_t b = 0; b < slots && report.submodular; ++b) {
    // submask walk of b, including a == b and a == 0
    std::size_t a = b;
    for (;;) {
      for (std::size_t i = 0; i < n; ++i) {
        if ((b >> i) & 1u) continue;
        const std::size_t bit = std::size_t{1} << i;
        const double gain_a = value[a | bit] - value[a];
        const double gain_b = value[b | bit] - value[b];
        if (gain_a < gain_b - tol) {
          report.submodular = false;
          if (!report.witness) {
            report.witness = PropertyWitness{SubsetMask::from_bits(a, n),
                                             SubsetMask::from_bits(b, n), i, "submodularity"};
          }
          break;
        }
      }
      if (!report.submodular || a == 0) break;
      a = (a - 1) & b;
    }
  }
  return report;
}

}  // namespace dataval
