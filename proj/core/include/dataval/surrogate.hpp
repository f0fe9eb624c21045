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

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dataval/utility.hpp"
#include "dataval/values.hpp"

namespace dataval {

// Subset-size weight w(|S|) for the surrogate fit, positive on 1 <= |S| <= n-1.
struct WlsKernel {
  std::string id;
  std::function<double(std::size_t s, std::size_t n)> weight;

  // "shapley" is the classical kernel (n-1)/(C(n,s)·s·(n-s)) whose
  // constrained fit recovers Shapley values exactly. Alternatives:
  // "shapley-binom" = 1/C(n-1,s-1), "banzhaf" = 2^{-s}, "beta:α,β".
  static WlsKernel parse(std::string_view spec);
  static WlsKernel shapley();
};

// Additive surrogate Û(S) = Σ_{i∈S} θ_i fitted to U.
struct LinearSurrogate {
  std::vector<double> theta;
  std::string kernel_id;
  double residual = 0.0;  // achieved weighted squared error
};

struct FitOptions {
  std::size_t exhaustive_cap = 14;
  double ridge = 1e-10;  // numerical stabilizer on the reduced system
  // Sampled mode: draw this many subsets with size distribution proportional
  // to kernel mass; unset means exhaustive enumeration of ∅ ≠ S ⊊ D.
  std::optional<std::size_t> samples;
  std::uint64_t seed = 0;
};

// Minimizes Σ_{∅≠S⊊D} w(|S|) (U(S) - Û(S))² subject to Σθ = U(D) - U(∅),
// solved in closed form by eliminating the constraint from the normal
// equations.
LinearSurrogate fit_wls(const UtilityFunction& u, const WlsKernel& kernel,
                        const FitOptions& opt = {});

// Descending-θ order; equals the trajectory of the myopic policy
// argmax_{a∉s} Û(s∪{a}) - Û(s) because each marginal gain is θ_a.
std::vector<std::size_t> myopic_sequence(const LinearSurrogate& surrogate);

}  // namespace dataval
