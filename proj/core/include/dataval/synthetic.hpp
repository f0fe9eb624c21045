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

#include "dataval/dataset.hpp"

namespace dataval {

// Isotropic unit-variance Gaussian mixture. Class means sit on coordinate
// axes at separation/sqrt(2), so every pair of means is exactly
// `separation` apart; this needs dims >= classes when separation > 0.
struct GmmSpec {
  std::size_t n_per_class = 50;
  std::size_t classes = 3;
  std::size_t dims = 3;
  double separation = 3.0;
};

Dataset generate_gmm(const GmmSpec& spec, std::uint64_t seed);

// Shrinks each row toward its within-class mean:
// x_i <- (1 - lambda) * x_i + lambda * mean(x_j : label_j = label_i).
// lambda = 0 is the identity, lambda = 1 collapses classes onto their means.
Dataset message_passing(const Dataset& data, double lambda);

}  // namespace dataval
