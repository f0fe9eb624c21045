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

#include "dataval/synthetic.hpp"

#include <cmath>
#include <vector>

#include "dataval/errors.hpp"
#include "dataval/rng.hpp"

namespace dataval {

Dataset generate_gmm(const GmmSpec& spec, std::uint64_t seed) {
  if (spec.n_per_class == 0 || spec.classes == 0 || spec.dims == 0) {
    throw InvalidInput("generate_gmm: counts must be >= 1");
  }
  if (spec.separation != 0.0 && spec.dims < spec.classes) {
    throw InvalidInput("generate_gmm: equidistant class means need dims >= classes");
  }
  if (!(spec.separation >= 0.0)) {
    throw InvalidInput("generate_gmm: separation must be nonnegative");
  }

  const double axis = spec.separation / std::sqrt(2.0);
  const std::size_t rows = spec.n_per_class * spec.classes;
  std::vector<double> features(rows * spec.dims);
  std::vector<int> labels(rows);

  Rng rng(seed);
  std::size_t r = 0;
  for (std::size_t c = 0; c < spec.classes; ++c) {
    for (std::size_t k = 0; k < spec.n_per_class; ++k, ++r) {
      labels[r] = static_cast<int>(c);
      for (std::size_t j = 0; j < spec.dims; ++j) {
        const double mean = (j == c && spec.separation != 0.0) ? axis : 0.0;
        features[r * spec.dims + j] = mean + rng.normal();
      }
    }
  }
  return Dataset(spec.dims, std::move(features), std::move(labels), SplitTag::train,
                 spec.classes);
}

Dataset message_passing(const Dataset& data, double lambda) {
  if (!(lambda >= 0.0 && lambda <= 1.0)) {
    throw InvalidInput("message_passing: lambda must be in [0, 1]");
  }
  const std::size_t d = data.dims();
  const std::size_t classes = data.num_classes();

  std::vector<double> class_mean(classes * d, 0.0);
  std::vector<std::size_t> class_count(classes, 0);
  for (std::size_t i = 0; i < data.rows(); ++i) {
    const auto row = data.row(i);
    const auto c = static_cast<std::size_t>(data.label(i));
    ++class_count[c];
    for (std::size_t j = 0; j < d; ++j) class_mean[c * d + j] += row[j];
  }
  for (std::size_t c = 0; c < classes; ++c) {
    if (class_count[c] == 0) continue;
    for (std::size_t j = 0; j < d; ++j) {
      class_mean[c * d + j] /= static_cast<double>(class_count[c]);
    }
  }

  std::vector<double> features(data.features());
  for (std::size_t i = 0; i < data.rows(); ++i) {
    const auto c = static_cast<std::size_t>(data.label(i));
    for (std::size_t j = 0; j < d; ++j) {
      double& x = features[i * d + j];
      x = (1.0 - lambda) * x + lambda * class_mean[c * d + j];
    }
  }
  return Dataset(d, std::move(features), std::vector<int>(data.labels()), data.split_tag(),
                 classes);
}

}  // namespace dataval
