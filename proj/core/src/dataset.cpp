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

#include "dataval/dataset.hpp"

#include <algorithm>
#include <cmath>

#include "dataval/errors.hpp"

namespace dataval {

std::string to_string(SplitTag tag) {
  switch (tag) {
    case SplitTag::train:
      return "train";
    case SplitTag::valid:
      return "valid";
    case SplitTag::test:
      return "test";
  }
  return "train";
}

SplitTag split_tag_from_string(const std::string& s) {
  if (s == "train") return SplitTag::train;
  if (s == "valid") return SplitTag::valid;
  if (s == "test") return SplitTag::test;
  throw InvalidInput("unknown split tag: " + s);
}

Dataset::Dataset(std::size_t dims, std::vector<double> features, std::vector<int> labels,
                 SplitTag tag, std::size_t num_classes)
    : dims_(dims), features_(std::move(features)), labels_(std::move(labels)), tag_(tag) {
  if (dims_ == 0) throw InvalidInput("Dataset: dims must be >= 1");
  if (features_.size() != labels_.size() * dims_) {
    throw InvalidInput("Dataset: feature matrix shape does not match labels");
  }
  for (double v : features_) {
    if (!std::isfinite(v)) throw InvalidInput("Dataset: non-finite feature value");
  }
  int max_label = -1;
  for (int y : labels_) {
    if (y < 0) throw InvalidInput("Dataset: negative label");
    max_label = std::max(max_label, y);
  }
  const std::size_t needed = static_cast<std::size_t>(max_label + 1);
  num_classes_ = num_classes == 0 ? needed : num_classes;
  if (num_classes_ < needed) {
    throw InvalidInput("Dataset: label outside [0, num_classes)");
  }
}

Dataset Dataset::take(std::span<const std::size_t> idx, SplitTag tag) const {
  std::vector<double> feats;
  feats.reserve(idx.size() * dims_);
  std::vector<int> labs;
  labs.reserve(idx.size());
  for (std::size_t i : idx) {
    if (i >= rows()) throw InvalidInput("Dataset::take: row index out of range");
    const auto r = row(i);
    feats.insert(feats.end(), r.begin(), r.end());
    labs.push_back(labels_[i]);
  }
  return Dataset(dims_, std::move(feats), std::move(labs), tag, num_classes_);
}

}  // namespace dataval
