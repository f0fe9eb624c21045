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

enum class SplitTag { train, valid, test };

std::string to_string(SplitTag tag);
SplitTag split_tag_from_string(const std::string& s);

// Dense row-major feature matrix with integer class labels.
// Immutable after construction; safe to share across threads.
class Dataset {
 public:
  Dataset() = default;

  // num_classes 0 deduces max(label) + 1. An explicit value lets a row
  // subset keep the class count of its parent even when a class is absent.
  Dataset(std::size_t dims, std::vector<double> features, std::vector<int> labels,
          SplitTag tag = SplitTag::train, std::size_t num_classes = 0);

  std::size_t rows() const { return labels_.size(); }
  std::size_t dims() const { return dims_; }
  std::size_t num_classes() const { return num_classes_; }
  SplitTag split_tag() const { return tag_; }

  std::span<const double> row(std::size_t i) const {
    return {features_.data() + i * dims_, dims_};
  }
  int label(std::size_t i) const { return labels_[i]; }

  const std::vector<double>& features() const { return features_; }
  const std::vector<int>& labels() const { return labels_; }

  // Row subset in the given index order; keeps this dataset's class count.
  Dataset take(std::span<const std::size_t> idx, SplitTag tag) const;

 private:
  std::size_t dims_ = 0;
  std::size_t num_classes_ = 0;
  std::vector<double> features_;
  std::vector<int> labels_;
  SplitTag tag_ = SplitTag::train;
};

}  // namespace dataval
