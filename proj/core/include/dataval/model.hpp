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
#include <vector>

#include "dataval/dataset.hpp"
#include "dataval/utility.hpp"

namespace dataval {

struct TrainerConfig {
  std::size_t iterations = 500;
  double step = 0.1;
  double l2 = 1e-4;
};

// Multinomial logistic regression parameters. predict() breaks argmax ties
// toward the smaller class index, so the all-zero model predicts class 0.
struct LogisticModel {
  std::size_t dims = 0;
  std::size_t classes = 0;
  std::vector<double> weights;  // dims x classes, row-major
  std::vector<double> bias;     // classes

  std::size_t predict(std::span<const double> x) const;
};

// Column-wise standardization fitted on the full training split so that
// U(S) depends only on which rows S selects.
struct Standardizer {
  std::vector<double> mean;
  std::vector<double> scale;  // zero-variance columns scale by 1

  static Standardizer fit(const Dataset& data);
  std::vector<double> transform(const Dataset& data) const;
};

// Fits by full-batch gradient descent from zero initialization (convex
// objective, no seed needed). Rows are indices into `train`; features are
// standardized with full-split statistics. A single-class row set returns
// the constant predictor of that class.
LogisticModel train_classifier(const Dataset& train, std::span<const std::size_t> rows,
                               const TrainerConfig& cfg = {});

// Validation-accuracy utility: U(S) = accuracy on the holdout split of a
// classifier trained on the rows of S. U(∅) is the holdout majority-class
// share.
class ModelUtility final : public UtilityFunction {
 public:
  ModelUtility(Dataset train, Dataset holdout, TrainerConfig cfg = {});

  double eval(const SubsetMask& s) const override;
  std::size_t population() const override { return train_.rows(); }

  double empty_baseline() const { return empty_baseline_; }
  const Dataset& train_split() const { return train_; }
  const Dataset& holdout_split() const { return holdout_; }
  const TrainerConfig& trainer() const { return cfg_; }

 private:
  Dataset train_;
  Dataset holdout_;
  TrainerConfig cfg_;
  std::size_t classes_ = 0;
  std::vector<double> train_std_;    // standardized train features
  std::vector<double> holdout_std_;  // standardized holdout features
  double empty_baseline_ = 0.0;
  std::vector<double> class_share_;  // holdout label shares
};

}  // namespace dataval
