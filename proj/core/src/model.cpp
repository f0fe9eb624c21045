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

#include "dataval/model.hpp"

#include <algorithm>
#include <cmath>

#include "dataval/errors.hpp"

namespace dataval {

namespace {

// Gradient-descent core on pre-standardized features.
LogisticModel fit_gd(std::span<const double> features, std::span<const int> labels,
                     std::span<const std::size_t> rows, std::size_t dims,
                     std::size_t classes, const TrainerConfig& cfg) {
  LogisticModel model;
  model.dims = dims;
  model.classes = classes;
  model.weights.assign(dims * classes, 0.0);
  model.bias.assign(classes, 0.0);

  const std::size_t m = rows.size();
  std::vector<double> grad_w(dims * classes);
  std::vector<double> grad_b(classes);
  std::vector<double> probs(classes);

  for (std::size_t it = 0; it < cfg.iterations; ++it) {
    std::fill(grad_w.begin(), grad_w.end(), 0.0);
    std::fill(grad_b.begin(), grad_b.end(), 0.0);
    for (std::size_t r : rows) {
      const double* x = features.data() + r * dims;
      // logits with max subtracted before exp
      double max_logit = 0.0;
      for (std::size_t c = 0; c < classes; ++c) {
        double z = model.bias[c];
        for (std::size_t j = 0; j < dims; ++j) z += model.weights[j * classes + c] * x[j];
        probs[c] = z;
        if (c == 0 || z > max_logit) max_logit = z;
      }
      double denom = 0.0;
      for (std::size_t c = 0; c < classes; ++c) {
        probs[c] = std::exp(probs[c] - max_logit);
        denom += probs[c];
      }
      const int y = labels[r];
      for (std::size_t c = 0; c < classes; ++c) {
        const double diff = probs[c] / denom - (static_cast<int>(c) == y ? 1.0 : 0.0);
        grad_b[c] += diff;
        for (std::size_t j = 0; j < dims; ++j) grad_w[j * classes + c] += diff * x[j];
      }
    }
    const double inv_m = 1.0 / static_cast<double>(m);
    for (std::size_t k = 0; k < dims * classes; ++k) {
      model.weights[k] -= cfg.step * (grad_w[k] * inv_m + cfg.l2 * model.weights[k]);
    }
    for (std::size_t c = 0; c < classes; ++c) {
      model.bias[c] -= cfg.step * grad_b[c] * inv_m;
    }
  }
  return model;
}

LogisticModel constant_predictor(std::size_t dims, std::size_t classes, int cls) {
  LogisticModel model;
  model.dims = dims;
  model.classes = classes;
  model.weights.assign(dims * classes, 0.0);
  model.bias.assign(classes, 0.0);
  model.bias[static_cast<std::size_t>(cls)] = 1.0;
  return model;
}

}  // namespace

std::size_t LogisticModel::predict(std::span<const double> x) const {
  std::size_t best = 0;
  double best_z = 0.0;
  for (std::size_t c = 0; c < classes; ++c) {
    double z = bias[c];
    for (std::size_t j = 0; j < dims; ++j) z += weights[j * classes + c] * x[j];
    if (c == 0 || z > best_z) {
      best_z = z;
      best = c;
    }
  }
  return best;
}

Standardizer Standardizer::fit(const Dataset& data) {
  const std::size_t d = data.dims();
  const std::size_t n = data.rows();
  Standardizer s;
  s.mean.assign(d, 0.0);
  s.scale.assign(d, 1.0);
  for (std::size_t i = 0; i < n; ++i) {
    const auto row = data.row(i);
    for (std::size_t j = 0; j < d; ++j) s.mean[j] += row[j];
  }
  for (std::size_t j = 0; j < d; ++j) s.mean[j] /= static_cast<double>(n);
  std::vector<double> var(d, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const auto row = data.row(i);
    for (std::size_t j = 0; j < d; ++j) {
      const double dev = row[j] - s.mean[j];
      var[j] += dev * dev;
    }
  }
  for (std::size_t j = 0; j < d; ++j) {
    const double sd = std::sqrt(var[j] / static_cast<double>(n));
    s.scale[j] = sd > 1e-12 ? sd : 1.0;
  }
  return s;
}

std::vector<double> Standardizer::transform(const Dataset& data) const {
  if (data.dims() != mean.size()) {
    throw InvalidInput("Standardizer: dimension mismatch");
  }
  std::vector<double> out(data.features().size());
  const std::size_t d = mean.size();
  for (std::size_t i = 0; i < data.rows(); ++i) {
    const auto row = data.row(i);
    for (std::size_t j = 0; j < d; ++j) {
      out[i * d + j] = (row[j] - mean[j]) / scale[j];
    }
  }
  return out;
}

LogisticModel train_classifier(const Dataset& train, std::span<const std::size_t> rows,
                               const TrainerConfig& cfg) {
  if (rows.empty()) throw InvalidInput("train_classifier: needs at least one row");
  for (std::size_t r : rows) {
    if (r >= train.rows()) throw InvalidInput("train_classifier: row index out of range");
  }
  const std::size_t classes = std::max<std::size_t>(train.num_classes(), 2);

  int first = train.label(rows.front());
  bool single_class = true;
  for (std::size_t r : rows) {
    if (train.label(r) != first) {
      single_class = false;
      break;
    }
  }
  if (single_class) return constant_predictor(train.dims(), classes, first);

  const Standardizer std_fit = Standardizer::fit(train);
  const std::vector<double> feats = std_fit.transform(train);
  return fit_gd(feats, train.labels(), rows, train.dims(), classes, cfg);
}

ModelUtility::ModelUtility(Dataset train, Dataset holdout, TrainerConfig cfg)
    : train_(std::move(train)), holdout_(std::move(holdout)), cfg_(cfg) {
  if (holdout_.rows() == 0) {
    throw InvalidInput("ModelUtility: validation split is empty");
  }
  if (train_.dims() != holdout_.dims()) {
    throw InvalidInput("ModelUtility: train/holdout dimension mismatch");
  }
  classes_ = std::max({train_.num_classes(), holdout_.num_classes(), std::size_t{2}});

  const Standardizer std_fit = Standardizer::fit(train_);
  train_std_ = std_fit.transform(train_);
  holdout_std_ = std_fit.transform(holdout_);

  class_share_.assign(classes_, 0.0);
  for (int y : holdout_.labels()) class_share_[static_cast<std::size_t>(y)] += 1.0;
  for (double& s : class_share_) s /= static_cast<double>(holdout_.rows());
  empty_baseline_ = *std::max_element(class_share_.begin(), class_share_.end());
}

double ModelUtility::eval(const SubsetMask& s) const {
  require_population(s);
  if (s.empty()) return empty_baseline_;

  const std::vector<std::size_t> rows = s.indices();
  const int first = train_.label(rows.front());
  bool single_class = true;
  for (std::size_t r : rows) {
    if (train_.label(r) != first) {
      single_class = false;
      break;
    }
  }
  if (single_class) return class_share_[static_cast<std::size_t>(first)];

  const LogisticModel model =
      fit_gd(train_std_, train_.labels(), rows, train_.dims(), classes_, cfg_);

  std::size_t hits = 0;
  const std::size_t d = train_.dims();
  for (std::size_t i = 0; i < holdout_.rows(); ++i) {
    const std::span<const double> x{holdout_std_.data() + i * d, d};
    if (model.predict(x) == static_cast<std::size_t>(holdout_.label(i))) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(holdout_.rows());
}

}  // namespace dataval
