// Copyright 2026 The RegTopK Authors. All Rights Reserved.
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
// =============================================================================

#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <variant>
#include <vector>

#include "regtopk/datagen.hpp"
#include "regtopk/vecmath.hpp"

namespace regtopk {

struct LossGrad {
  double loss = 0.0;
  DenseVector grad;
};

// Logistic regression, loss log(1 + exp(-y <w, x>)) averaged over samples.
double logistic_loss(const DenseVector& w, const LabeledDataset& data);
DenseVector logistic_grad(const DenseVector& w, const LabeledDataset& data);

// Least squares, loss (1 / 2D) * sum (<w, x_i> - y_i)^2.
double ls_loss(const DenseVector& w, const LabeledDataset& data);
DenseVector ls_grad(const DenseVector& w, const LabeledDataset& data);

/// Exact minimizer of sum_n weights[n] * ls_loss(w, datasets[n]) from the
/// normal equations. Retries once with a 1e-10 ridge if the Gram matrix is
/// numerically indefinite; throws IndefiniteMatrixError if that also fails.
DenseVector ls_global_optimum(std::span<const LabeledDataset> datasets,
                              std::span<const double> weights);

/// Fully connected tanh network with a softmax cross-entropy head.
///
/// Parameters are flattened layer by layer; within a layer the weight matrix
/// comes first (row-major, one row per output unit) followed by the bias.
struct MlpArch {
  int input_dim = 0;
  std::vector<int> hidden;
  int classes = 2;

  std::size_t parameter_count() const;
  std::vector<int> layer_sizes() const;
};

/// Mean cross-entropy and its gradient over the rows listed in `batch`
/// (all rows when empty). Labels are class indices.
LossGrad mlp_loss_grad(const DenseVector& w, const MlpArch& arch, const LabeledDataset& data,
                       std::span<const std::size_t> batch = {});
std::vector<int> mlp_predict(const DenseVector& w, const MlpArch& arch, const LabeledDataset& data);
double mlp_accuracy(const DenseVector& w, const MlpArch& arch, const LabeledDataset& data);
/// Glorot-uniform weights, zero biases.
DenseVector mlp_init(const MlpArch& arch, std::uint64_t seed);

struct LogisticModel {
  std::shared_ptr<const LabeledDataset> data;
};
struct LeastSquaresModel {
  std::shared_ptr<const LabeledDataset> data;
};
struct MlpModel {
  MlpArch arch;
  std::shared_ptr<const LabeledDataset> data;
};

/// A worker's local objective F_n bound to its dataset.
using LossModel = std::variant<LogisticModel, LeastSquaresModel, MlpModel>;

std::size_t parameter_count(const LossModel& model);
std::size_t sample_count(const LossModel& model);
/// Loss and gradient on the listed rows, or on all rows when `batch` is empty.
LossGrad evaluate(const LossModel& model, const DenseVector& w,
                  std::span<const std::size_t> batch = {});

using LossFn = std::function<double(const DenseVector&)>;
using GradFn = std::function<DenseVector(const DenseVector&)>;

/// Largest per-coordinate discrepancy between grad(w) and the central
/// difference (f(w + h e_j) - f(w - h e_j)) / 2h, each measured as
/// |analytic - numeric| / max(1, |analytic|, |numeric|).
double finite_diff_check(const LossFn& loss, const GradFn& grad, const DenseVector& w, double step);

}  // namespace regtopk
