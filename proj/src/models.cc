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

#include "regtopk/models.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "regtopk/errors.hpp"

namespace regtopk {
namespace {

// Calls fn(row_index) for every row in `batch`, or every row if it is empty.
template <typename Fn>
void for_each_row(const LabeledDataset& data, std::span<const std::size_t> batch, Fn&& fn) {
  if (batch.empty()) {
    for (std::size_t i = 0; i < data.rows(); ++i) fn(i);
  } else {
    for (std::size_t i : batch) fn(i);
  }
}

std::size_t batch_size(const LabeledDataset& data, std::span<const std::size_t> batch) {
  return batch.empty() ? data.rows() : batch.size();
}

// log(1 + exp(-z)) without overflow.
double softplus_neg(double z) { return std::log1p(std::exp(-std::abs(z))) + std::max(0.0, -z); }

// 1 / (1 + exp(z)) without overflow.
double sigmoid_neg(double z) {
  if (z >= 0.0) {
    const double e = std::exp(-z);
    return e / (1.0 + e);
  }
  return 1.0 / (1.0 + std::exp(z));
}

LossGrad logistic_eval(const DenseVector& w, const LabeledDataset& data,
                       std::span<const std::size_t> batch) {
  require_same_size(w.size(), data.dim(), "logistic");
  LossGrad out{0.0, DenseVector(w.size())};
  for_each_row(data, batch, [&](std::size_t i) {
    const auto x = data.row(i);
    const double y = data.label(i);
    const double z = y * dot(w.span(), x);
    out.loss += softplus_neg(z);
    const double coef = -sigmoid_neg(z) * y;
    for (std::size_t j = 0; j < x.size(); ++j) out.grad[j] += coef * x[j];
  });
  const double inv = 1.0 / static_cast<double>(batch_size(data, batch));
  out.loss *= inv;
  for (auto& g : out.grad) g *= inv;
  return out;
}

LossGrad ls_eval(const DenseVector& w, const LabeledDataset& data,
                 std::span<const std::size_t> batch) {
  require_same_size(w.size(), data.dim(), "least squares");
  LossGrad out{0.0, DenseVector(w.size())};
  for_each_row(data, batch, [&](std::size_t i) {
    const auto x = data.row(i);
    const double r = dot(w.span(), x) - data.label(i);
    out.loss += r * r;
    for (std::size_t j = 0; j < x.size(); ++j) out.grad[j] += r * x[j];
  });
  const double inv = 1.0 / static_cast<double>(batch_size(data, batch));
  out.loss *= 0.5 * inv;
  for (auto& g : out.grad) g *= inv;
  return out;
}

}  // namespace

double logistic_loss(const DenseVector& w, const LabeledDataset& data) {
  return logistic_eval(w, data, {}).loss;
}

DenseVector logistic_grad(const DenseVector& w, const LabeledDataset& data) {
  return logistic_eval(w, data, {}).grad;
}

double ls_loss(const DenseVector& w, const LabeledDataset& data) {
  return ls_eval(w, data, {}).loss;
}

DenseVector ls_grad(const DenseVector& w, const LabeledDataset& data) {
  return ls_eval(w, data, {}).grad;
}

DenseVector ls_global_optimum(std::span<const LabeledDataset> datasets,
                              std::span<const double> weights) {
  if (datasets.empty()) throw ParameterError("ls_global_optimum: no datasets");
  require_same_size(datasets.size(), weights.size(), "ls_global_optimum weights");
  const double total = std::accumulate(weights.begin(), weights.end(), 0.0);
  if (std::abs(total - 1.0) > 1e-12) {
    throw ParameterError("ls_global_optimum: weights must sum to 1");
  }
  const std::size_t dim = datasets.front().dim();
  SpdMatrix gram(dim);
  DenseVector rhs(dim);
  for (std::size_t n = 0; n < datasets.size(); ++n) {
    const auto& data = datasets[n];
    require_same_size(dim, data.dim(), "ls_global_optimum");
    const double c = weights[n] / static_cast<double>(data.rows());
    for (std::size_t i = 0; i < data.rows(); ++i) {
      const auto x = data.row(i);
      for (std::size_t r = 0; r < dim; ++r) {
        const double cx = c * x[r];
        rhs[r] += cx * data.label(i);
        for (std::size_t s = 0; s <= r; ++s) gram(r, s) += cx * x[s];
      }
    }
  }
  for (std::size_t r = 0; r < dim; ++r) {
    for (std::size_t s = 0; s < r; ++s) gram(s, r) = gram(r, s);
  }
  try {
    return solve_spd(gram, rhs);
  } catch (const IndefiniteMatrixError&) {
    for (std::size_t r = 0; r < dim; ++r) gram(r, r) += 1e-10;
    return solve_spd(gram, rhs);
  }
}

std::vector<int> MlpArch::layer_sizes() const {
  std::vector<int> sizes{input_dim};
  sizes.insert(sizes.end(), hidden.begin(), hidden.end());
  sizes.push_back(classes);
  return sizes;
}

std::size_t MlpArch::parameter_count() const {
  const auto sizes = layer_sizes();
  std::size_t count = 0;
  for (std::size_t l = 0; l + 1 < sizes.size(); ++l) {
    count += static_cast<std::size_t>(sizes[l] + 1) * static_cast<std::size_t>(sizes[l + 1]);
  }
  return count;
}

namespace {

void validate_arch(const MlpArch& arch) {
  if (arch.input_dim < 1 || arch.classes < 2) throw ParameterError("MlpArch: bad input/classes");
  for (int h : arch.hidden) {
    if (h < 1) throw ParameterError("MlpArch: hidden widths must be >= 1");
  }
}

// Per-sample forward pass. activations[l] holds the output of layer l
// (activations[0] is the input); the last entry holds the logits.
void mlp_forward(const DenseVector& w, const std::vector<int>& sizes, std::span<const double> x,
                 std::vector<std::vector<double>>& activations) {
  activations[0].assign(x.begin(), x.end());
  std::size_t offset = 0;
  const std::size_t layers = sizes.size() - 1;
  for (std::size_t l = 0; l < layers; ++l) {
    const std::size_t in = sizes[l], out = sizes[l + 1];
    const double* weights = w.data() + offset;
    const double* bias = weights + in * out;
    auto& next = activations[l + 1];
    next.resize(out);
    const auto& prev = activations[l];
    for (std::size_t o = 0; o < out; ++o) {
      double acc = bias[o];
      const double* row = weights + o * in;
      for (std::size_t i = 0; i < in; ++i) acc += row[i] * prev[i];
      next[o] = (l + 1 < layers) ? std::tanh(acc) : acc;
    }
    offset += (in + 1) * out;
  }
}

std::size_t label_class(double label, int classes) {
  const auto cls = static_cast<long>(label);
  if (cls < 0 || cls >= classes || static_cast<double>(cls) != label) {
    throw ParameterError("mlp: label " + std::to_string(label) + " is not a class index");
  }
  return static_cast<std::size_t>(cls);
}

}  // namespace

LossGrad mlp_loss_grad(const DenseVector& w, const MlpArch& arch, const LabeledDataset& data,
                       std::span<const std::size_t> batch) {
  validate_arch(arch);
  require_same_size(w.size(), arch.parameter_count(), "mlp parameters");
  require_same_size(static_cast<std::size_t>(arch.input_dim), data.dim(), "mlp input");
  const auto sizes = arch.layer_sizes();
  const std::size_t layers = sizes.size() - 1;

  LossGrad out{0.0, DenseVector(w.size())};
  std::vector<std::vector<double>> act(sizes.size());
  std::vector<double> delta, prev_delta;
  std::vector<std::size_t> offsets(layers);
  for (std::size_t l = 0, off = 0; l < layers; ++l) {
    offsets[l] = off;
    off += static_cast<std::size_t>(sizes[l] + 1) * sizes[l + 1];
  }

  for_each_row(data, batch, [&](std::size_t i) {
    mlp_forward(w, sizes, data.row(i), act);
    const auto& logits = act.back();
    const std::size_t target = label_class(data.label(i), arch.classes);
    const double peak = *std::max_element(logits.begin(), logits.end());
    double denom = 0.0;
    for (double z : logits) denom += std::exp(z - peak);
    const double log_norm = peak + std::log(denom);
    out.loss += log_norm - logits[target];

    delta.resize(logits.size());
    for (std::size_t c = 0; c < logits.size(); ++c) {
      delta[c] = std::exp(logits[c] - log_norm) - (c == target ? 1.0 : 0.0);
    }
    for (std::size_t l = layers; l-- > 0;) {
      const std::size_t in = sizes[l], outw = sizes[l + 1];
      double* gw = out.grad.data() + offsets[l];
      double* gb = gw + in * outw;
      const auto& input = act[l];
      for (std::size_t o = 0; o < outw; ++o) {
        double* grow = gw + o * in;
        for (std::size_t k = 0; k < in; ++k) grow[k] += delta[o] * input[k];
        gb[o] += delta[o];
      }
      if (l == 0) break;
      const double* weights = w.data() + offsets[l];
      prev_delta.assign(in, 0.0);
      for (std::size_t o = 0; o < outw; ++o) {
        const double* row = weights + o * in;
        for (std::size_t k = 0; k < in; ++k) prev_delta[k] += row[k] * delta[o];
      }
      for (std::size_t k = 0; k < in; ++k) prev_delta[k] *= 1.0 - input[k] * input[k];
      std::swap(delta, prev_delta);
    }
  });

  const double inv = 1.0 / static_cast<double>(batch_size(data, batch));
  out.loss *= inv;
  for (auto& g : out.grad) g *= inv;
  return out;
}

std::vector<int> mlp_predict(const DenseVector& w, const MlpArch& arch, const LabeledDataset& data) {
  validate_arch(arch);
  require_same_size(w.size(), arch.parameter_count(), "mlp parameters");
  require_same_size(static_cast<std::size_t>(arch.input_dim), data.dim(), "mlp input");
  const auto sizes = arch.layer_sizes();
  std::vector<std::vector<double>> act(sizes.size());
  std::vector<int> predictions(data.rows());
  for (std::size_t i = 0; i < data.rows(); ++i) {
    mlp_forward(w, sizes, data.row(i), act);
    const auto& logits = act.back();
    predictions[i] =
        static_cast<int>(std::max_element(logits.begin(), logits.end()) - logits.begin());
  }
  return predictions;
}

double mlp_accuracy(const DenseVector& w, const MlpArch& arch, const LabeledDataset& data) {
  if (data.rows() == 0) return 0.0;
  const auto predictions = mlp_predict(w, arch, data);
  std::size_t hits = 0;
  for (std::size_t i = 0; i < data.rows(); ++i) {
    if (static_cast<double>(predictions[i]) == data.label(i)) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(data.rows());
}

DenseVector mlp_init(const MlpArch& arch, std::uint64_t seed) {
  validate_arch(arch);
  const auto sizes = arch.layer_sizes();
  DenseVector w(arch.parameter_count());
  Rng rng(seed, 0x6D6C70ULL);
  std::size_t offset = 0;
  for (std::size_t l = 0; l + 1 < sizes.size(); ++l) {
    const std::size_t in = sizes[l], out = sizes[l + 1];
    const double limit = std::sqrt(6.0 / static_cast<double>(in + out));
    for (std::size_t i = 0; i < in * out; ++i) w[offset + i] = limit * (2.0 * rng.uniform() - 1.0);
    offset += (in + 1) * out;
  }
  return w;
}

std::size_t parameter_count(const LossModel& model) {
  return std::visit(
      [](const auto& m) -> std::size_t {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, MlpModel>) {
          return m.arch.parameter_count();
        } else {
          return m.data->dim();
        }
      },
      model);
}

std::size_t sample_count(const LossModel& model) {
  return std::visit([](const auto& m) { return m.data->rows(); }, model);
}

LossGrad evaluate(const LossModel& model, const DenseVector& w,
                  std::span<const std::size_t> batch) {
  return std::visit(
      [&](const auto& m) -> LossGrad {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, LogisticModel>) {
          return logistic_eval(w, *m.data, batch);
        } else if constexpr (std::is_same_v<T, LeastSquaresModel>) {
          return ls_eval(w, *m.data, batch);
        } else {
          return mlp_loss_grad(w, m.arch, *m.data, batch);
        }
      },
      model);
}

double finite_diff_check(const LossFn& loss, const GradFn& grad, const DenseVector& w, double step) {
  if (!(step > 0.0)) throw ParameterError("finite_diff_check: step must be positive");
  const DenseVector analytic = grad(w);
  require_same_size(analytic.size(), w.size(), "finite_diff_check");
  DenseVector probe = w;
  double worst = 0.0;
  for (std::size_t j = 0; j < w.size(); ++j) {
    probe[j] = w[j] + step;
    const double up = loss(probe);
    probe[j] = w[j] - step;
    const double down = loss(probe);
    probe[j] = w[j];
    const double numeric = (up - down) / (2.0 * step);
    const double scale = std::max({1.0, std::abs(analytic[j]), std::abs(numeric)});
    worst = std::max(worst, std::abs(analytic[j] - numeric) / scale);
  }
  return worst;
}

}  // namespace regtopk
