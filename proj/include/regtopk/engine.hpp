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
#include <optional>
#include <span>
#include <vector>

#include "regtopk/models.hpp"
#include "regtopk/sparsify.hpp"
#include "regtopk/vecmath.hpp"

namespace regtopk {

struct TrainConfig {
  double learning_rate = 0.01;
  std::int64_t iterations = 1;
  // Aggregation weights; empty means uniform 1/N.
  std::vector<double> weights;
  SparsifierConfig sparsifier;
  // Rows per local mini-batch; 0 means full batch.
  std::size_t batch_size = 0;
  std::uint64_t seed = 0;
  // Worker evaluations per round are spread over this many threads.
  unsigned threads = 1;
  unsigned value_bits = 64;
  // Evaluator cadence; the final iterate is always evaluated.
  std::int64_t eval_every = 1;

  void validate(std::size_t workers) const;
  std::vector<double> resolved_weights(std::size_t workers) const;
};

/// Metrics of the iterate w^t, taken before the step at t.
struct IterationRecord {
  std::int64_t t = 0;
  // sum_n w_n F_n(w^t) over the rows each worker used at t.
  double global_loss = 0.0;
  std::optional<double> optimality_gap;
  // Bits uploaded by all workers in steps 0 .. t-1.
  std::uint64_t comm_bits_cum = 0;
  // || sum_n w_n grad F_n(w^t) || on the same rows, before sparsification.
  double grad_norm = 0.0;
  std::optional<double> accuracy;

  friend bool operator==(const IterationRecord&, const IterationRecord&) = default;
};

struct TrainResult {
  std::vector<IterationRecord> records;  // T + 1 entries
  DenseVector final_w;
  std::vector<WorkerState> worker_states;
  std::vector<SparseGradient> last_sent;  // per worker, from step T-1
};

using Evaluator = std::function<double(const DenseVector&)>;
/// Called once per worker per step, in worker order, after the step's
/// parallel phase.
using StepObserver = std::function<void(std::int64_t t, std::size_t worker,
                                        const DenseVector& local_grad, const SparseGradient& sent)>;

struct TrainHooks {
  Evaluator evaluator;
  StepObserver on_step;
};

/// sum_n weights[n] * densify(grads[n]), reduced in worker order.
DenseVector aggregate(std::span<const SparseGradient> grads, std::span<const double> weights);

/// w - eta * g.
DenseVector model_update(const DenseVector& w, const DenseVector& g, double eta);

/// The gradient that model_update turned w_t into w_next: (w_t - w_next) / eta.
DenseVector recover_gradient(const DenseVector& w_t, const DenseVector& w_next, double eta);

double optimality_gap(const DenseVector& w, const DenseVector& w_star);

/// Synchronous data-parallel training with per-worker sparsification.
///
/// Each round every worker evaluates its local gradient at the shared iterate,
/// runs its sparsifier (RegTop-k workers see the previous broadcast
/// aggregate), and the server averages the sparse messages and takes a
/// gradient step. Results do not depend on cfg.threads.
TrainResult run_training(std::span<const LossModel> models, const TrainConfig& cfg,
                         const DenseVector& w0, const DenseVector* w_star = nullptr,
                         const TrainHooks& hooks = {});

}  // namespace regtopk
