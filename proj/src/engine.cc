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

#include "regtopk/engine.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <numeric>
#include <thread>

#include "regtopk/datagen.hpp"
#include "regtopk/errors.hpp"

namespace regtopk {

void TrainConfig::validate(std::size_t workers) const {
  if (workers == 0) throw ParameterError("train: no workers");
  if (!(learning_rate > 0.0)) throw ParameterError("train: learning rate must be positive");
  if (iterations < 1) throw ParameterError("train: iterations must be >= 1");
  if (threads < 1) throw ParameterError("train: threads must be >= 1");
  if (eval_every < 1) throw ParameterError("train: eval_every must be >= 1");
  if (!weights.empty()) {
    require_same_size(weights.size(), workers, "train weights");
    for (double w : weights) {
      if (!(w >= 0.0)) throw ParameterError("train: weights must be non-negative");
    }
    const double total = std::accumulate(weights.begin(), weights.end(), 0.0);
    if (std::abs(total - 1.0) > 1e-12) throw ParameterError("train: weights must sum to 1");
  }
}

std::vector<double> TrainConfig::resolved_weights(std::size_t workers) const {
  if (!weights.empty()) return weights;
  return std::vector<double>(workers, 1.0 / static_cast<double>(workers));
}

DenseVector aggregate(std::span<const SparseGradient> grads, std::span<const double> weights) {
  require_same_size(grads.size(), weights.size(), "aggregate");
  if (grads.empty()) throw ParameterError("aggregate: no gradients");
  DenseVector out(grads.front().dim);
  for (std::size_t n = 0; n < grads.size(); ++n) {
    const auto& sg = grads[n];
    require_same_size(out.size(), sg.dim, "aggregate");
    sg.validate();
    for (std::size_t i = 0; i < sg.nnz(); ++i) out[sg.indices[i]] += weights[n] * sg.values[i];
  }
  return out;
}

DenseVector model_update(const DenseVector& w, const DenseVector& g, double eta) {
  return axpy(-eta, g, w);
}

DenseVector recover_gradient(const DenseVector& w_t, const DenseVector& w_next, double eta) {
  if (!(eta > 0.0)) throw ParameterError("recover_gradient: eta must be positive");
  require_same_size(w_t.size(), w_next.size(), "recover_gradient");
  DenseVector g(w_t.size());
  for (std::size_t i = 0; i < g.size(); ++i) g[i] = (w_t[i] - w_next[i]) / eta;
  return g;
}

double optimality_gap(const DenseVector& w, const DenseVector& w_star) {
  return l2_norm(subtract(w, w_star));
}

namespace {

// Epoch-wise shuffled mini-batches, one sampler per worker. The schedule
// depends only on (seed, worker, rows, batch), never on the model.
class BatchSampler {
 public:
  BatchSampler(std::uint64_t seed, std::size_t worker, std::size_t rows, std::size_t batch)
      : rng_(seed, 0xBA7C000000000000ULL + worker), order_(rows), batch_(batch) {
    std::iota(order_.begin(), order_.end(), std::size_t{0});
    cursor_ = rows;  // forces a shuffle on first use
  }

  bool full_batch() const { return batch_ == 0 || batch_ >= order_.size(); }

  std::span<const std::size_t> next() {
    if (full_batch()) return {};
    if (cursor_ + batch_ > order_.size()) {
      for (std::size_t i = order_.size(); i > 1; --i) {
        std::swap(order_[i - 1], order_[rng_.uniform_index(i)]);
      }
      cursor_ = 0;
    }
    std::span<const std::size_t> out(order_.data() + cursor_, batch_);
    cursor_ += batch_;
    return out;
  }

 private:
  Rng rng_;
  std::vector<std::size_t> order_;
  std::size_t batch_;
  std::size_t cursor_;
};

// Runs fn(i) for i in [0, count) on up to `threads` threads and rethrows the
// lowest-index failure.
template <typename Fn>
void parallel_for(std::size_t count, unsigned threads, Fn&& fn) {
  std::vector<std::exception_ptr> errors(count);
  auto guarded = [&](std::size_t i) {
    try {
      fn(i);
    } catch (...) {
      errors[i] = std::current_exception();
    }
  };
  const std::size_t lanes = std::min<std::size_t>(threads, count);
  if (lanes <= 1) {
    for (std::size_t i = 0; i < count; ++i) guarded(i);
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(lanes);
    for (std::size_t lane = 0; lane < lanes; ++lane) {
      pool.emplace_back([&, lane] {
        for (std::size_t i = lane; i < count; i += lanes) guarded(i);
      });
    }
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace

TrainResult run_training(std::span<const LossModel> models, const TrainConfig& cfg,
                         const DenseVector& w0, const DenseVector* w_star,
                         const TrainHooks& hooks) {
  const std::size_t workers = models.size();
  cfg.validate(workers);
  const std::size_t dim = w0.size();
  cfg.sparsifier.validate(dim);
  for (const auto& m : models) require_same_size(parameter_count(m), dim, "run_training model");
  if (w_star != nullptr) require_same_size(w_star->size(), dim, "run_training w_star");

  const auto weights = cfg.resolved_weights(workers);
  // kNone ships every index too, so it costs the same as k = J.
  const std::uint64_t bits_per_step = comm_bits(
      cfg.sparsifier.kind == SparsifierKind::kNone ? dim : cfg.sparsifier.k, dim, cfg.value_bits);

  std::vector<BatchSampler> samplers;
  samplers.reserve(workers);
  for (std::size_t n = 0; n < workers; ++n) {
    samplers.emplace_back(cfg.seed, n, sample_count(models[n]), cfg.batch_size);
  }

  TrainResult result;
  result.records.reserve(static_cast<std::size_t>(cfg.iterations) + 1);
  result.worker_states.reserve(workers);
  for (std::size_t n = 0; n < workers; ++n) {
    result.worker_states.push_back(WorkerState::initial(dim, weights[n]));
  }
  result.last_sent.resize(workers);

  DenseVector w = w0;
  DenseVector global_prev;
  bool have_global = false;
  std::uint64_t bits_cum = 0;
  std::vector<LossGrad> local(workers);
  std::vector<SparsifyOutcome> outcomes(workers);

  for (std::int64_t t = 0;; ++t) {
    const bool last = t == cfg.iterations;
    std::vector<std::span<const std::size_t>> batches(workers);
    for (std::size_t n = 0; n < workers; ++n) batches[n] = samplers[n].next();

    parallel_for(workers, cfg.threads, [&](std::size_t n) {
      local[n] = evaluate(models[n], w, batches[n]);
      require_finite(local[n].grad, "local gradient");
      if (last) return;
      const DenseVector* prev = nullptr;
      if (cfg.sparsifier.kind == SparsifierKind::kRegTopK && have_global) prev = &global_prev;
      outcomes[n] = sparsify_step(result.worker_states[n], local[n].grad, prev, cfg.sparsifier);
    });

    IterationRecord rec;
    rec.t = t;
    DenseVector full_grad(dim);
    for (std::size_t n = 0; n < workers; ++n) {
      rec.global_loss += weights[n] * local[n].loss;
      for (std::size_t j = 0; j < dim; ++j) full_grad[j] += weights[n] * local[n].grad[j];
    }
    if (!std::isfinite(rec.global_loss)) throw NumericError("run_training: non-finite loss");
    rec.grad_norm = l2_norm(full_grad);
    if (w_star != nullptr) rec.optimality_gap = optimality_gap(w, *w_star);
    rec.comm_bits_cum = bits_cum;
    if (hooks.evaluator && (last || t % cfg.eval_every == 0)) rec.accuracy = hooks.evaluator(w);
    result.records.push_back(rec);
    if (last) break;

    std::vector<SparseGradient> sent(workers);
    for (std::size_t n = 0; n < workers; ++n) {
      if (hooks.on_step) hooks.on_step(t, n, local[n].grad, outcomes[n].sent);
      sent[n] = std::move(outcomes[n].sent);
      result.worker_states[n] = std::move(outcomes[n].state);
    }
    global_prev = aggregate(sent, weights);
    require_finite(global_prev, "aggregate");
    have_global = true;
    w = model_update(w, global_prev, cfg.learning_rate);
    require_finite(w, "model update");
    bits_cum += bits_per_step * workers;
    result.last_sent = std::move(sent);
  }
  result.final_w = std::move(w);
  return result;
}

}  // namespace regtopk
