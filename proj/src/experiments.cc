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

#include "regtopk/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

#include "regtopk/errors.hpp"

namespace regtopk {

std::size_t k_from_sparsity(double sparsity, std::size_t dim) {
  if (!(sparsity > 0.0) || sparsity > 1.0) throw ParameterError("sparsity must lie in (0, 1]");
  const double k = std::round(sparsity * static_cast<double>(dim));
  return std::clamp<std::size_t>(static_cast<std::size_t>(k), 1, dim);
}

namespace {

TrainConfig make_train_config(const RunOptions& opts, std::size_t dim) {
  TrainConfig cfg;
  cfg.learning_rate = opts.learning_rate;
  cfg.iterations = opts.iterations;
  cfg.sparsifier = opts.sparsifier;
  if (opts.sparsity > 0.0) cfg.sparsifier.k = k_from_sparsity(opts.sparsity, dim);
  cfg.seed = opts.seed;
  cfg.threads = opts.threads;
  cfg.value_bits = opts.value_bits;
  return cfg;
}

}  // namespace

ExperimentRun run_toy_experiment(const RunOptions& opts) {
  auto [first, second] = gen_toy();
  ExperimentRun run;
  run.datasets = {first, second};
  const std::vector<LossModel> models{
      LogisticModel{std::make_shared<const LabeledDataset>(std::move(first))},
      LogisticModel{std::make_shared<const LabeledDataset>(std::move(second))}};
  const TrainConfig cfg = make_train_config(opts, 2);
  run.k = cfg.sparsifier.k;
  run.train = run_training(models, cfg, DenseVector{0.0, 1.0});
  return run;
}

ExperimentRun run_linreg_experiment(const LinRegGenConfig& data, const RunOptions& opts) {
  LinRegGenConfig gen = data;
  gen.seed = opts.seed;
  LinRegCorpus corpus = gen_linreg(gen);
  const auto dim = static_cast<std::size_t>(gen.dim);
  const TrainConfig cfg = make_train_config(opts, dim);
  const auto weights = cfg.resolved_weights(corpus.datasets.size());

  ExperimentRun run;
  run.k = cfg.sparsifier.k;
  run.w_star = ls_global_optimum(corpus.datasets, weights);
  std::vector<LossModel> models;
  models.reserve(corpus.datasets.size());
  for (const auto& d : corpus.datasets) {
    models.emplace_back(LeastSquaresModel{std::make_shared<const LabeledDataset>(d)});
  }
  run.train = run_training(models, cfg, DenseVector(dim), &*run.w_star);
  run.datasets = std::move(corpus.datasets);
  return run;
}

ExperimentRun run_mlp_experiment(const MlpExperimentConfig& cfg, const RunOptions& opts) {
  ClusterGenConfig gen = cfg.data;
  gen.seed = opts.seed;
  ClusterCorpus corpus = gen_clusters(gen);
  const MlpArch arch{gen.input_dim, cfg.hidden, gen.classes};
  const std::size_t dim = arch.parameter_count();

  TrainConfig train = make_train_config(opts, dim);
  train.batch_size = cfg.batch;
  train.eval_every = cfg.eval_every;

  std::vector<LossModel> models;
  models.reserve(corpus.worker_sets.size());
  for (const auto& d : corpus.worker_sets) {
    models.emplace_back(MlpModel{arch, std::make_shared<const LabeledDataset>(d)});
  }
  const auto test = std::make_shared<const LabeledDataset>(std::move(corpus.test_set));
  TrainHooks hooks;
  hooks.evaluator = [arch, test](const DenseVector& w) { return mlp_accuracy(w, arch, *test); };

  ExperimentRun run;
  run.k = train.sparsifier.k;
  run.train = run_training(models, train, mlp_init(arch, opts.seed), nullptr, hooks);
  run.datasets = std::move(corpus.worker_sets);
  return run;
}

}  // namespace regtopk
