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

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "regtopk/datagen.hpp"
#include "regtopk/engine.hpp"
#include "regtopk/models.hpp"
#include "regtopk/sparsify.hpp"

namespace regtopk {

/// round(sparsity * dim), clamped to [1, dim].
std::size_t k_from_sparsity(double sparsity, std::size_t dim);

/// Shared run settings for the experiment drivers.
struct RunOptions {
  SparsifierConfig sparsifier;
  // When > 0, overrides sparsifier.k with k_from_sparsity.
  double sparsity = 0.0;
  double learning_rate = 0.01;
  std::int64_t iterations = 100;
  std::uint64_t seed = 0;
  unsigned threads = 1;
  unsigned value_bits = 64;
};

struct ExperimentRun {
  TrainResult train;
  std::size_t k = 0;
  std::vector<LabeledDataset> datasets;  // per worker, for --dump-data
  std::optional<DenseVector> w_star;
};

/// Two-worker logistic toy from w0 = [0, 1].
ExperimentRun run_toy_experiment(const RunOptions& opts);

/// Gaussian linear-regression corpus, full-batch training, gap to the exact
/// least-squares optimum.
ExperimentRun run_linreg_experiment(const LinRegGenConfig& data, const RunOptions& opts);

struct MlpExperimentConfig {
  ClusterGenConfig data;
  std::vector<int> hidden{128, 64};
  std::size_t batch = 20;
  std::int64_t eval_every = 50;
};

/// Mini-batch MLP training on Gaussian clusters; records carry held-out
/// accuracy. Data, initial weights and batch schedule depend only on the seed.
ExperimentRun run_mlp_experiment(const MlpExperimentConfig& cfg, const RunOptions& opts);

}  // namespace regtopk
