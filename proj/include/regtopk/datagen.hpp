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
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "regtopk/vecmath.hpp"

namespace regtopk {

/// Deterministic random stream.
///
/// A stream is identified by (seed, stream_id). The pair is hashed with
/// SplitMix64 into the seed of a std::mt19937_64 engine, whose output is fully
/// specified by the standard. Uniform reals take the top 53 bits; normals use
/// the Box-Muller transform (cos branch first, sin branch cached). These
/// choices are frozen: changing any of them changes every generated dataset.
class Rng {
 public:
  explicit Rng(std::uint64_t seed, std::uint64_t stream_id = 0);

  std::uint64_t next_u64();
  /// Uniform in [0, 1).
  double uniform();
  /// Uniform integer in [0, n).
  std::uint64_t uniform_index(std::uint64_t n);
  double normal();
  double normal(double mean, double stddev) { return mean + stddev * normal(); }

 private:
  std::mt19937_64 engine_;
  bool has_cached_ = false;
  double cached_ = 0.0;
};

std::uint64_t splitmix64(std::uint64_t x);

/// Row-per-sample feature matrix with labels. For classification the labels
/// are class indices stored as doubles; for binary logistic they are +1/-1.
class LabeledDataset {
 public:
  LabeledDataset() = default;
  LabeledDataset(std::size_t rows, std::size_t dim, int worker_id = 0);
  LabeledDataset(std::vector<double> features, std::vector<double> labels, std::size_t dim,
                 int worker_id = 0);

  std::size_t rows() const { return labels_.size(); }
  std::size_t dim() const { return dim_; }
  int worker_id() const { return worker_id_; }

  std::span<const double> row(std::size_t i) const {
    return std::span<const double>(features_).subspan(i * dim_, dim_);
  }
  std::span<double> row(std::size_t i) { return std::span<double>(features_).subspan(i * dim_, dim_); }
  double label(std::size_t i) const { return labels_[i]; }
  double& label(std::size_t i) { return labels_[i]; }

  const std::vector<double>& features() const { return features_; }
  const std::vector<double>& labels() const { return labels_; }

  /// Dataset holding the given rows, in the given order.
  LabeledDataset subset(std::span<const std::size_t> indices) const;

  friend bool operator==(const LabeledDataset&, const LabeledDataset&) = default;

 private:
  std::vector<double> features_;
  std::vector<double> labels_;
  std::size_t dim_ = 0;
  int worker_id_ = 0;
};

/// The two-worker logistic toy: x1 = [100, 1], x2 = [-100, 1], both labelled 1.
std::pair<LabeledDataset, LabeledDataset> gen_toy();

struct LinRegGenConfig {
  int workers = 20;
  int per_worker = 500;
  int dim = 100;
  double mean_of_means = 0.0;  // U
  double var_of_means = 5.0;   // sigma^2
  double model_var = 1.0;      // h^2
  double noise_var = 0.5;      // label noise variance
  std::uint64_t seed = 0;

  void validate() const;
};

struct LinRegCorpus {
  std::vector<LabeledDataset> datasets;
  // Per-worker ground-truth model; diagnostics only.
  std::vector<DenseVector> ground_truths;
};

/// Gaussian linear-model corpus. Worker n draws from stream (seed, n): first
/// u_n ~ N(U, sigma^2), then t_n (dim entries ~ N(u_n, h^2)), then the
/// per_worker x dim features ~ N(0, 1), then per_worker noise terms.
LinRegCorpus gen_linreg(const LinRegGenConfig& cfg);

struct ClusterGenConfig {
  int classes = 4;
  int input_dim = 16;
  int workers = 8;
  int per_worker = 250;
  int test_samples = 1000;
  double separation = 0.4;  // stddev of class centres
  double noise = 1.0;       // within-class stddev
  std::uint64_t seed = 0;

  void validate() const;
};

struct ClusterCorpus {
  std::vector<LabeledDataset> worker_sets;
  LabeledDataset test_set;
};

/// Gaussian-cluster classification data. One pool of workers * per_worker
/// samples is drawn and split into contiguous equal shards.
ClusterCorpus gen_clusters(const ClusterGenConfig& cfg);

/// Writes `J D worker_id\n` followed by the D*J features and D labels as
/// little-endian float64.
void write_dataset(const std::string& path, const LabeledDataset& data);
LabeledDataset read_dataset(const std::string& path);

}  // namespace regtopk
