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

#include "regtopk/datagen.hpp"

#include <bit>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "regtopk/errors.hpp"

namespace regtopk {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

Rng::Rng(std::uint64_t seed, std::uint64_t stream_id)
    : engine_(splitmix64(seed ^ splitmix64(stream_id))) {}

std::uint64_t Rng::next_u64() { return engine_(); }

double Rng::uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

std::uint64_t Rng::uniform_index(std::uint64_t n) {
  if (n == 0) throw ParameterError("uniform_index: empty range");
  // Multiply-shift; bias is below 2^-64 * n and irrelevant here.
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(next_u64()) * n) >> 64);
}

double Rng::normal() {
  if (has_cached_) {
    has_cached_ = false;
    return cached_;
  }
  // 1 - uniform() lies in (0, 1], so the log is finite.
  const double u1 = 1.0 - uniform();
  const double u2 = uniform();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  cached_ = radius * std::sin(angle);
  has_cached_ = true;
  return radius * std::cos(angle);
}

LabeledDataset::LabeledDataset(std::size_t rows, std::size_t dim, int worker_id)
    : features_(rows * dim, 0.0), labels_(rows, 0.0), dim_(dim), worker_id_(worker_id) {}

LabeledDataset::LabeledDataset(std::vector<double> features, std::vector<double> labels,
                               std::size_t dim, int worker_id)
    : features_(std::move(features)), labels_(std::move(labels)), dim_(dim), worker_id_(worker_id) {
  if (features_.size() != labels_.size() * dim_) {
    throw DimensionError("LabeledDataset: feature count does not match rows * dim");
  }
}

LabeledDataset LabeledDataset::subset(std::span<const std::size_t> indices) const {
  LabeledDataset out(indices.size(), dim_, worker_id_);
  for (std::size_t i = 0; i < indices.size(); ++i) {
    const auto src = row(indices[i]);
    std::copy(src.begin(), src.end(), out.row(i).begin());
    out.label(i) = labels_[indices[i]];
  }
  return out;
}

std::pair<LabeledDataset, LabeledDataset> gen_toy() {
  return {LabeledDataset({100.0, 1.0}, {1.0}, 2, 1), LabeledDataset({-100.0, 1.0}, {1.0}, 2, 2)};
}

void LinRegGenConfig::validate() const {
  if (workers < 1 || per_worker < 1 || dim < 1) {
    throw ParameterError("LinRegGenConfig: workers, per_worker and dim must be >= 1");
  }
  if (!(var_of_means >= 0.0) || !(model_var >= 0.0) || !(noise_var >= 0.0)) {
    throw ParameterError("LinRegGenConfig: variances must be non-negative");
  }
}

LinRegCorpus gen_linreg(const LinRegGenConfig& cfg) {
  cfg.validate();
  const auto rows = static_cast<std::size_t>(cfg.per_worker);
  const auto dim = static_cast<std::size_t>(cfg.dim);
  const double mean_sd = std::sqrt(cfg.var_of_means);
  const double model_sd = std::sqrt(cfg.model_var);
  const double noise_sd = std::sqrt(cfg.noise_var);

  LinRegCorpus corpus;
  corpus.datasets.reserve(cfg.workers);
  corpus.ground_truths.reserve(cfg.workers);
  for (int n = 0; n < cfg.workers; ++n) {
    Rng rng(cfg.seed, static_cast<std::uint64_t>(n));
    const double u = rng.normal(cfg.mean_of_means, mean_sd);
    DenseVector truth(dim);
    for (auto& v : truth) v = rng.normal(u, model_sd);

    LabeledDataset data(rows, dim, n);
    for (std::size_t i = 0; i < rows; ++i) {
      for (auto& x : data.row(i)) x = rng.normal();
    }
    for (std::size_t i = 0; i < rows; ++i) {
      data.label(i) = dot(data.row(i), truth.span()) + rng.normal(0.0, noise_sd);
    }
    corpus.datasets.push_back(std::move(data));
    corpus.ground_truths.push_back(std::move(truth));
  }
  return corpus;
}

void ClusterGenConfig::validate() const {
  if (classes < 2 || input_dim < 1 || workers < 1 || per_worker < 1 || test_samples < 1) {
    throw ParameterError("ClusterGenConfig: sizes out of range");
  }
  if (!(separation >= 0.0) || !(noise >= 0.0)) {
    throw ParameterError("ClusterGenConfig: separation and noise must be non-negative");
  }
}

namespace {

constexpr std::uint64_t kCentreStream = 0xC3A5C85C97CB3127ULL;
constexpr std::uint64_t kTrainStream = 0xB492B66FBE98F273ULL;
constexpr std::uint64_t kTestStream = 0x9AE16A3B2F90404FULL;

LabeledDataset draw_cluster_samples(Rng& rng, const std::vector<DenseVector>& centres,
                                    std::size_t count, double noise) {
  const std::size_t dim = centres.front().size();
  LabeledDataset data(count, dim);
  for (std::size_t i = 0; i < count; ++i) {
    const auto cls = rng.uniform_index(centres.size());
    auto row = data.row(i);
    for (std::size_t d = 0; d < dim; ++d) row[d] = centres[cls][d] + noise * rng.normal();
    data.label(i) = static_cast<double>(cls);
  }
  return data;
}

}  // namespace

ClusterCorpus gen_clusters(const ClusterGenConfig& cfg) {
  cfg.validate();
  Rng centre_rng(cfg.seed, kCentreStream);
  std::vector<DenseVector> centres(cfg.classes, DenseVector(cfg.input_dim));
  for (auto& c : centres) {
    for (auto& v : c) v = cfg.separation * centre_rng.normal();
  }

  Rng train_rng(cfg.seed, kTrainStream);
  const auto shard = static_cast<std::size_t>(cfg.per_worker);
  const LabeledDataset pool =
      draw_cluster_samples(train_rng, centres, shard * cfg.workers, cfg.noise);

  ClusterCorpus corpus;
  std::vector<std::size_t> idx(shard);
  for (int n = 0; n < cfg.workers; ++n) {
    for (std::size_t i = 0; i < shard; ++i) idx[i] = n * shard + i;
    LabeledDataset part = pool.subset(idx);
    corpus.worker_sets.emplace_back(part.features(), part.labels(), part.dim(), n);
  }
  Rng test_rng(cfg.seed, kTestStream);
  corpus.test_set = draw_cluster_samples(test_rng, centres, cfg.test_samples, cfg.noise);
  return corpus;
}

namespace {

static_assert(std::endian::native == std::endian::little,
              "dataset dump assumes a little-endian host");

void write_doubles(std::ofstream& out, const std::vector<double>& v) {
  out.write(reinterpret_cast<const char*>(v.data()),
            static_cast<std::streamsize>(v.size() * sizeof(double)));
}

}  // namespace

void write_dataset(const std::string& path, const LabeledDataset& data) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path + " for writing");
  out << data.dim() << ' ' << data.rows() << ' ' << data.worker_id() << '\n';
  write_doubles(out, data.features());
  write_doubles(out, data.labels());
  if (!out) throw IoError("write failed: " + path);
}

LabeledDataset read_dataset(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::string header;
  std::getline(in, header);
  std::istringstream hs(header);
  std::size_t dim = 0, rows = 0;
  int worker = 0;
  if (!(hs >> dim >> rows >> worker)) throw IoError("malformed dataset header in " + path);
  std::vector<double> features(rows * dim), labels(rows);
  in.read(reinterpret_cast<char*>(features.data()),
          static_cast<std::streamsize>(features.size() * sizeof(double)));
  in.read(reinterpret_cast<char*>(labels.data()),
          static_cast<std::streamsize>(labels.size() * sizeof(double)));
  if (!in) throw IoError("truncated dataset file " + path);
  return LabeledDataset(std::move(features), std::move(labels), dim, worker);
}

}  // namespace regtopk
