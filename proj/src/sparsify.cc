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

#include "regtopk/sparsify.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <iomanip>
#include <istream>
#include <numeric>
#include <ostream>

#include "regtopk/errors.hpp"

namespace regtopk {

bool Mask::contains(std::size_t j) const {
  return std::binary_search(indices.begin(), indices.end(), j);
}

std::vector<std::uint8_t> Mask::indicator() const {
  std::vector<std::uint8_t> out(dim, 0);
  for (std::size_t j : indices) out[j] = 1;
  return out;
}

void SparseGradient::validate() const {
  if (indices.size() != values.size()) {
    throw DimensionError("SparseGradient: index and value counts differ");
  }
  for (std::size_t i = 0; i < indices.size(); ++i) {
    if (indices[i] >= dim) throw DimensionError("SparseGradient: index out of range");
    if (i > 0 && indices[i] <= indices[i - 1]) {
      throw ParameterError("SparseGradient: indices must be strictly increasing");
    }
  }
}

void SparsifierConfig::validate(std::size_t dim) const {
  if (kind != SparsifierKind::kNone && (k < 1 || k > dim)) {
    throw ParameterError("sparsifier: k=" + std::to_string(k) + " outside [1, " +
                         std::to_string(dim) + "]");
  }
  if (!(mu > 0.0)) throw ParameterError("sparsifier: mu must be positive");
  if (!(div_tol > 0.0)) throw ParameterError("sparsifier: div_tol must be positive");
  if (!std::isfinite(q)) throw ParameterError("sparsifier: q must be finite");
}

WorkerState WorkerState::initial(std::size_t dim, double weight) {
  WorkerState s;
  s.error = DenseVector(dim);
  s.prev_accum = DenseVector(dim);
  s.prev_mask.dim = dim;
  s.weight = weight;
  return s;
}

Mask top_k_mask(std::span<const double> x, std::size_t k) {
  const std::size_t dim = x.size();
  if (k < 1 || k > dim) {
    throw ParameterError("top_k_mask: k=" + std::to_string(k) + " outside [1, " +
                         std::to_string(dim) + "]");
  }
  Mask mask{dim, std::vector<std::size_t>(dim)};
  std::iota(mask.indices.begin(), mask.indices.end(), std::size_t{0});
  if (k < dim) {
    for (double v : x) {
      if (std::isnan(v)) throw NumericError("top_k_mask: NaN entry");
    }
    // Total order: larger magnitude first, then lower index.
    const auto before = [&](std::size_t a, std::size_t b) {
      const double ma = std::abs(x[a]), mb = std::abs(x[b]);
      return ma > mb || (ma == mb && a < b);
    };
    std::nth_element(mask.indices.begin(), mask.indices.begin() + static_cast<std::ptrdiff_t>(k),
                     mask.indices.end(), before);
    mask.indices.resize(k);
    std::sort(mask.indices.begin(), mask.indices.end());
  }
  return mask;
}

DenseVector accumulate(const DenseVector& error, const DenseVector& g) { return add(error, g); }

DenseVector posterior_distortion(const WorkerState& state, const DenseVector& accum,
                                 const DenseVector& global_prev, const SparsifierConfig& cfg) {
  const std::size_t dim = accum.size();
  require_same_size(dim, state.prev_accum.size(), "posterior_distortion prev_accum");
  require_same_size(dim, global_prev.size(), "posterior_distortion global_prev");
  DenseVector delta(dim, cfg.q);
  const double w = state.weight;
  const DenseVector& base =
      cfg.denominator == DistortionDenominator::kPrevious ? state.prev_accum : accum;
  for (std::size_t j : state.prev_mask.indices) {
    const double denom = w * base[j];
    delta[j] = std::abs(denom) < cfg.div_tol
                   ? 0.0
                   : (global_prev[j] - w * state.prev_accum[j]) / denom;
  }
  return delta;
}

double regularizer(double delta, double mu) {
  if (!(mu > 0.0)) throw ParameterError("regularizer: mu must be positive");
  return std::tanh(std::abs(1.0 + delta) / mu);
}

SparsifyOutcome sparsify_step(const WorkerState& state, const DenseVector& local_grad,
                              const DenseVector* global_prev, const SparsifierConfig& cfg) {
  const std::size_t dim = local_grad.size();
  cfg.validate(dim);
  require_same_size(dim, state.error.size(), "sparsify_step");

  const bool wants_global = cfg.kind == SparsifierKind::kRegTopK && state.iteration >= 1;
  if (wants_global && global_prev == nullptr) {
    throw ProtocolError("sparsify_step: RegTop-k needs the previous aggregate after step 0");
  }
  if (!wants_global && global_prev != nullptr) {
    throw ProtocolError("sparsify_step: previous aggregate supplied where it is not used");
  }

  SparsifyOutcome out;
  out.accum = accumulate(state.error, local_grad);
  require_finite(out.accum, "sparsify_step");

  Mask mask;
  switch (cfg.kind) {
    case SparsifierKind::kNone:
      mask = top_k_mask(out.accum, dim);
      break;
    case SparsifierKind::kTopK:
      mask = top_k_mask(out.accum, cfg.k);
      break;
    case SparsifierKind::kRegTopK:
      if (!wants_global) {
        mask = top_k_mask(out.accum, cfg.k);
      } else {
        const DenseVector delta = posterior_distortion(state, out.accum, *global_prev, cfg);
        DenseVector scored(dim);
        for (std::size_t j = 0; j < dim; ++j) {
          scored[j] = out.accum[j] * regularizer(delta[j], cfg.mu);
        }
        mask = top_k_mask(scored, cfg.k);
      }
      break;
  }

  out.sent.dim = dim;
  out.sent.indices = mask.indices;
  out.sent.values.reserve(mask.indices.size());
  out.state.error = out.accum;
  for (std::size_t j : mask.indices) {
    out.sent.values.push_back(out.accum[j]);
    out.state.error[j] = 0.0;
  }
  out.state.prev_accum = out.accum;
  out.state.prev_mask = std::move(mask);
  out.state.weight = state.weight;
  out.state.iteration = state.iteration + 1;
  return out;
}

DenseVector densify(const SparseGradient& sg) {
  sg.validate();
  DenseVector out(sg.dim);
  for (std::size_t i = 0; i < sg.indices.size(); ++i) out[sg.indices[i]] = sg.values[i];
  return out;
}

std::uint64_t comm_bits(std::size_t k, std::size_t dim, unsigned value_bits) {
  if (k > dim) throw ParameterError("comm_bits: k exceeds dim");
  if (value_bits == 0) throw ParameterError("comm_bits: value_bits must be positive");
  const std::uint64_t index_bits = dim <= 1 ? 0 : std::bit_width(dim - 1);
  return static_cast<std::uint64_t>(k) * (value_bits + index_bits);
}

void write_sparse_gradient(std::ostream& out, const SparseGradient& sg) {
  sg.validate();
  out << sg.dim << ' ' << sg.nnz() << '\n';
  const auto old_precision = out.precision(17);
  for (std::size_t i = 0; i < sg.nnz(); ++i) out << sg.indices[i] << ' ' << sg.values[i] << '\n';
  out.precision(old_precision);
}

SparseGradient read_sparse_gradient(std::istream& in) {
  SparseGradient sg;
  std::size_t count = 0;
  if (!(in >> sg.dim >> count)) throw IoError("sparse gradient: bad header");
  sg.indices.resize(count);
  sg.values.resize(count);
  for (std::size_t i = 0; i < count; ++i) {
    if (!(in >> sg.indices[i] >> sg.values[i])) throw IoError("sparse gradient: truncated body");
  }
  sg.validate();
  return sg;
}

std::string to_string(SparsifierKind kind) {
  switch (kind) {
    case SparsifierKind::kNone:
      return "none";
    case SparsifierKind::kTopK:
      return "topk";
    case SparsifierKind::kRegTopK:
      return "regtopk";
  }
  return "?";
}

SparsifierKind parse_sparsifier_kind(const std::string& name) {
  if (name == "none") return SparsifierKind::kNone;
  if (name == "topk") return SparsifierKind::kTopK;
  if (name == "regtopk") return SparsifierKind::kRegTopK;
  throw ParameterError("unknown sparsifier '" + name + "'");
}

}  // namespace regtopk
