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
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "regtopk/vecmath.hpp"

namespace regtopk {

/// Selected coordinates of a J-vector, sorted ascending without duplicates.
struct Mask {
  std::size_t dim = 0;
  std::vector<std::size_t> indices;

  bool contains(std::size_t j) const;
  /// Dense 0/1 indicator.
  std::vector<std::uint8_t> indicator() const;

  friend bool operator==(const Mask&, const Mask&) = default;
};

/// What a worker transmits: the values of the accumulated gradient at the
/// masked coordinates.
struct SparseGradient {
  std::size_t dim = 0;
  std::vector<std::size_t> indices;
  std::vector<double> values;

  std::size_t nnz() const { return indices.size(); }
  void validate() const;

  friend bool operator==(const SparseGradient&, const SparseGradient&) = default;
};

enum class SparsifierKind { kNone, kTopK, kRegTopK };

/// Which accumulated vector divides the distortion numerator.
///
/// kPrevious: (g^{t-1} - w a^{t-1}) / (w a^{t-1}), so 1 + delta is the ratio
///   of the broadcast aggregate to this worker's own weighted contribution.
/// kCurrent:  (g^{t-1} - w a^{t-1}) / (w a^t), the literal pseudocode form.
enum class DistortionDenominator { kPrevious, kCurrent };

struct SparsifierConfig {
  SparsifierKind kind = SparsifierKind::kTopK;
  std::size_t k = 1;
  double mu = 0.5;
  double q = 1.0;
  double div_tol = 1e-12;
  DistortionDenominator denominator = DistortionDenominator::kPrevious;

  /// Throws ParameterError unless 1 <= k <= dim (sparsifying kinds), mu > 0
  /// and div_tol > 0.
  void validate(std::size_t dim) const;
};

/// Per-worker sparsifier memory.
struct WorkerState {
  DenseVector error;       // carried sparsification error
  DenseVector prev_accum;  // accumulated gradient of the previous step
  Mask prev_mask;
  double weight = 1.0;     // aggregation weight of this worker
  std::int64_t iteration = 0;

  static WorkerState initial(std::size_t dim, double weight);
};

/// Indices of the k largest |x_i|; equal magnitudes go to the lower index.
Mask top_k_mask(std::span<const double> x, std::size_t k);
inline Mask top_k_mask(const DenseVector& x, std::size_t k) { return top_k_mask(x.span(), k); }

/// a = error + g.
DenseVector accumulate(const DenseVector& error, const DenseVector& g);

/// Per-coordinate distortion between last round's broadcast aggregate and
/// this worker's own weighted contribution. Coordinates outside the previous
/// mask get cfg.q; masked coordinates whose denominator is below cfg.div_tol
/// in magnitude get 0.
DenseVector posterior_distortion(const WorkerState& state, const DenseVector& accum,
                                 const DenseVector& global_prev, const SparsifierConfig& cfg);

/// tanh(|1 + delta| / mu).
double regularizer(double delta, double mu);

struct SparsifyOutcome {
  SparseGradient sent;
  WorkerState state;
  DenseVector accum;  // the accumulated gradient this step worked on
};

/// One worker-side sparsification step.
///
/// `global_prev` is the previous broadcast aggregate. It must be supplied
/// exactly when cfg.kind is kRegTopK and state.iteration >= 1; anything else
/// is a ProtocolError. Selection uses the regularized accumulator but the
/// transmitted values are always the raw accumulated entries.
SparsifyOutcome sparsify_step(const WorkerState& state, const DenseVector& local_grad,
                              const DenseVector* global_prev, const SparsifierConfig& cfg);

DenseVector densify(const SparseGradient& sg);

/// Bits to send k (value, index) pairs out of J: k * (value_bits + ceil(log2 J)).
std::uint64_t comm_bits(std::size_t k, std::size_t dim, unsigned value_bits);

/// Text encoding: `J k` on the first line, then one `index value` line per
/// entry with the value at 17 significant digits.
void write_sparse_gradient(std::ostream& out, const SparseGradient& sg);
SparseGradient read_sparse_gradient(std::istream& in);

std::string to_string(SparsifierKind kind);
SparsifierKind parse_sparsifier_kind(const std::string& name);

}  // namespace regtopk
