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
#include <initializer_list>
#include <span>
#include <vector>

namespace regtopk {

/// Fixed-length vector of doubles. Carries weights, gradients and errors.
class DenseVector {
 public:
  DenseVector() = default;
  explicit DenseVector(std::size_t n, double fill = 0.0) : values_(n, fill) {}
  DenseVector(std::initializer_list<double> init) : values_(init) {}
  explicit DenseVector(std::vector<double> values) : values_(std::move(values)) {}

  std::size_t size() const { return values_.size(); }
  bool empty() const { return values_.empty(); }

  double& operator[](std::size_t i) { return values_[i]; }
  double operator[](std::size_t i) const { return values_[i]; }

  double* data() { return values_.data(); }
  const double* data() const { return values_.data(); }

  std::span<double> span() { return values_; }
  std::span<const double> span() const { return values_; }

  auto begin() { return values_.begin(); }
  auto end() { return values_.end(); }
  auto begin() const { return values_.begin(); }
  auto end() const { return values_.end(); }

  const std::vector<double>& values() const { return values_; }

  friend bool operator==(const DenseVector&, const DenseVector&) = default;

 private:
  std::vector<double> values_;
};

/// Dense symmetric positive definite matrix, row-major.
class SpdMatrix {
 public:
  SpdMatrix() = default;
  explicit SpdMatrix(std::size_t dim) : dim_(dim), values_(dim * dim, 0.0) {}

  static SpdMatrix identity(std::size_t dim);

  std::size_t dim() const { return dim_; }
  double& operator()(std::size_t r, std::size_t c) { return values_[r * dim_ + c]; }
  double operator()(std::size_t r, std::size_t c) const { return values_[r * dim_ + c]; }

  DenseVector multiply(const DenseVector& x) const;

 private:
  std::size_t dim_ = 0;
  std::vector<double> values_;
};

// Throws DimensionError when lengths differ.
void require_same_size(std::size_t a, std::size_t b, const char* what);

/// Sum of x[i]*y[i], accumulated left to right.
double dot(std::span<const double> x, std::span<const double> y);
inline double dot(const DenseVector& x, const DenseVector& y) { return dot(x.span(), y.span()); }

/// alpha*x + y.
DenseVector axpy(double alpha, const DenseVector& x, const DenseVector& y);

DenseVector add(const DenseVector& x, const DenseVector& y);
DenseVector subtract(const DenseVector& x, const DenseVector& y);
DenseVector scale(double alpha, const DenseVector& x);

double l2_norm(std::span<const double> x);
inline double l2_norm(const DenseVector& x) { return l2_norm(x.span()); }

bool has_nan(const DenseVector& x);
// Throws NumericError naming `where` if x holds NaN or inf.
void require_finite(const DenseVector& x, const char* where);

/// Solves A x = b by Cholesky factorization. Throws IndefiniteMatrixError on a
/// non-positive pivot.
DenseVector solve_spd(const SpdMatrix& a, const DenseVector& b);

}  // namespace regtopk
