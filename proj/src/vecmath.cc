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

#include "regtopk/vecmath.hpp"

#include <cmath>
#include <string>

#include "regtopk/errors.hpp"

namespace regtopk {

SpdMatrix SpdMatrix::identity(std::size_t dim) {
  SpdMatrix m(dim);
  for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
  return m;
}

DenseVector SpdMatrix::multiply(const DenseVector& x) const {
  require_same_size(dim_, x.size(), "SpdMatrix::multiply");
  DenseVector out(dim_);
  for (std::size_t r = 0; r < dim_; ++r) {
    out[r] = dot(std::span<const double>(values_).subspan(r * dim_, dim_), x.span());
  }
  return out;
}

void require_same_size(std::size_t a, std::size_t b, const char* what) {
  if (a != b) {
    throw DimensionError(std::string(what) + ": length mismatch (" + std::to_string(a) +
                         " vs " + std::to_string(b) + ")");
  }
}

double dot(std::span<const double> x, std::span<const double> y) {
  require_same_size(x.size(), y.size(), "dot");
  double acc = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) acc += x[i] * y[i];
  return acc;
}

DenseVector axpy(double alpha, const DenseVector& x, const DenseVector& y) {
  require_same_size(x.size(), y.size(), "axpy");
  DenseVector out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = alpha * x[i] + y[i];
  return out;
}

DenseVector add(const DenseVector& x, const DenseVector& y) {
  require_same_size(x.size(), y.size(), "add");
  DenseVector out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = x[i] + y[i];
  return out;
}

DenseVector subtract(const DenseVector& x, const DenseVector& y) {
  require_same_size(x.size(), y.size(), "subtract");
  DenseVector out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = x[i] - y[i];
  return out;
}

DenseVector scale(double alpha, const DenseVector& x) {
  DenseVector out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = alpha * x[i];
  return out;
}

double l2_norm(std::span<const double> x) {
  double acc = 0.0;
  for (double v : x) acc += v * v;
  return std::sqrt(acc);
}

bool has_nan(const DenseVector& x) {
  for (double v : x) {
    if (std::isnan(v)) return true;
  }
  return false;
}

void require_finite(const DenseVector& x, const char* where) {
  for (double v : x) {
    if (!std::isfinite(v)) throw NumericError(std::string(where) + ": non-finite value");
  }
}

DenseVector solve_spd(const SpdMatrix& a, const DenseVector& b) {
  const std::size_t n = a.dim();
  require_same_size(n, b.size(), "solve_spd");

  // Lower-triangular factor L with A = L L^T, stored row-major.
  std::vector<double> l(n * n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    double diag = a(j, j);
    for (std::size_t p = 0; p < j; ++p) diag -= l[j * n + p] * l[j * n + p];
    if (!(diag > 0.0)) {
      throw IndefiniteMatrixError("solve_spd: non-positive pivot at column " + std::to_string(j));
    }
    const double ljj = std::sqrt(diag);
    l[j * n + j] = ljj;
    for (std::size_t i = j + 1; i < n; ++i) {
      double s = a(i, j);
      for (std::size_t p = 0; p < j; ++p) s -= l[i * n + p] * l[j * n + p];
      l[i * n + j] = s / ljj;
    }
  }

  DenseVector y(n);
  for (std::size_t i = 0; i < n; ++i) {
    double s = b[i];
    for (std::size_t p = 0; p < i; ++p) s -= l[i * n + p] * y[p];
    y[i] = s / l[i * n + i];
  }
  DenseVector x(n);
  for (std::size_t i = n; i-- > 0;) {
    double s = y[i];
    for (std::size_t p = i + 1; p < n; ++p) s -= l[p * n + i] * x[p];
    x[i] = s / l[i * n + i];
  }
  return x;
}

}  // namespace regtopk
