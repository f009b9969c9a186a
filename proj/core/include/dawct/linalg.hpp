// Copyright 2026 The dawct Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "dawct/tensor.hpp"

namespace dawct {

// Dense row-major matrix of doubles. Only what the whitening and coloring
// transform needs; not a general linear algebra type.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0);
  Matrix(std::size_t rows, std::size_t cols, std::vector<double> values);

  static Matrix identity(std::size_t n);
  static Matrix diagonal(std::span<const double> d);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  double operator()(std::size_t i, std::size_t j) const noexcept { return v_[i * cols_ + j]; }
  double& operator()(std::size_t i, std::size_t j) noexcept { return v_[i * cols_ + j]; }
  std::span<const double> values() const noexcept { return v_; }

  bool operator==(const Matrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> v_;
};

Matrix operator*(const Matrix& a, const Matrix& b);
Matrix operator-(const Matrix& a, const Matrix& b);
Matrix transpose(const Matrix& m);
double frobenius_norm(const Matrix& m);

// Channel mean and (n-1)-normalized covariance.
struct StyleStats {
  std::vector<double> mean;
  Matrix cov;

  std::size_t channels() const noexcept { return mean.size(); }
};

// Statistics over all pixels, or over the pixels selected by `mask`
// (mask dimensions must equal the tensor's spatial dimensions). Throws
// DegenerateStatistics when fewer than 2 pixels are available.
StyleStats compute_stats(const FeatureTensor& t);
StyleStats compute_stats(const FeatureTensor& t, const BinaryMask& mask);

struct EigenDecomposition {
  std::vector<double> values;  // descending
  Matrix vectors;              // column k pairs with values[k]
};

// Cyclic Jacobi eigensolver for symmetric matrices. Each eigenvector is
// normalized so its largest-magnitude component is positive.
// Throws InvalidArgument if m is not symmetric to 1e-9 relative Frobenius,
// NumericalFailure if 100 sweeps do not reach an off-diagonal norm of
// 1e-12 * ||m||_F.
EigenDecomposition sym_eigen(const Matrix& m);

enum class HalfPower { kRoot = +1, kInverseRoot = -1 };

// V * diag(max(lambda, eps))^(+-1/2) * V^T, exactly symmetric.
Matrix mat_pow_half(const Matrix& m, HalfPower power, double eps);

// Default eigenvalue floor: rel * max(trace / C, 1e-12).
double regularization_eps(const Matrix& cov, double rel = 1e-5);

// out(p) = offset_after + m * (in(p) - offset_before) for every pixel p.
FeatureTensor apply_affine(const FeatureTensor& t, const Matrix& m,
                           std::span<const double> offset_before,
                           std::span<const double> offset_after);

// C^{-1/2} (f - mu).
FeatureTensor whiten(const FeatureTensor& t, const StyleStats& stats, double eps);
// mu + C^{1/2} f.
FeatureTensor color(const FeatureTensor& t_whitened, const StyleStats& stats, double eps);

}  // namespace dawct
