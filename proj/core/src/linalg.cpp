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

#include "dawct/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>
#include <utility>

#include "dawct/error.hpp"
#include "dawct/parallel.hpp"

namespace dawct {
namespace {

constexpr int kMaxSweeps = 100;
constexpr double kConvergence = 1e-12;
constexpr double kSymmetryTol = 1e-9;

double off_diagonal_norm(const Matrix& a) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (i != j) s += a(i, j) * a(i, j);
    }
  }
  return std::sqrt(s);
}

void check_channels(const FeatureTensor& t, const StyleStats& s, const char* what) {
  if (static_cast<std::size_t>(t.channels()) != s.channels() || s.cov.rows() != s.channels()) {
    throw InvalidArgument(std::string(what) + ": tensor has " + std::to_string(t.channels()) +
                          " channels, statistics have " + std::to_string(s.channels()));
  }
}

// Stats over the pixel indices in `idx` (or all pixels when idx is empty
// and n == pixel_count).
StyleStats stats_over(const FeatureTensor& t, const std::vector<std::size_t>* idx) {
  const std::size_t n = idx ? idx->size() : t.pixel_count();
  if (n < 2) {
    throw DegenerateStatistics("compute_stats: need at least 2 pixels, got " + std::to_string(n));
  }
  const auto c = static_cast<std::size_t>(t.channels());

  // Centered samples, one contiguous row per channel.
  std::vector<double> centered(c * n);
  std::vector<double> mean(c, 0.0);
  for (std::size_t ch = 0; ch < c; ++ch) {
    auto src = t.channel(static_cast<int>(ch));
    double* row = centered.data() + ch * n;
    if (idx) {
      for (std::size_t k = 0; k < n; ++k) row[k] = src[(*idx)[k]];
    } else {
      std::copy(src.begin(), src.end(), row);
    }
    double sum = 0.0;
    for (std::size_t k = 0; k < n; ++k) sum += row[k];
    mean[ch] = sum / static_cast<double>(n);
    for (std::size_t k = 0; k < n; ++k) row[k] -= mean[ch];
  }

  Matrix cov(c, c);
  const double denom = static_cast<double>(n - 1);
  parallel_for(c, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      const double* ri = centered.data() + i * n;
      for (std::size_t j = i; j < c; ++j) {
        const double* rj = centered.data() + j * n;
        double s = 0.0;
        for (std::size_t k = 0; k < n; ++k) s += ri[k] * rj[k];
        cov(i, j) = s / denom;
      }
    }
  });
  for (std::size_t i = 0; i < c; ++i) {
    for (std::size_t j = 0; j < i; ++j) cov(i, j) = cov(j, i);
  }
  return StyleStats{std::move(mean), std::move(cov)};
}

}  // namespace

Matrix::Matrix(std::size_t rows, std::size_t cols, double fill)
    : rows_(rows), cols_(cols), v_(rows * cols, fill) {}

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<double> values)
    : rows_(rows), cols_(cols), v_(std::move(values)) {
  if (v_.size() != rows * cols) throw InvalidArgument("Matrix: value count does not match shape");
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::diagonal(std::span<const double> d) {
  Matrix m(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) throw InvalidArgument("Matrix product: inner dimensions differ");
  Matrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const double aik = a(i, k);
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += aik * b(k, j);
    }
  }
  return out;
}

Matrix operator-(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw InvalidArgument("Matrix difference: shapes differ");
  }
  Matrix out(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = a(i, j) - b(i, j);
  }
  return out;
}

Matrix transpose(const Matrix& m) {
  Matrix out(m.cols(), m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) out(j, i) = m(i, j);
  }
  return out;
}

double frobenius_norm(const Matrix& m) {
  double s = 0.0;
  for (double v : m.values()) s += v * v;
  return std::sqrt(s);
}

StyleStats compute_stats(const FeatureTensor& t) { return stats_over(t, nullptr); }

StyleStats compute_stats(const FeatureTensor& t, const BinaryMask& mask) {
  if (mask.height() != t.height() || mask.width() != t.width()) {
    throw InvalidArgument("compute_stats: mask dimensions do not match tensor");
  }
  std::vector<std::size_t> idx;
  idx.reserve(mask.count());
  for (std::size_t i = 0; i < mask.size(); ++i) {
    if (mask.selected(i)) idx.push_back(i);
  }
  return stats_over(t, &idx);
}

EigenDecomposition sym_eigen(const Matrix& m) {
  const std::size_t n = m.rows();
  if (m.cols() != n) throw InvalidArgument("sym_eigen: matrix is not square");
  const double norm = frobenius_norm(m);
  if (!std::isfinite(norm)) throw InvalidArgument("sym_eigen: non-finite matrix entry");

  // Work on the symmetrized copy.
  Matrix a(n, n);
  double asym = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double d = m(i, j) - m(j, i);
      asym += d * d;
      a(i, j) = 0.5 * (m(i, j) + m(j, i));
    }
  }
  if (std::sqrt(asym) > kSymmetryTol * norm) {
    throw InvalidArgument("sym_eigen: matrix is not symmetric");
  }

  Matrix v = Matrix::identity(n);
  const double threshold = kConvergence * norm;
  bool converged = false;
  for (int sweep = 0; sweep <= kMaxSweeps; ++sweep) {
    if (off_diagonal_norm(a) <= threshold) {
      converged = true;
      break;
    }
    if (sweep == kMaxSweeps) break;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        double t;
        if (std::abs(theta) > 1e150) {
          t = 0.5 / theta;
        } else {
          t = std::copysign(1.0, theta) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        }
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;

        for (std::size_t k = 0; k < n; ++k) {
          if (k == p || k == q) continue;
          const double akp = a(k, p);
          const double akq = a(k, q);
          a(k, p) = a(p, k) = c * akp - s * akq;
          a(k, q) = a(q, k) = s * akp + c * akq;
        }
        a(p, p) -= t * apq;
        a(q, q) += t * apq;
        a(p, q) = a(q, p) = 0.0;

        for (std::size_t k = 0; k < n; ++k) {
          const double vkp = v(k, p);
          const double vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
    }
  }
  if (!converged) {
    throw NumericalFailure("sym_eigen: Jacobi iteration did not converge in " +
                           std::to_string(kMaxSweeps) + " sweeps");
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return a(i, i) > a(j, j); });

  EigenDecomposition out{std::vector<double>(n), Matrix(n, n)};
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t src = order[k];
    out.values[k] = a(src, src);
    std::size_t arg = 0;
    for (std::size_t i = 1; i < n; ++i) {
      if (std::abs(v(i, src)) > std::abs(v(arg, src))) arg = i;
    }
    const double sign = v(arg, src) < 0.0 ? -1.0 : 1.0;
    for (std::size_t i = 0; i < n; ++i) out.vectors(i, k) = sign * v(i, src);
  }
  return out;
}

Matrix mat_pow_half(const Matrix& m, HalfPower power, double eps) {
  if (!(eps > 0.0)) throw InvalidArgument("mat_pow_half: eps must be positive");
  const auto eig = sym_eigen(m);
  const std::size_t n = m.rows();
  std::vector<double> f(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double lambda = std::max(eig.values[k], eps);
    f[k] = power == HalfPower::kRoot ? std::sqrt(lambda) : 1.0 / std::sqrt(lambda);
  }
  Matrix out(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k < n; ++k) s += eig.vectors(i, k) * f[k] * eig.vectors(j, k);
      out(i, j) = out(j, i) = s;
    }
  }
  return out;
}

double regularization_eps(const Matrix& cov, double rel) {
  const std::size_t n = cov.rows();
  double trace = 0.0;
  for (std::size_t i = 0; i < n; ++i) trace += cov(i, i);
  const double scale = n ? trace / static_cast<double>(n) : 0.0;
  return rel * std::max(scale, 1e-12);
}

FeatureTensor apply_affine(const FeatureTensor& t, const Matrix& m,
                           std::span<const double> offset_before,
                           std::span<const double> offset_after) {
  const auto c = static_cast<std::size_t>(t.channels());
  if (m.cols() != c || offset_before.size() != c || offset_after.size() != m.rows()) {
    throw InvalidArgument("apply_affine: shape mismatch");
  }
  const std::size_t out_c = m.rows();
  const std::size_t n = t.pixel_count();
  std::vector<double> out(out_c * n);

  parallel_for(n, [&](std::size_t begin, std::size_t end) {
    std::vector<double> centered(c);
    for (std::size_t p = begin; p < end; ++p) {
      for (std::size_t j = 0; j < c; ++j) {
        centered[j] = t.channel(static_cast<int>(j))[p] - offset_before[j];
      }
      for (std::size_t i = 0; i < out_c; ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < c; ++j) s += m(i, j) * centered[j];
        out[i * n + p] = offset_after[i] + s;
      }
    }
  }, 1024);
  return FeatureTensor(static_cast<int>(out_c), t.height(), t.width(), std::move(out));
}

FeatureTensor whiten(const FeatureTensor& t, const StyleStats& stats, double eps) {
  check_channels(t, stats, "whiten");
  const Matrix inv_root = mat_pow_half(stats.cov, HalfPower::kInverseRoot, eps);
  const std::vector<double> zero(stats.channels(), 0.0);
  return apply_affine(t, inv_root, stats.mean, zero);
}

FeatureTensor color(const FeatureTensor& t_whitened, const StyleStats& stats, double eps) {
  check_channels(t_whitened, stats, "color");
  const Matrix root = mat_pow_half(stats.cov, HalfPower::kRoot, eps);
  const std::vector<double> zero(stats.channels(), 0.0);
  return apply_affine(t_whitened, root, zero, stats.mean);
}

}  // namespace dawct
