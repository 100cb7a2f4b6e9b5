// Copyright 2026 The cs-secrecy Authors.
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

#ifndef CSSECRECY_LINALG_HPP_
#define CSSECRECY_LINALG_HPP_

// Small dense helpers shared by the solvers and the audits. Factorizations
// are delegated to Eigen (Householder QR, Jacobi SVD); everything here is
// templated on any row-major matrix exposing rows(), cols() and (i, j).

#include <Eigen/Dense>

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numeric>
#include <span>
#include <vector>

namespace cssecrecy {

// Saturating binomial coefficient; returns UINT64_MAX on overflow.
inline std::uint64_t binomial(std::size_t n, std::size_t k) noexcept {
  if (k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 acc = 1;
  for (std::size_t i = 1; i <= k; ++i) {
    acc = acc * (n - k + i) / i;
    if (acc > std::numeric_limits<std::uint64_t>::max()) {
      return std::numeric_limits<std::uint64_t>::max();
    }
  }
  return static_cast<std::uint64_t>(acc);
}

inline std::vector<std::size_t> iota_indices(std::size_t n) {
  std::vector<std::size_t> out(n);
  std::iota(out.begin(), out.end(), std::size_t{0});
  return out;
}

// Walks the k-subsets of {0, ..., n-1} in lexicographic order.
class Combinations {
 public:
  Combinations(std::size_t n, std::size_t k) : n_(n), idx_(k), done_(k > n) {
    std::iota(idx_.begin(), idx_.end(), std::size_t{0});
  }

  bool done() const noexcept { return done_; }
  std::span<const std::size_t> indices() const noexcept { return idx_; }

  void advance() noexcept {
    const std::size_t k = idx_.size();
    std::size_t i = k;
    while (i > 0) {
      --i;
      if (idx_[i] < n_ - k + i) {
        ++idx_[i];
        for (std::size_t j = i + 1; j < k; ++j) idx_[j] = idx_[j - 1] + 1;
        return;
      }
    }
    done_ = true;
  }

 private:
  std::size_t n_;
  std::vector<std::size_t> idx_;
  bool done_;
};

template <class Mat>
Eigen::MatrixXd gather_columns(const Mat& a,
                               std::span<const std::size_t> columns) {
  Eigen::MatrixXd out(a.rows(), static_cast<Eigen::Index>(columns.size()));
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t c = 0; c < columns.size(); ++c) {
      out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(c)) =
          a(i, columns[c]);
    }
  }
  return out;
}

template <class Mat>
Eigen::MatrixXd to_eigen(const Mat& a) {
  Eigen::MatrixXd out(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = a(i, j);
    }
  }
  return out;
}

inline Eigen::Map<const Eigen::VectorXd> as_eigen(std::span<const double> v) {
  return {v.data(), static_cast<Eigen::Index>(v.size())};
}

// Least-squares coefficients via Householder QR. Normal equations are never
// formed.
inline Eigen::VectorXd least_squares(const Eigen::MatrixXd& cols,
                                     std::span<const double> y) {
  if (cols.cols() == 0) return Eigen::VectorXd(0);
  return cols.householderQr().solve(as_eigen(y));
}

// Singular values in decreasing order.
inline Eigen::VectorXd singular_values(const Eigen::MatrixXd& m) {
  if (m.size() == 0) return Eigen::VectorXd(0);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  return svd.singularValues();
}

// Numerical rank with threshold rel_tol * sigma_max.
inline std::size_t numerical_rank(const Eigen::MatrixXd& m,
                                  double rel_tol = 1e-10) {
  const Eigen::VectorXd s = singular_values(m);
  if (s.size() == 0 || s(0) == 0.0) return 0;
  const double cut = rel_tol * s(0);
  std::size_t r = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    if (s(i) > cut) ++r;
  }
  return r;
}

inline double norm2(std::span<const double> v) noexcept {
  double acc = 0.0;
  for (double x : v) acc += x * x;
  return std::sqrt(acc);
}

inline double norm1(std::span<const double> v) noexcept {
  double acc = 0.0;
  for (double x : v) acc += std::abs(x);
  return acc;
}

// Neumaier-compensated running sum.
class CompensatedSum {
 public:
  void add(double x) noexcept {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double value() const noexcept { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

}  // namespace cssecrecy

#endif  // CSSECRECY_LINALG_HPP_
