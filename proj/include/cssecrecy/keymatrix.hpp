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

#ifndef CSSECRECY_KEYMATRIX_HPP_
#define CSSECRECY_KEYMATRIX_HPP_

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "cssecrecy/errors.hpp"
#include "cssecrecy/linalg.hpp"
#include "cssecrecy/rng.hpp"

namespace cssecrecy {

inline constexpr int kKeyFormatVersion = 1;

// The shared secret. (seed, m, n, version) fully determines the measurement
// matrix on both endpoints.
struct SecretKey {
  std::uint64_t seed = 0;
  std::size_t m = 0;
  std::size_t n = 0;
  int version = kKeyFormatVersion;

  void validate() const {
    if (m < 1 || n < 1) {
      throw DimensionError("key dimensions must be positive, got m=" +
                           std::to_string(m) + " n=" + std::to_string(n));
    }
    if (version != kKeyFormatVersion) {
      throw ValidationError("unsupported key version " +
                            std::to_string(version));
    }
  }

  // m < n; m == n is accepted only for diagnostics.
  bool compressive() const noexcept { return m < n; }

  friend bool operator==(const SecretKey&, const SecretKey&) = default;
};

// Row-major m x n real matrix. Remembers the key it was derived from, if any.
class MeasurementMatrix {
 public:
  MeasurementMatrix() = default;

  static MeasurementMatrix from_entries(std::size_t m, std::size_t n,
                                        std::vector<double> entries) {
    return MeasurementMatrix(m, n, std::move(entries), std::nullopt);
  }

  std::size_t rows() const noexcept { return m_; }
  std::size_t cols() const noexcept { return n_; }

  double operator()(std::size_t i, std::size_t j) const noexcept {
    return entries_[i * n_ + j];
  }

  std::span<const double> entries() const noexcept { return entries_; }
  std::span<const double> row(std::size_t i) const noexcept {
    return std::span<const double>(entries_).subspan(i * n_, n_);
  }

  bool derived() const noexcept { return key_.has_value(); }
  const std::optional<SecretKey>& key() const noexcept { return key_; }

  // Entry-for-entry equality; provenance is ignored.
  bool same_entries(const MeasurementMatrix& other) const noexcept {
    return m_ == other.m_ && n_ == other.n_ && entries_ == other.entries_;
  }

 private:
  friend MeasurementMatrix derive_matrix(const SecretKey& key);

  MeasurementMatrix(std::size_t m, std::size_t n, std::vector<double> entries,
                    std::optional<SecretKey> key)
      : m_(m), n_(n), entries_(std::move(entries)), key_(std::move(key)) {
    if (m_ < 1 || n_ < 1) {
      throw DimensionError("matrix dimensions must be positive");
    }
    if (entries_.size() != m_ * n_) {
      throw DimensionError("matrix expects " + std::to_string(m_ * n_) +
                           " entries, got " + std::to_string(entries_.size()));
    }
    for (double v : entries_) {
      if (!std::isfinite(v)) throw ValidationError("matrix entry not finite");
    }
  }

  std::size_t m_ = 0;
  std::size_t n_ = 0;
  std::vector<double> entries_;
  std::optional<SecretKey> key_;
};

// Entries are i.i.d. Normal(0, 1/m), drawn from the seeded Gaussian stream
// and filled row-major (row 0 left to right first).
inline MeasurementMatrix derive_matrix(const SecretKey& key) {
  key.validate();
  const double scale = std::sqrt(static_cast<double>(key.m));
  GaussianStream gauss(key.seed);
  std::vector<double> entries(key.m * key.n);
  for (double& e : entries) e = gauss.next() / scale;
  return MeasurementMatrix(key.m, key.n, std::move(entries), key);
}

enum class DictionaryKind { kIdentity, kExplicit };

// Sparsifying basis. Columns are orthonormal within kOrthonormalTol.
class Dictionary {
 public:
  static constexpr double kOrthonormalTol = 1e-10;

  static Dictionary identity(std::size_t n) {
    if (n < 1) throw DimensionError("dictionary dimension must be positive");
    std::vector<double> e(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) e[i * n + i] = 1.0;
    return Dictionary(n, std::move(e), DictionaryKind::kIdentity);
  }

  static Dictionary from_entries(std::size_t n, std::vector<double> entries) {
    if (n < 1) throw DimensionError("dictionary dimension must be positive");
    if (entries.size() != n * n) {
      throw DimensionError("dictionary expects " + std::to_string(n * n) +
                           " entries, got " + std::to_string(entries.size()));
    }
    Dictionary d(n, std::move(entries), DictionaryKind::kExplicit);
    if (d.orthonormality_error() > kOrthonormalTol) {
      throw ValidationError("dictionary columns are not orthonormal");
    }
    return d;
  }

  std::size_t rows() const noexcept { return n_; }
  std::size_t cols() const noexcept { return n_; }
  std::size_t dim() const noexcept { return n_; }
  DictionaryKind kind() const noexcept { return kind_; }
  bool is_identity() const noexcept { return kind_ == DictionaryKind::kIdentity; }

  double operator()(std::size_t i, std::size_t j) const noexcept {
    return entries_[i * n_ + j];
  }
  std::span<const double> entries() const noexcept { return entries_; }

  // max |<psi_i, psi_j> - delta_ij| over all column pairs.
  double orthonormality_error() const noexcept {
    double worst = 0.0;
    for (std::size_t i = 0; i < n_; ++i) {
      for (std::size_t j = i; j < n_; ++j) {
        double dot = 0.0;
        for (std::size_t r = 0; r < n_; ++r) dot += (*this)(r, i) * (*this)(r, j);
        worst = std::max(worst, std::abs(dot - (i == j ? 1.0 : 0.0)));
      }
    }
    return worst;
  }

  // x = Psi * alpha.
  std::vector<double> synthesize(std::span<const double> alpha) const {
    if (alpha.size() != n_) {
      throw DimensionError("coefficient length " + std::to_string(alpha.size()) +
                           " does not match dictionary dimension " +
                           std::to_string(n_));
    }
    if (is_identity()) return {alpha.begin(), alpha.end()};
    std::vector<double> x(n_, 0.0);
    for (std::size_t i = 0; i < n_; ++i) {
      double acc = 0.0;
      for (std::size_t j = 0; j < n_; ++j) acc += (*this)(i, j) * alpha[j];
      x[i] = acc;
    }
    return x;
  }

 private:
  Dictionary(std::size_t n, std::vector<double> entries, DictionaryKind kind)
      : n_(n), entries_(std::move(entries)), kind_(kind) {}

  std::size_t n_;
  std::vector<double> entries_;
  DictionaryKind kind_;
};

// Orthonormal basis from the Householder QR of a seeded n x n Gaussian.
inline Dictionary orthonormal_dictionary(std::uint64_t seed, std::size_t n) {
  if (n < 1) throw DimensionError("dictionary dimension must be positive");
  GaussianStream gauss(seed);
  Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> g(n, n);
  for (Eigen::Index i = 0; i < g.rows(); ++i) {
    for (Eigen::Index j = 0; j < g.cols(); ++j) g(i, j) = gauss.next();
  }
  Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> q =
      g.householderQr().householderQ();
  return Dictionary::from_entries(n, std::vector<double>(q.data(), q.data() + q.size()));
}

// A = Phi * Psi. With the identity dictionary A equals Phi entry-for-entry.
inline MeasurementMatrix compose(const MeasurementMatrix& phi,
                                 const Dictionary& psi) {
  if (phi.cols() != psi.dim()) {
    throw DimensionError("cannot compose a " + std::to_string(phi.rows()) + "x" +
                         std::to_string(phi.cols()) +
                         " matrix with a dictionary of dimension " +
                         std::to_string(psi.dim()));
  }
  const std::size_t m = phi.rows();
  const std::size_t n = phi.cols();
  if (psi.is_identity()) {
    return MeasurementMatrix::from_entries(
        m, n, std::vector<double>(phi.entries().begin(), phi.entries().end()));
  }
  std::vector<double> a(m * n, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      double acc = 0.0;
      for (std::size_t l = 0; l < n; ++l) acc += phi(i, l) * psi(l, j);
      a[i * n + j] = acc;
    }
  }
  return MeasurementMatrix::from_entries(m, n, std::move(a));
}

// Measurement count ceil(c k ln(n/k)), clamped to [2k, n].
inline std::size_t suggest_m(std::size_t n, std::size_t k, double c) {
  if (k < 1 || k >= n) {
    throw DomainError("suggest_m needs 1 <= k < n, got k=" + std::to_string(k) +
                      " n=" + std::to_string(n));
  }
  if (!(c > 0.0)) throw DomainError("suggest_m needs c > 0");
  const double raw = std::ceil(c * static_cast<double>(k) *
                               std::log(static_cast<double>(n) / static_cast<double>(k)));
  std::size_t m = raw > static_cast<double>(n) ? n : static_cast<std::size_t>(raw);
  m = std::max(m, 2 * k);
  return std::min(m, n);
}

}  // namespace cssecrecy

#endif  // CSSECRECY_KEYMATRIX_HPP_
