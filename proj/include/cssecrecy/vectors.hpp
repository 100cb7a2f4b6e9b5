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

#ifndef CSSECRECY_VECTORS_HPP_
#define CSSECRECY_VECTORS_HPP_

#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "cssecrecy/errors.hpp"

namespace cssecrecy {

// Counts entries with |value| > 0 exactly.
inline std::size_t l0_norm(std::span<const double> v) noexcept {
  std::size_t count = 0;
  for (double x : v) count += (x != 0.0);
  return count;
}

namespace detail {
inline void require_finite(std::span<const double> v, const char* what) {
  for (double x : v) {
    if (!std::isfinite(x)) throw ValidationError(std::string(what) + " entry not finite");
  }
}
}  // namespace detail

// Plaintext x (or its coefficient vector alpha).
class SparseMessage {
 public:
  SparseMessage() = default;
  explicit SparseMessage(std::vector<double> entries,
                         std::optional<std::size_t> declared_k = std::nullopt)
      : entries_(std::move(entries)), declared_k_(declared_k) {
    detail::require_finite(entries_, "message");
    if (declared_k_ && l0_norm(entries_) > *declared_k_) {
      throw DomainError("message has " + std::to_string(l0_norm(entries_)) +
                        " nonzeros, more than declared sparsity " +
                        std::to_string(*declared_k_));
    }
  }

  static SparseMessage zeros(std::size_t n) {
    return SparseMessage(std::vector<double>(n, 0.0));
  }

  std::size_t dim() const noexcept { return entries_.size(); }
  std::span<const double> entries() const noexcept { return entries_; }
  std::size_t l0() const noexcept { return l0_norm(entries_); }
  std::optional<std::size_t> declared_k() const noexcept { return declared_k_; }

  friend bool operator==(const SparseMessage& a, const SparseMessage& b) noexcept {
    return a.entries_ == b.entries_;
  }

 private:
  std::vector<double> entries_;
  std::optional<std::size_t> declared_k_;
};

// Cryptogram y.
class Ciphertext {
 public:
  Ciphertext() = default;
  explicit Ciphertext(std::vector<double> entries) : entries_(std::move(entries)) {
    detail::require_finite(entries_, "ciphertext");
  }

  std::size_t dim() const noexcept { return entries_.size(); }
  std::span<const double> entries() const noexcept { return entries_; }

  friend bool operator==(const Ciphertext&, const Ciphertext&) = default;

 private:
  std::vector<double> entries_;
};

}  // namespace cssecrecy

#endif  // CSSECRECY_VECTORS_HPP_
