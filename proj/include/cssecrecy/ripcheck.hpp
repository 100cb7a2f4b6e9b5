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

#ifndef CSSECRECY_RIPCHECK_HPP_
#define CSSECRECY_RIPCHECK_HPP_

// Exact structural audits by support enumeration: restricted isometry
// constants, spark, and injectivity of a message set under A.
//
// The RIP constant uses the non-squared band
//   (1 - eps) |alpha| <= |A alpha| <= (1 + eps) |alpha|
// so eps_k = max over supports of max(1 - sigma_min, sigma_max - 1). Much of
// the literature squares the norms instead; this code does not.

#include <cstddef>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cssecrecy/codec.hpp"
#include "cssecrecy/errors.hpp"
#include "cssecrecy/keymatrix.hpp"
#include "cssecrecy/linalg.hpp"
#include "cssecrecy/recovery.hpp"
#include "cssecrecy/vectors.hpp"

namespace cssecrecy {

inline constexpr double kRankTol = 1e-10;
inline constexpr double kInjectiveTol = 1e-9;

struct RipReport {
  std::size_t k = 0;
  double epsilon_k = 0.0;
  bool satisfied = false;  // epsilon_k < 1
  std::uint64_t supports_checked = 0;
  std::vector<std::size_t> extremal_support;  // lexicographically first maximizer
  double sigma_min = 0.0;  // smallest singular value over all supports
  double sigma_max = 0.0;  // largest singular value over all supports
};

struct SparkReport {
  std::size_t spark = 0;  // n + 1 means every column subset is independent
  std::vector<std::size_t> witness;  // minimal dependent set; empty at n + 1
  std::uint64_t supports_checked = 0;
};

struct ProjectionReport {
  bool injective = true;
  double min_pairwise_distance = std::numeric_limits<double>::infinity();
  std::optional<std::pair<std::size_t, std::size_t>> closest_pair;
  std::optional<std::pair<std::size_t, std::size_t>> colliding_pair;
};

inline RipReport rip_constant(const MeasurementMatrix& a, std::size_t k,
                              std::uint64_t budget = kDefaultEnumerationBudget) {
  if (k < 1 || k > a.rows() || k > a.cols()) {
    throw DomainError("rip order k=" + std::to_string(k) + " outside [1, min(m, n)]");
  }
  if (binomial(a.cols(), k) > budget) {
    throw BudgetError("rip enumeration needs C(" + std::to_string(a.cols()) + "," +
                      std::to_string(k) + ") supports, budget is " +
                      std::to_string(budget));
  }
  RipReport out;
  out.k = k;
  out.epsilon_k = -std::numeric_limits<double>::infinity();
  out.sigma_min = std::numeric_limits<double>::infinity();
  for (Combinations combo(a.cols(), k); !combo.done(); combo.advance()) {
    const Eigen::VectorXd s = singular_values(gather_columns(a, combo.indices()));
    const double smax = s(0);
    const double smin = s(s.size() - 1);
    out.sigma_max = std::max(out.sigma_max, smax);
    out.sigma_min = std::min(out.sigma_min, smin);
    const double eps = std::max(1.0 - smin, smax - 1.0);
    if (eps > out.epsilon_k) {
      out.epsilon_k = eps;
      out.extremal_support.assign(combo.indices().begin(), combo.indices().end());
    }
    ++out.supports_checked;
  }
  out.satisfied = out.epsilon_k < 1.0;
  return out;
}

namespace detail {
inline bool columns_dependent(const MeasurementMatrix& a,
                              std::span<const std::size_t> cols) {
  return numerical_rank(gather_columns(a, cols), kRankTol) < cols.size();
}
}  // namespace detail

// Smallest number of linearly dependent columns. Sizes 1..min(m, n) are
// enumerated; when n > m and nothing smaller is dependent the spark is m + 1
// and the first m + 1 columns witness it.
inline SparkReport spark(const MeasurementMatrix& a,
                         std::uint64_t budget = kDefaultEnumerationBudget) {
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  SparkReport out;
  const std::size_t top = std::min(m, n);
  for (std::size_t s = 1; s <= top; ++s) {
    const std::uint64_t cost = binomial(n, s);
    if (cost > budget || out.supports_checked > budget - cost) {
      throw BudgetError("spark enumeration at size " + std::to_string(s) +
                        " exceeds budget " + std::to_string(budget));
    }
    for (Combinations combo(n, s); !combo.done(); combo.advance()) {
      ++out.supports_checked;
      if (detail::columns_dependent(a, combo.indices())) {
        out.spark = s;
        out.witness.assign(combo.indices().begin(), combo.indices().end());
        return out;
      }
    }
  }
  if (n > m) {
    out.spark = m + 1;
    out.witness = iota_indices(m + 1);
  } else {
    out.spark = n + 1;
  }
  return out;
}

// True iff spark(A) > order, checking only the subsets of size `order`
// (every subset of an independent set is independent).
inline bool spark_exceeds(const MeasurementMatrix& a, std::size_t order,
                          std::uint64_t budget = kDefaultEnumerationBudget) {
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  if (order == 0) return true;
  if (order >= n) {
    return n <= m && !detail::columns_dependent(a, iota_indices(n));
  }
  if (order > m) return false;
  if (binomial(n, order) > budget) {
    throw BudgetError("spark check needs C(" + std::to_string(n) + "," +
                      std::to_string(order) + ") supports, budget is " +
                      std::to_string(budget));
  }
  for (Combinations combo(n, order); !combo.done(); combo.advance()) {
    if (detail::columns_dependent(a, combo.indices())) return false;
  }
  return true;
}

// Injective iff every pair of distinct messages maps to ciphertexts more than
// kInjectiveTol apart. Identical messages are skipped.
inline ProjectionReport unique_projection_check(const MeasurementMatrix& a,
                                                const std::vector<SparseMessage>& messages) {
  std::vector<Ciphertext> ys;
  ys.reserve(messages.size());
  for (const auto& x : messages) ys.push_back(encrypt(a, x));

  ProjectionReport out;
  for (std::size_t i = 0; i < messages.size(); ++i) {
    for (std::size_t j = i + 1; j < messages.size(); ++j) {
      if (messages[i] == messages[j]) continue;
      double acc = 0.0;
      for (std::size_t r = 0; r < a.rows(); ++r) {
        const double d = ys[i].entries()[r] - ys[j].entries()[r];
        acc += d * d;
      }
      const double dist = std::sqrt(acc);
      if (dist < out.min_pairwise_distance) {
        out.min_pairwise_distance = dist;
        out.closest_pair = std::pair{i, j};
      }
    }
  }
  if (out.closest_pair && out.min_pairwise_distance <= kInjectiveTol) {
    out.injective = false;
    out.colliding_pair = out.closest_pair;
  }
  return out;
}

}  // namespace cssecrecy

#endif  // CSSECRECY_RIPCHECK_HPP_
