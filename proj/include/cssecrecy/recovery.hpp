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

#ifndef CSSECRECY_RECOVERY_HPP_
#define CSSECRECY_RECOVERY_HPP_

// Sparse recovery: exhaustive l0 search, basis pursuit as a linear program
// (two-phase dense simplex, Bland's rule) and Orthogonal Matching Pursuit.
// Every solver breaks ties by lowest index and is a deterministic function
// of its inputs.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cssecrecy/errors.hpp"
#include "cssecrecy/keymatrix.hpp"
#include "cssecrecy/linalg.hpp"
#include "cssecrecy/vectors.hpp"

namespace cssecrecy {

inline constexpr double kFeasTol = 1e-8;
inline constexpr double kSupportEpsilon = 1e-8;
inline constexpr std::uint64_t kDefaultEnumerationBudget = 10'000'000;

enum class RecoveryStatus { kUnique, kSolved, kAmbiguous, kFailed };
enum class SolverKind { kL0, kBp, kOmp };

inline std::string_view to_string(RecoveryStatus s) noexcept {
  switch (s) {
    case RecoveryStatus::kUnique: return "unique";
    case RecoveryStatus::kSolved: return "solved";
    case RecoveryStatus::kAmbiguous: return "ambiguous";
    case RecoveryStatus::kFailed: return "failed";
  }
  return "failed";
}

inline std::string_view to_string(SolverKind s) noexcept {
  switch (s) {
    case SolverKind::kL0: return "l0";
    case SolverKind::kBp: return "bp";
    case SolverKind::kOmp: return "omp";
  }
  return "l0";
}

struct RecoveryOptions {
  double feas_tol = kFeasTol;            // relative: residual <= feas_tol * (1 + |y|)
  double support_epsilon = kSupportEpsilon;
  std::uint64_t budget = kDefaultEnumerationBudget;  // l0 supports
  std::optional<std::size_t> iteration_cap;          // bp; default 50 (m + n)
  // bp only: declare failure when the l1 optimum has more nonzeros than this.
  std::optional<std::size_t> max_support;
};

struct RecoveryResult {
  std::vector<double> coefficients;
  std::vector<std::size_t> support;  // sorted
  double residual_l2 = 0.0;
  RecoveryStatus status = RecoveryStatus::kFailed;
  SolverKind solver = SolverKind::kL0;
  std::size_t iterations = 0;
  std::vector<double> residual_history;  // omp: |r| before and after each step
  std::size_t feasible_supports = 0;     // l0: feasible supports at the chosen k
  std::vector<std::string> warnings;

  bool succeeded() const noexcept { return status != RecoveryStatus::kFailed; }
};

// y - A c.
inline std::vector<double> residual_vector(const MeasurementMatrix& a,
                                           std::span<const double> y,
                                           std::span<const double> coeffs) {
  std::vector<double> r(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    double acc = 0.0;
    for (std::size_t j = 0; j < a.cols(); ++j) acc += a(i, j) * coeffs[j];
    r[i] = y[i] - acc;
  }
  return r;
}

namespace detail {

inline void check_system(const MeasurementMatrix& a, const Ciphertext& y) {
  if (y.dim() != a.rows()) {
    throw DimensionError("ciphertext length " + std::to_string(y.dim()) +
                         " does not match matrix rows " + std::to_string(a.rows()));
  }
}

inline void finalize(RecoveryResult& out, const MeasurementMatrix& a,
                     const Ciphertext& y, double support_epsilon) {
  out.residual_l2 = norm2(residual_vector(a, y.entries(), out.coefficients));
  out.support.clear();
  for (std::size_t j = 0; j < out.coefficients.size(); ++j) {
    if (std::abs(out.coefficients[j]) > support_epsilon) out.support.push_back(j);
  }
}

// Solution of min c'z s.t. Bz = b, z >= 0.
struct LpSolution {
  std::vector<double> z;
  bool feasible = false;
  double phase1_objective = 0.0;
  double objective = 0.0;
  std::size_t iterations = 0;
};

// Dense two-phase tableau simplex with Bland's rule. B is m x p row-major.
class DenseSimplex {
 public:
  DenseSimplex(std::span<const double> b_matrix, std::size_t m, std::size_t p,
               std::span<const double> rhs, std::size_t iteration_cap)
      : m_(m), p_(p), cap_(iteration_cap) {
    const std::size_t width = p_ + m_ + 1;
    rows_.assign(m_, std::vector<double>(width, 0.0));
    basis_.resize(m_);
    for (std::size_t i = 0; i < m_; ++i) {
      const double sign = rhs[i] < 0.0 ? -1.0 : 1.0;
      for (std::size_t j = 0; j < p_; ++j) rows_[i][j] = sign * b_matrix[i * p_ + j];
      rows_[i][p_ + i] = 1.0;
      rows_[i].back() = sign * rhs[i];
      basis_[i] = p_ + i;
    }
    rhs_norm_ = norm2(rhs);
  }

  LpSolution solve(std::span<const double> cost, double feas_tol) {
    LpSolution out;
    const std::size_t width = p_ + m_ + 1;

    // Phase 1: minimize the sum of artificials.
    obj_.assign(width, 0.0);
    for (const auto& row : rows_) {
      for (std::size_t j = 0; j < p_; ++j) obj_[j] -= row[j];
      obj_.back() -= row.back();
    }
    iterate(p_ + m_);
    out.phase1_objective = std::max(0.0, -obj_.back());
    if (out.phase1_objective > feas_tol * (1.0 + rhs_norm_)) {
      out.feasible = false;
      out.iterations = iterations_;
      out.z = extract();
      return out;
    }
    out.feasible = true;
    drive_out_artificials();

    // Phase 2 on the original columns only.
    obj_.assign(width, 0.0);
    for (std::size_t j = 0; j < p_; ++j) obj_[j] = cost[j];
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      const double cb = basis_[r] < p_ ? cost[basis_[r]] : 0.0;
      if (cb == 0.0) continue;
      for (std::size_t j = 0; j < p_; ++j) obj_[j] -= cb * rows_[r][j];
      obj_.back() -= cb * rows_[r].back();
    }
    iterate(p_);
    out.z = extract();
    out.objective = 0.0;
    for (std::size_t j = 0; j < p_; ++j) out.objective += cost[j] * out.z[j];
    out.iterations = iterations_;
    return out;
  }

 private:
  static constexpr double kReducedCostTol = 1e-10;
  static constexpr double kPivotTol = 1e-11;

  void pivot(std::size_t r, std::size_t q) {
    auto& prow = rows_[r];
    const double piv = prow[q];
    for (double& v : prow) v /= piv;
    prow[q] = 1.0;
    auto eliminate = [&](std::vector<double>& row) {
      const double f = row[q];
      if (f == 0.0) return;
      for (std::size_t j = 0; j < row.size(); ++j) row[j] -= f * prow[j];
      row[q] = 0.0;
    };
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      if (i != r) eliminate(rows_[i]);
    }
    eliminate(obj_);
    basis_[r] = q;
  }

  // Runs Bland-rule pivots over columns [0, allowed).
  void iterate(std::size_t allowed) {
    for (;;) {
      std::size_t q = allowed;
      for (std::size_t j = 0; j < allowed; ++j) {
        if (obj_[j] < -kReducedCostTol) {
          q = j;
          break;
        }
      }
      if (q == allowed) return;
      if (iterations_ >= cap_) {
        throw SolverError("simplex exceeded iteration cap of " + std::to_string(cap_));
      }
      std::size_t r = rows_.size();
      double best = std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < rows_.size(); ++i) {
        const double coef = rows_[i][q];
        if (coef <= kPivotTol) continue;
        const double ratio = rows_[i].back() / coef;
        if (r == rows_.size()) {
          best = ratio;
          r = i;
          continue;
        }
        const double slack = 1e-12 * std::max(1.0, std::abs(best));
        if (ratio < best - slack ||
            (std::abs(ratio - best) <= slack && basis_[i] < basis_[r])) {
          best = ratio;
          r = i;
        }
      }
      if (r == rows_.size()) throw SolverError("linear program is unbounded");
      pivot(r, q);
      ++iterations_;
    }
  }

  void drive_out_artificials() {
    for (std::size_t r = 0; r < rows_.size();) {
      if (basis_[r] < p_) {
        ++r;
        continue;
      }
      std::size_t q = p_;
      for (std::size_t j = 0; j < p_; ++j) {
        if (std::abs(rows_[r][j]) > 1e-9) {
          q = j;
          break;
        }
      }
      if (q < p_) {
        pivot(r, q);
        ++r;
      } else {
        // Redundant constraint.
        rows_.erase(rows_.begin() + static_cast<std::ptrdiff_t>(r));
        basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(r));
      }
    }
  }

  std::vector<double> extract() const {
    std::vector<double> z(p_, 0.0);
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      if (basis_[r] < p_) z[basis_[r]] = std::max(0.0, rows_[r].back());
    }
    return z;
  }

  std::size_t m_;
  std::size_t p_;
  std::size_t cap_;
  double rhs_norm_ = 0.0;
  std::size_t iterations_ = 0;
  std::vector<std::vector<double>> rows_;
  std::vector<double> obj_;
  std::vector<std::size_t> basis_;
};

}  // namespace detail

// Exhaustive search for the sparsest exact representation, k = 0..k_max.
// At the first feasible k the lexicographically smallest feasible support is
// returned; status is unique if it is the only one at that k.
inline RecoveryResult l0_exhaustive(const MeasurementMatrix& a, const Ciphertext& y,
                                    std::size_t k_max,
                                    const RecoveryOptions& opts = {}) {
  detail::check_system(a, y);
  if (k_max > a.rows()) {
    throw DomainError("k_max " + std::to_string(k_max) + " exceeds measurement count " +
                      std::to_string(a.rows()));
  }
  k_max = std::min(k_max, a.cols());
  if (binomial(a.cols(), k_max) > opts.budget) {
    throw BudgetError("l0 enumeration needs C(" + std::to_string(a.cols()) + "," +
                      std::to_string(k_max) + ") supports, budget is " +
                      std::to_string(opts.budget));
  }

  RecoveryResult out;
  out.solver = SolverKind::kL0;
  out.coefficients.assign(a.cols(), 0.0);
  const double threshold = opts.feas_tol * (1.0 + norm2(y.entries()));

  if (norm2(y.entries()) <= threshold) {
    out.status = RecoveryStatus::kUnique;
    out.feasible_supports = 1;
    detail::finalize(out, a, y, opts.support_epsilon);
    return out;
  }

  for (std::size_t k = 1; k <= k_max; ++k) {
    std::size_t feasible = 0;
    for (Combinations combo(a.cols(), k); !combo.done(); combo.advance()) {
      ++out.iterations;
      const auto cols = combo.indices();
      const Eigen::MatrixXd sub = gather_columns(a, cols);
      const Eigen::VectorXd c = least_squares(sub, y.entries());
      const double res = (as_eigen(y.entries()) - sub * c).norm();
      if (res > threshold) continue;
      if (feasible == 0) {
        std::fill(out.coefficients.begin(), out.coefficients.end(), 0.0);
        for (std::size_t i = 0; i < cols.size(); ++i) {
          out.coefficients[cols[i]] = c(static_cast<Eigen::Index>(i));
        }
      }
      ++feasible;
    }
    if (feasible > 0) {
      out.feasible_supports = feasible;
      out.status = feasible == 1 ? RecoveryStatus::kUnique : RecoveryStatus::kAmbiguous;
      detail::finalize(out, a, y, opts.support_epsilon);
      return out;
    }
  }
  out.status = RecoveryStatus::kFailed;
  detail::finalize(out, a, y, opts.support_epsilon);
  return out;
}

// Basis pursuit: min |alpha|_1 s.t. A alpha = y, posed as the standard-form LP
// alpha = u - v with u, v >= 0.
inline RecoveryResult bp(const MeasurementMatrix& a, const Ciphertext& y,
                         const RecoveryOptions& opts = {}) {
  detail::check_system(a, y);
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();

  RecoveryResult out;
  out.solver = SolverKind::kBp;
  if (m > n) out.warnings.push_back("more measurements than unknowns");
  if (numerical_rank(to_eigen(a)) < m) {
    out.warnings.push_back("matrix does not have full row rank");
  }

  std::vector<double> split(m * 2 * n);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      split[i * 2 * n + j] = a(i, j);
      split[i * 2 * n + n + j] = -a(i, j);
    }
  }
  const std::vector<double> cost(2 * n, 1.0);
  const std::size_t cap = opts.iteration_cap.value_or(50 * (m + n));
  detail::DenseSimplex lp(split, m, 2 * n, y.entries(), cap);
  const detail::LpSolution sol = lp.solve(cost, opts.feas_tol);

  out.iterations = sol.iterations;
  out.coefficients.resize(n);
  for (std::size_t j = 0; j < n; ++j) out.coefficients[j] = sol.z[j] - sol.z[n + j];
  detail::finalize(out, a, y, opts.support_epsilon);
  out.status = sol.feasible ? RecoveryStatus::kSolved : RecoveryStatus::kFailed;
  if (sol.feasible && opts.max_support && out.support.size() > *opts.max_support) {
    out.status = RecoveryStatus::kFailed;
    out.warnings.push_back("l1 optimum has " + std::to_string(out.support.size()) +
                           " nonzeros, more than " + std::to_string(*opts.max_support));
  }
  return out;
}

// Orthogonal Matching Pursuit with at most k selections.
inline RecoveryResult omp(const MeasurementMatrix& a, const Ciphertext& y, std::size_t k,
                          double tol = kFeasTol, const RecoveryOptions& opts = {}) {
  detail::check_system(a, y);
  if (k < 1 || k > a.rows()) {
    throw DomainError("omp needs 1 <= k <= m, got k=" + std::to_string(k));
  }
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();

  std::vector<double> col_norm(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    double acc = 0.0;
    for (std::size_t i = 0; i < m; ++i) acc += a(i, j) * a(i, j);
    col_norm[j] = std::sqrt(acc);
  }

  RecoveryResult out;
  out.solver = SolverKind::kOmp;
  out.coefficients.assign(n, 0.0);
  const double threshold = tol * (1.0 + norm2(y.entries()));

  std::vector<double> r(y.entries().begin(), y.entries().end());
  std::vector<std::size_t> chosen;
  out.residual_history.push_back(norm2(r));
  bool degenerate = false;

  while (chosen.size() < k && out.residual_history.back() > threshold) {
    std::size_t best = n;
    double best_score = -1.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (col_norm[j] == 0.0) continue;
      double dot = 0.0;
      for (std::size_t i = 0; i < m; ++i) dot += a(i, j) * r[i];
      const double score = std::abs(dot) / col_norm[j];
      if (score > best_score) {
        best_score = score;
        best = j;
      }
    }
    if (best == n || std::find(chosen.begin(), chosen.end(), best) != chosen.end()) {
      degenerate = true;
      break;
    }
    chosen.push_back(best);
    const Eigen::MatrixXd sub = gather_columns(a, chosen);
    const Eigen::VectorXd c = least_squares(sub, y.entries());
    std::fill(out.coefficients.begin(), out.coefficients.end(), 0.0);
    for (std::size_t i = 0; i < chosen.size(); ++i) {
      out.coefficients[chosen[i]] = c(static_cast<Eigen::Index>(i));
    }
    r = residual_vector(a, y.entries(), out.coefficients);
    out.residual_history.push_back(norm2(r));
    ++out.iterations;
  }

  detail::finalize(out, a, y, opts.support_epsilon);
  out.status = (!degenerate && out.residual_l2 <= threshold) ? RecoveryStatus::kSolved
                                                              : RecoveryStatus::kFailed;
  if (degenerate) out.warnings.push_back("selected column already in support");
  return out;
}

}  // namespace cssecrecy

#endif  // CSSECRECY_RECOVERY_HPP_
