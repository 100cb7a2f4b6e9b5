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

#ifndef CSSECRECY_CODEC_HPP_
#define CSSECRECY_CODEC_HPP_

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cssecrecy/errors.hpp"
#include "cssecrecy/keymatrix.hpp"
#include "cssecrecy/recovery.hpp"
#include "cssecrecy/vectors.hpp"

namespace cssecrecy {

enum class DecryptSolver { kAuto, kOmp, kBp, kL0 };

// kAuto runs OMP and falls back to exhaustive l0 for n up to this size.
inline constexpr std::size_t kL0FallbackMaxN = 24;

inline std::string_view to_string(DecryptSolver s) noexcept {
  switch (s) {
    case DecryptSolver::kAuto: return "auto";
    case DecryptSolver::kOmp: return "omp";
    case DecryptSolver::kBp: return "bp";
    case DecryptSolver::kL0: return "l0";
  }
  return "auto";
}

inline std::optional<DecryptSolver> parse_decrypt_solver(std::string_view s) noexcept {
  if (s == "auto") return DecryptSolver::kAuto;
  if (s == "omp") return DecryptSolver::kOmp;
  if (s == "bp") return DecryptSolver::kBp;
  if (s == "l0") return DecryptSolver::kL0;
  return std::nullopt;
}

// y_i = sum_j A_ij alpha_j, accumulated in index order.
inline Ciphertext encrypt(const MeasurementMatrix& a, const SparseMessage& alpha) {
  if (alpha.dim() != a.cols()) {
    throw DimensionError("message length " + std::to_string(alpha.dim()) +
                         " does not match matrix columns " + std::to_string(a.cols()));
  }
  const auto x = alpha.entries();
  std::vector<double> y(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    double acc = 0.0;
    for (std::size_t j = 0; j < a.cols(); ++j) acc += a(i, j) * x[j];
    y[i] = acc;
  }
  return Ciphertext(std::move(y));
}

struct Decryption {
  SparseMessage message;   // x = Psi alpha
  RecoveryResult recovery;  // in coefficient space
  std::vector<std::string> warnings;
};

inline Decryption decrypt_detailed(const SecretKey& key, const Dictionary& psi,
                                   const Ciphertext& y, std::size_t k,
                                   DecryptSolver solver = DecryptSolver::kAuto,
                                   const RecoveryOptions& opts = {}) {
  key.validate();
  if (y.dim() != key.m) {
    throw DimensionError("ciphertext length " + std::to_string(y.dim()) +
                         " does not match key dimension m=" + std::to_string(key.m));
  }
  if (psi.dim() != key.n) {
    throw DimensionError("dictionary dimension " + std::to_string(psi.dim()) +
                         " does not match key dimension n=" + std::to_string(key.n));
  }
  if (k < 1 || k > key.m) {
    throw DomainError("sparsity k=" + std::to_string(k) + " outside [1, m=" +
                      std::to_string(key.m) + "]");
  }

  Decryption out;
  if (2 * k > key.m) {
    out.warnings.push_back("m=" + std::to_string(key.m) + " is below 2k=" +
                           std::to_string(2 * k) + "; recovery may not be unique");
  }

  const MeasurementMatrix a = compose(derive_matrix(key), psi);
  RecoveryResult rec;
  switch (solver) {
    case DecryptSolver::kL0:
      rec = l0_exhaustive(a, y, k, opts);
      break;
    case DecryptSolver::kBp: {
      RecoveryOptions bp_opts = opts;
      bp_opts.max_support = k;
      rec = bp(a, y, bp_opts);
      break;
    }
    case DecryptSolver::kOmp:
      rec = omp(a, y, k, opts.feas_tol, opts);
      break;
    case DecryptSolver::kAuto:
      rec = omp(a, y, k, opts.feas_tol, opts);
      if (!rec.succeeded() && key.n <= kL0FallbackMaxN) {
        out.warnings.push_back("omp failed; fell back to exhaustive l0");
        rec = l0_exhaustive(a, y, k, opts);
      }
      break;
  }
  out.warnings.insert(out.warnings.end(), rec.warnings.begin(), rec.warnings.end());
  if (!rec.succeeded()) {
    throw RecoveryError("sparse recovery (" + std::string(to_string(rec.solver)) +
                            ") failed, residual " + std::to_string(rec.residual_l2),
                        rec.residual_l2);
  }
  if (rec.status == RecoveryStatus::kAmbiguous) {
    out.warnings.push_back("several k-sparse solutions fit the ciphertext");
  }
  out.message = SparseMessage(psi.synthesize(rec.coefficients));
  out.recovery = std::move(rec);
  return out;
}

inline SparseMessage decrypt(const SecretKey& key, const Dictionary& psi,
                             const Ciphertext& y, std::size_t k,
                             DecryptSolver solver = DecryptSolver::kAuto,
                             const RecoveryOptions& opts = {}) {
  return decrypt_detailed(key, psi, y, k, solver, opts).message;
}

}  // namespace cssecrecy

#endif  // CSSECRECY_CODEC_HPP_
