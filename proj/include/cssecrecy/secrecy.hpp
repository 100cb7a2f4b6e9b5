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

#ifndef CSSECRECY_SECRECY_HPP_
#define CSSECRECY_SECRECY_HPP_

// Exact mutual information over finite message/cryptogram ensembles, the
// idealized key models (permutations fixing the null message; cyclic
// shifts), quantized measurement-matrix ensembles, and the norm-band
// eavesdropper.
//
// All logarithms are base 2.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <map>
#include <numeric>
#include <span>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <vector>

#include "cssecrecy/codec.hpp"
#include "cssecrecy/errors.hpp"
#include "cssecrecy/keymatrix.hpp"
#include "cssecrecy/linalg.hpp"
#include "cssecrecy/ripcheck.hpp"
#include "cssecrecy/vectors.hpp"

namespace cssecrecy {

inline constexpr double kJointSumTol = 1e-9;
inline constexpr std::uint64_t kEnsembleCellBudget = 1'000'000;

// t_x x t_y probability table p(x, y), logically row-major. Each row is
// stored as sorted runs of equal nonzero cells, so structured joints with
// millions of cells stay small; a dense table simply has runs of length one.
class DiscreteJoint {
 public:
  struct Run {
    std::size_t begin;  // first column
    std::size_t end;    // one past the last column
    double prob;        // value of every cell in [begin, end)

    std::size_t length() const noexcept { return end - begin; }
  };

  DiscreteJoint(std::size_t t_x, std::size_t t_y) : t_y_(t_y), rows_(t_x) {
    if (t_x < 1 || t_y < 1) throw DimensionError("joint table must be at least 1x1");
  }

  // Adjacent equal cells are merged and zero cells dropped.
  static DiscreteJoint from_dense(std::size_t t_x, std::size_t t_y,
                                  std::span<const double> probs) {
    if (probs.size() != t_x * t_y) {
      throw DimensionError("joint table expects " + std::to_string(t_x * t_y) +
                           " cells, got " + std::to_string(probs.size()));
    }
    DiscreteJoint out(t_x, t_y);
    for (std::size_t x = 0; x < t_x; ++x) {
      std::vector<Run> runs;
      for (std::size_t y = 0; y < t_y; ++y) {
        const double p = probs[x * t_y + y];
        if (p == 0.0) continue;
        if (!runs.empty() && runs.back().end == y && runs.back().prob == p) {
          runs.back().end = y + 1;
        } else {
          runs.push_back({y, y + 1, p});
        }
      }
      out.set_row(x, std::move(runs));
    }
    return out;
  }

  void set_row(std::size_t x, std::vector<Run> runs) {
    if (x >= rows_.size()) throw DimensionError("joint row out of range");
    std::size_t prev_end = 0;
    for (const Run& r : runs) {
      if (r.begin < prev_end || r.begin >= r.end || r.end > t_y_) {
        throw ValidationError("joint row " + std::to_string(x) +
                              " has unsorted or out-of-range runs");
      }
      if (!std::isfinite(r.prob)) throw ValidationError("joint cell not finite");
      prev_end = r.end;
    }
    std::erase_if(runs, [](const Run& r) { return r.prob == 0.0; });
    rows_[x] = std::move(runs);
  }

  std::size_t t_x() const noexcept { return rows_.size(); }
  std::size_t t_y() const noexcept { return t_y_; }
  std::span<const Run> row(std::size_t x) const noexcept { return rows_[x]; }

  double operator()(std::size_t x, std::size_t y) const noexcept {
    const auto& runs = rows_[x];
    auto it = std::upper_bound(runs.begin(), runs.end(), y,
                               [](std::size_t v, const Run& r) { return v < r.end; });
    return (it != runs.end() && it->begin <= y) ? it->prob : 0.0;
  }

  std::vector<double> to_dense() const {
    std::vector<double> out(t_x() * t_y_, 0.0);
    for (std::size_t x = 0; x < t_x(); ++x) {
      for (const Run& r : rows_[x]) {
        std::fill(out.begin() + static_cast<std::ptrdiff_t>(x * t_y_ + r.begin),
                  out.begin() + static_cast<std::ptrdiff_t>(x * t_y_ + r.end), r.prob);
      }
    }
    return out;
  }

  double total() const noexcept {
    CompensatedSum s;
    for (const auto& runs : rows_) {
      for (const Run& r : runs) s.add(static_cast<double>(r.length()) * r.prob);
    }
    return s.value();
  }

  bool has_negative() const noexcept {
    for (const auto& runs : rows_) {
      for (const Run& r : runs) {
        if (r.prob < 0.0) return true;
      }
    }
    return false;
  }

  std::size_t stored_runs() const noexcept {
    std::size_t c = 0;
    for (const auto& runs : rows_) c += runs.size();
    return c;
  }

 private:
  std::size_t t_y_;
  std::vector<std::vector<Run>> rows_;
};

enum class MiModel { kIdealT1, kIdealT2, kCsEnsemble, kCustom };

inline std::string_view to_string(MiModel m) noexcept {
  switch (m) {
    case MiModel::kIdealT1: return "ideal_t1";
    case MiModel::kIdealT2: return "ideal_t2";
    case MiModel::kCsEnsemble: return "cs_ensemble";
    case MiModel::kCustom: return "custom";
  }
  return "custom";
}

struct MiReport {
  double mi_bits = 0.0;
  double h_x_bits = 0.0;
  double h_y_bits = 0.0;
  double h_y_given_x_bits = 0.0;
  MiModel model = MiModel::kCustom;
};

// I(X;Y) = sum p(x,y) log2(p(x,y) / (p(x) p(y))) with 0 log 0 = 0.
inline MiReport exact_mi(const DiscreteJoint& joint, MiModel model = MiModel::kCustom) {
  if (joint.has_negative()) throw ValidationError("joint has negative entries");
  const double total = joint.total();
  if (std::abs(total - 1.0) > kJointSumTol) {
    throw ValidationError("joint sums to " + std::to_string(total) + ", not 1");
  }
  using Run = DiscreteJoint::Run;
  const std::size_t tx = joint.t_x();
  const std::size_t ty = joint.t_y();

  std::vector<double> px(tx);
  std::vector<CompensatedSum> diff(ty + 1);
  for (std::size_t x = 0; x < tx; ++x) {
    CompensatedSum s;
    for (const Run& r : joint.row(x)) {
      s.add(static_cast<double>(r.length()) * r.prob);
      diff[r.begin].add(r.prob);
      diff[r.end].add(-r.prob);
    }
    px[x] = s.value();
  }

  // Column marginals, coalesced into runs of identical values.
  std::vector<Run> py;
  {
    CompensatedSum running;
    for (std::size_t y = 0; y < ty; ++y) {
      running.add(diff[y].value());
      const double v = running.value();
      if (!py.empty() && py.back().prob == v) {
        py.back().end = y + 1;
      } else {
        py.push_back({y, y + 1, v});
      }
    }
  }

  auto plogp = [](double p) { return p > 0.0 ? p * std::log2(p) : 0.0; };

  CompensatedSum hx, hy, hxy, mi;
  for (double p : px) hx.add(-plogp(p));
  for (const Run& r : py) hy.add(-static_cast<double>(r.length()) * plogp(r.prob));

  for (std::size_t x = 0; x < tx; ++x) {
    for (const Run& r : joint.row(x)) {
      hxy.add(-static_cast<double>(r.length()) * plogp(r.prob));
      auto it = std::upper_bound(py.begin(), py.end(), r.begin,
                                 [](std::size_t v, const Run& c) { return v < c.end; });
      for (; it != py.end() && it->begin < r.end; ++it) {
        const std::size_t lo = std::max(r.begin, it->begin);
        const std::size_t hi = std::min(r.end, it->end);
        mi.add(static_cast<double>(hi - lo) * r.prob *
               std::log2(r.prob / (px[x] * it->prob)));
      }
    }
  }

  MiReport out;
  out.model = model;
  out.h_x_bits = hx.value();
  out.h_y_bits = hy.value();
  out.h_y_given_x_bits = hxy.value() - out.h_x_bits;
  out.mi_bits = mi.value();
  // Rounding can leave the exact zero of an independent table slightly negative.
  if (out.mi_bits < 0.0 && out.mi_bits > -1e-12) out.mi_bits = 0.0;
  return out;
}

namespace detail {
inline void require_alphabet(std::size_t t) {
  if (t < 2) throw DomainError("alphabet size must be at least 2, got " + std::to_string(t));
}
}  // namespace detail

// Uniform messages {0..t-1}; keys are the uniformly chosen permutations of
// {1..t-1} that fix the null message 0; Y = key(X).
inline DiscreteJoint ideal_t1_joint(std::size_t t) {
  detail::require_alphabet(t);
  DiscreteJoint joint(t, t);
  joint.set_row(0, {{0, 1, 1.0 / static_cast<double>(t)}});
  const double p = 1.0 / static_cast<double>(t * (t - 1));
  for (std::size_t x = 1; x < t; ++x) joint.set_row(x, {{1, t, p}});
  return joint;
}

// Same model built by running every one of the (t-1)! keys.
inline DiscreteJoint ideal_t1_joint_enumerated(std::size_t t) {
  detail::require_alphabet(t);
  if (t > 10) throw BudgetError("permutation enumeration limited to t <= 10");
  std::vector<std::size_t> perm(t);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  std::vector<std::uint64_t> counts(t * t, 0);
  std::uint64_t keys = 0;
  do {
    for (std::size_t x = 0; x < t; ++x) ++counts[x * t + perm[x]];
    ++keys;
  } while (std::next_permutation(perm.begin() + 1, perm.end()));
  const double denom = static_cast<double>(keys * t);
  std::vector<double> probs(t * t);
  for (std::size_t i = 0; i < probs.size(); ++i) {
    probs[i] = static_cast<double>(counts[i]) / denom;
  }
  return DiscreteJoint::from_dense(t, t, probs);
}

// Closed form of the permutation model: log2 t - ((t-1)/t) log2(t-1).
inline double t1_closed_form(std::size_t t) {
  detail::require_alphabet(t);
  const double td = static_cast<double>(t);
  return std::log2(td) - ((td - 1.0) / td) * std::log2(td - 1.0);
}

// No null message; keys are the t cyclic shifts, Y = X + K mod t.
inline DiscreteJoint ideal_t2_joint(std::size_t t) {
  detail::require_alphabet(t);
  DiscreteJoint joint(t, t);
  const double p = 1.0 / (static_cast<double>(t) * static_cast<double>(t));
  for (std::size_t x = 0; x < t; ++x) joint.set_row(x, {{0, t, p}});
  return joint;
}

inline DiscreteJoint ideal_t2_joint_enumerated(std::size_t t) {
  detail::require_alphabet(t);
  if (t * t > 10'000'000) throw BudgetError("shift enumeration limited to t^2 <= 1e7");
  std::vector<std::uint64_t> counts(t * t, 0);
  for (std::size_t k = 0; k < t; ++k) {
    for (std::size_t x = 0; x < t; ++x) ++counts[x * t + (x + k) % t];
  }
  const double denom = static_cast<double>(t) * static_cast<double>(t);
  std::vector<double> probs(t * t);
  for (std::size_t i = 0; i < probs.size(); ++i) {
    probs[i] = static_cast<double>(counts[i]) / denom;
  }
  return DiscreteJoint::from_dense(t, t, probs);
}

// Keys with their selection probabilities (uniform unless given).
struct KeyEnsemble {
  std::vector<SecretKey> keys;
  std::vector<double> probs;

  static KeyEnsemble uniform(std::vector<SecretKey> keys) {
    KeyEnsemble e;
    e.probs.assign(keys.size(), 1.0 / static_cast<double>(keys.size()));
    e.keys = std::move(keys);
    return e;
  }

  // Consecutive seeds seed0, seed0 + 1, ... sharing (m, n).
  static KeyEnsemble seeded(std::uint64_t seed0, std::size_t count, std::size_t m,
                            std::size_t n) {
    std::vector<SecretKey> keys;
    for (std::size_t i = 0; i < count; ++i) keys.push_back({seed0 + i, m, n});
    return uniform(std::move(keys));
  }

  // Abstract labelled keys for the idealized models; only probs matter.
  static KeyEnsemble labels(std::vector<double> probs) {
    KeyEnsemble e;
    e.probs = std::move(probs);
    return e;
  }

  void validate() const {
    if (probs.empty()) throw ValidationError("key ensemble is empty");
    if (!keys.empty() && keys.size() != probs.size()) {
      throw ValidationError("key ensemble has " + std::to_string(keys.size()) +
                            " keys but " + std::to_string(probs.size()) + " probabilities");
    }
    CompensatedSum s;
    for (double p : probs) {
      if (!(p >= 0.0) || !std::isfinite(p)) {
        throw ValidationError("key probabilities must be finite and nonnegative");
      }
      s.add(p);
    }
    if (std::abs(s.value() - 1.0) > 1e-12) {
      throw ValidationError("key probabilities sum to " + std::to_string(s.value()));
    }
  }
};

struct KeyEntropyCheck {
  bool ok = false;
  double h_k_bits = 0.0;
  double h_w_bits = 0.0;
};

// Shannon's necessary condition H(K) >= H(W) with uniform messages.
inline KeyEntropyCheck key_entropy_check(const KeyEnsemble& keys, std::size_t t_messages) {
  keys.validate();
  if (t_messages < 1) throw DomainError("need at least one message");
  KeyEntropyCheck out;
  CompensatedSum h;
  for (double p : keys.probs) {
    if (p > 0.0) h.add(-p * std::log2(p));
  }
  out.h_k_bits = h.value();
  out.h_w_bits = std::log2(static_cast<double>(t_messages));
  out.ok = out.h_k_bits >= out.h_w_bits - 1e-12;
  return out;
}

struct EnsembleJoint {
  DiscreteJoint joint;
  // Quantized cryptogram of each column, in first-seen order over
  // (key index, message index).
  std::vector<std::vector<std::int64_t>> cells;
};

// Exact joint of (message, quantized cryptogram) over every key and message.
// Each ciphertext coordinate is binned as floor(y_i / bin_width).
inline EnsembleJoint cs_ensemble_joint_detailed(const KeyEnsemble& keys,
                                                const std::vector<SparseMessage>& messages,
                                                const Dictionary& psi, double bin_width,
                                                std::uint64_t cell_budget = kEnsembleCellBudget) {
  keys.validate();
  if (keys.keys.empty()) throw ValidationError("ensemble needs concrete keys");
  if (messages.empty()) throw ValidationError("ensemble needs at least one message");
  if (!(bin_width > 0.0) || !std::isfinite(bin_width)) {
    throw DomainError("bin width must be positive");
  }
  const std::size_t m = keys.keys.front().m;
  const std::size_t n = keys.keys.front().n;
  for (const auto& k : keys.keys) {
    if (k.m != m || k.n != n) throw DimensionError("ensemble keys must share (m, n)");
  }
  for (std::size_t i = 0; i < messages.size(); ++i) {
    if (messages[i].dim() != n) {
      throw DimensionError("message " + std::to_string(i) + " has length " +
                           std::to_string(messages[i].dim()) + ", keys expect " +
                           std::to_string(n));
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (messages[i] == messages[j]) {
        throw DomainError("messages " + std::to_string(j) + " and " + std::to_string(i) +
                          " are identical");
      }
    }
  }

  const std::size_t tx = messages.size();
  const double p_msg = 1.0 / static_cast<double>(tx);
  std::map<std::vector<std::int64_t>, std::size_t> registry;
  std::vector<std::vector<std::int64_t>> cells;
  // (message, cell, probability) contributions in canonical order.
  std::vector<std::tuple<std::size_t, std::size_t, double>> mass;

  for (std::size_t ki = 0; ki < keys.keys.size(); ++ki) {
    const MeasurementMatrix a = compose(derive_matrix(keys.keys[ki]), psi);
    for (std::size_t xi = 0; xi < tx; ++xi) {
      const Ciphertext y = encrypt(a, messages[xi]);
      std::vector<std::int64_t> q(m);
      for (std::size_t r = 0; r < m; ++r) {
        const double b = std::floor(y.entries()[r] / bin_width);
        if (!(std::abs(b) < 0x1.0p53)) throw DomainError("bin index out of range");
        q[r] = static_cast<std::int64_t>(b);
      }
      auto [it, inserted] = registry.try_emplace(q, cells.size());
      if (inserted) {
        cells.push_back(q);
        if (static_cast<std::uint64_t>(cells.size()) * tx > cell_budget) {
          throw BudgetError("quantized alphabet exceeds " + std::to_string(cell_budget) +
                            " joint cells");
        }
      }
      mass.emplace_back(xi, it->second, keys.probs[ki] * p_msg);
    }
  }

  const std::size_t ty = cells.size();
  std::vector<CompensatedSum> acc(tx * ty);
  for (const auto& [x, c, p] : mass) acc[x * ty + c].add(p);
  std::vector<double> dense(tx * ty);
  for (std::size_t i = 0; i < dense.size(); ++i) dense[i] = acc[i].value();
  return {DiscreteJoint::from_dense(tx, ty, dense), std::move(cells)};
}

inline DiscreteJoint cs_ensemble_joint(const KeyEnsemble& keys,
                                       const std::vector<SparseMessage>& messages,
                                       const Dictionary& psi, double bin_width) {
  return cs_ensemble_joint_detailed(keys, messages, psi, bin_width).joint;
}

inline constexpr double kBandSlack = 1e-12;

struct PruneResult {
  std::vector<std::size_t> survivors;   // candidate indices, input order
  std::vector<std::size_t> eliminated;  // candidate indices, input order
  double lower = 0.0;                   // |y| / (1 + eps)
  double upper = 0.0;                   // |y| / (1 - eps)
};

// Norm-band eavesdropper: a candidate x' can only have produced y if
// |y| / (1 + eps) <= |x'| <= |y| / (1 - eps). Both sides of the band are used.
// The comparison allows a relative slack of 1e-12: a 1-sparse message on the
// extremal column sits exactly on the band edge, up to rounding.
inline PruneResult prune_candidates(const Ciphertext& y, double epsilon_k,
                                    const std::vector<SparseMessage>& candidates) {
  if (!(epsilon_k >= 0.0) || !(epsilon_k < 1.0)) {
    throw DomainError("pruning needs 0 <= epsilon < 1, got " + std::to_string(epsilon_k));
  }
  PruneResult out;
  const double ny = norm2(y.entries());
  out.lower = ny / (1.0 + epsilon_k);
  out.upper = ny / (1.0 - epsilon_k);
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    const double nx = norm2(candidates[i].entries());
    if (nx < out.lower * (1.0 - kBandSlack) || nx > out.upper * (1.0 + kBandSlack)) {
      out.eliminated.push_back(i);
    } else {
      out.survivors.push_back(i);
    }
  }
  return out;
}

struct PremiseAudit {
  bool consistent = true;
  std::vector<std::size_t> violators;  // message indices
  double epsilon_k = 0.0;
};

// Flags k-sparse messages whose own ciphertext leaves the band
// (1 - eps)|x| <= |Ax| <= (1 + eps)|x|. A relative slack of 1e-12 absorbs the
// rounding difference between the SVD-derived eps and direct products.
inline PremiseAudit rip_premise_audit(const MeasurementMatrix& a, std::size_t k,
                                      const std::vector<SparseMessage>& messages,
                                      double epsilon_k) {
  PremiseAudit out;
  out.epsilon_k = epsilon_k;
  for (std::size_t i = 0; i < messages.size(); ++i) {
    const auto& x = messages[i];
    if (x.l0() > k) {
      throw DomainError("message " + std::to_string(i) + " has " + std::to_string(x.l0()) +
                        " nonzeros, more than k=" + std::to_string(k));
    }
    const double nx = norm2(x.entries());
    const double ny = norm2(encrypt(a, x).entries());
    const double slack = kBandSlack * nx;
    if (ny < (1.0 - epsilon_k) * nx - slack || ny > (1.0 + epsilon_k) * nx + slack) {
      out.violators.push_back(i);
    }
  }
  out.consistent = out.violators.empty();
  return out;
}

inline PremiseAudit rip_premise_audit(const MeasurementMatrix& a, std::size_t k,
                                      const std::vector<SparseMessage>& messages) {
  return rip_premise_audit(a, k, messages, rip_constant(a, k).epsilon_k);
}

}  // namespace cssecrecy

#endif  // CSSECRECY_SECRECY_HPP_
