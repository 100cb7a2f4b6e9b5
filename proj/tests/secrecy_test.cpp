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

#include "cssecrecy/secrecy.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "gtest/gtest.h"
#include "oracles.hpp"

namespace cssecrecy {
namespace {

// H2(1/4), and the closed form at T = 4.
constexpr double kH2Quarter = 0.8112781244591328;

TEST(DiscreteJoint, DenseRoundTripAndLookup) {
  const std::vector<double> p = {0.1, 0.1, 0.0, 0.2, 0.0, 0.3, 0.3, 0.0};
  const DiscreteJoint j = DiscreteJoint::from_dense(2, 4, p);
  EXPECT_EQ(j.to_dense(), p);
  EXPECT_EQ(j.stored_runs(), 3u);  // equal neighbours merge into one run
  for (std::size_t x = 0; x < 2; ++x) {
    for (std::size_t y = 0; y < 4; ++y) EXPECT_EQ(j(x, y), p[x * 4 + y]);
  }
  EXPECT_NEAR(j.total(), 1.0, 1e-15);
}

TEST(DiscreteJoint, RejectsBadRuns) {
  DiscreteJoint j(2, 3);
  EXPECT_THROW(j.set_row(0, {{1, 3, 0.5}, {0, 1, 0.5}}), ValidationError);
  EXPECT_THROW(j.set_row(0, {{0, 4, 0.5}}), ValidationError);
  EXPECT_THROW(DiscreteJoint::from_dense(2, 2, std::vector<double>{1.0}), DimensionError);
}

TEST(ExactMi, ProductJointIsZero) {
  const std::vector<double> px = {0.2, 0.5, 0.3};
  const std::vector<double> py = {0.1, 0.6, 0.25, 0.05};
  std::vector<double> p;
  for (double a : px) {
    for (double b : py) p.push_back(a * b);
  }
  const MiReport r = exact_mi(DiscreteJoint::from_dense(3, 4, p));
  EXPECT_NEAR(r.mi_bits, 0.0, 1e-12);
  EXPECT_GE(r.mi_bits, 0.0);
}

TEST(ExactMi, IdentityChannelCarriesTwoBits) {
  std::vector<double> p(16, 0.0);
  for (std::size_t i = 0; i < 4; ++i) p[i * 4 + i] = 0.25;
  const MiReport r = exact_mi(DiscreteJoint::from_dense(4, 4, p));
  EXPECT_NEAR(r.mi_bits, 2.0, 1e-15);
  EXPECT_NEAR(r.h_x_bits, 2.0, 1e-15);
  EXPECT_NEAR(r.h_y_given_x_bits, 0.0, 1e-15);
}

TEST(ExactMi, ValidationErrors) {
  EXPECT_THROW(exact_mi(DiscreteJoint::from_dense(1, 2, std::vector<double>{1.5, -0.5})),
               ValidationError);
  EXPECT_THROW(exact_mi(DiscreteJoint::from_dense(1, 2, std::vector<double>{0.5, 0.4})),
               ValidationError);
}

TEST(ExactMi, MatchesDenseDoubleSumOnRandomJoints) {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::bernoulli_distribution sparse(0.3);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t tx = 1 + trial % 7, ty = 1 + (trial / 7) % 9;
    std::vector<double> p(tx * ty);
    double total = 0.0;
    for (double& v : p) {
      v = sparse(rng) ? 0.0 : u(rng);
      total += v;
    }
    if (total == 0.0) continue;
    for (double& v : p) v /= total;
    const MiReport r = exact_mi(DiscreteJoint::from_dense(tx, ty, p));
    EXPECT_NEAR(r.mi_bits, testing::dense_mi_bits(p, tx, ty), 1e-12);
    EXPECT_NEAR(r.mi_bits, r.h_y_bits - r.h_y_given_x_bits, 1e-10);
    EXPECT_GE(r.mi_bits, -1e-12);
  }
}

TEST(IdealT1, TwoSymbols) {
  const DiscreteJoint j = ideal_t1_joint(2);
  EXPECT_EQ(j.to_dense(), (std::vector<double>{0.5, 0.0, 0.0, 0.5}));
  EXPECT_DOUBLE_EQ(exact_mi(j).mi_bits, 1.0);
}

TEST(IdealT1, FourSymbols) {
  EXPECT_NEAR(exact_mi(ideal_t1_joint(4)).mi_bits, kH2Quarter, 1e-12);
  EXPECT_NEAR(exact_mi(ideal_t1_joint_enumerated(4)).mi_bits, kH2Quarter, 1e-12);
}

TEST(IdealT1, MarginalsUniform) {
  for (std::size_t t : {2u, 3u, 9u, 64u}) {
    const auto p = ideal_t1_joint(t).to_dense();
    for (std::size_t a = 0; a < t; ++a) {
      double row = 0.0, col = 0.0;
      for (std::size_t b = 0; b < t; ++b) {
        row += p[a * t + b];
        col += p[b * t + a];
      }
      EXPECT_NEAR(row, 1.0 / static_cast<double>(t), 1e-15);
      EXPECT_NEAR(col, 1.0 / static_cast<double>(t), 1e-15);
    }
  }
}

TEST(IdealT1, EnumerationAgreesWithAnalyticJoint) {
  for (std::size_t t = 2; t <= 7; ++t) {
    const auto analytic = ideal_t1_joint(t).to_dense();
    const auto enumerated = ideal_t1_joint_enumerated(t).to_dense();
    ASSERT_EQ(analytic.size(), enumerated.size());
    for (std::size_t i = 0; i < analytic.size(); ++i) {
      EXPECT_NEAR(analytic[i], enumerated[i], 1e-15) << "t=" << t << " cell " << i;
    }
  }
  EXPECT_THROW(ideal_t1_joint_enumerated(11), BudgetError);
  EXPECT_THROW(ideal_t1_joint(1), DomainError);
}

TEST(IdealT1, ClosedFormValues) {
  EXPECT_DOUBLE_EQ(t1_closed_form(2), 1.0);
  EXPECT_NEAR(t1_closed_form(4), 0.811278, 1e-6);
  EXPECT_NEAR(t1_closed_form(4096), 0.003279, 1e-5);
  EXPECT_THROW(t1_closed_form(1), DomainError);
}

TEST(IdealT1, ClosedFormMatchesDenseOracle) {
  for (std::size_t t = 2; t <= 96; ++t) {
    const DiscreteJoint j = ideal_t1_joint(t);
    EXPECT_NEAR(testing::dense_mi_bits(j.to_dense(), t, t), t1_closed_form(t), 1e-12);
    EXPECT_NEAR(exact_mi(j).mi_bits, t1_closed_form(t), 1e-12);
  }
}

TEST(IdealT1, ClosedFormStrictlyDecreasing) {
  for (std::size_t t = 2; t < 5000; ++t) {
    ASSERT_GT(t1_closed_form(t), t1_closed_form(t + 1)) << "t=" << t;
  }
  EXPECT_LT(t1_closed_form(1'000'000), 1e-4);
}

TEST(IdealT2, IndependentForAnyAlphabet) {
  for (std::size_t t : {2u, 3u, 4u, 17u, 256u, 4096u}) {
    EXPECT_LE(std::abs(exact_mi(ideal_t2_joint(t)).mi_bits), 1e-12) << t;
  }
  for (std::size_t t = 2; t <= 32; ++t) {
    EXPECT_EQ(ideal_t2_joint(t).to_dense(), ideal_t2_joint_enumerated(t).to_dense());
  }
}

TEST(IdealT2, ConditionalIsUniform) {
  const DiscreteJoint j = ideal_t2_joint(4);
  for (std::size_t x = 0; x < 4; ++x) {
    for (std::size_t y = 0; y < 4; ++y) EXPECT_DOUBLE_EQ(j(x, y) / 0.25, 0.25);
  }
}

TEST(KeyEntropy, Examples) {
  const auto eight = key_entropy_check(KeyEnsemble::labels(std::vector<double>(8, 0.125)), 8);
  EXPECT_TRUE(eight.ok);
  EXPECT_DOUBLE_EQ(eight.h_k_bits, 3.0);
  EXPECT_DOUBLE_EQ(eight.h_w_bits, 3.0);

  const auto four = key_entropy_check(KeyEnsemble::labels(std::vector<double>(4, 0.25)), 8);
  EXPECT_FALSE(four.ok);

  const auto skew = key_entropy_check(KeyEnsemble::labels({0.5, 0.25, 0.25}), 2);
  EXPECT_DOUBLE_EQ(skew.h_k_bits, 1.5);
  EXPECT_TRUE(skew.ok);

  EXPECT_THROW(key_entropy_check(KeyEnsemble::labels({0.5, 0.4}), 2), ValidationError);
}

TEST(KeyEntropy, ShiftKeysMeetShannonBoundWithEquality) {
  for (std::size_t t : {2u, 5u, 1024u}) {
    const auto r = key_entropy_check(
        KeyEnsemble::labels(std::vector<double>(t, 1.0 / static_cast<double>(t))), t);
    EXPECT_TRUE(r.ok);
    EXPECT_NEAR(r.h_k_bits, r.h_w_bits, 1e-12);
  }
}

// Leakage instance shared with the acceptance suite.
std::vector<SparseMessage> LeakageMessages(bool with_zero) {
  std::vector<SparseMessage> msgs;
  if (with_zero) msgs.push_back(SparseMessage::zeros(8));
  msgs.push_back(SparseMessage({0, 1, 0, 0, 0, -1, 0, 0}));
  msgs.push_back(SparseMessage({0, 0, 1, 0, 0, 0, 1, 0}));
  msgs.push_back(SparseMessage({-1, 0, 0, 0, 0, 0, 0, 1}));
  if (!with_zero) msgs.push_back(SparseMessage({0, 0, 0, 1, 1, 0, 0, 0}));
  return msgs;
}

TEST(CsEnsemble, SingleKeyIsADeterministicChannel) {
  const auto keys = KeyEnsemble::seeded(5, 1, 4, 8);
  const auto msgs = LeakageMessages(true);
  const EnsembleJoint ej = cs_ensemble_joint_detailed(keys, msgs, Dictionary::identity(8), 0.25);
  ASSERT_EQ(ej.cells.size(), msgs.size());
  EXPECT_NEAR(exact_mi(ej.joint).mi_bits, 2.0, 1e-12);
}

TEST(CsEnsemble, NullMessageLeaksThroughZeroBin) {
  const auto keys = KeyEnsemble::seeded(1, 16, 4, 8);
  const auto msgs = LeakageMessages(true);
  const double w = 0.8;
  const EnsembleJoint ej = cs_ensemble_joint_detailed(keys, msgs, Dictionary::identity(8), w);
  EXPECT_EQ(ej.cells[0], std::vector<std::int64_t>(4, 0));
  for (std::size_t x = 0; x < ej.joint.t_x(); ++x) {
    for (std::size_t c = 0; c < ej.joint.t_y(); ++c) {
      if (x == 0 || c == 0) {
        EXPECT_EQ(ej.joint(x, c) > 0.0, x == 0 && c == 0);
      }
    }
  }
  const MiReport r = exact_mi(ej.joint, MiModel::kCsEnsemble);
  EXPECT_GE(r.mi_bits, kH2Quarter);
}

TEST(CsEnsemble, PermutingKeysOrMessagesKeepsMi) {
  auto keys = KeyEnsemble::seeded(1, 16, 4, 8);
  auto msgs = LeakageMessages(false);
  const auto psi = Dictionary::identity(8);
  const double base = exact_mi(cs_ensemble_joint(keys, msgs, psi, 0.5)).mi_bits;
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 10; ++trial) {
    std::shuffle(keys.keys.begin(), keys.keys.end(), rng);
    std::shuffle(msgs.begin(), msgs.end(), rng);
    EXPECT_NEAR(exact_mi(cs_ensemble_joint(keys, msgs, psi, 0.5)).mi_bits, base, 1e-12);
  }
}

TEST(CsEnsemble, Errors) {
  const auto keys = KeyEnsemble::seeded(1, 4, 4, 8);
  const auto psi = Dictionary::identity(8);
  auto msgs = LeakageMessages(true);
  EXPECT_THROW(cs_ensemble_joint(keys, msgs, psi, 0.0), DomainError);
  msgs.push_back(msgs.back());
  EXPECT_THROW(cs_ensemble_joint(keys, msgs, psi, 0.25), DomainError);
  EXPECT_THROW(cs_ensemble_joint_detailed(keys, LeakageMessages(true), psi, 1e-9, 10),
               BudgetError);
  EXPECT_THROW(cs_ensemble_joint(keys, {SparseMessage({1, 0})}, psi, 0.25), DimensionError);
}

TEST(Prune, ZeroCiphertextKeepsOnlyZeroNorm) {
  const Ciphertext y({0, 0});
  const auto r = prune_candidates(y, 0.5, {SparseMessage({0, 0, 0}), SparseMessage({1, 0, 0})});
  EXPECT_EQ(r.survivors, (std::vector<std::size_t>{0}));
  EXPECT_EQ(r.eliminated, (std::vector<std::size_t>{1}));
}

TEST(Prune, BandArithmetic) {
  // |y| = 3, eps = 0.5: band [2, 6].
  const Ciphertext y({3, 0});
  const auto r = prune_candidates(
      y, 0.5, {SparseMessage({1, 0}), SparseMessage({2.5, 0}), SparseMessage({0, 7})});
  EXPECT_DOUBLE_EQ(r.lower, 2.0);
  EXPECT_DOUBLE_EQ(r.upper, 6.0);
  EXPECT_EQ(r.survivors, (std::vector<std::size_t>{1}));
  EXPECT_EQ(r.eliminated, (std::vector<std::size_t>{0, 2}));
}

TEST(Prune, OneSparseMessageOnTheBandEdgeSurvives) {
  // The plant sits on the extremal column, so its norm equals the lower band
  // edge up to rounding.
  const auto a = derive_matrix({276, 8, 12});
  const RipReport rip = rip_constant(a, 1);
  ASSERT_TRUE(rip.satisfied);
  std::vector<double> x(12, 0.0);
  x[rip.extremal_support.front()] = 1.8066376231874941;
  const SparseMessage msg(x);
  const auto r = prune_candidates(encrypt(a, msg), rip.epsilon_k, {msg});
  EXPECT_EQ(r.survivors, (std::vector<std::size_t>{0}));
}

TEST(Prune, EpsilonDomain) {
  EXPECT_THROW(prune_candidates(Ciphertext({1}), 1.0, {}), DomainError);
  EXPECT_THROW(prune_candidates(Ciphertext({1}), -0.1, {}), DomainError);
}

TEST(Prune, TrueMessageSurvivesUnderRip) {
  std::mt19937_64 rng(17);
  int trials = 0;
  for (std::uint64_t seed = 0; trials < 200; ++seed) {
    const auto a = derive_matrix({seed, 8, 12});
    const RipReport rip = rip_constant(a, 2);
    if (!rip.satisfied) continue;
    ++trials;
    const SparseMessage x(testing::random_sparse(12, 2, rng));
    const auto r = prune_candidates(encrypt(a, x), rip.epsilon_k, {x});
    EXPECT_EQ(r.survivors, (std::vector<std::size_t>{0})) << "seed " << seed;
  }
}

TEST(PremiseAudit, IdentityIsConsistent) {
  std::vector<double> e(16, 0.0);
  for (std::size_t i = 0; i < 4; ++i) e[i * 4 + i] = 1.0;
  const auto a = MeasurementMatrix::from_entries(4, 4, e);
  const auto r = rip_premise_audit(a, 2, testing::all_pm1_messages(4, 2));
  EXPECT_TRUE(r.consistent);
  EXPECT_EQ(r.epsilon_k, 0.0);
}

TEST(PremiseAudit, RipMatrixIsConsistent) {
  const auto a = derive_matrix({7, 16, 32});
  const auto r = rip_premise_audit(a, 2, testing::all_pm1_messages(32, 2));
  EXPECT_TRUE(rip_constant(a, 2).satisfied);
  EXPECT_TRUE(r.consistent);
}

TEST(PremiseAudit, UnderstatedEpsilonIsFlagged) {
  const auto a = MeasurementMatrix::from_entries(2, 2, {1, 0, 0, 2});
  const auto r = rip_premise_audit(a, 1, {SparseMessage({1, 0}), SparseMessage({0, 1})}, 0.4);
  EXPECT_FALSE(r.consistent);
  EXPECT_EQ(r.violators, (std::vector<std::size_t>{1}));
  EXPECT_TRUE(rip_premise_audit(a, 1, {SparseMessage({0, 1})}).consistent);
}

TEST(PremiseAudit, SparsityAboveOrder) {
  const auto a = derive_matrix({1, 4, 6});
  EXPECT_THROW(rip_premise_audit(a, 1, {SparseMessage({1, 1, 0, 0, 0, 0})}, 0.5), DomainError);
}

}  // namespace
}  // namespace cssecrecy
