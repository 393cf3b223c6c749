#include <gtest/gtest.h>

#include <set>

#include "oracles.hpp"
#include "randassign/errors.hpp"
#include "randassign/properties.hpp"
#include "randassign/rules.hpp"

namespace randassign {
namespace {

Matrix rows(std::vector<std::vector<Rational>> r) { return Matrix(r); }

const Rational k1_3(1, 3), k1_4(1, 4), k1_6(1, 6), k1_12(1, 12), k5_12(5, 12), k2_3(2, 3),
    k1_2(1, 2);

// a > b > c > d for agents 1 and 2; a > c > b > d; c > a > b > d.
Instance reversal_instance() {
  return Instance({{0, 1, 2, 3}, {0, 1, 2, 3}, {0, 2, 1, 3}, {2, 0, 1, 3}});
}

Instance two_type_instance() {
  return Instance({{0, 1, 2, 3}, {0, 1, 2, 3}, {0, 1, 2, 3}, {1, 2, 3, 0}});
}

TEST(ProbabilisticSerial, IdenticalPreferencesGiveUniform) {
  for (std::size_t n = 2; n <= 5; ++n) {
    EXPECT_EQ(probabilistic_serial(Instance::identical(n)), Matrix::uniform(n));
  }
}

TEST(ProbabilisticSerial, ReversalInstance) {
  EXPECT_EQ(probabilistic_serial(reversal_instance()),
            rows({{k1_3, k5_12, 0, k1_4},
                  {k1_3, k5_12, 0, k1_4},
                  {k1_3, k1_12, k1_3, k1_4},
                  {0, k1_12, k2_3, k1_4}}));
}

TEST(ProbabilisticSerial, TwoTypeInstance) {
  EXPECT_EQ(probabilistic_serial(two_type_instance()),
            rows({{k1_3, k1_6, k1_4, k1_4},
                  {k1_3, k1_6, k1_4, k1_4},
                  {k1_3, k1_6, k1_4, k1_4},
                  {0, k1_2, k1_4, k1_4}}));
}

TEST(ProbabilisticSerial, DistinctFavouritesGiveAPermutation) {
  const Instance inst({{2, 0, 1}, {0, 1, 2}, {1, 2, 0}});
  EXPECT_EQ(probabilistic_serial(inst), Matrix::permutation(DeterministicAssignment({2, 0, 1})));
}

TEST(ProbabilisticSerial, TraceRecordsSimultaneousDepletions) {
  const EatingTrace t = probabilistic_serial_trace(two_type_instance());
  // Object o2 empties at 1/2 with the lone eater; o1 at 1/3 with three eaters.
  ASSERT_GE(t.events.size(), 3u);
  EXPECT_EQ(t.events[0].time, k1_3);
  EXPECT_EQ(t.events[0].depleted, (std::vector<Object>{0}));
  EXPECT_EQ(t.events.back().time, Rational(1));
  const EatingTrace same = probabilistic_serial_trace(Instance::identical(3));
  ASSERT_EQ(same.events.size(), 3u);
  EXPECT_EQ(same.events[0].time, k1_3);
}

TEST(ProbabilisticSerial, OutputIsBistochasticAndSdEfOnAllThreeAgentProfiles) {
  const auto perms = oracle::permutations(3);
  for (const auto& p0 : perms) {
    for (const auto& p1 : perms) {
      for (const auto& p2 : perms) {
        const Instance inst({p0, p1, p2});
        const Matrix m = probabilistic_serial(inst);
        EXPECT_TRUE(validate_matrix(m));
        EXPECT_TRUE(oracle::sd_ef(inst, m));
      }
    }
  }
}

TEST(ProbabilisticSerial, SdEfOnRandomLargerProfiles) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 40; ++trial) {
    const Instance inst = oracle::random_instance(4 + trial % 4, rng);
    const Matrix m = probabilistic_serial(inst);
    EXPECT_TRUE(validate_matrix(m));
    EXPECT_TRUE(oracle::sd_ef(inst, m));
  }
}

struct TableRow {
  std::vector<Agent> order;  // 1-indexed
  std::string outcome;       // object letter per agent
};

TEST(SerialDictatorship, AllOrdersOfTheReversalInstance) {
  const std::vector<TableRow> table = {
      {{1, 2, 3, 4}, "abcd"}, {{4, 3, 2, 1}, "dbac"}, {{2, 1, 3, 4}, "bacd"},
      {{4, 3, 1, 2}, "bdac"}, {{1, 2, 4, 3}, "abdc"}, {{3, 4, 2, 1}, "dbac"},
      {{2, 1, 4, 3}, "badc"}, {{3, 4, 1, 2}, "bdac"}, {{1, 3, 2, 4}, "abcd"},
      {{4, 2, 3, 1}, "dabc"}, {{2, 3, 1, 4}, "bacd"}, {{4, 1, 3, 2}, "adbc"},
      {{1, 3, 4, 2}, "adcb"}, {{2, 4, 3, 1}, "dabc"}, {{2, 3, 4, 1}, "dacb"},
      {{1, 4, 3, 2}, "adbc"}, {{1, 4, 2, 3}, "abdc"}, {{3, 2, 4, 1}, "dbac"},
      {{2, 4, 1, 3}, "badc"}, {{3, 1, 4, 2}, "bdac"}, {{3, 1, 2, 4}, "bcad"},
      {{4, 2, 1, 3}, "badc"}, {{3, 2, 1, 4}, "cbad"}, {{4, 1, 2, 3}, "abdc"},
  };
  const Instance inst = reversal_instance();
  std::set<std::vector<Agent>> seen;
  for (const auto& row : table) {
    std::vector<Agent> order;
    for (Agent a : row.order) order.push_back(a - 1);
    seen.insert(order);
    std::vector<Object> expected;
    for (char c : row.outcome) expected.push_back(static_cast<Object>(c - 'a'));
    EXPECT_EQ(serial_dictatorship(inst, order).objects(), expected) << row.outcome;
  }
  EXPECT_EQ(seen.size(), 24u);
}

TEST(SerialDictatorship, MatchesScanningOracle) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 2 + trial % 5;
    const Instance inst = oracle::random_instance(n, rng);
    std::vector<Agent> order(n);
    std::iota(order.begin(), order.end(), Agent{0});
    std::shuffle(order.begin(), order.end(), rng);
    EXPECT_EQ(serial_dictatorship(inst, order).objects(),
              oracle::serial_dictatorship(inst.preferences(), order));
  }
}

TEST(SerialDictatorship, RejectsBadOrders) {
  const Instance inst = Instance::identical(3);
  EXPECT_THROW(serial_dictatorship(inst, {0, 1}), ArgumentError);
  EXPECT_THROW(serial_dictatorship(inst, {0, 1, 1}), ArgumentError);
  EXPECT_THROW(serial_dictatorship(inst, {0, 1, 3}), ArgumentError);
}

TEST(RandomPriority, IdenticalPreferencesGiveAllAssignmentsEqually) {
  const Lottery l = random_priority(Instance::identical(3));
  ASSERT_EQ(l.support_size(), 6u);
  for (const auto& [a, w] : l) EXPECT_EQ(w, k1_6);
}

TEST(RandomPriority, EqualsAverageOfSerialDictatorships) {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 2 + trial % 4;
    const Instance inst = oracle::random_instance(n, rng);
    Matrix expected(n, n);
    const auto orders = oracle::permutations(n);
    for (const auto& order : orders) {
      const auto sigma = oracle::serial_dictatorship(inst.preferences(), order);
      for (std::size_t i = 0; i < n; ++i) {
        expected(i, sigma[i]) += Rational(1, static_cast<long>(orders.size()));
      }
    }
    const Lottery l = random_priority(inst);
    EXPECT_EQ(matrix_of(l), expected);
    EXPECT_TRUE(is_dec_ef(inst, l));
  }
}

TEST(RandomPriority, ReversalInstanceDiffersFromPs) {
  const Instance inst = reversal_instance();
  EXPECT_NE(matrix_of(random_priority(inst)), probabilistic_serial(inst));
}

TEST(RandomPriority, CapIsEnforced) {
  EXPECT_THROW(random_priority(Instance::identical(4), 3), ResourceError);
}

}  // namespace
}  // namespace randassign
