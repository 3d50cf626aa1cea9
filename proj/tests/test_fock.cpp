#include <bncsm/fock.hpp>

#include <gtest/gtest.h>

using namespace bncsm;

TEST(FockState, LadderAction) {
  const SingleModeOperators ops;
  EXPECT_TRUE(ops.k_minus(FockState::basis(12, 0)).is_zero());
  const FockState two = ops.k_minus(FockState::basis(12, 2));
  EXPECT_EQ(two.amplitudes().size(), 1u);
  EXPECT_EQ(two.amplitudes().begin()->first, 0);
  for (int n = 0; n <= 5; ++n) {
    EXPECT_EQ(ops.h0(FockState::basis(12, 2 * n)),
              (Rational(2 * n) + Rational(1, 2)) * FockState::basis(12, 2 * n));
  }
  EXPECT_THROW(ops.k_plus(FockState::basis(12, 12)), TruncationError);
}

TEST(Su11, ViolationFreeAtStandardCutoffs) {
  for (int cutoff : {6, 10, 12}) {
    const auto report = su11_fock_check(cutoff);
    EXPECT_TRUE(report.passed()) << report.violations.front();
    EXPECT_GT(report.checks, 0u);
  }
}

TEST(Su11, TamperedKPlusIsCaught) {
  SingleModeOperators tampered;
  tampered.k_plus_scale = Rational(1);
  EXPECT_FALSE(su11_fock_check(12, tampered).passed());
}

TEST(Su11, RejectsBadCutoff) {
  EXPECT_THROW(su11_fock_check(4), std::invalid_argument);
  EXPECT_THROW(su11_fock_check(7), std::invalid_argument);
}

TEST(FockOverlap, Examples) {
  EXPECT_EQ(fock_overlap(Partition{2}, Partition{1, 1}, 2), Rational(0));
  EXPECT_GT(fock_overlap(Partition{2}, Partition{2}, 2), 0);
  EXPECT_GT(fock_overlap(Partition{}, Partition{}, 3), 0);
  // <<0|K-^2 K+^2|0>> for one mode: K+^2|0> = 1/4 |4>, K-|4> = 6|2>, K-|2> = |0>
  EXPECT_EQ(fock_overlap(Partition{2}, Partition{2}, 1), Rational(6, 4));
}

TEST(FockOrthogonality, NTwoLevelThree) {
  EXPECT_EQ(occupation_labels(3, 2).size(), 6u);
  const auto report = fock_orthogonality_check(3, 2);
  EXPECT_TRUE(report.passed());
  EXPECT_EQ(report.checks, 36u);
}
