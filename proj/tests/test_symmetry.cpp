#include <gtest/gtest.h>

#include "support/property_suites.hpp"

namespace symnet {
namespace {

using namespace symnet::testing;

constexpr int kCases = 1000;
constexpr double kSymmetryTolerance = 1e-12;

TEST(Equivariance, ConvShiftZeroSameInterior) {
  const auto r = conv_shift_equivariance_padded(101, kCases);
  EXPECT_EQ(r.cases, kCases);
  EXPECT_EQ(r.worst, 0.0) << "expected bitwise equality";
}

TEST(Equivariance, ConvShiftUnpaddedAllPositions) {
  const auto r = conv_shift_equivariance_unpadded(102, kCases);
  EXPECT_EQ(r.cases, kCases);
  EXPECT_EQ(r.worst, 0.0) << "expected bitwise equality";
}

TEST(Equivariance, WidthOneConvUnderPositionPermutation) {
  const auto r = width_one_permutation_equivariance(103, kCases);
  EXPECT_LE(r.worst, kSymmetryTolerance);
}

TEST(Invariance, GlobalMaxPoolUnderPositionPermutation) {
  const auto r = pool_permutation_invariance(104, kCases);
  EXPECT_EQ(r.worst, 0.0);
}

TEST(Invariance, RuleConvNetworkUnderWordRowPermutation) {
  const auto r = rule_conv_word_permutation_invariance(105, kCases);
  EXPECT_LE(r.worst, kSymmetryTolerance);
}

TEST(NetworkGradients, AllArchitecturesMatchFiniteDifferences) {
  for (Architecture arch : {Architecture::exp1_dense, Architecture::exp1_conv,
                            Architecture::exp2_dense, Architecture::exp2_conv}) {
    const auto r = network_gradient_suite(arch, 200 + static_cast<int>(arch), 20);
    EXPECT_LE(r.worst, 1e-6) << r.name;
  }
}

TEST(LossGradients, SquaredErrorWithin1e8) {
  EXPECT_LE(squared_error_gradient_suite(301, 100).worst, 1e-8);
}

TEST(LossGradients, CrossEntropyThroughSoftmaxWithin1e7) {
  EXPECT_LE(cross_entropy_gradient_suite(302, 100).worst, 1e-7);
}

}  // namespace
}  // namespace symnet
