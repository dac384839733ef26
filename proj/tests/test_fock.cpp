// Copyright 2026 The pft Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <random>
#include <set>

#include "pft/fock.hpp"
#include "pft/operator.hpp"

using namespace pft;

namespace {

double binom(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

TEST(FockState, RejectsNegativeOccupation) {
  EXPECT_THROW(FockState({1, -1}), InvalidArgument);
  EXPECT_EQ(FockState({2, 0, 1}).total(), 3);
  EXPECT_EQ(FockState::vacuum(4).total(), 0);
}

TEST(Basis, FixedTotalDimensionIsStarsAndBars) {
  for (int m = 1; m <= 6; ++m)
    for (int n = 0; n <= 5; ++n) {
      Basis b(m, Sector::fixed_total(n));
      EXPECT_EQ(static_cast<double>(b.size()), binom(m + n - 1, n)) << m << " " << n;
      for (const FockState &s : b) EXPECT_EQ(s.total(), n);
    }
}

TEST(Basis, TotalRangeIsDirectSum) {
  Basis r(4, Sector::total_range(1, 3));
  std::size_t sum = 0;
  for (int n = 1; n <= 3; ++n) sum += Basis(4, Sector::fixed_total(n)).size();
  EXPECT_EQ(r.size(), sum);
}

TEST(Basis, CappedIsTensorLayout) {
  Basis b(3, Sector::capped(2));
  ASSERT_EQ(b.size(), 27u);
  for (std::size_t i = 0; i < b.size(); ++i) {
    const FockState &s = b.state(i);
    EXPECT_EQ(i, static_cast<std::size_t>(9 * s[0] + 3 * s[1] + s[2]));
  }
}

TEST(Basis, AuxCapAppliesToLastMode) {
  Basis b(3, Sector::capped(2, 4));
  EXPECT_EQ(b.size(), 3u * 3u * 5u);
  EXPECT_TRUE(b.contains(FockState({2, 2, 4})));
  EXPECT_FALSE(b.contains(FockState({3, 0, 0})));
}

TEST(Basis, StatesAreSortedAndIndexRoundTrips) {
  for (const Sector &sec : {Sector::fixed_total(3), Sector::total_range(0, 3), Sector::capped(2)}) {
    Basis b(4, sec);
    for (std::size_t i = 0; i < b.size(); ++i) {
      EXPECT_EQ(b.index(b.state(i)), i);
      if (i > 0) {
        EXPECT_LT(b.state(i - 1), b.state(i));
      }
    }
  }
}

TEST(Basis, SizeLimitReportsDimension) {
  try {
    Basis b(30, Sector::fixed_total(6), 1000);
    FAIL() << "expected SizeLimitError";
  } catch (const SizeLimitError &e) {
    EXPECT_EQ(e.dimension(), static_cast<std::size_t>(binom(35, 6)));
  }
  EXPECT_NO_THROW(Basis(5, Sector::capped(3), 1024));
  EXPECT_THROW(Basis(5, Sector::capped(3), 1023), SizeLimitError);
}

TEST(Basis, MissingStateThrows) {
  Basis b(3, Sector::fixed_total(1));
  EXPECT_FALSE(b.find(FockState({1, 1, 0})));
  EXPECT_THROW(b.index(FockState({1, 1, 0})), InvalidArgument);
}

TEST(Ladder, CreationMatrixElements) {
  auto b = enumerate_basis(3, Sector::fixed_total(2));
  const OperatorMatrix ad = creation_op(0, b);
  EXPECT_EQ(ad.basis_out()->sector(), Sector::fixed_total(3));
  EXPECT_NEAR(std::abs(ad.element(FockState({3, 0, 0}), FockState({2, 0, 0}))), std::sqrt(3.0), 1e-15);
  EXPECT_NEAR(std::abs(ad.element(FockState({1, 1, 1}), FockState({0, 1, 1}))), 1.0, 1e-15);
}

TEST(Ladder, AnnihilationIsAdjointOfCreation) {
  for (int n = 1; n <= 3; ++n) {
    auto lo = enumerate_basis(4, Sector::fixed_total(n - 1));
    auto hi = enumerate_basis(4, Sector::fixed_total(n));
    for (int k = 0; k < 4; ++k) {
      const DenseMatrix a = annihilation_op(k, hi).dense();
      const DenseMatrix ad = creation_op(k, lo).dense();
      EXPECT_LT((a - ad.adjoint()).cwiseAbs().maxCoeff(), 1e-15);
    }
  }
  EXPECT_THROW(annihilation_op(0, enumerate_basis(2, Sector::fixed_total(0))), InvalidArgument);
}

TEST(Ladder, CanonicalCommutatorBelowTheCap) {
  auto b = enumerate_basis(2, Sector::capped(4));
  const OperatorMatrix a = annihilation_op(0, b);
  const OperatorMatrix ad = creation_op(0, b);
  const DenseMatrix c = commutator(a, ad).dense();
  for (std::size_t i = 0; i < b->size(); ++i) {
    const auto ii = static_cast<Eigen::Index>(i);
    const double expected = b->state(i)[0] < 4 ? 1.0 : -4.0;  // the cap row is truncated
    EXPECT_NEAR(c(ii, ii).real(), expected, 1e-12);
  }
}

TEST(Ladder, NumberOperatorIsDiagonal) {
  auto b = enumerate_basis(3, Sector::total_range(0, 3));
  for (int k = 0; k < 3; ++k) {
    const DenseMatrix n = number_op(k, b).dense();
    for (std::size_t i = 0; i < b->size(); ++i)
      EXPECT_DOUBLE_EQ(n(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)).real(),
                       b->state(i)[k]);
    EXPECT_NEAR((n - DenseMatrix(n.diagonal().asDiagonal())).cwiseAbs().maxCoeff(), 0.0, 0.0);
  }
}

TEST(OperatorBuilder, ConservingBuildRejectsCrossSectorTerms) {
  auto b = enumerate_basis(2, Sector::total_range(0, 2));
  OperatorBuilder ob(b, true);
  EXPECT_THROW(ob.add(1.0, {create(0)}), Error);
}

TEST(OperatorMatrix, CompositionAppliesRightFactorFirst) {
  auto b = enumerate_basis(2, Sector::fixed_total(1));
  const OperatorMatrix up = creation_op(1, b);                     // N=1 -> N=2
  const OperatorMatrix down = annihilation_op(0, up.basis_out());  // N=2 -> N=1
  const OperatorMatrix hop = down * up;                            // b_0 b_1^+
  EXPECT_NEAR(std::abs(hop.element(FockState({0, 1}), FockState({1, 0}))), 1.0, 1e-15);
  EXPECT_EQ(std::abs(hop.element(FockState({1, 0}), FockState({0, 1}))), 0.0);
  EXPECT_EQ(std::abs(hop.element(FockState({0, 1}), FockState({0, 1}))), 0.0);
}

TEST(Embed, ReportsLostNorm) {
  auto big = enumerate_basis(2, Sector::total_range(0, 2));
  auto small = enumerate_basis(2, Sector::fixed_total(1));
  StateVector v = StateVector::Constant(static_cast<Eigen::Index>(big->size()), 1.0);
  double lost = 0.0;
  const StateVector w = embed(v, *big, *small, &lost);
  EXPECT_EQ(w.size(), 2);
  EXPECT_DOUBLE_EQ(lost, static_cast<double>(big->size() - 2));
}

// Random occupation vectors admitted by a sector stay admitted and
// round-trip through the index.
TEST(BasisProperty, AdmittedStatesAreIndexed) {
  std::mt19937_64 rng(1234);
  std::uniform_int_distribution<int> occ(0, 3);
  auto b = enumerate_basis(4, Sector::total_range(2, 5));
  for (int trial = 0; trial < 500; ++trial) {
    std::vector<int> v(4);
    for (int &x : v) x = occ(rng);
    const FockState s(v);
    EXPECT_EQ(b->contains(s), b->sector().admits(s));
  }
}
