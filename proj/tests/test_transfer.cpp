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

#include <numbers>
#include <random>

#include "oracles.hpp"
#include "pft/transfer.hpp"

using namespace pft;

namespace {

constexpr double kPi = std::numbers::pi;

Complex cpow(Complex z, int d) {
  Complex r = 1.0;
  for (int i = 0; i < d; ++i) r *= z;
  return r;
}

}  // namespace

TEST(Signature, TableAndPeriodicity) {
  for (int n = 1; n <= 40; ++n) {
    const Complex expect = std::exp(Complex(0.0, -kPi * (n - 1) / 2.0));
    EXPECT_LT(std::abs(signature(n) - expect), 1e-12) << n;
    EXPECT_EQ(signature(n), signature(n + 4));
    EXPECT_EQ(signature(n) * signature(n), signature(2 * n - 1));
  }
  EXPECT_EQ(signature(5), Complex(1.0, 0.0));
  EXPECT_EQ(signature(9), Complex(1.0, 0.0));
  EXPECT_EQ(signature(13), Complex(1.0, 0.0));
  EXPECT_EQ(signature(8), Complex(0.0, 1.0));
  EXPECT_THROW(signature(0), InvalidArgument);
}

TEST(MirrorTarget, ReindexesAndScalesByDegree) {
  const MonomialFunction f({{2.0, {1, 0, 2}}, {1.0, {}}});
  const MonomialFunction g = mirror_target(f, 4, Complex(0.0, 1.0));
  ASSERT_EQ(g.processor_sites(), 4);
  EXPECT_EQ(g.terms()[0].exponents, (std::vector<int>{0, 2, 0, 1}));
  EXPECT_EQ(g.terms()[0].coeff, Complex(0.0, -2.0));  // 2 i^3
  EXPECT_EQ(g.terms()[1].coeff, Complex(1.0, 0.0));
  EXPECT_THROW(mirror_target(f, 2, 1.0), InvalidArgument);
}

TEST(Transfer, QuadraticFunctionOnFiveSites) {
  const MonomialFunction f = parse_function("a*x1^2 + b*x2^2", {{"a", 0.6}, {"b", 0.8}});
  const TransferReport r = run_transfer(ChainSpec::engineered(5, 1.0), f);
  EXPECT_NEAR(r.fidelity, 1.0, 1e-9);
  EXPECT_LT(r.phase_error, 1e-9);
  EXPECT_EQ(r.signature, Complex(1.0, 0.0));
  EXPECT_TRUE(r.pst_configuration);
  EXPECT_DOUBLE_EQ(r.transfer_time, kPi);
}

TEST(Transfer, ArbitraryMediumState) {
  const MonomialFunction f = parse_function("a*x1^2 + b*x2^2", {{"a", 0.6}, {"b", 0.8}});
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    const MediumState m = random_medium(5, 2, 1, 3, seed);
    const TransferReport r = run_transfer(ChainSpec::engineered(5, 1.0), f, m);
    EXPECT_NEAR(r.fidelity, 1.0, 1e-9) << seed;
    EXPECT_LT(r.phase_error, 1e-9) << seed;
  }
}

TEST(Transfer, FidelityIndependentOfHoppingScale) {
  for (double j : {0.25, 1.0, 3.0}) {
    const TransferReport r = run_transfer(ChainSpec::engineered(6, j), parse_function("x1*x2 + [0,1]*x3"));
    EXPECT_NEAR(r.fidelity, 1.0, 1e-9);
    EXPECT_DOUBLE_EQ(r.transfer_time, kPi / j);
  }
}

TEST(Transfer, DegreePhaseLaw) {
  // Each degree-d part arrives with (r^*)^d relative to the phase-free image.
  for (int n : {2, 3, 4, 5, 6, 8}) {
    const MonomialFunction f = parse_function("0.3 + 0.5*x1 + [0.2,0.4]*x1*x2 + 0.6*x2^3");
    const TransferReport r = run_transfer(ChainSpec::engineered(n, 1.0), f);
    EXPECT_NEAR(r.fidelity, 1.0, 1e-9) << n;
    for (const auto &[d, phase] : r.degree_phases)
      EXPECT_LT(std::abs(phase - cpow(std::conj(signature(n)), d)), 1e-9) << "N=" << n << " d=" << d;
  }
}

TEST(Transfer, FourSiteSingleBosonPhase) {
  const TransferReport r = run_transfer(ChainSpec::engineered(4, 1.0), parse_function("x1"));
  EXPECT_EQ(r.signature, Complex(0.0, 1.0));
  EXPECT_LT(std::abs(r.phase_factor - Complex(0.0, -1.0)), 1e-12);
  EXPECT_LT(std::abs(r.expected_phase_factor - Complex(0.0, -1.0)), 1e-12);
}

TEST(Transfer, NonEngineeredChainIsFlagged) {
  const TransferReport r = run_transfer(ChainSpec::engineered(5, 1.0, 0.3), parse_function("x1"));
  EXPECT_FALSE(r.pst_configuration);
  EXPECT_LT(r.fidelity, 1.0 - 1e-6);
  ChainSpec uniform = ChainSpec::engineered(5, 1.0);
  uniform.couplings.assign(4, 1.0);
  EXPECT_FALSE(run_transfer(uniform, parse_function("x1")).pst_configuration);
}

TEST(Transfer, RejectsOversizedAndShiftedFunctions) {
  EXPECT_THROW(run_transfer(ChainSpec::engineered(3, 1.0), parse_function("x4")), InvalidArgument);
  EXPECT_THROW(run_transfer(ChainSpec::engineered(3, 1.0), parse_function("x1").with_shift(0.1)),
               InvalidArgument);
  TransferOptions small;
  small.max_basis = 10;
  EXPECT_THROW(run_transfer(ChainSpec::engineered(6, 1.0), parse_function("x1^3"), std::nullopt, small),
               SizeLimitError);
}

TEST(Repulsion, SingleBosonStatesTransferForAnyU) {
  std::mt19937_64 rng(17);
  std::normal_distribution<double> g;
  for (double u : {0.1, 1.0, 10.0})
    for (int draw = 0; draw < 5; ++draw) {
      std::vector<Complex> betas(5);
      for (Complex &b : betas) b = Complex(g(rng), g(rng));
      const TransferReport r =
          run_repulsion_transfer(ChainSpec::engineered(5, 1.0, 0.0, u), Complex(g(rng), g(rng)), betas);
      EXPECT_NEAR(r.fidelity, 1.0, 1e-9) << u;
      EXPECT_LT(r.phase_error, 1e-9) << u;
      EXPECT_TRUE(r.pst_configuration);
      EXPECT_EQ(r.experiment, "repulsion");
    }
}

TEST(Repulsion, TwoBosonsAtUEqualsJMatchDenseAnchor) {
  // Fidelity of x1^2 on N = 5 with U = J = 1, checked against an independent
  // matrix-exponential evolution and a frozen regression value.
  const int n = 5;
  const auto model = oracle::bose_hubbard(oracle::krawtchouk(n, 1.0), std::vector<double>(n, 0.0), 1.0,
                                          oracle::states_with_total(n, 2));
  const oracle::Mat u = oracle::expm_propagator(model.h, kPi);
  const int from = model.index.at({2, 0, 0, 0, 0});
  const int to = model.index.at({0, 0, 0, 0, 2});
  const double oracle_fidelity = std::abs(u(to, from));

  const TransferReport r = run_repulsion_transfer(ChainSpec::engineered(n, 1.0, 0.0, 1.0), parse_function("x1^2"));
  EXPECT_FALSE(r.pst_configuration);
  EXPECT_LT(r.fidelity, 1.0 - 1e-3);
  EXPECT_NEAR(r.fidelity, oracle_fidelity, 1e-12);
  EXPECT_NEAR(r.fidelity, 0.2126516363672777, 1e-12);
  EXPECT_NEAR(std::arg(r.phase_factor), std::arg(u(to, from)), 1e-9);
}

TEST(RandomMedium, SupportAndNormalization) {
  const MediumState m = random_medium(6, 2, 2, 4, 9);
  EXPECT_NEAR(m.amplitudes.norm(), 1.0, 1e-14);
  for (std::size_t i = 0; i < m.basis->size(); ++i) {
    const FockState &s = m.basis->state(i);
    if (s[0] + s[1] + s[5] > 0) {
      EXPECT_EQ(m.amplitudes(static_cast<Eigen::Index>(i)), Complex{});
    }
  }
  EXPECT_EQ(random_medium(6, 2, 2, 4, 9).amplitudes, m.amplitudes);
  EXPECT_THROW(random_medium(4, 1, 3, 4, 0), InvalidArgument);
}

TEST(Dressed, DisplacementTransferOnThreeSites) {
  const ChainSpec s = ChainSpec::engineered(3, 1.0);
  const DressingSpec d = DressingSpec::displacement(Complex(0.2, 0.1));
  const MonomialFunction f = parse_function("x1");
  const int cap = choose_dressed_cap(s, d, f, 1e-7);
  const TransferReport r = run_dressed_transfer(s, d, f, cap);
  EXPECT_TRUE(r.reliable);
  EXPECT_LT(r.truncation_loss, 1e-7);
  EXPECT_GE(r.fidelity, 1.0 - 1e-6);
  EXPECT_LT(std::abs(r.expected_phase_factor - std::conj(signature(3))), 1e-6);
  EXPECT_EQ(r.dressing, "displacement");
}

TEST(Dressed, SqueezedTransferOnThreeSites) {
  const ChainSpec s = ChainSpec::engineered(3, 1.0);
  const DressingSpec d = DressingSpec::squeezing(0.1);
  const MonomialFunction f = parse_function("x1");
  const int cap = choose_dressed_cap(s, d, f, 1e-7);
  const TransferReport r = run_dressed_transfer(s, d, f, cap);
  EXPECT_TRUE(r.reliable);
  EXPECT_GE(r.fidelity, 1.0 - 1e-6);
}

TEST(Dressed, TruncationLossShrinksAndFlagsReliability) {
  const ChainSpec s = ChainSpec::engineered(3, 1.0);
  const DressingSpec d = DressingSpec::displacement(0.25);
  const MonomialFunction f = parse_function("x1");
  double prev = 2.0;
  for (int cap = 1; cap <= 6; ++cap) {
    const double loss = dressed_truncation_loss(s, d, f, cap);
    EXPECT_LT(loss, prev);
    prev = loss;
  }
  const TransferReport coarse = run_dressed_transfer(s, d, f, 1);
  EXPECT_FALSE(coarse.reliable);
}

TEST(Dressed, KrylovPathAgreesWithDense) {
  const ChainSpec s = ChainSpec::engineered(3, 1.0);
  const DressingSpec d = DressingSpec::displacement(0.2);
  const MonomialFunction f = parse_function("x1 + 0.5*x2");
  const TransferReport dense = run_dressed_transfer(s, d, f, 5);
  TransferOptions opt;
  opt.dense_limit = 10;
  const TransferReport kry = run_dressed_transfer(s, d, f, 5, opt);
  EXPECT_NEAR(dense.fidelity, kry.fidelity, 1e-9);
  EXPECT_LT(std::abs(dense.phase_factor - kry.phase_factor), 1e-8);
}

TEST(Dressed, UndressedRunMatchesNumberConservingTransfer) {
  const ChainSpec s = ChainSpec::engineered(4, 1.0);
  const TransferReport r = run_dressed_transfer(s, DressingSpec::none(), parse_function("x1*x2"), 2);
  EXPECT_NEAR(r.fidelity, 1.0, 1e-9);
  EXPECT_EQ(r.truncation_loss, 0.0);
}

TEST(Dressed, RejectsUnsupportedInputs) {
  const ChainSpec s = ChainSpec::engineered(3, 1.0);
  EXPECT_THROW(run_dressed_transfer(s, DressingSpec::down_conversion(0.1), parse_function("x1"), 2),
               InvalidArgument);
  EXPECT_THROW(run_dressed_transfer(s, DressingSpec::displacement(0.1), parse_function("x1").with_shift(0.1), 2),
               InvalidArgument);
  EXPECT_THROW(run_dressed_transfer(ChainSpec::engineered(3, 1.0, 0.0, 1.0), DressingSpec::displacement(0.1),
                                    parse_function("x1"), 2),
               InvalidArgument);
}
