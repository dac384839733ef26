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

#ifndef PFT_WIGNER_HPP
#define PFT_WIGNER_HPP

#include <Eigen/Dense>
#include <cmath>
#include <cstdlib>
#include <string>

#include "pft/error.hpp"

namespace pft {

/// Half-integer quantum number stored as twice its value.
struct HalfInt {
  int twice = 0;

  static constexpr HalfInt from_twice(int t) { return HalfInt{t}; }
  static constexpr HalfInt from_int(int v) { return HalfInt{2 * v}; }
  double value() const { return 0.5 * twice; }
  bool is_integer() const { return twice % 2 == 0; }

  friend constexpr bool operator==(HalfInt, HalfInt) = default;
};

/// Wigner small-d matrix d^l(beta) with entries <l m'|exp(-i beta L_y)|l m>.
/// Row and column r correspond to m = -l + r.
///
/// Built by coupling one spin-1/2 at a time: the stretched state
/// |j m> = sqrt((j+m)/2j)|j-1/2, m-1/2>|+> + sqrt((j-m)/2j)|j-1/2, m+1/2>|->
/// gives d^j as a bilinear combination of d^{j-1/2} and d^{1/2}. Every step
/// mixes bounded numbers with non-negative weights, so nothing overflows.
inline Eigen::MatrixXd wigner_d_matrix(int two_l, double beta) {
  if (two_l < 0) throw InvalidArgument("wigner_d_matrix: l must be >= 0");
  const double c = std::cos(0.5 * beta);
  const double s = std::sin(0.5 * beta);
  // d^{1/2} indexed by (sigma' , sigma) with 0 -> +1/2, 1 -> -1/2.
  const double half[2][2] = {{c, -s}, {s, c}};

  Eigen::MatrixXd d = Eigen::MatrixXd::Ones(1, 1);
  for (int tj = 1; tj <= two_l; ++tj) {
    // previous level has 2j' = tj - 1, index r' = (2m' + tj - 1) / 2
    Eigen::MatrixXd next = Eigen::MatrixXd::Zero(tj + 1, tj + 1);
    auto weight = [tj](int tm, int sigma) {
      // sigma = +1 couples |j-1/2, m-1/2>|+>, sigma = -1 couples |j-1/2, m+1/2>|->
      const int num = sigma > 0 ? tj + tm : tj - tm;
      return std::sqrt(static_cast<double>(num) / (2.0 * tj));
    };
    for (int r = 0; r <= tj; ++r) {
      const int tmr = 2 * r - tj;
      for (int q = 0; q <= tj; ++q) {
        const int tmc = 2 * q - tj;
        double acc = 0.0;
        for (int sr : {1, -1}) {
          const int prow2 = tmr - sr;  // 2(m' - sigma')
          if (std::abs(prow2) > tj - 1) continue;
          const double wr = weight(tmr, sr);
          for (int sc : {1, -1}) {
            const int pcol2 = tmc - sc;
            if (std::abs(pcol2) > tj - 1) continue;
            const double wc = weight(tmc, sc);
            const int pr = (prow2 + tj - 1) / 2;
            const int pc = (pcol2 + tj - 1) / 2;
            acc += wr * wc * d(pr, pc) * half[sr > 0 ? 0 : 1][sc > 0 ? 0 : 1];
          }
        }
        next(r, q) = acc;
      }
    }
    d = std::move(next);
  }
  return d;
}

/// d^l_{m_row, m_col}(beta) for half-integer quantum numbers.
inline double wigner_small_d(HalfInt l, HalfInt m_row, HalfInt m_col, double beta) {
  if (l.twice < 0 || std::abs(m_row.twice) > l.twice || std::abs(m_col.twice) > l.twice ||
      (l.twice - m_row.twice) % 2 != 0 || (l.twice - m_col.twice) % 2 != 0)
    throw InvalidArgument("wigner_small_d: invalid quantum numbers (2l=" +
                          std::to_string(l.twice) + ", 2m'=" + std::to_string(m_row.twice) +
                          ", 2m=" + std::to_string(m_col.twice) + ")");
  const Eigen::MatrixXd d = wigner_d_matrix(l.twice, beta);
  return d((m_row.twice + l.twice) / 2, (m_col.twice + l.twice) / 2);
}

}  // namespace pft

#endif  // PFT_WIGNER_HPP
