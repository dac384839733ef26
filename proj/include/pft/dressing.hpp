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

#ifndef PFT_DRESSING_HPP
#define PFT_DRESSING_HPP

#include <Eigen/Eigenvalues>
#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

#include "pft/error.hpp"
#include "pft/fock.hpp"
#include "pft/model.hpp"
#include "pft/operator.hpp"

namespace pft {

/// Extra single-mode levels used when forming exact dressing matrices.
inline constexpr int kDressingPadding = 60;

namespace detail {

// exp(G) for anti-Hermitian G, through the Hermitian matrix iG.
inline DenseMatrix exp_antihermitian(const DenseMatrix &g) {
  const DenseMatrix h = Complex(0.0, 1.0) * g;
  Eigen::SelfAdjointEigenSolver<DenseMatrix> es(h);
  const Eigen::VectorXcd phases =
      (Complex(0.0, -1.0) * es.eigenvalues().cast<Complex>()).array().exp().matrix();
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

inline DenseMatrix single_mode_lowering(int dim) {
  DenseMatrix a = DenseMatrix::Zero(dim, dim);
  for (int n = 1; n < dim; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
  return a;
}

}  // namespace detail

/// Generator G of the single-mode dressing unitary W = exp(G) on levels
/// 0..dim-1 (the truncated generator; no padding).
inline DenseMatrix single_mode_generator(const DressingSpec &d, int dim) {
  const DenseMatrix a = detail::single_mode_lowering(dim);
  const DenseMatrix ad = a.adjoint();
  switch (d.kind) {
    case DressingSpec::Kind::None:
      return DenseMatrix::Zero(dim, dim);
    case DressingSpec::Kind::Displacement:
      return d.beta * ad - std::conj(d.beta) * a;
    case DressingSpec::Kind::Squeezing:
      return (0.5 * d.xi) * (a * a - ad * ad);
    case DressingSpec::Kind::DownConversion:
      break;
  }
  throw InvalidArgument("down-conversion has no single-mode dressing unitary");
}

/// Matrix elements <m|W|n>, m, n < dim, of the single-mode dressing unitary
/// of the untruncated oscillator (computed in a padded space and projected).
inline DenseMatrix single_mode_dressing(const DressingSpec &d, int dim,
                                        int padding = kDressingPadding) {
  const DenseMatrix w = detail::exp_antihermitian(single_mode_generator(d, dim + padding));
  return w.topLeftCorner(dim, dim);
}

/// Applies the same single-mode matrix to each of the first `modes` modes of
/// a Capped basis (tensor-product layout, first mode most significant).
inline StateVector apply_per_mode(const DenseMatrix &single, const StateVector &v,
                                  const Basis &basis, int modes) {
  if (basis.sector().kind() != Sector::Kind::Capped)
    throw InvalidArgument("apply_per_mode: needs a Capped basis");
  if (static_cast<std::size_t>(v.size()) != basis.size())
    throw DimensionMismatch("apply_per_mode: state size does not match basis");
  const int m = basis.mode_count();
  if (modes > m) throw InvalidArgument("apply_per_mode: too many modes");
  std::vector<Eigen::Index> radix(static_cast<std::size_t>(m));
  for (int k = 0; k < m; ++k) radix[static_cast<std::size_t>(k)] = basis.sector().cap(k, m) + 1;
  StateVector cur = v;
  StateVector next(cur.size());
  Eigen::Index stride = static_cast<Eigen::Index>(basis.size());
  for (int k = 0; k < m; ++k) {
    const Eigen::Index r = radix[static_cast<std::size_t>(k)];
    stride /= r;
    if (k >= modes) continue;
    if (single.rows() != r || single.cols() != r)
      throw DimensionMismatch("apply_per_mode: single-mode matrix does not match the cap");
    const Eigen::Index block = stride * r;
    next.setZero();
    for (Eigen::Index base = 0; base < cur.size(); base += block)
      for (Eigen::Index inner = 0; inner < stride; ++inner)
        for (Eigen::Index out = 0; out < r; ++out) {
          Complex acc{};
          for (Eigen::Index in = 0; in < r; ++in)
            acc += single(out, in) * cur(base + in * stride + inner);
          next(base + out * stride + inner) = acc;
        }
    std::swap(cur, next);
  }
  return cur;
}

/// prod_k W_k acting on a state of a Capped chain basis, with exact
/// single-mode matrix elements; norm that leaks past the cap is lost.
inline StateVector apply_dressing(const DressingSpec &d, const StateVector &v, const Basis &basis,
                                  int modes) {
  const int dim = basis.sector().n_max() + 1;
  return apply_per_mode(single_mode_dressing(d, dim), v, basis, modes);
}

/// The dressed vacuum prod_k W_k |0> projected onto the basis.
inline StateVector dressed_vacuum(const DressingSpec &d, const Basis &basis, int modes) {
  return apply_dressing(d, basis_vector(basis, FockState::vacuum(basis.mode_count())), basis, modes);
}

}  // namespace pft

#endif  // PFT_DRESSING_HPP
