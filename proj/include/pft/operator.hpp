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

#ifndef PFT_OPERATOR_HPP
#define PFT_OPERATOR_HPP

#include <algorithm>
#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <cmath>
#include <complex>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "pft/error.hpp"
#include "pft/fock.hpp"

namespace pft {

using Complex = std::complex<double>;
using StateVector = Eigen::VectorXcd;
using DenseMatrix = Eigen::MatrixXcd;
using SparseMatrix = Eigen::SparseMatrix<Complex>;

/// Matrix of an operator between two bases. Rows index basis_out, columns
/// index basis_in.
class OperatorMatrix {
 public:
  OperatorMatrix(BasisPtr basis_in, BasisPtr basis_out, SparseMatrix entries)
      : in_(std::move(basis_in)), out_(std::move(basis_out)), m_(std::move(entries)) {
    if (static_cast<std::size_t>(m_.rows()) != out_->size() ||
        static_cast<std::size_t>(m_.cols()) != in_->size())
      throw DimensionMismatch("OperatorMatrix: entries do not match basis sizes");
    m_.makeCompressed();
  }

  static OperatorMatrix from_dense(BasisPtr basis_in, BasisPtr basis_out,
                                   const DenseMatrix &dense) {
    SparseMatrix s = dense.sparseView(1.0, 0.0);
    return OperatorMatrix(std::move(basis_in), std::move(basis_out), std::move(s));
  }

  static OperatorMatrix zero(BasisPtr basis_in, BasisPtr basis_out) {
    SparseMatrix s(static_cast<Eigen::Index>(basis_out->size()),
                   static_cast<Eigen::Index>(basis_in->size()));
    return OperatorMatrix(std::move(basis_in), std::move(basis_out), std::move(s));
  }

  static OperatorMatrix identity(BasisPtr basis) {
    SparseMatrix s(static_cast<Eigen::Index>(basis->size()),
                   static_cast<Eigen::Index>(basis->size()));
    s.setIdentity();
    return OperatorMatrix(basis, basis, std::move(s));
  }

  const BasisPtr &basis_in() const noexcept { return in_; }
  const BasisPtr &basis_out() const noexcept { return out_; }
  const SparseMatrix &sparse() const noexcept { return m_; }
  DenseMatrix dense() const { return DenseMatrix(m_); }
  Eigen::Index rows() const noexcept { return m_.rows(); }
  Eigen::Index cols() const noexcept { return m_.cols(); }
  bool is_square() const { return *in_ == *out_; }

  Complex coeff(std::size_t row, std::size_t col) const {
    return m_.coeff(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col));
  }
  Complex element(const FockState &bra, const FockState &ket) const {
    auto r = out_->find(bra);
    auto c = in_->find(ket);
    if (!r || !c) return {};
    return coeff(*r, *c);
  }

  OperatorMatrix adjoint() const {
    SparseMatrix a = m_.adjoint();
    return OperatorMatrix(out_, in_, std::move(a));
  }

  StateVector apply(const StateVector &v) const {
    if (v.size() != m_.cols()) throw DimensionMismatch("OperatorMatrix::apply: state size");
    return m_ * v;
  }

  /// max |A - A^dagger| entrywise; requires a square operator.
  double hermiticity_error() const {
    if (!is_square()) throw DimensionMismatch("hermiticity_error: operator is not square");
    SparseMatrix d = m_ - SparseMatrix(m_.adjoint());
    return max_abs(d);
  }

  friend OperatorMatrix operator+(const OperatorMatrix &a, const OperatorMatrix &b) {
    require_same_shape(a, b, "operator+");
    return OperatorMatrix(a.in_, a.out_, a.m_ + b.m_);
  }
  friend OperatorMatrix operator-(const OperatorMatrix &a, const OperatorMatrix &b) {
    require_same_shape(a, b, "operator-");
    return OperatorMatrix(a.in_, a.out_, a.m_ - b.m_);
  }
  friend OperatorMatrix operator*(Complex s, const OperatorMatrix &a) {
    return OperatorMatrix(a.in_, a.out_, s * a.m_);
  }
  friend OperatorMatrix operator*(double s, const OperatorMatrix &a) {
    return Complex(s, 0.0) * a;
  }
  /// Composition a.b: first b, then a.
  friend OperatorMatrix operator*(const OperatorMatrix &a, const OperatorMatrix &b) {
    if (!(*b.out_ == *a.in_)) throw DimensionMismatch("operator*: bases do not chain");
    SparseMatrix p = a.m_ * b.m_;
    return OperatorMatrix(b.in_, a.out_, std::move(p));
  }

  static double max_abs(const SparseMatrix &s) {
    double m = 0.0;
    for (Eigen::Index k = 0; k < s.outerSize(); ++k)
      for (SparseMatrix::InnerIterator it(s, k); it; ++it) m = std::max(m, std::abs(it.value()));
    return m;
  }

 private:
  static void require_same_shape(const OperatorMatrix &a, const OperatorMatrix &b,
                                 const char *what) {
    if (!(*a.in_ == *b.in_) || !(*a.out_ == *b.out_))
      throw DimensionMismatch(std::string(what) + ": bases differ");
  }

  BasisPtr in_;
  BasisPtr out_;
  SparseMatrix m_;
};

inline double max_abs_diff(const OperatorMatrix &a, const OperatorMatrix &b) {
  return OperatorMatrix::max_abs((a - b).sparse());
}

inline OperatorMatrix commutator(const OperatorMatrix &a, const OperatorMatrix &b) {
  return a * b - b * a;
}

/// One bosonic ladder operator acting on a mode.
struct Ladder {
  int mode;
  bool dagger;
};

inline Ladder create(int mode) { return {mode, true}; }
inline Ladder annihilate(int mode) { return {mode, false}; }

/// Product of ladder operators written in operator order: {create(0),
/// annihilate(1)} is b_0^dagger b_1, so the rightmost entry acts first.
using LadderString = std::vector<Ladder>;

/// Applies a ladder string to a Fock state with unbounded occupations.
/// Returns the amplitude (0 when annihilated) and overwrites `occ`.
inline double apply_ladder(const LadderString &ops, std::vector<int> &occ) {
  double amp = 1.0;
  for (auto it = ops.rbegin(); it != ops.rend(); ++it) {
    int &n = occ[static_cast<std::size_t>(it->mode)];
    if (it->dagger) {
      ++n;
      amp *= std::sqrt(static_cast<double>(n));
    } else {
      if (n == 0) return 0.0;
      amp *= std::sqrt(static_cast<double>(n));
      --n;
    }
  }
  return amp;
}

/// Assembles a sum of ladder-string terms into an OperatorMatrix. Amplitude
/// landing outside basis_out is dropped (projector truncation), except that a
/// number-conserving build refuses any entry that changes the total.
class OperatorBuilder {
 public:
  OperatorBuilder(BasisPtr basis_in, BasisPtr basis_out, bool number_conserving = false)
      : in_(std::move(basis_in)), out_(std::move(basis_out)), conserving_(number_conserving) {}

  explicit OperatorBuilder(BasisPtr basis, bool number_conserving = false)
      : OperatorBuilder(basis, basis, number_conserving) {}

  OperatorBuilder &add(Complex coeff, const LadderString &ops) {
    if (coeff == Complex{}) return *this;
    for (const Ladder &l : ops)
      if (l.mode < 0 || l.mode >= in_->mode_count())
        throw InvalidArgument("ladder operator mode " + std::to_string(l.mode) + " out of range");
    std::vector<int> occ;
    for (std::size_t col = 0; col < in_->size(); ++col) {
      const FockState &ket = in_->state(col);
      occ = ket.occupations();
      const double amp = apply_ladder(ops, occ);
      if (amp == 0.0) continue;
      FockState bra(std::move(occ));
      if (conserving_ && bra.total() != ket.total())
        throw Error("number-conserving operator produced a cross-sector entry");
      if (auto row = out_->find(bra))
        triplets_.emplace_back(static_cast<Eigen::Index>(*row), static_cast<Eigen::Index>(col),
                               coeff * amp);
    }
    return *this;
  }

  OperatorBuilder &add(double coeff, const LadderString &ops) { return add(Complex(coeff, 0.0), ops); }

  OperatorMatrix build() const {
    SparseMatrix s(static_cast<Eigen::Index>(out_->size()),
                   static_cast<Eigen::Index>(in_->size()));
    s.setFromTriplets(triplets_.begin(), triplets_.end());
    s.prune(Complex{}, 0.0);
    return OperatorMatrix(in_, out_, std::move(s));
  }

 private:
  BasisPtr in_;
  BasisPtr out_;
  bool conserving_;
  std::vector<Eigen::Triplet<Complex>> triplets_;
};

namespace detail {

inline void check_site(int site, const Basis &basis) {
  if (site < 0 || site >= basis.mode_count())
    throw InvalidArgument("site " + std::to_string(site) + " out of range for " +
                          std::to_string(basis.mode_count()) + " modes");
}

}  // namespace detail

/// b_site^dagger. FixedTotal(n) maps into a fresh FixedTotal(n+1) basis;
/// TotalRange and Capped bases map into themselves with truncation.
inline OperatorMatrix creation_op(int site, const BasisPtr &basis) {
  detail::check_site(site, *basis);
  BasisPtr out = basis;
  if (basis->sector().kind() == Sector::Kind::FixedTotal)
    out = enumerate_basis(basis->mode_count(),
                          Sector::fixed_total(basis->sector().min_total() + 1));
  return OperatorBuilder(basis, out).add(1.0, {create(site)}).build();
}

/// b_site. FixedTotal(n) maps into FixedTotal(n-1); n = 0 has no target sector.
inline OperatorMatrix annihilation_op(int site, const BasisPtr &basis) {
  detail::check_site(site, *basis);
  BasisPtr out = basis;
  if (basis->sector().kind() == Sector::Kind::FixedTotal) {
    if (basis->sector().min_total() == 0)
      throw InvalidArgument("annihilation_op: FixedTotal(0) has no lower sector");
    out = enumerate_basis(basis->mode_count(),
                          Sector::fixed_total(basis->sector().min_total() - 1));
  }
  return OperatorBuilder(basis, out).add(1.0, {annihilate(site)}).build();
}

inline OperatorMatrix number_op(int site, const BasisPtr &basis) {
  detail::check_site(site, *basis);
  return OperatorBuilder(basis, true).add(1.0, {create(site), annihilate(site)}).build();
}

/// Unit vector on a Fock state.
inline StateVector basis_vector(const Basis &basis, const FockState &s) {
  StateVector v = StateVector::Zero(static_cast<Eigen::Index>(basis.size()));
  v(static_cast<Eigen::Index>(basis.index(s))) = 1.0;
  return v;
}

/// Re-expresses a state of one basis in another; components missing from the
/// target are dropped and their squared norm is returned through `lost`.
inline StateVector embed(const StateVector &v, const Basis &from, const Basis &to,
                         double *lost = nullptr) {
  if (static_cast<std::size_t>(v.size()) != from.size())
    throw DimensionMismatch("embed: state size does not match basis");
  if (from.mode_count() != to.mode_count())
    throw DimensionMismatch("embed: mode counts differ");
  StateVector w = StateVector::Zero(static_cast<Eigen::Index>(to.size()));
  double l = 0.0;
  for (std::size_t i = 0; i < from.size(); ++i) {
    const Complex a = v(static_cast<Eigen::Index>(i));
    if (a == Complex{}) continue;
    if (auto j = to.find(from.state(i)))
      w(static_cast<Eigen::Index>(*j)) += a;
    else
      l += std::norm(a);
  }
  if (lost) *lost = l;
  return w;
}

}  // namespace pft

#endif  // PFT_OPERATOR_HPP
