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

#ifndef PFT_EVOLVE_HPP
#define PFT_EVOLVE_HPP

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "pft/error.hpp"
#include "pft/fock.hpp"
#include "pft/operator.hpp"
#include "pft/wigner.hpp"

namespace pft {

inline constexpr std::size_t kDefaultDenseLimit = 4096;

/// Dense propagator U(t) = exp(-iHt) = V exp(-i Lambda t) V^dagger for a
/// Hermitian H, with the eigendecomposition cached at construction.
class Propagator {
 public:
  explicit Propagator(OperatorMatrix hamiltonian, std::size_t dense_limit = kDefaultDenseLimit)
      : h_(std::move(hamiltonian)) {
    if (!h_.is_square()) throw DimensionMismatch("Propagator: Hamiltonian is not square");
    const auto dim = static_cast<std::size_t>(h_.rows());
    if (dim > dense_limit)
      throw SizeLimitError("dense propagator dimension " + std::to_string(dim) +
                               " exceeds limit " + std::to_string(dense_limit) +
                               "; use KrylovPropagator",
                           dim);
    const double scale = std::max(1.0, OperatorMatrix::max_abs(h_.sparse()));
    if (h_.hermiticity_error() > 1e-12 * scale)
      throw InvalidArgument("Propagator: Hamiltonian is not Hermitian");
    Eigen::SelfAdjointEigenSolver<DenseMatrix> es(h_.dense());
    if (es.info() != Eigen::Success) throw Error("Propagator: eigendecomposition failed");
    energies_ = es.eigenvalues();
    vectors_ = es.eigenvectors();
  }

  const OperatorMatrix &hamiltonian() const noexcept { return h_; }
  const BasisPtr &basis() const noexcept { return h_.basis_in(); }
  const Eigen::VectorXd &energies() const noexcept { return energies_; }
  const DenseMatrix &eigenvectors() const noexcept { return vectors_; }
  Eigen::Index dimension() const noexcept { return energies_.size(); }

  DenseMatrix unitary(double t) const {
    return vectors_ * phases(t).asDiagonal() * vectors_.adjoint();
  }

  StateVector evolve(const StateVector &psi, double t) const {
    if (psi.size() != dimension()) throw DimensionMismatch("evolve: state size does not match basis");
    const StateVector c = vectors_.adjoint() * psi;
    return vectors_ * (phases(t).array() * c.array()).matrix();
  }

  double reconstruction_error() const {
    const DenseMatrix r = vectors_ * energies_.cast<Complex>().asDiagonal() * vectors_.adjoint();
    return (r - h_.dense()).cwiseAbs().maxCoeff();
  }

  double unitarity_error() const {
    const DenseMatrix g = vectors_.adjoint() * vectors_;
    return (g - DenseMatrix::Identity(dimension(), dimension())).cwiseAbs().maxCoeff();
  }

 private:
  Eigen::VectorXcd phases(double t) const {
    return (Complex(0.0, -t) * energies_.cast<Complex>()).array().exp().matrix();
  }

  OperatorMatrix h_;
  Eigen::VectorXd energies_;
  DenseMatrix vectors_;
};

inline StateVector evolve_state(const Propagator &prop, const StateVector &psi, double t) {
  return prop.evolve(psi, t);
}

/// U^dagger(t) A U(t) for an operator acting within the propagator's basis.
inline OperatorMatrix heisenberg_conjugate(const Propagator &prop, const OperatorMatrix &a,
                                           double t) {
  if (!(*a.basis_in() == *prop.basis()) || !(*a.basis_out() == *prop.basis()))
    throw DimensionMismatch("heisenberg_conjugate: operator lives outside the propagator basis");
  const DenseMatrix u = prop.unitary(t);
  return OperatorMatrix::from_dense(a.basis_in(), a.basis_out(), u.adjoint() * a.dense() * u);
}

/// U_out^dagger(t) A U_in(t) for an operator between two sectors, each with
/// its own propagator (the blocks of a propagator on their direct sum).
inline OperatorMatrix heisenberg_conjugate(const Propagator &prop_out, const OperatorMatrix &a,
                                           const Propagator &prop_in, double t) {
  if (!(*a.basis_in() == *prop_in.basis()) || !(*a.basis_out() == *prop_out.basis()))
    throw DimensionMismatch("heisenberg_conjugate: operator bases do not match the propagators");
  const DenseMatrix uo = prop_out.unitary(t);
  const DenseMatrix ui = prop_in.unitary(t);
  return OperatorMatrix::from_dense(a.basis_in(), a.basis_out(), uo.adjoint() * a.dense() * ui);
}

/// Short-time Lanczos propagator for sparse Hermitian H with adaptive steps.
/// Each accepted step keeps the a-posteriori error estimate below
/// tolerance * step / |t|, so the accumulated error stays below tolerance.
class KrylovPropagator {
 public:
  explicit KrylovPropagator(OperatorMatrix hamiltonian, double tolerance = 1e-9,
                            int subspace = 30)
      : h_(std::move(hamiltonian)), tol_(tolerance), m_(subspace) {
    if (!h_.is_square()) throw DimensionMismatch("KrylovPropagator: Hamiltonian is not square");
    if (subspace < 2) throw InvalidArgument("KrylovPropagator: subspace must be >= 2");
    const double scale = std::max(1.0, OperatorMatrix::max_abs(h_.sparse()));
    if (h_.hermiticity_error() > 1e-12 * scale)
      throw InvalidArgument("KrylovPropagator: Hamiltonian is not Hermitian");
  }

  const BasisPtr &basis() const noexcept { return h_.basis_in(); }
  const OperatorMatrix &hamiltonian() const noexcept { return h_; }
  int steps_taken() const noexcept { return steps_; }

  StateVector evolve(const StateVector &psi, double t) {
    if (psi.size() != h_.rows()) throw DimensionMismatch("evolve: state size does not match basis");
    steps_ = 0;
    StateVector v = psi;
    const double total = std::abs(t);
    if (total == 0.0 || v.norm() == 0.0) return v;
    const double dir = t > 0 ? 1.0 : -1.0;
    double done = 0.0;
    double tau = total;
    const SparseMatrix &h = h_.sparse();

    while (done < total) {
      const double beta0 = v.norm();
      DenseMatrix basis(v.size(), m_ + 1);
      Eigen::VectorXd alpha = Eigen::VectorXd::Zero(m_);
      Eigen::VectorXd offd = Eigen::VectorXd::Zero(m_);
      basis.col(0) = v / beta0;
      int dim = m_;
      bool exact = false;
      for (int j = 0; j < m_; ++j) {
        StateVector w = h * basis.col(j);
        alpha(j) = basis.col(j).dot(w).real();
        // full reorthogonalisation, twice
        for (int pass = 0; pass < 2; ++pass)
          for (int i = 0; i <= j; ++i) w -= basis.col(i).dot(w) * basis.col(i);
        offd(j) = w.norm();
        if (offd(j) < 1e-13 * std::max(1.0, std::abs(alpha(j)))) {
          dim = j + 1;
          exact = true;
          break;
        }
        basis.col(j + 1) = w / offd(j);
      }
      Eigen::MatrixXd tri = Eigen::MatrixXd::Zero(dim, dim);
      for (int j = 0; j < dim; ++j) {
        tri(j, j) = alpha(j);
        if (j + 1 < dim) tri(j, j + 1) = tri(j + 1, j) = offd(j);
      }
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(tri);
      const Eigen::MatrixXd &q = es.eigenvectors();
      auto small = [&](double step) {
        Eigen::VectorXcd c(dim);
        for (int i = 0; i < dim; ++i)
          c(i) = std::exp(Complex(0.0, -dir * step * es.eigenvalues()(i))) * q(0, i);
        return Eigen::VectorXcd(q.cast<Complex>() * c);
      };
      tau = std::min(tau, total - done);
      Eigen::VectorXcd y;
      for (;;) {
        y = small(tau);
        if (exact) break;
        const double err = beta0 * offd(dim - 1) * std::abs(y(dim - 1));
        const double allowed = tol_ * tau / total;
        if (err <= allowed) {
          // grow the next step cautiously
          const double grow = err > 0 ? std::pow(allowed / err, 1.0 / dim) : 2.0;
          done += tau;
          tau *= std::clamp(0.9 * grow, 0.5, 2.0);
          break;
        }
        tau *= std::clamp(0.9 * std::pow(allowed / err, 1.0 / dim), 0.1, 0.5);
      }
      if (exact) done += tau;
      v = beta0 * (basis.leftCols(dim) * y);
      ++steps_;
    }
    return v;
  }

 private:
  OperatorMatrix h_;
  double tol_;
  int m_;
  int steps_ = 0;
};

/// exp(-iHt) psi with the dense propagator when the basis is small enough,
/// Lanczos stepping otherwise.
inline StateVector evolve_auto(const OperatorMatrix &h, const StateVector &psi, double t,
                               std::size_t dense_limit = kDefaultDenseLimit,
                               double krylov_tolerance = 1e-10) {
  if (static_cast<std::size_t>(h.rows()) <= dense_limit)
    return Propagator(h, dense_limit).evolve(psi, t);
  KrylovPropagator k(h, krylov_tolerance);
  return k.evolve(psi, t);
}

/// Heisenberg map of the single-boson sector for H = -J L_x:
/// U^dagger(t) b_k^dagger U(t) = sum_k' X_{k'k} b_k'^dagger with
/// X_{k'k} = exp(i pi/2 (m' - m)) d^l_{m'm}(J t), l = (N-1)/2,
/// m = k - (N+1)/2. Returned on the FixedTotal(1) basis of N modes.
inline OperatorMatrix analytic_single_particle_propagator(int n, double j, double t) {
  if (n < 1) throw InvalidArgument("analytic_single_particle_propagator: N must be >= 1");
  const BasisPtr basis = enumerate_basis(n, Sector::fixed_total(1));
  const Eigen::MatrixXd d = wigner_d_matrix(n - 1, j * t);
  DenseMatrix x = DenseMatrix::Zero(n, n);
  for (int kr = 0; kr < n; ++kr) {
    const std::size_t row = basis->index(FockState::vacuum(n).with(kr, 1));
    for (int kc = 0; kc < n; ++kc) {
      const std::size_t col = basis->index(FockState::vacuum(n).with(kc, 1));
      const Complex phase = std::polar(1.0, 0.5 * std::numbers::pi * (kr - kc));
      x(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col)) = phase * d(kr, kc);
    }
  }
  return OperatorMatrix::from_dense(basis, basis, x);
}

/// One comparison of the analytic single-boson map against the numerical
/// propagator of H = -J L_x.
struct OracleReport {
  int sites = 0;
  double time = 0.0;
  double max_abs_diff = 0.0;    // max |X_analytic - U^dagger(t)| entrywise
  double unitarity_error = 0.0; // max |X^dagger X - 1|
};

inline OracleReport compare_single_particle_oracle(int n, double j, double t) {
  const BasisPtr basis = enumerate_basis(n, Sector::fixed_total(1));
  OperatorBuilder b(basis, true);
  for (int k = 0; k + 1 < n; ++k) {
    const double c = -j * 0.5 * std::sqrt(double(k + 1) * (n - k - 1));
    b.add(c, {create(k), annihilate(k + 1)});
    b.add(c, {create(k + 1), annihilate(k)});
  }
  const Propagator prop(b.build());
  const DenseMatrix numeric = prop.unitary(t).adjoint();
  const DenseMatrix analytic = analytic_single_particle_propagator(n, j, t).dense();
  OracleReport r;
  r.sites = n;
  r.time = t;
  r.max_abs_diff = (numeric - analytic).cwiseAbs().maxCoeff();
  r.unitarity_error =
      (analytic.adjoint() * analytic - DenseMatrix::Identity(n, n)).cwiseAbs().maxCoeff();
  return r;
}

}  // namespace pft

#endif  // PFT_EVOLVE_HPP
