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

#ifndef PFT_MODEL_HPP
#define PFT_MODEL_HPP

#include <cmath>
#include <complex>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "pft/error.hpp"
#include "pft/fock.hpp"
#include "pft/operator.hpp"

namespace pft {

/// Lattice description for H = -sum J_k (b_k^dagger b_{k+1} + h.c.)
///                             + sum eps_k n_k + U sum n_k (n_k - 1).
///
/// The repulsion term uses n(n-1) without the customary 1/2. hopping_scale
/// (J) and field_scale (eps) record the global scales of engineered profiles
/// and fix the transfer time pi/J.
struct ChainSpec {
  int site_count = 2;
  std::vector<double> couplings;  // J_k, k = 1..N-1
  std::vector<double> onsite;     // eps_k, k = 1..N
  double repulsion = 0.0;         // U
  double hopping_scale = 1.0;     // J
  double field_scale = 0.0;       // eps

  void validate() const {
    if (site_count < 2) throw InvalidArgument("ChainSpec: site_count must be >= 2");
    if (couplings.size() != static_cast<std::size_t>(site_count - 1))
      throw InvalidArgument("ChainSpec: couplings must have N-1 entries");
    if (onsite.size() != static_cast<std::size_t>(site_count))
      throw InvalidArgument("ChainSpec: onsite must have N entries");
    auto finite = [](double v) { return std::isfinite(v); };
    for (double v : couplings)
      if (!finite(v)) throw InvalidArgument("ChainSpec: non-finite coupling");
    for (double v : onsite)
      if (!finite(v)) throw InvalidArgument("ChainSpec: non-finite onsite energy");
    if (!finite(repulsion) || !finite(hopping_scale) || !finite(field_scale))
      throw InvalidArgument("ChainSpec: non-finite scale");
  }

  static ChainSpec engineered(int n, double j, double eps = 0.0, double u = 0.0);

  /// Krawtchouk couplings with scale J and zero onsite energies, the
  /// configuration in which the mirror transfer at pi/J is exact.
  bool is_mirror_symmetric_pst(double tol = 1e-12) const;
};

/// J_k = J * sqrt(k (N - k)) / 2 for k = 1..N-1.
inline std::vector<double> krawtchouk_couplings(int n, double j) {
  if (n < 2) throw InvalidArgument("krawtchouk_couplings: N must be >= 2");
  std::vector<double> c(static_cast<std::size_t>(n - 1));
  for (int k = 1; k < n; ++k) c[static_cast<std::size_t>(k - 1)] = j * 0.5 * std::sqrt(double(k) * (n - k));
  return c;
}

/// eps_k = eps ((N + 1)/2 - k) for k = 1..N.
inline std::vector<double> linear_potential(int n, double eps) {
  if (n < 2) throw InvalidArgument("linear_potential: N must be >= 2");
  std::vector<double> e(static_cast<std::size_t>(n));
  for (int k = 1; k <= n; ++k) e[static_cast<std::size_t>(k - 1)] = eps * (0.5 * (n + 1) - k);
  return e;
}

inline ChainSpec ChainSpec::engineered(int n, double j, double eps, double u) {
  ChainSpec s;
  s.site_count = n;
  s.couplings = krawtchouk_couplings(n, j);
  s.onsite = linear_potential(n, eps);
  s.repulsion = u;
  s.hopping_scale = j;
  s.field_scale = eps;
  return s;
}

inline bool ChainSpec::is_mirror_symmetric_pst(double tol) const {
  if (hopping_scale == 0.0) return false;
  const auto ref = krawtchouk_couplings(site_count, hopping_scale);
  for (std::size_t k = 0; k < couplings.size(); ++k)
    if (std::abs(couplings[k] - ref[k]) > tol * std::max(1.0, std::abs(hopping_scale))) return false;
  for (double e : onsite)
    if (std::abs(e) > tol) return false;
  return true;
}

/// Uniform per-site dressing transformation.
struct DressingSpec {
  enum class Kind { None, Displacement, Squeezing, DownConversion };

  Kind kind = Kind::None;
  Complex beta;      // displacement amplitude
  double xi = 0.0;   // squeezing parameter
  double xi0 = 0.0;  // down-conversion coupling to the auxiliary mode

  static DressingSpec none() { return {}; }
  static DressingSpec displacement(Complex beta) { return {Kind::Displacement, beta, 0.0, 0.0}; }
  static DressingSpec squeezing(double xi) { return {Kind::Squeezing, {}, xi, 0.0}; }
  static DressingSpec down_conversion(double xi0) { return {Kind::DownConversion, {}, 0.0, xi0}; }

  std::string name() const {
    switch (kind) {
      case Kind::None: return "none";
      case Kind::Displacement: return "displacement";
      case Kind::Squeezing: return "squeezing";
      case Kind::DownConversion: return "down-conversion";
    }
    return {};
  }
};

/// C_k = sqrt(k (N - k)) / 2, k = 1..N-1.
inline double angular_coupling(int n, int k) { return 0.5 * std::sqrt(double(k) * (n - k)); }

namespace detail {

inline void require_chain_basis(const ChainSpec &spec, const Basis &basis, int extra_modes = 0) {
  spec.validate();
  if (basis.mode_count() != spec.site_count + extra_modes)
    throw DimensionMismatch("basis has " + std::to_string(basis.mode_count()) +
                            " modes, chain needs " + std::to_string(spec.site_count + extra_modes));
}

inline void require_capped(const Basis &basis, const char *who) {
  if (basis.sector().kind() != Sector::Kind::Capped)
    throw InvalidArgument(std::string(who) + ": dressed Hamiltonians need a Capped basis");
}

// b_k^dagger b_{k+1} + b_{k+1}^dagger b_k
inline void add_hop(OperatorBuilder &b, Complex c, int k) {
  b.add(c, {create(k), annihilate(k + 1)});
  b.add(c, {create(k + 1), annihilate(k)});
}

// b_k^dagger b_{k+1}^dagger + b_{k+1} b_k
inline void add_pair(OperatorBuilder &b, Complex c, int k) {
  b.add(c, {create(k), create(k + 1)});
  b.add(c, {annihilate(k + 1), annihilate(k)});
}

}  // namespace detail

inline OperatorMatrix build_bose_hubbard(const ChainSpec &spec, const BasisPtr &basis) {
  detail::require_chain_basis(spec, *basis);
  OperatorBuilder b(basis, true);
  for (int k = 0; k + 1 < spec.site_count; ++k)
    detail::add_hop(b, -spec.couplings[static_cast<std::size_t>(k)], k);
  for (int k = 0; k < spec.site_count; ++k) {
    b.add(spec.onsite[static_cast<std::size_t>(k)], {create(k), annihilate(k)});
    b.add(spec.repulsion, {create(k), create(k), annihilate(k), annihilate(k)});
  }
  return b.build();
}

enum class Axis { X, Y, Z };

/// L_x, L_y, L_z of the bosonic angular-momentum representation on an N-site
/// chain, with site k carrying magnetic number m = k - (N+1)/2.
inline OperatorMatrix build_angular_momentum(int n, Axis axis, const BasisPtr &basis) {
  if (basis->mode_count() != n)
    throw DimensionMismatch("build_angular_momentum: basis mode count differs from N");
  OperatorBuilder b(basis, true);
  const Complex i(0.0, 1.0);
  for (int k = 0; k + 1 < n; ++k) {
    const double c = angular_coupling(n, k + 1);
    switch (axis) {
      case Axis::X:
        detail::add_hop(b, c, k);
        break;
      case Axis::Y:
        b.add(i * c, {create(k), annihilate(k + 1)});
        b.add(-i * c, {create(k + 1), annihilate(k)});
        break;
      case Axis::Z:
        break;
    }
  }
  if (axis == Axis::Z)
    for (int k = 0; k < n; ++k) b.add(k - 0.5 * (n - 1), {create(k), annihilate(k)});
  return b.build();
}

namespace detail {

inline void require_linear(const ChainSpec &spec, const char *who) {
  if (spec.repulsion != 0.0)
    throw InvalidArgument(std::string(who) + ": dressing applies to the linear Hamiltonian (U = 0)");
}

}  // namespace detail

/// W H_l W^dagger for W = prod_k exp(beta b_k^dagger - beta^* b_k), written in
/// closed form: every b_k is replaced by b_k - beta.
inline OperatorMatrix build_dressed_displacement(const ChainSpec &spec, Complex beta,
                                                 const BasisPtr &basis) {
  detail::require_chain_basis(spec, *basis);
  detail::require_capped(*basis, "build_dressed_displacement");
  detail::require_linear(spec, "build_dressed_displacement");
  const double b2 = std::norm(beta);
  const Complex bc = std::conj(beta);
  OperatorBuilder b(basis);
  for (int k = 0; k + 1 < spec.site_count; ++k) {
    const double jk = spec.couplings[static_cast<std::size_t>(k)];
    detail::add_hop(b, -jk, k);
    for (int site : {k, k + 1}) {
      b.add(jk * bc, {annihilate(site)});
      b.add(jk * beta, {create(site)});
    }
    b.add(-2.0 * jk * b2, {});
  }
  for (int k = 0; k < spec.site_count; ++k) {
    const double e = spec.onsite[static_cast<std::size_t>(k)];
    b.add(e, {create(k), annihilate(k)});
    b.add(-e * beta, {create(k)});
    b.add(-e * bc, {annihilate(k)});
    b.add(e * b2, {});
  }
  return b.build();
}

struct SqueezeHamiltonians {
  OperatorMatrix pair;     // H_s = sum C_k (b_k^dagger b_{k+1}^dagger + b_{k+1} b_k)
  OperatorMatrix dressed;  // W H_l W^dagger
};

/// Pair Hamiltonian H_s and the squeeze-dressed Hamiltonian for
/// W = prod_k exp[(xi/2)(b_k^2 - b_k^dagger^2)]. Under this W,
/// b -> b cosh(xi) + b^dagger sinh(xi), so each bond picks up cosh(2 xi) and
/// sinh(2 xi); for Krawtchouk couplings and eps = 0 the result is
/// H_l cosh(2 xi) - J H_s sinh(2 xi).
inline SqueezeHamiltonians build_squeeze_hamiltonians(const ChainSpec &spec, double xi,
                                                      const BasisPtr &basis) {
  detail::require_chain_basis(spec, *basis);
  detail::require_capped(*basis, "build_squeeze_hamiltonians");
  detail::require_linear(spec, "build_squeeze_hamiltonians");
  const double ch = std::cosh(2.0 * xi);
  const double sh = std::sinh(2.0 * xi);
  OperatorBuilder hs(basis);
  OperatorBuilder hd(basis);
  for (int k = 0; k + 1 < spec.site_count; ++k) {
    const double jk = spec.couplings[static_cast<std::size_t>(k)];
    detail::add_pair(hs, angular_coupling(spec.site_count, k + 1), k);
    detail::add_hop(hd, -jk * ch, k);
    detail::add_pair(hd, -jk * sh, k);
  }
  for (int k = 0; k < spec.site_count; ++k) {
    const double e = spec.onsite[static_cast<std::size_t>(k)];
    if (e == 0.0) continue;
    hd.add(e * ch, {create(k), annihilate(k)});
    hd.add(e * std::sinh(xi) * std::sinh(xi), {});
    hd.add(0.5 * e * sh, {annihilate(k), annihilate(k)});
    hd.add(0.5 * e * sh, {create(k), create(k)});
  }
  return {hs.build(), hd.build()};
}

/// H_l (x) 1_c + xi0 (c + c^dagger) H_s on a basis whose last mode is the
/// auxiliary boson c. No free term is added for c.
inline OperatorMatrix build_down_conversion(const ChainSpec &spec, double xi0,
                                            const BasisPtr &basis_with_aux) {
  if (basis_with_aux->mode_count() != spec.site_count + 1)
    throw DimensionMismatch("build_down_conversion: basis needs N sites plus one auxiliary mode");
  detail::require_chain_basis(spec, *basis_with_aux, 1);
  detail::require_capped(*basis_with_aux, "build_down_conversion");
  detail::require_linear(spec, "build_down_conversion");
  const int aux = spec.site_count;
  OperatorBuilder b(basis_with_aux);
  for (int k = 0; k + 1 < spec.site_count; ++k) {
    detail::add_hop(b, -spec.couplings[static_cast<std::size_t>(k)], k);
    const double c = xi0 * angular_coupling(spec.site_count, k + 1);
    for (Ladder l : {create(aux), annihilate(aux)}) {
      b.add(c, {l, create(k), create(k + 1)});
      b.add(c, {l, annihilate(k + 1), annihilate(k)});
    }
  }
  for (int k = 0; k < spec.site_count; ++k)
    b.add(spec.onsite[static_cast<std::size_t>(k)], {create(k), annihilate(k)});
  return b.build();
}

}  // namespace pft

#endif  // PFT_MODEL_HPP
