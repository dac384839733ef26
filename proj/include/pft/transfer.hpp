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

#ifndef PFT_TRANSFER_HPP
#define PFT_TRANSFER_HPP

#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "pft/dressing.hpp"
#include "pft/error.hpp"
#include "pft/evolve.hpp"
#include "pft/fock.hpp"
#include "pft/model.hpp"
#include "pft/operator.hpp"
#include "pft/polynomial.hpp"

namespace pft {

/// r = exp(-i pi (N - 1) / 2), returned as an exact fourth root of unity.
inline Complex signature(int n) {
  if (n < 1) throw InvalidArgument("signature: N must be >= 1");
  switch ((n - 1) % 4) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, -1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, 1.0};
  }
}

/// Re-indexes x_k -> x_{N-k+1} and multiplies every monomial by
/// phase^(degree).
inline MonomialFunction mirror_target(const MonomialFunction &f, int n, Complex phase) {
  if (f.processor_sites() > n)
    throw InvalidArgument("mirror_target: processor is larger than the chain");
  std::vector<Monomial> terms;
  terms.reserve(f.terms().size());
  for (const Monomial &m : f.terms()) {
    std::vector<int> e(static_cast<std::size_t>(n), 0);
    for (std::size_t k = 0; k < m.exponents.size(); ++k) e[static_cast<std::size_t>(n) - 1 - k] = m.exponents[k];
    Complex c = m.coeff;
    for (int d = 0; d < m.degree(); ++d) c *= phase;
    terms.push_back({c, std::move(e)});
  }
  return MonomialFunction(std::move(terms), n, f.shift());
}

/// Outcome of one transfer experiment.
struct TransferReport {
  std::string experiment;  // transfer | repulsion | dressed
  int sites = 0;           // N
  int processor_sites = 0; // n
  std::string sector;
  double transfer_time = 0.0;  // t0 = pi / J
  double hopping = 0.0;        // J
  double field = 0.0;          // eps
  double repulsion = 0.0;      // U
  std::string dressing = "none";
  Complex dressing_parameter;  // beta, or xi on the real axis
  Complex signature;           // r
  Complex phase_factor;        // measured, relative to the phase-free mirror image
  Complex expected_phase_factor;
  double fidelity = 0.0;
  double phase_error = 0.0;  // radians
  double truncation_loss = 0.0;
  bool pst_configuration = false;
  bool reliable = true;
  std::vector<std::pair<int, Complex>> degree_phases;  // per monomial degree
};

struct TransferOptions {
  std::size_t dense_limit = kDefaultDenseLimit;
  std::size_t max_basis = kDefaultMaxBasisDimension;
  double max_truncation_loss = 1e-7;
  double krylov_tolerance = 1e-10;
};

/// A state of a number-conserving chain basis used as the transfer medium.
struct MediumState {
  BasisPtr basis;
  StateVector amplitudes;
};

/// Normalized random state of `bosons` bosons confined to sites
/// first_site..last_site (0-based, inclusive) of an N-site chain, with
/// complex Gaussian amplitudes drawn from a seeded generator.
inline MediumState random_medium(int n, int bosons, int first_site, int last_site,
                                 std::uint64_t seed) {
  if (first_site < 0 || last_site >= n || first_site > last_site)
    throw InvalidArgument("random_medium: site range outside the chain");
  const BasisPtr basis = enumerate_basis(n, Sector::fixed_total(bosons));
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  StateVector v = StateVector::Zero(static_cast<Eigen::Index>(basis->size()));
  for (std::size_t i = 0; i < basis->size(); ++i) {
    const FockState &s = basis->state(i);
    bool inside = true;
    for (int k = 0; k < n; ++k)
      if (s[k] > 0 && (k < first_site || k > last_site)) inside = false;
    if (inside) v(static_cast<Eigen::Index>(i)) = Complex(gauss(rng), gauss(rng));
  }
  if (v.norm() == 0.0) throw InvalidArgument("random_medium: empty support");
  v.normalize();
  return {basis, v};
}

namespace detail {

inline Complex unit_phase(Complex z) {
  const double a = std::abs(z);
  return a > 0.0 ? z / a : Complex{};
}

inline double overlap_fidelity(const StateVector &a, const StateVector &b) {
  const double na = a.norm();
  const double nb = b.norm();
  if (na == 0.0 || nb == 0.0) return 0.0;
  return std::abs(a.dot(b)) / (na * nb);
}

inline double phase_distance(Complex a, Complex b) {
  if (a == Complex{} || b == Complex{}) return 0.0;
  return std::abs(std::arg(a * std::conj(b)));
}

inline double transfer_time(const ChainSpec &spec) {
  if (spec.hopping_scale == 0.0) throw InvalidArgument("transfer needs a non-zero hopping scale J");
  return std::numbers::pi / std::abs(spec.hopping_scale);
}

// Fills fidelity and phase fields from the evolved state, the expected state
// and a phase-free mirror image of each degree part.
template <class MirrorImage>
void score(TransferReport &rep, const MonomialFunction &f, const StateVector &actual,
           const StateVector &expected, MirrorImage &&image) {
  rep.fidelity = overlap_fidelity(expected, actual);
  const StateVector reference = image(mirror_target(f, rep.sites, 1.0));
  rep.phase_factor = unit_phase(reference.dot(actual));
  rep.expected_phase_factor = unit_phase(reference.dot(expected));
  rep.phase_error = phase_distance(rep.phase_factor, rep.expected_phase_factor);
  for (int d : f.degrees()) {
    const StateVector ref_d = image(mirror_target(*f.part_of_degree(d), rep.sites, 1.0));
    rep.degree_phases.emplace_back(d, unit_phase(ref_d.dot(actual)));
  }
}

inline TransferReport number_conserving_transfer(const char *label, const ChainSpec &spec,
                                                 const MonomialFunction &f,
                                                 const std::optional<MediumState> &medium,
                                                 const TransferOptions &opt) {
  spec.validate();
  const int n = spec.site_count;
  if (f.processor_sites() > n) throw InvalidArgument("function uses more sites than the chain has");
  if (f.shift() != Complex{})
    throw InvalidArgument("shifted arguments need a dressed transfer");

  int init_lo = 0;
  int init_hi = 0;
  if (medium) {
    if (!medium->basis->sector().number_conserving() || medium->basis->mode_count() != n)
      throw InvalidArgument("medium state must live in a number-conserving basis of the chain");
    if (static_cast<std::size_t>(medium->amplitudes.size()) != medium->basis->size())
      throw DimensionMismatch("medium state size does not match its basis");
    init_lo = medium->basis->sector().max_total();
    init_hi = medium->basis->sector().min_total();
    for (std::size_t i = 0; i < medium->basis->size(); ++i) {
      if (medium->amplitudes(static_cast<Eigen::Index>(i)) == Complex{}) continue;
      const int t = medium->basis->state(i).total();
      init_lo = std::min(init_lo, t);
      init_hi = std::max(init_hi, t);
    }
    if (init_lo > init_hi) throw InvalidArgument("medium state is zero");
  }
  const int hi = init_hi + f.max_degree();
  const Sector sector =
      init_lo == hi ? Sector::fixed_total(hi) : Sector::total_range(init_lo, hi);
  const BasisPtr basis = enumerate_basis(n, sector, opt.max_basis);

  StateVector init;
  if (medium) {
    init = embed(medium->amplitudes, *medium->basis, *basis);
  } else {
    init = basis_vector(*basis, FockState::vacuum(n));
  }

  const Propagator prop(build_bose_hubbard(spec, basis), opt.dense_limit);
  const double t0 = transfer_time(spec);
  const StateVector prepared = apply_polynomial(f, init, *basis);
  const StateVector actual = prop.evolve(prepared, t0);
  StateVector background = prop.evolve(init, t0);
  // The eigensolver may mix degenerate levels of different totals; drop the
  // round-off that lands outside the medium's own totals.
  for (std::size_t i = 0; i < basis->size(); ++i) {
    const int t = basis->state(i).total();
    if (t < init_lo || t > init_hi) background(static_cast<Eigen::Index>(i)) = 0.0;
  }

  TransferReport rep;
  rep.experiment = label;
  rep.sites = n;
  rep.processor_sites = f.processor_sites();
  rep.sector = sector.describe();
  rep.transfer_time = t0;
  rep.hopping = spec.hopping_scale;
  rep.field = spec.field_scale;
  rep.repulsion = spec.repulsion;
  rep.signature = signature(n);

  // Schroedinger evolution carries U b_k^dagger U^dagger = conj(r) b_{N-k+1}^dagger.
  const Complex state_phase = std::conj(rep.signature);
  auto image = [&](const MonomialFunction &g) { return apply_polynomial(g, background, *basis); };
  const StateVector expected = image(mirror_target(f, n, state_phase));
  score(rep, f, actual, expected, image);

  const bool at_most_one_boson = init_hi + f.max_degree() <= 1;
  rep.pst_configuration =
      spec.is_mirror_symmetric_pst() && (spec.repulsion == 0.0 || at_most_one_boson);
  rep.reliable = true;
  return rep;
}

}  // namespace detail

/// Prepares f(b_1^dagger, ..., b_n^dagger)|init> (init = vacuum or the given
/// medium state), evolves it to t0 = pi/J and compares it with the mirrored
/// function applied to U(t0)|init>.
inline TransferReport run_transfer(const ChainSpec &spec, const MonomialFunction &f,
                                   const std::optional<MediumState> &medium = std::nullopt,
                                   const TransferOptions &opt = {}) {
  return detail::number_conserving_transfer("transfer", spec, f, medium, opt);
}

/// Transfer in the presence of on-site repulsion. Perfect only for states
/// with at most one boson; other inputs are run and flagged.
inline TransferReport run_repulsion_transfer(const ChainSpec &spec, const MonomialFunction &f,
                                             const TransferOptions &opt = {}) {
  return detail::number_conserving_transfer("repulsion", spec, f, std::nullopt, opt);
}

/// alpha |0> + sum_k beta_k b_k^dagger |0>.
inline TransferReport run_repulsion_transfer(const ChainSpec &spec, Complex alpha,
                                             const std::vector<Complex> &betas,
                                             const TransferOptions &opt = {}) {
  std::vector<Monomial> terms;
  if (alpha != Complex{}) terms.push_back({alpha, {}});
  for (std::size_t k = 0; k < betas.size(); ++k) {
    if (betas[k] == Complex{}) continue;
    std::vector<int> e(k + 1, 0);
    e[k] = 1;
    terms.push_back({betas[k], e});
  }
  if (terms.empty()) throw InvalidArgument("run_repulsion_transfer: state is zero");
  return run_repulsion_transfer(spec, MonomialFunction(std::move(terms)), opt);
}

/// Squared norm lost when the dressed encoding of f is projected onto
/// Capped(n_max): the larger of the loss for the prepared and target states.
inline double dressed_truncation_loss(const ChainSpec &spec, const DressingSpec &dressing,
                                      const MonomialFunction &f, int n_max) {
  const int n = spec.site_count;
  const BasisPtr exact = enumerate_basis(n, Sector::total_range(0, f.max_degree()));
  const BasisPtr capped = enumerate_basis(n, Sector::capped(n_max));
  double worst = 0.0;
  for (const MonomialFunction &g : {f, mirror_target(f, n, std::conj(signature(n)))}) {
    const double full = encode_function(g, *exact).squaredNorm();
    const StateVector w = apply_dressing(dressing, encode_function(g, *capped), *capped, n);
    worst = std::max(worst, 1.0 - w.squaredNorm() / full);
  }
  return std::max(worst, 0.0);
}

/// Smallest cap whose dressed truncation loss is below `max_loss`.
inline int choose_dressed_cap(const ChainSpec &spec, const DressingSpec &dressing,
                              const MonomialFunction &f, double max_loss,
                              std::size_t max_basis = kDefaultMaxBasisDimension) {
  for (int cap = std::max(1, f.max_degree());; ++cap) {
    if (basis_dimension(spec.site_count, Sector::capped(cap)) > static_cast<double>(max_basis))
      throw SizeLimitError("no cap below the basis limit reaches truncation loss " +
                               std::to_string(max_loss),
                           static_cast<std::size_t>(basis_dimension(spec.site_count, Sector::capped(cap))));
    if (dressed_truncation_loss(spec, dressing, f, cap) < max_loss) return cap;
  }
}

/// Transfers W f(b^dagger)|0> = f(W b^dagger W^dagger) W|0> under the dressed
/// Hamiltonian W H_l W^dagger in a Capped(n_max) basis and compares it with
/// the dressed mirror image. Truncation is the only approximation and is
/// reported as truncation_loss.
inline TransferReport run_dressed_transfer(const ChainSpec &spec, const DressingSpec &dressing,
                                           const MonomialFunction &f, int n_max,
                                           const TransferOptions &opt = {}) {
  spec.validate();
  const int n = spec.site_count;
  if (f.processor_sites() > n) throw InvalidArgument("function uses more sites than the chain has");
  if (f.shift() != Complex{})
    throw InvalidArgument("dressed transfer applies the dressing itself; pass an unshifted function");
  if (dressing.kind == DressingSpec::Kind::DownConversion)
    throw InvalidArgument("run_dressed_transfer supports displacement and squeezing dressings");
  const BasisPtr basis = enumerate_basis(n, Sector::capped(n_max), opt.max_basis);

  OperatorMatrix h = [&] {
    switch (dressing.kind) {
      case DressingSpec::Kind::Displacement:
        return build_dressed_displacement(spec, dressing.beta, basis);
      case DressingSpec::Kind::Squeezing:
        return build_squeeze_hamiltonians(spec, dressing.xi, basis).dressed;
      default:
        return build_dressed_displacement(spec, Complex{}, basis);
    }
  }();

  const double t0 = detail::transfer_time(spec);
  auto image = [&](const MonomialFunction &g) {
    return apply_dressing(dressing, encode_function(g, *basis), *basis, n);
  };
  const StateVector prepared = image(f);
  const StateVector actual = evolve_auto(h, prepared, t0, opt.dense_limit, opt.krylov_tolerance);

  TransferReport rep;
  rep.experiment = "dressed";
  rep.sites = n;
  rep.processor_sites = f.processor_sites();
  rep.sector = basis->sector().describe();
  rep.transfer_time = t0;
  rep.hopping = spec.hopping_scale;
  rep.field = spec.field_scale;
  rep.repulsion = spec.repulsion;
  rep.dressing = dressing.name();
  rep.dressing_parameter =
      dressing.kind == DressingSpec::Kind::Squeezing ? Complex(dressing.xi, 0.0) : dressing.beta;
  rep.signature = signature(n);
  const StateVector expected = image(mirror_target(f, n, std::conj(rep.signature)));
  detail::score(rep, f, actual, expected, image);
  rep.truncation_loss = dressed_truncation_loss(spec, dressing, f, n_max);
  rep.pst_configuration = spec.is_mirror_symmetric_pst();
  rep.reliable = rep.truncation_loss <= opt.max_truncation_loss;
  return rep;
}

}  // namespace pft

#endif  // PFT_TRANSFER_HPP
