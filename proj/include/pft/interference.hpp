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

#ifndef PFT_INTERFERENCE_HPP
#define PFT_INTERFERENCE_HPP

#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <optional>
#include <utility>
#include <vector>

#include "pft/error.hpp"
#include "pft/evolve.hpp"
#include "pft/fock.hpp"
#include "pft/model.hpp"
#include "pft/operator.hpp"
#include "pft/transfer.hpp"

namespace pft {

/// Engineered chains sharing a sender (site 1 of every path) and a receiver
/// (site N_p of every path). The sender boson is identified across paths, so
/// each path starts with a boson at its first site weighted by its amplitude.
struct PathLattice {
  std::vector<ChainSpec> paths;
  std::vector<Complex> initial_amplitudes;

  static PathLattice from_lengths(const std::vector<int> &lengths, double j = 1.0) {
    PathLattice l;
    for (int n : lengths) l.paths.push_back(ChainSpec::engineered(n, j));
    l.initial_amplitudes.assign(lengths.size(), Complex(1.0, 0.0));
    return l;
  }

  void validate() const {
    if (paths.size() < 2) throw InvalidArgument("PathLattice needs at least two paths");
    if (initial_amplitudes.size() != paths.size())
      throw InvalidArgument("PathLattice: one initial amplitude per path");
    const double j = paths.front().hopping_scale;
    for (const ChainSpec &p : paths) {
      p.validate();
      if (p.hopping_scale != j) throw InvalidArgument("PathLattice: paths use different J");
      if (!p.is_mirror_symmetric_pst())
        throw InvalidArgument("PathLattice: every path must be an engineered Krawtchouk chain");
    }
  }

  double transfer_time() const { return std::numbers::pi / std::abs(paths.front().hopping_scale); }
};

struct IntensityProfile {
  double time = 0.0;
  std::vector<int> path_lengths;
  std::vector<std::vector<double>> site_intensities;  // per path, per site
  std::vector<Complex> receiver_amplitudes;           // per path, weighted
  double receiver_intensity = 0.0;
  double initial_intensity = 0.0;
  double interference_factor = 0.0;  // constructive two-path value is 4
  double closed_form_factor = 0.0;   // from signatures alone
  double total_number = 0.0;
};

/// |sum_p r_p / r_1|^2. For two paths this is 2 + r + r^* with r = r_2 / r_1.
inline double interference_factor(const std::vector<Complex> &signatures) {
  if (signatures.empty()) throw InvalidArgument("interference_factor: no signatures");
  for (Complex r : signatures) {
    const bool z4 = std::abs(r - Complex(1, 0)) < 1e-12 || std::abs(r - Complex(-1, 0)) < 1e-12 ||
                    std::abs(r - Complex(0, 1)) < 1e-12 || std::abs(r - Complex(0, -1)) < 1e-12;
    if (!z4) throw InvalidArgument("interference_factor: signature is not a fourth root of unity");
  }
  Complex sum{};
  for (Complex r : signatures) sum += r / signatures.front();
  return std::norm(sum);
}

/// Evolves the single-boson sector of every path and sums the receiver
/// amplitudes coherently. Intensities are in units of |w|^2 <n_sender>; the
/// factor rescales the receiver intensity by P / sum_p |c_p|^2 so that two
/// unit-weight paths arriving in phase give 4. Defaults to t = t0.
inline IntensityProfile run_interference(const PathLattice &lattice,
                                         std::optional<double> time = std::nullopt) {
  lattice.validate();
  const double t = time.value_or(lattice.transfer_time());
  IntensityProfile prof;
  prof.time = t;
  Complex sum{};
  Complex launched{};
  double weight = 0.0;
  std::vector<Complex> sigs;
  for (std::size_t p = 0; p < lattice.paths.size(); ++p) {
    const ChainSpec &spec = lattice.paths[p];
    const int n = spec.site_count;
    const Complex c = lattice.initial_amplitudes[p];
    const BasisPtr basis = enumerate_basis(n, Sector::fixed_total(1));
    const Propagator prop(build_bose_hubbard(spec, basis));
    const FockState sender = FockState::vacuum(n).with(0, 1);
    const StateVector psi = prop.evolve(basis_vector(*basis, sender), t);
    std::vector<double> sites(static_cast<std::size_t>(n));
    double path_number = 0.0;
    for (int k = 0; k < n; ++k) {
      const Complex a = psi(static_cast<Eigen::Index>(basis->index(FockState::vacuum(n).with(k, 1))));
      sites[static_cast<std::size_t>(k)] = std::norm(c * a);
      path_number += std::norm(c * a);
    }
    const Complex arrival =
        c * psi(static_cast<Eigen::Index>(basis->index(FockState::vacuum(n).with(n - 1, 1))));
    prof.path_lengths.push_back(n);
    prof.site_intensities.push_back(std::move(sites));
    prof.receiver_amplitudes.push_back(arrival);
    prof.total_number += path_number;
    sum += arrival;
    launched += c;
    weight += std::norm(c);
    sigs.push_back(signature(n));
  }
  const double paths = static_cast<double>(lattice.paths.size());
  const double norm = paths / weight;
  prof.receiver_intensity = std::norm(sum);
  prof.initial_intensity = std::norm(launched);
  prof.interference_factor = prof.receiver_intensity * norm;
  prof.closed_form_factor = interference_factor(sigs);
  return prof;
}

}  // namespace pft

#endif  // PFT_INTERFERENCE_HPP
