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

#ifndef PFT_FOCK_HPP
#define PFT_FOCK_HPP

#include <algorithm>
#include <cmath>
#include <compare>
#include <cstddef>
#include <functional>
#include <limits>
#include <memory>
#include <numeric>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "pft/error.hpp"

namespace pft {

/// Occupation-number vector over the modes of a lattice (sites, optionally
/// followed by one auxiliary mode).
class FockState {
 public:
  FockState() = default;
  explicit FockState(std::vector<int> occupations) : occ_(std::move(occupations)) {
    for (int n : occ_)
      if (n < 0) throw InvalidArgument("FockState: negative occupation");
  }
  FockState(std::initializer_list<int> occupations)
      : FockState(std::vector<int>(occupations)) {}

  static FockState vacuum(int mode_count) {
    return FockState(std::vector<int>(static_cast<std::size_t>(mode_count), 0));
  }

  int mode_count() const noexcept { return static_cast<int>(occ_.size()); }
  int operator[](int mode) const { return occ_[static_cast<std::size_t>(mode)]; }
  int total() const noexcept { return std::accumulate(occ_.begin(), occ_.end(), 0); }
  const std::vector<int> &occupations() const noexcept { return occ_; }

  // Unchecked mutation used by ladder-operator application; the result may
  // leave any particular basis.
  FockState with(int mode, int occupation) const {
    FockState s = *this;
    s.occ_[static_cast<std::size_t>(mode)] = occupation;
    return s;
  }

  friend auto operator<=>(const FockState &, const FockState &) = default;
  friend bool operator==(const FockState &, const FockState &) = default;

 private:
  std::vector<int> occ_;
};

struct FockStateHash {
  std::size_t operator()(const FockState &s) const noexcept {
    std::size_t h = 0xcbf29ce484222325ULL;
    for (int n : s.occupations()) {
      h ^= static_cast<std::size_t>(n) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return h;
  }
};

/// Sector rule selecting which Fock states belong to a basis.
///
/// FixedTotal(n) and TotalRange(lo, hi) are number-conserving (the latter is
/// the direct sum of FixedTotal sectors lo..hi). Capped(n_max) bounds every
/// mode individually and is used whenever the dynamics does not conserve the
/// total boson number. The auxiliary-mode cap, when set, applies to the last
/// mode only.
class Sector {
 public:
  enum class Kind { FixedTotal, TotalRange, Capped };

  static Sector fixed_total(int n) {
    if (n < 0) throw InvalidArgument("FixedTotal sector needs n >= 0");
    return Sector(Kind::FixedTotal, n, n, -1, -1);
  }
  static Sector total_range(int lo, int hi) {
    if (lo < 0 || hi < lo) throw InvalidArgument("TotalRange sector needs 0 <= lo <= hi");
    return Sector(Kind::TotalRange, lo, hi, -1, -1);
  }
  static Sector capped(int n_max, int aux_cap = -1) {
    if (n_max < 0) throw InvalidArgument("Capped sector needs n_max >= 0");
    return Sector(Kind::Capped, 0, -1, n_max, aux_cap);
  }

  Kind kind() const noexcept { return kind_; }
  bool number_conserving() const noexcept { return kind_ != Kind::Capped; }
  int min_total() const noexcept { return lo_; }
  int max_total() const noexcept { return hi_; }
  int n_max() const noexcept { return n_max_; }
  int aux_cap() const noexcept { return aux_cap_; }
  bool has_aux_cap() const noexcept { return aux_cap_ >= 0; }

  /// Per-mode occupation bound, or -1 when the mode is only bounded by the total.
  int cap(int mode, int mode_count) const noexcept {
    if (kind_ != Kind::Capped) return -1;
    if (has_aux_cap() && mode == mode_count - 1) return aux_cap_;
    return n_max_;
  }

  bool admits(const FockState &s) const {
    if (kind_ == Kind::Capped) {
      for (int m = 0; m < s.mode_count(); ++m)
        if (s[m] > cap(m, s.mode_count())) return false;
      return true;
    }
    const int t = s.total();
    return t >= lo_ && t <= hi_;
  }

  std::string describe() const {
    switch (kind_) {
      case Kind::FixedTotal:
        return "FixedTotal(" + std::to_string(lo_) + ")";
      case Kind::TotalRange:
        return "TotalRange(" + std::to_string(lo_) + "," + std::to_string(hi_) + ")";
      case Kind::Capped:
        return has_aux_cap() ? "Capped(" + std::to_string(n_max_) + ",aux=" +
                                   std::to_string(aux_cap_) + ")"
                             : "Capped(" + std::to_string(n_max_) + ")";
    }
    return {};
  }

  friend bool operator==(const Sector &, const Sector &) = default;

 private:
  Sector(Kind kind, int lo, int hi, int n_max, int aux_cap)
      : kind_(kind), lo_(lo), hi_(hi), n_max_(n_max), aux_cap_(aux_cap) {}

  Kind kind_;
  int lo_;
  int hi_;
  int n_max_;
  int aux_cap_;
};

inline constexpr std::size_t kDefaultMaxBasisDimension = 200000;

namespace detail {

inline double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  k = std::min(k, n - k);
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return std::round(r);
}

}  // namespace detail

/// Number of states a basis would contain, saturating at a large double.
inline double basis_dimension(int mode_count, const Sector &sector) {
  if (sector.kind() == Sector::Kind::Capped) {
    double d = 1.0;
    for (int m = 0; m < mode_count; ++m) d *= sector.cap(m, mode_count) + 1.0;
    return d;
  }
  double d = 0.0;
  for (int n = sector.min_total(); n <= sector.max_total(); ++n)
    d += detail::binomial(mode_count + n - 1, n);
  return d;
}

/// Ordered, indexed set of Fock states. States are sorted lexicographically
/// (ascending) on their occupation vectors; for Capped sectors this makes the
/// basis a tensor-product layout with the first mode most significant.
class Basis {
 public:
  Basis(int mode_count, Sector sector,
        std::size_t max_dimension = kDefaultMaxBasisDimension)
      : mode_count_(mode_count), sector_(sector) {
    if (mode_count < 1) throw InvalidArgument("Basis needs at least one mode");
    const double dim = basis_dimension(mode_count, sector);
    if (dim > static_cast<double>(max_dimension)) {
      const auto reported = dim >= static_cast<double>(std::numeric_limits<std::size_t>::max())
                                ? std::numeric_limits<std::size_t>::max()
                                : static_cast<std::size_t>(dim);
      throw SizeLimitError("basis dimension " + std::to_string(reported) +
                               " exceeds limit " + std::to_string(max_dimension) + " for " +
                               std::to_string(mode_count) + " modes, " + sector.describe(),
                           reported);
    }
    states_.reserve(static_cast<std::size_t>(dim));
    std::vector<int> occ(static_cast<std::size_t>(mode_count), 0);
    enumerate(occ, 0, 0);
    index_.reserve(states_.size());
    for (std::size_t i = 0; i < states_.size(); ++i) index_.emplace(states_[i], i);
  }

  int mode_count() const noexcept { return mode_count_; }
  const Sector &sector() const noexcept { return sector_; }
  std::size_t size() const noexcept { return states_.size(); }
  const FockState &state(std::size_t i) const { return states_.at(i); }
  const std::vector<FockState> &states() const noexcept { return states_; }
  auto begin() const noexcept { return states_.begin(); }
  auto end() const noexcept { return states_.end(); }

  std::optional<std::size_t> find(const FockState &s) const {
    auto it = index_.find(s);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }
  bool contains(const FockState &s) const { return index_.contains(s); }
  std::size_t index(const FockState &s) const {
    auto i = find(s);
    if (!i) throw InvalidArgument("Fock state not in basis " + sector_.describe());
    return *i;
  }

  /// Bases are interchangeable when mode count and sector agree; enumeration
  /// is deterministic so the states coincide.
  friend bool operator==(const Basis &a, const Basis &b) {
    return a.mode_count_ == b.mode_count_ && a.sector_ == b.sector_;
  }

 private:
  void enumerate(std::vector<int> &occ, int mode, int used) {
    const int hi_total = sector_.number_conserving() ? sector_.max_total()
                                                     : std::numeric_limits<int>::max();
    if (mode == mode_count_) {
      if (sector_.number_conserving() && used < sector_.min_total()) return;
      states_.emplace_back(occ);
      return;
    }
    int top = hi_total - used;
    const int c = sector_.cap(mode, mode_count_);
    if (c >= 0) top = std::min(top, c);
    if (sector_.kind() == Sector::Kind::FixedTotal && mode == mode_count_ - 1) {
      occ[static_cast<std::size_t>(mode)] = hi_total - used;
      states_.emplace_back(occ);
      occ[static_cast<std::size_t>(mode)] = 0;
      return;
    }
    for (int n = 0; n <= top; ++n) {
      occ[static_cast<std::size_t>(mode)] = n;
      enumerate(occ, mode + 1, used + n);
    }
    occ[static_cast<std::size_t>(mode)] = 0;
  }

  int mode_count_;
  Sector sector_;
  std::vector<FockState> states_;
  std::unordered_map<FockState, std::size_t, FockStateHash> index_;
};

using BasisPtr = std::shared_ptr<const Basis>;

inline BasisPtr enumerate_basis(int mode_count, const Sector &sector,
                                std::size_t max_dimension = kDefaultMaxBasisDimension) {
  return std::make_shared<const Basis>(mode_count, sector, max_dimension);
}

}  // namespace pft

#endif  // PFT_FOCK_HPP
