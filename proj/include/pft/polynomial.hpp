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

#ifndef PFT_POLYNOMIAL_HPP
#define PFT_POLYNOMIAL_HPP

#include <cctype>
#include <charconv>
#include <complex>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pft/error.hpp"
#include "pft/fock.hpp"
#include "pft/operator.hpp"

namespace pft {

/// coeff * x_0^e_0 * x_1^e_1 * ... over processor sites (0-based).
struct Monomial {
  Complex coeff;
  std::vector<int> exponents;

  int degree() const {
    int d = 0;
    for (int e : exponents) d += e;
    return d;
  }
};

/// A polynomial f(x_1, ..., x_n) over the n processor sites. When encoded as
/// a state, x_k becomes b_k^dagger + shift (shift = -conj(beta) gives the
/// displaced arguments of a dressed coherent background).
class MonomialFunction {
 public:
  MonomialFunction(std::vector<Monomial> terms, int processor_sites = -1, Complex shift = {})
      : terms_(std::move(terms)), shift_(shift) {
    if (terms_.empty()) throw InvalidArgument("MonomialFunction needs at least one term");
    int used = 0;
    for (const Monomial &m : terms_) {
      for (std::size_t k = 0; k < m.exponents.size(); ++k) {
        if (m.exponents[k] < 0) throw InvalidArgument("MonomialFunction: negative exponent");
        if (m.exponents[k] > 0) used = std::max(used, static_cast<int>(k) + 1);
      }
    }
    sites_ = processor_sites < 0 ? std::max(used, 1) : processor_sites;
    if (used > sites_)
      throw InvalidArgument("MonomialFunction references a site outside the processor");
    std::set<std::vector<int>> seen;
    for (Monomial &m : terms_) {
      m.exponents.resize(static_cast<std::size_t>(sites_), 0);
      if (!seen.insert(m.exponents).second)
        throw InvalidArgument("MonomialFunction: duplicate exponent vector");
    }
  }

  static MonomialFunction constant(Complex c) { return MonomialFunction({{c, {}}}); }

  /// x_site^power (0-based site).
  static MonomialFunction variable(int site, int power = 1, Complex coeff = 1.0) {
    std::vector<int> e(static_cast<std::size_t>(site) + 1, 0);
    e.back() = power;
    return MonomialFunction({{coeff, e}});
  }

  const std::vector<Monomial> &terms() const noexcept { return terms_; }
  int processor_sites() const noexcept { return sites_; }
  Complex shift() const noexcept { return shift_; }

  MonomialFunction with_shift(Complex shift) const {
    return MonomialFunction(terms_, sites_, shift);
  }

  int max_degree() const {
    int d = 0;
    for (const Monomial &m : terms_) d = std::max(d, m.degree());
    return d;
  }
  int min_degree() const {
    int d = max_degree();
    for (const Monomial &m : terms_) d = std::min(d, m.degree());
    return d;
  }
  std::set<int> degrees() const {
    std::set<int> ds;
    for (const Monomial &m : terms_) ds.insert(m.degree());
    return ds;
  }

  /// Terms of one total degree, or nothing when there are none.
  std::optional<MonomialFunction> part_of_degree(int d) const {
    std::vector<Monomial> part;
    for (const Monomial &m : terms_)
      if (m.degree() == d) part.push_back(m);
    if (part.empty()) return std::nullopt;
    return MonomialFunction(std::move(part), sites_, shift_);
  }

 private:
  std::vector<Monomial> terms_;
  int sites_ = 1;
  Complex shift_;
};

namespace detail {

using SparseState = std::map<FockState, Complex>;

inline double binomial_coeff(int n, int k) { return binomial(n, k); }

// Applies (b_site^dagger + shift)^power to every component.
inline SparseState apply_factor(const SparseState &in, int site, int power, Complex shift) {
  if (power == 0) return in;
  SparseState out;
  for (const auto &[s, a] : in) {
    for (int j = 0; j <= power; ++j) {
      const Complex pre = binomial_coeff(power, j) *
                          (power - j == 0 ? Complex(1.0) : std::pow(shift, power - j));
      if (pre == Complex{}) continue;
      const int n = s[site];
      double amp = 1.0;
      for (int q = 1; q <= j; ++q) amp *= std::sqrt(static_cast<double>(n + q));
      out[s.with(site, n + j)] += pre * amp * a;
    }
  }
  return out;
}

}  // namespace detail

/// Applies f(b_0^dagger + s, ..., b_{n-1}^dagger + s) to a state of
/// `basis_in` and expresses the result in `basis_out`. The result is not
/// normalized. Amplitude outside a number-conserving target raises
/// DegreeOverflow; for a Capped target it is dropped and its squared norm is
/// reported through `truncated`.
inline StateVector apply_polynomial(const MonomialFunction &f, const StateVector &state,
                                    const Basis &basis_in, const Basis &basis_out,
                                    double *truncated = nullptr) {
  if (static_cast<std::size_t>(state.size()) != basis_in.size())
    throw DimensionMismatch("apply_polynomial: state size does not match basis");
  if (basis_in.mode_count() != basis_out.mode_count())
    throw DimensionMismatch("apply_polynomial: mode counts differ");
  if (f.processor_sites() > basis_in.mode_count())
    throw InvalidArgument("apply_polynomial: function uses more sites than the basis has");

  detail::SparseState input;
  for (std::size_t i = 0; i < basis_in.size(); ++i) {
    const Complex a = state(static_cast<Eigen::Index>(i));
    if (a != Complex{}) input[basis_in.state(i)] = a;
  }

  detail::SparseState total;
  for (const Monomial &m : f.terms()) {
    detail::SparseState cur = input;
    for (int k = 0; k < f.processor_sites(); ++k)
      cur = detail::apply_factor(cur, k, m.exponents[static_cast<std::size_t>(k)], f.shift());
    for (const auto &[s, a] : cur) total[s] += m.coeff * a;
  }

  StateVector out = StateVector::Zero(static_cast<Eigen::Index>(basis_out.size()));
  double lost = 0.0;
  for (const auto &[s, a] : total) {
    if (a == Complex{}) continue;
    if (auto j = basis_out.find(s)) {
      out(static_cast<Eigen::Index>(*j)) += a;
    } else if (basis_out.sector().number_conserving()) {
      throw DegreeOverflow("apply_polynomial: result leaves " + basis_out.sector().describe());
    } else {
      lost += std::norm(a);
    }
  }
  if (truncated) *truncated = lost;
  return out;
}

inline StateVector apply_polynomial(const MonomialFunction &f, const StateVector &state,
                                    const Basis &basis, double *truncated = nullptr) {
  return apply_polynomial(f, state, basis, basis, truncated);
}

/// f(b^dagger)|0> in `basis`.
inline StateVector encode_function(const MonomialFunction &f, const Basis &basis,
                                   double *truncated = nullptr) {
  const Basis vac_basis(basis.mode_count(), Sector::fixed_total(0));
  const StateVector v = StateVector::Ones(1);
  return apply_polynomial(f, v, vac_basis, basis, truncated);
}

/// Parses the function grammar used by experiment configs:
///
///   expr   := term (('+' | '-') term)*
///   term   := factor ('*' factor)*
///   factor := number | '[' number ',' number ']' | name | 'x' index ['^' power]
///
/// Variables are 1-based (x1 is the first processor site). Names are looked up
/// in `bindings`. Repeated exponent vectors are merged by adding coefficients.
class FunctionParser {
 public:
  FunctionParser(std::string_view text, const std::map<std::string, Complex> &bindings)
      : s_(text), bindings_(bindings) {}

  MonomialFunction parse() {
    std::map<std::vector<int>, Complex> acc;
    std::vector<std::vector<int>> order;
    auto push = [&](Monomial m) {
      while (!m.exponents.empty() && m.exponents.back() == 0) m.exponents.pop_back();
      auto [it, inserted] = acc.emplace(m.exponents, m.coeff);
      if (inserted)
        order.push_back(m.exponents);
      else
        it->second += m.coeff;
    };
    skip();
    if (eof()) fail("empty function expression");
    Complex sign = 1.0;
    if (peek() == '-' || peek() == '+') {
      sign = get() == '-' ? -1.0 : 1.0;
    }
    Monomial m = term();
    m.coeff *= sign;
    push(std::move(m));
    for (;;) {
      skip();
      if (eof()) break;
      const char op = get();
      if (op != '+' && op != '-') fail(std::string("unexpected '") + op + "'");
      Monomial t = term();
      if (op == '-') t.coeff = -t.coeff;
      push(std::move(t));
    }
    std::vector<Monomial> terms;
    for (const auto &e : order) terms.push_back({acc[e], e});
    return MonomialFunction(std::move(terms));
  }

 private:
  Monomial term() {
    Monomial m{1.0, {}};
    factor(m);
    for (;;) {
      skip();
      if (eof() || peek() != '*') break;
      get();
      factor(m);
    }
    return m;
  }

  void factor(Monomial &m) {
    skip();
    if (eof()) fail("expected a factor");
    const char c = peek();
    if (c == '[') {
      get();
      const double re = number();
      skip();
      expect(',');
      const double im = number();
      skip();
      expect(']');
      m.coeff *= Complex(re, im);
    } else if (c == 'x' && pos_ + 1 < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_ + 1]))) {
      get();
      const int index = integer();
      if (index < 1) fail("variables are numbered from x1");
      int power = 1;
      skip();
      if (!eof() && peek() == '^') {
        get();
        skip();
        power = integer();
      }
      if (m.exponents.size() < static_cast<std::size_t>(index))
        m.exponents.resize(static_cast<std::size_t>(index), 0);
      m.exponents[static_cast<std::size_t>(index - 1)] += power;
    } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::string name;
      while (!eof() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_'))
        name += get();
      auto it = bindings_.find(name);
      if (it == bindings_.end()) fail("unbound coefficient '" + name + "'");
      m.coeff *= it->second;
    } else {
      m.coeff *= number();
    }
  }

  double number() {
    skip();
    const char *first = s_.data() + pos_;
    const char *last = s_.data() + s_.size();
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr == first) fail("expected a number");
    pos_ += static_cast<std::size_t>(ptr - first);
    return v;
  }

  int integer() {
    const char *first = s_.data() + pos_;
    const char *last = s_.data() + s_.size();
    int v = 0;
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr == first) fail("expected an integer");
    pos_ += static_cast<std::size_t>(ptr - first);
    return v;
  }

  void skip() {
    while (!eof() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eof() const { return pos_ >= s_.size(); }
  char peek() const { return s_[pos_]; }
  char get() { return s_[pos_++]; }
  void expect(char c) {
    if (eof() || get() != c) fail(std::string("expected '") + c + "'");
  }
  [[noreturn]] void fail(const std::string &msg) const {
    throw InvalidArgument("function expression: " + msg + " at offset " + std::to_string(pos_));
  }

  std::string_view s_;
  const std::map<std::string, Complex> &bindings_;
  std::size_t pos_ = 0;
};

inline MonomialFunction parse_function(std::string_view text,
                                       const std::map<std::string, Complex> &bindings = {}) {
  return FunctionParser(text, bindings).parse();
}

}  // namespace pft

#endif  // PFT_POLYNOMIAL_HPP
