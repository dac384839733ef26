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

#ifndef PFT_CONFIG_HPP
#define PFT_CONFIG_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <limits>
#include <map>
#include <numbers>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "pft/error.hpp"
#include "pft/fock.hpp"
#include "pft/model.hpp"
#include "pft/polynomial.hpp"
#include "pft/report_io.hpp"
#include "pft/transfer.hpp"

namespace pft {

/// Schema or semantic problems in an experiment config. Each message starts
/// with the JSON pointer of the offending value.
class ConfigError : public Error {
 public:
  explicit ConfigError(std::vector<std::string> messages)
      : Error(join(messages)), messages_(std::move(messages)) {}

  const std::vector<std::string> &messages() const noexcept { return messages_; }

 private:
  static std::string join(const std::vector<std::string> &m) {
    std::string s;
    for (const auto &x : m) s += (s.empty() ? "" : "; ") + x;
    return s;
  }
  std::vector<std::string> messages_;
};

struct ChainConfig {
  int sites = 5;
  double hopping = 1.0;
  double field = 0.0;
  double repulsion = 0.0;
  std::optional<std::vector<double>> couplings;
  std::optional<std::vector<double>> onsite;

  ChainSpec spec() const {
    ChainSpec s = ChainSpec::engineered(sites, hopping, field, repulsion);
    if (couplings) s.couplings = *couplings;
    if (onsite) s.onsite = *onsite;
    return s;
  }
};

struct MediumConfig {
  struct Entry {
    std::vector<int> occupations;
    Complex amplitude;
  };
  std::vector<Entry> states;
  // Random draw; sites are 1-based and inclusive.
  int bosons = 0;
  int first_site = 0;
  int last_site = 0;
  std::uint64_t seed = 0;
  bool random = false;

  MediumState build(int n) const {
    if (random) return random_medium(n, bosons, first_site - 1, last_site - 1, seed);
    int lo = std::numeric_limits<int>::max();
    int hi = 0;
    for (const Entry &e : states) {
      const int t = FockState(e.occupations).total();
      lo = std::min(lo, t);
      hi = std::max(hi, t);
    }
    const BasisPtr basis =
        enumerate_basis(n, lo == hi ? Sector::fixed_total(lo) : Sector::total_range(lo, hi));
    StateVector v = StateVector::Zero(static_cast<Eigen::Index>(basis->size()));
    for (const Entry &e : states) v(static_cast<Eigen::Index>(basis->index(FockState(e.occupations)))) += e.amplitude;
    if (v.norm() == 0.0) throw InvalidArgument("medium state is zero");
    v.normalize();
    return {basis, v};
  }
};

struct OracleConfig {
  int n_min = 2;
  int n_max = 12;
  int times = 20;
  std::uint64_t seed = 7;
  double hopping = 1.0;
  double t_max = 2.0 * std::numbers::pi;
};

struct SweepConfig {
  std::string experiment;  // transfer | repulsion | dressed
  std::string parameter;   // U | J | epsilon | N | beta | xi
  double start = 0.0;
  double stop = 0.0;
  int steps = 1;

  std::vector<double> values() const {
    std::vector<double> v;
    for (int i = 0; i < steps; ++i)
      v.push_back(steps == 1 ? start : start + (stop - start) * i / (steps - 1));
    return v;
  }
};

struct Tolerances {
  double fidelity = 1e-9;
  double phase = 1e-9;
  double dressed_fidelity = 1e-6;
  double truncation_loss = 1e-7;
  double interference = 1e-9;
  double oracle = 1e-9;
};

struct ExperimentConfig {
  std::string experiment;
  ChainConfig chain;
  DressingSpec dressing;
  std::optional<int> n_max;  // empty selects the cap automatically
  std::string function_text = "x1";
  std::map<std::string, Complex> coefficients;
  std::optional<MediumConfig> medium;
  std::vector<int> paths;
  std::vector<Complex> path_amplitudes;
  std::optional<double> time;
  OracleConfig oracle;
  std::optional<SweepConfig> sweep;
  std::string output_path = "results";
  TableFormat format = TableFormat::Json;
  Tolerances tolerances;
  std::size_t max_basis = kDefaultMaxBasisDimension;
  std::size_t dense_limit = kDefaultDenseLimit;

  MonomialFunction function() const { return parse_function(function_text, coefficients); }

  /// The experiment whose reports are produced, looking through sweeps.
  const std::string &kind() const { return sweep ? sweep->experiment : experiment; }
};

namespace detail {

// Walks a JSON document and records every violation with its pointer path.
class ConfigReader {
 public:
  std::vector<std::string> errors;

  void error(const std::string &ptr, const std::string &msg) {
    errors.push_back((ptr.empty() ? std::string("/") : ptr) + ": " + msg);
  }

  static std::string child(const std::string &ptr, const std::string &key) {
    std::string k;
    for (char c : key) {
      if (c == '~')
        k += "~0";
      else if (c == '/')
        k += "~1";
      else
        k += c;
    }
    return ptr + "/" + k;
  }
  static std::string child(const std::string &ptr, std::size_t i) {
    return ptr + "/" + std::to_string(i);
  }

  bool object(const Json &j, const std::string &ptr, const std::set<std::string> &allowed) {
    if (!j.is_object()) {
      error(ptr, "expected an object");
      return false;
    }
    for (const auto &[k, v] : j.items())
      if (!allowed.count(k)) error(child(ptr, k), "unknown property");
    return true;
  }

  std::optional<double> number(const Json &j, const std::string &ptr) {
    if (!j.is_number()) {
      error(ptr, "expected a number");
      return std::nullopt;
    }
    const double v = j.get<double>();
    if (!std::isfinite(v)) {
      error(ptr, "must be finite");
      return std::nullopt;
    }
    return v;
  }

  std::optional<long long> integer(const Json &j, const std::string &ptr, long long lo,
                                   long long hi = (1LL << 53)) {
    if (!j.is_number_integer()) {
      error(ptr, "expected an integer");
      return std::nullopt;
    }
    const long long v = j.get<long long>();
    if (v < lo || v > hi) {
      error(ptr, "must be in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
      return std::nullopt;
    }
    return v;
  }

  std::optional<Complex> complex(const Json &j, const std::string &ptr) {
    if (j.is_number()) return Complex(j.get<double>(), 0.0);
    if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
      return Complex(j[0].get<double>(), j[1].get<double>());
    error(ptr, "expected a number or a [re, im] pair");
    return std::nullopt;
  }

  std::optional<std::string> string(const Json &j, const std::string &ptr,
                                    const std::vector<std::string> &choices = {}) {
    if (!j.is_string()) {
      error(ptr, "expected a string");
      return std::nullopt;
    }
    const auto s = j.get<std::string>();
    if (!choices.empty() && std::find(choices.begin(), choices.end(), s) == choices.end()) {
      std::string list;
      for (const auto &c : choices) list += (list.empty() ? "" : ", ") + c;
      error(ptr, "must be one of {" + list + "}");
      return std::nullopt;
    }
    return s;
  }

  std::optional<std::vector<double>> numbers(const Json &j, const std::string &ptr) {
    if (!j.is_array()) {
      error(ptr, "expected an array of numbers");
      return std::nullopt;
    }
    std::vector<double> v;
    bool ok = true;
    for (std::size_t i = 0; i < j.size(); ++i) {
      auto x = number(j[i], child(ptr, i));
      ok = ok && x.has_value();
      v.push_back(x.value_or(0.0));
    }
    if (!ok) return std::nullopt;
    return v;
  }
};

inline void read_chain(ConfigReader &r, const Json &j, const std::string &p, ChainConfig &c) {
  if (!r.object(j, p, {"N", "J", "epsilon", "U", "couplings", "onsite"})) return;
  if (j.contains("N"))
    if (auto v = r.integer(j["N"], p + "/N", 2, 64)) c.sites = static_cast<int>(*v);
  if (j.contains("J"))
    if (auto v = r.number(j["J"], p + "/J")) c.hopping = *v;
  if (j.contains("epsilon"))
    if (auto v = r.number(j["epsilon"], p + "/epsilon")) c.field = *v;
  if (j.contains("U"))
    if (auto v = r.number(j["U"], p + "/U")) c.repulsion = *v;
  if (j.contains("couplings"))
    if (auto v = r.numbers(j["couplings"], p + "/couplings")) {
      if (v->size() != static_cast<std::size_t>(c.sites - 1))
        r.error(p + "/couplings", "needs N-1 = " + std::to_string(c.sites - 1) + " entries");
      else
        c.couplings = std::move(v);
    }
  if (j.contains("onsite"))
    if (auto v = r.numbers(j["onsite"], p + "/onsite")) {
      if (v->size() != static_cast<std::size_t>(c.sites))
        r.error(p + "/onsite", "needs N = " + std::to_string(c.sites) + " entries");
      else
        c.onsite = std::move(v);
    }
}

inline void read_dressing(ConfigReader &r, const Json &j, const std::string &p, DressingSpec &d) {
  if (!r.object(j, p, {"kind", "beta", "xi"})) return;
  if (!j.contains("kind")) {
    r.error(p + "/kind", "required");
    return;
  }
  const auto kind = r.string(j["kind"], p + "/kind", {"none", "displacement", "squeezing"});
  if (!kind) return;
  if (*kind == "displacement") {
    if (!j.contains("beta")) return r.error(p + "/beta", "required for displacement");
    if (auto b = r.complex(j["beta"], p + "/beta")) d = DressingSpec::displacement(*b);
  } else if (*kind == "squeezing") {
    if (!j.contains("xi")) return r.error(p + "/xi", "required for squeezing");
    if (auto x = r.number(j["xi"], p + "/xi")) d = DressingSpec::squeezing(*x);
  } else {
    d = DressingSpec::none();
  }
}

inline void read_function(ConfigReader &r, const Json &j, const std::string &p,
                          ExperimentConfig &c) {
  if (j.is_string()) {
    c.function_text = j.get<std::string>();
  } else if (r.object(j, p, {"expr", "coefficients"})) {
    if (!j.contains("expr")) return r.error(p + "/expr", "required");
    if (auto s = r.string(j["expr"], p + "/expr")) c.function_text = *s;
    if (j.contains("coefficients") && r.object(j["coefficients"], p + "/coefficients", {})) {
      // object() flagged every key as unknown; coefficients are free-form, so undo that.
      r.errors.erase(std::remove_if(r.errors.begin(), r.errors.end(),
                                    [&](const std::string &e) {
                                      return e.rfind(p + "/coefficients/", 0) == 0 &&
                                             e.find("unknown property") != std::string::npos;
                                    }),
                     r.errors.end());
      for (const auto &[k, v] : j["coefficients"].items())
        if (auto z = r.complex(v, ConfigReader::child(p + "/coefficients", k)))
          c.coefficients[k] = *z;
    }
  } else {
    return;
  }
  try {
    c.function();
  } catch (const Error &e) {
    r.error(j.is_string() ? p : p + "/expr", e.what());
  }
}

inline void read_medium(ConfigReader &r, const Json &j, const std::string &p, int n,
                        std::optional<MediumConfig> &out) {
  if (!r.object(j, p, {"states", "random"})) return;
  if (j.contains("states") == j.contains("random"))
    return r.error(p, "exactly one of 'states' or 'random' is required");
  MediumConfig m;
  if (j.contains("random")) {
    const std::string q = p + "/random";
    const Json &x = j["random"];
    if (!r.object(x, q, {"bosons", "sites", "seed"})) return;
    m.random = true;
    if (!x.contains("bosons")) return r.error(q + "/bosons", "required");
    if (auto b = r.integer(x["bosons"], q + "/bosons", 0, 64)) m.bosons = static_cast<int>(*b);
    m.first_site = 1;
    m.last_site = n;
    if (x.contains("sites")) {
      const Json &s = x["sites"];
      if (!s.is_array() || s.size() != 2) return r.error(q + "/sites", "expected [first, last]");
      auto a = r.integer(s[0], q + "/sites/0", 1, n);
      auto b = r.integer(s[1], q + "/sites/1", 1, n);
      if (!a || !b) return;
      if (*a > *b) return r.error(q + "/sites", "first site is after the last site");
      m.first_site = static_cast<int>(*a);
      m.last_site = static_cast<int>(*b);
    }
    if (x.contains("seed"))
      if (auto s = r.integer(x["seed"], q + "/seed", 0)) m.seed = static_cast<std::uint64_t>(*s);
  } else {
    const std::string q = p + "/states";
    const Json &s = j["states"];
    if (!s.is_array() || s.empty()) return r.error(q, "expected a non-empty array");
    for (std::size_t i = 0; i < s.size(); ++i) {
      const std::string qi = ConfigReader::child(q, i);
      if (!r.object(s[i], qi, {"occupations", "amplitude"})) continue;
      MediumConfig::Entry e;
      if (!s[i].contains("occupations")) {
        r.error(qi + "/occupations", "required");
        continue;
      }
      const Json &occ = s[i]["occupations"];
      if (!occ.is_array() || occ.size() != static_cast<std::size_t>(n)) {
        r.error(qi + "/occupations", "expected N = " + std::to_string(n) + " integers");
        continue;
      }
      for (std::size_t k = 0; k < occ.size(); ++k)
        if (auto o = r.integer(occ[k], ConfigReader::child(qi + "/occupations", k), 0, 64))
          e.occupations.push_back(static_cast<int>(*o));
      e.amplitude = 1.0;
      if (s[i].contains("amplitude"))
        if (auto a = r.complex(s[i]["amplitude"], qi + "/amplitude")) e.amplitude = *a;
      m.states.push_back(std::move(e));
    }
  }
  out = std::move(m);
}

inline void read_oracle(ConfigReader &r, const Json &j, const std::string &p, OracleConfig &o) {
  if (!r.object(j, p, {"N_min", "N_max", "times", "seed", "J", "t_max"})) return;
  if (j.contains("N_min"))
    if (auto v = r.integer(j["N_min"], p + "/N_min", 2, 64)) o.n_min = static_cast<int>(*v);
  if (j.contains("N_max"))
    if (auto v = r.integer(j["N_max"], p + "/N_max", 2, 64)) o.n_max = static_cast<int>(*v);
  if (o.n_min > o.n_max) r.error(p + "/N_max", "must not be below N_min");
  if (j.contains("times"))
    if (auto v = r.integer(j["times"], p + "/times", 1, 100000)) o.times = static_cast<int>(*v);
  if (j.contains("seed"))
    if (auto v = r.integer(j["seed"], p + "/seed", 0)) o.seed = static_cast<std::uint64_t>(*v);
  if (j.contains("J"))
    if (auto v = r.number(j["J"], p + "/J")) o.hopping = *v;
  if (j.contains("t_max"))
    if (auto v = r.number(j["t_max"], p + "/t_max")) o.t_max = *v;
}

inline void read_sweep(ConfigReader &r, const Json &j, const std::string &p,
                       std::optional<SweepConfig> &out) {
  if (!r.object(j, p, {"experiment", "parameter", "start", "stop", "steps"})) return;
  SweepConfig s;
  for (const char *key : {"experiment", "parameter", "start", "stop", "steps"})
    if (!j.contains(key)) r.error(p + "/" + key, "required");
  if (j.contains("experiment"))
    if (auto v = r.string(j["experiment"], p + "/experiment", {"transfer", "repulsion", "dressed"}))
      s.experiment = *v;
  if (j.contains("parameter"))
    if (auto v = r.string(j["parameter"], p + "/parameter", {"U", "J", "epsilon", "N", "beta", "xi"}))
      s.parameter = *v;
  if (j.contains("start"))
    if (auto v = r.number(j["start"], p + "/start")) s.start = *v;
  if (j.contains("stop"))
    if (auto v = r.number(j["stop"], p + "/stop")) s.stop = *v;
  if (j.contains("steps")) {
    if (!j["steps"].is_number_integer() || j["steps"].get<long long>() < 1)
      r.error(p + "/steps", "empty sweep range: steps must be an integer >= 1");
    else
      s.steps = j["steps"].get<int>();
  }
  if (j.contains("start") && j.contains("stop") && s.stop < s.start)
    r.error(p + "/stop", "empty sweep range: stop is below start");
  if (s.parameter == "N" && (s.start != std::floor(s.start) || s.stop != std::floor(s.stop) ||
                             s.start < 2 ||
                             (s.steps > 1 && std::fmod(s.stop - s.start, s.steps - 1) != 0.0)))
    r.error(p, "an N sweep needs integer points >= 2");
  if ((s.parameter == "beta" || s.parameter == "xi") && s.experiment != "dressed")
    r.error(p + "/parameter", "'" + s.parameter + "' can only be swept in a dressed experiment");
  out = std::move(s);
}

inline void read_tolerances(ConfigReader &r, const Json &j, const std::string &p, Tolerances &t) {
  const std::map<std::string, double *> fields = {{"fidelity", &t.fidelity},
                                                  {"phase", &t.phase},
                                                  {"dressed_fidelity", &t.dressed_fidelity},
                                                  {"truncation_loss", &t.truncation_loss},
                                                  {"interference", &t.interference},
                                                  {"oracle", &t.oracle}};
  std::set<std::string> keys;
  for (const auto &[k, v] : fields) keys.insert(k);
  if (!r.object(j, p, keys)) return;
  for (const auto &[k, dst] : fields)
    if (j.contains(k))
      if (auto v = r.number(j[k], p + "/" + k)) {
        if (*v < 0.0)
          r.error(p + "/" + k, "must be non-negative");
        else
          *dst = *v;
      }
}

}  // namespace detail

/// Parses and validates a config document. Throws ConfigError listing every
/// problem found.
inline ExperimentConfig parse_config(const Json &j) {
  detail::ConfigReader r;
  ExperimentConfig c;
  const std::set<std::string> top = {"experiment", "chain",  "dressing",     "n_max",
                                     "function",   "medium", "paths",        "path_amplitudes",
                                     "time",       "oracle", "sweep",        "output",
                                     "tolerances", "limits", "$schema"};
  if (!r.object(j, "", top)) throw ConfigError(r.errors);
  if (!j.contains("experiment")) {
    r.error("/experiment", "required");
  } else if (auto e = r.string(j["experiment"], "/experiment",
                               {"transfer", "repulsion", "dressed", "interference", "oracle-check",
                                "sweep"})) {
    c.experiment = *e;
  }
  if (j.contains("chain")) detail::read_chain(r, j["chain"], "/chain", c.chain);
  if (j.contains("dressing")) detail::read_dressing(r, j["dressing"], "/dressing", c.dressing);
  if (j.contains("n_max")) {
    const Json &v = j["n_max"];
    if (v.is_string() && v.get<std::string>() == "auto")
      c.n_max.reset();
    else if (auto n = r.integer(v, "/n_max", 1, 64))
      c.n_max = static_cast<int>(*n);
  }
  if (j.contains("function")) detail::read_function(r, j["function"], "/function", c);
  if (j.contains("medium")) detail::read_medium(r, j["medium"], "/medium", c.chain.sites, c.medium);
  if (j.contains("paths")) {
    const Json &p = j["paths"];
    if (!p.is_array() || p.size() < 2) {
      r.error("/paths", "expected an array of at least two path lengths");
    } else {
      for (std::size_t i = 0; i < p.size(); ++i)
        if (auto n = r.integer(p[i], detail::ConfigReader::child("/paths", i), 2, 64))
          c.paths.push_back(static_cast<int>(*n));
    }
  }
  if (j.contains("path_amplitudes")) {
    const Json &p = j["path_amplitudes"];
    if (!p.is_array()) {
      r.error("/path_amplitudes", "expected an array");
    } else {
      for (std::size_t i = 0; i < p.size(); ++i)
        if (auto z = r.complex(p[i], detail::ConfigReader::child("/path_amplitudes", i)))
          c.path_amplitudes.push_back(*z);
      if (p.size() != c.paths.size())
        r.error("/path_amplitudes", "needs one amplitude per path");
    }
  }
  if (j.contains("time"))
    if (auto t = r.number(j["time"], "/time")) c.time = *t;
  if (j.contains("oracle")) detail::read_oracle(r, j["oracle"], "/oracle", c.oracle);
  if (j.contains("sweep")) detail::read_sweep(r, j["sweep"], "/sweep", c.sweep);
  if (j.contains("output") && r.object(j["output"], "/output", {"path", "format"})) {
    const Json &o = j["output"];
    if (o.contains("path"))
      if (auto s = r.string(o["path"], "/output/path")) c.output_path = *s;
    if (o.contains("format"))
      if (auto s = r.string(o["format"], "/output/format", {"json", "csv"}))
        c.format = *s == "csv" ? TableFormat::Csv : TableFormat::Json;
  }
  if (j.contains("tolerances")) detail::read_tolerances(r, j["tolerances"], "/tolerances", c.tolerances);
  if (j.contains("limits") && r.object(j["limits"], "/limits", {"max_basis", "dense_limit"})) {
    const Json &l = j["limits"];
    if (l.contains("max_basis"))
      if (auto v = r.integer(l["max_basis"], "/limits/max_basis", 1))
        c.max_basis = static_cast<std::size_t>(*v);
    if (l.contains("dense_limit"))
      if (auto v = r.integer(l["dense_limit"], "/limits/dense_limit", 1))
        c.dense_limit = static_cast<std::size_t>(*v);
  }

  // Cross-field requirements.
  if (c.experiment == "sweep" && !c.sweep) r.error("/sweep", "required for a sweep experiment");
  if (c.experiment != "sweep" && c.sweep) r.error("/sweep", "only allowed for a sweep experiment");
  if (c.experiment == "interference" && c.paths.empty() && !j.contains("paths"))
    r.error("/paths", "required for an interference experiment");
  const std::string &kind = c.kind();
  if (kind == "dressed" && c.dressing.kind == DressingSpec::Kind::None && !c.sweep)
    r.error("/dressing", "a dressed experiment needs a displacement or squeezing dressing");
  if (kind == "dressed" && c.chain.repulsion != 0.0) r.error("/chain/U", "dressed chains need U = 0");
  if (c.medium && kind != "transfer") r.error("/medium", "only the transfer experiment takes a medium");
  if (c.sweep && (c.sweep->parameter == "N" || c.sweep->parameter == "J" ||
                  c.sweep->parameter == "epsilon") &&
      (c.chain.couplings || c.chain.onsite))
    r.error("/sweep/parameter", "cannot sweep a profile scale with explicit couplings or onsite");
  if (c.sweep && c.sweep->parameter == "N" && c.medium)
    r.error("/medium", "a medium state is tied to one chain length");
  if (r.errors.empty() && (kind == "transfer" || kind == "repulsion" || kind == "dressed")) {
    try {
      c.chain.spec().validate();
    } catch (const Error &e) {
      r.error("/chain", e.what());
    }
    if (c.function().processor_sites() > c.chain.sites)
      r.error("/function", "uses more sites than the chain has");
  }
  if (!r.errors.empty()) throw ConfigError(r.errors);
  return c;
}

inline ExperimentConfig load_config(const std::string &path) {
  std::ifstream f(path);
  if (!f) throw ConfigError({"/: cannot read config file '" + path + "'"});
  Json j;
  try {
    j = Json::parse(f);
  } catch (const Json::parse_error &e) {
    throw ConfigError({std::string("/: invalid JSON: ") + e.what()});
  }
  return parse_config(j);
}

}  // namespace pft

#endif  // PFT_CONFIG_HPP
