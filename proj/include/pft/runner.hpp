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

#ifndef PFT_RUNNER_HPP
#define PFT_RUNNER_HPP

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <iostream>
#include <optional>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "pft/config.hpp"
#include "pft/evolve.hpp"
#include "pft/interference.hpp"
#include "pft/report_io.hpp"
#include "pft/transfer.hpp"

namespace pft {

enum ExitCode : int { kExitOk = 0, kExitConfig = 1, kExitPhysics = 2 };

struct RunOptions {
  std::optional<std::string> out_dir;
  std::optional<TableFormat> format;
  int threads = 0;  // 0 uses the hardware concurrency
};

struct RunResult {
  std::vector<Report> reports;
  std::vector<std::string> failures;  // violated physics assertions
  std::vector<std::string> warnings;
  Json metrics = Json::object();
};

/// Worker count after applying the PFT_MAX_THREADS cap. Always >= 1.
inline int effective_threads(int requested) {
  int n = requested > 0 ? requested : static_cast<int>(std::thread::hardware_concurrency());
  if (const char *env = std::getenv("PFT_MAX_THREADS")) {
    char *end = nullptr;
    const long cap = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && cap >= 1) n = std::min<long>(n, cap);
  }
  return std::max(n, 1);
}

/// Runs fn(0..count-1) on up to `threads` workers. Results land at their own
/// index, so the output order never depends on scheduling.
template <class T, class Fn>
std::vector<T> parallel_map(std::size_t count, int threads, Fn &&fn) {
  std::vector<std::optional<T>> slots(count);
  std::vector<std::exception_ptr> errors(count);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        slots[i].emplace(fn(i));
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const auto workers = std::min<std::size_t>(count, static_cast<std::size_t>(std::max(threads, 1)));
  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto &t : pool) t.join();
  }
  for (auto &e : errors)
    if (e) std::rethrow_exception(e);
  std::vector<T> out;
  out.reserve(count);
  for (auto &s : slots) out.push_back(std::move(*s));
  return out;
}

namespace detail {

struct PointResult {
  TransferReport report;
  std::optional<std::string> failure;
  std::optional<std::string> warning;
};

inline std::string describe_point(const TransferReport &r) {
  return fmt::format("{} N={} J={:.17g} epsilon={:.17g} U={:.17g} dressing={}", r.experiment,
                     r.sites, r.hopping, r.field, r.repulsion, r.dressing);
}

inline PointResult run_transfer_point(const std::string &kind, const ExperimentConfig &c,
                                      const ChainConfig &chain, const DressingSpec &dressing) {
  const ChainSpec spec = chain.spec();
  const MonomialFunction f = c.function();
  TransferOptions opt;
  opt.dense_limit = c.dense_limit;
  opt.max_basis = c.max_basis;
  opt.max_truncation_loss = c.tolerances.truncation_loss;
  PointResult out;
  const Tolerances &tol = c.tolerances;
  if (kind == "dressed") {
    const int cap = c.n_max ? *c.n_max
                            : choose_dressed_cap(spec, dressing, f, tol.truncation_loss, c.max_basis);
    out.report = run_dressed_transfer(spec, dressing, f, cap, opt);
    if (!out.report.reliable)
      out.warning = fmt::format("{}: truncation loss {:.3g} above {:.3g}; result unreliable",
                                describe_point(out.report), out.report.truncation_loss,
                                tol.truncation_loss);
    if (out.report.reliable && out.report.pst_configuration &&
        out.report.fidelity < 1.0 - tol.dressed_fidelity)
      out.failure = fmt::format("{}: fidelity {:.17g} below 1 - {:.3g}", describe_point(out.report),
                                out.report.fidelity, tol.dressed_fidelity);
    return out;
  }
  if (kind == "repulsion") {
    out.report = run_repulsion_transfer(spec, f, opt);
  } else {
    std::optional<MediumState> medium;
    if (c.medium) medium = c.medium->build(spec.site_count);
    out.report = run_transfer(spec, f, medium, opt);
  }
  if (out.report.pst_configuration) {
    if (out.report.fidelity < 1.0 - tol.fidelity)
      out.failure = fmt::format("{}: fidelity {:.17g} below 1 - {:.3g}", describe_point(out.report),
                                out.report.fidelity, tol.fidelity);
    else if (out.report.phase_error > tol.phase)
      out.failure = fmt::format("{}: phase error {:.3g} above {:.3g}", describe_point(out.report),
                                out.report.phase_error, tol.phase);
  }
  return out;
}

inline void collect_transfer(RunResult &res, std::vector<PointResult> points) {
  double min_fid = 1.0;
  double max_phase = 0.0;
  double max_loss = 0.0;
  bool all_pst = true;
  for (PointResult &p : points) {
    min_fid = std::min(min_fid, p.report.fidelity);
    max_phase = std::max(max_phase, p.report.phase_error);
    max_loss = std::max(max_loss, p.report.truncation_loss);
    all_pst = all_pst && p.report.pst_configuration;
    if (p.failure) res.failures.push_back(*p.failure);
    if (p.warning) res.warnings.push_back(*p.warning);
    res.reports.emplace_back(std::move(p.report));
  }
  res.metrics["points"] = points.size();
  res.metrics["min_fidelity"] = min_fid;
  res.metrics["max_phase_error"] = max_phase;
  res.metrics["max_truncation_loss"] = max_loss;
  res.metrics["all_pst_configurations"] = all_pst;
}

}  // namespace detail

/// Runs a validated config. Physics assertion failures are collected in the
/// result rather than thrown.
inline RunResult run_experiment(const ExperimentConfig &c, int threads = 1) {
  RunResult res;
  const std::string &e = c.experiment;
  if (e == "transfer" || e == "repulsion" || e == "dressed") {
    std::vector<detail::PointResult> pts;
    pts.push_back(detail::run_transfer_point(e, c, c.chain, c.dressing));
    detail::collect_transfer(res, std::move(pts));
  } else if (e == "sweep") {
    const SweepConfig &s = *c.sweep;
    const std::vector<double> values = s.values();
    auto points = parallel_map<detail::PointResult>(values.size(), threads, [&](std::size_t i) {
      ChainConfig chain = c.chain;
      DressingSpec dressing = c.dressing;
      const double v = values[i];
      if (s.parameter == "U") chain.repulsion = v;
      if (s.parameter == "J") chain.hopping = v;
      if (s.parameter == "epsilon") chain.field = v;
      if (s.parameter == "N") chain.sites = static_cast<int>(std::lround(v));
      if (s.parameter == "beta") dressing = DressingSpec::displacement(Complex(v, 0.0));
      if (s.parameter == "xi") dressing = DressingSpec::squeezing(v);
      return detail::run_transfer_point(s.experiment, c, chain, dressing);
    });
    detail::collect_transfer(res, std::move(points));
    res.metrics["parameter"] = s.parameter;
  } else if (e == "interference") {
    PathLattice lattice = PathLattice::from_lengths(c.paths, c.chain.hopping);
    if (!c.path_amplitudes.empty()) lattice.initial_amplitudes = c.path_amplitudes;
    IntensityProfile p = run_interference(lattice, c.time);
    res.metrics["interference_factor"] = p.interference_factor;
    res.metrics["closed_form_factor"] = p.closed_form_factor;
    res.metrics["receiver_intensity"] = p.receiver_intensity;
    // The closed form holds at the transfer time only.
    if (!c.time && std::abs(p.interference_factor - p.closed_form_factor) > c.tolerances.interference)
      res.failures.push_back(fmt::format("interference factor {:.17g} differs from closed form {:.17g}",
                                         p.interference_factor, p.closed_form_factor));
    res.reports.emplace_back(std::move(p));
  } else if (e == "oracle-check") {
    const OracleConfig &o = c.oracle;
    std::mt19937_64 rng(o.seed);
    std::uniform_real_distribution<double> draw(0.0, o.t_max);
    std::vector<std::pair<int, double>> jobs;
    for (int n = o.n_min; n <= o.n_max; ++n)
      for (int k = 0; k < o.times; ++k) jobs.emplace_back(n, draw(rng));
    auto reports = parallel_map<OracleReport>(jobs.size(), threads, [&](std::size_t i) {
      return compare_single_particle_oracle(jobs[i].first, o.hopping, jobs[i].second);
    });
    double worst = 0.0;
    double worst_unitarity = 0.0;
    for (OracleReport &r : reports) {
      worst = std::max(worst, r.max_abs_diff);
      worst_unitarity = std::max(worst_unitarity, r.unitarity_error);
      if (r.max_abs_diff > c.tolerances.oracle)
        res.failures.push_back(fmt::format("oracle N={} t={:.17g}: difference {:.3g}", r.sites,
                                           r.time, r.max_abs_diff));
      res.reports.emplace_back(std::move(r));
    }
    res.metrics["comparisons"] = jobs.size();
    res.metrics["max_abs_diff"] = worst;
    res.metrics["max_unitarity_error"] = worst_unitarity;
  } else {
    throw InvalidArgument("unknown experiment '" + e + "'");
  }
  return res;
}

/// `pft run`: loads the config, runs it, writes the data file and prints one
/// JSON summary line to `out`. Returns the process exit code.
inline int run_config_file(const std::string &path, const RunOptions &options, std::ostream &out,
                           std::ostream &err) {
  const auto start = std::chrono::steady_clock::now();
  Json summary = {{"config", path}};
  auto finish = [&](int code, const std::string &status) {
    summary["status"] = status;
    summary["exit_code"] = code;
    summary["wall_time_s"] =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    out << summary.dump() << std::endl;
    return code;
  };
  try {
    const ExperimentConfig c = load_config(path);
    const TableFormat format = options.format.value_or(c.format);
    const std::string dir = options.out_dir.value_or(c.output_path);
    const int threads = effective_threads(options.threads);
    summary["experiment"] = c.experiment;
    summary["threads"] = threads;

    const RunResult res = run_experiment(c, threads);

    std::filesystem::path file =
        std::filesystem::path(dir) / (c.experiment + "." + format_name(format));
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw Error("cannot create output directory '" + dir + "': " + ec.message());
    emit_table(res.reports, format, file.string());

    summary["output"] = file.string();
    summary["rows"] = res.reports.size();
    summary["results"] = res.metrics;
    summary["warnings"] = res.warnings;
    summary["failures"] = res.failures;
    for (const auto &w : res.warnings) err << "warning: " << w << "\n";
    for (const auto &f : res.failures) err << "assertion failed: " << f << "\n";
    if (!res.failures.empty()) return finish(kExitPhysics, "physics-failure");
    return finish(kExitOk, "ok");
  } catch (const ConfigError &e) {
    summary["errors"] = e.messages();
    for (const auto &m : e.messages()) err << "config error: " << m << "\n";
    return finish(kExitConfig, "config-error");
  } catch (const SizeLimitError &e) {
    summary["errors"] = {e.what()};
    summary["dimension"] = e.dimension();
    err << "size limit: " << e.what() << " (dimension " << e.dimension() << ")\n";
    return finish(kExitConfig, "size-limit");
  } catch (const std::exception &e) {
    summary["errors"] = {e.what()};
    err << "error: " << e.what() << "\n";
    return finish(kExitConfig, "error");
  }
}

/// `pft validate`: schema and semantic checks only.
inline int validate_config_file(const std::string &path, std::ostream &out, std::ostream &err) {
  try {
    const ExperimentConfig c = load_config(path);
    out << Json{{"config", path}, {"valid", true}, {"experiment", c.experiment}}.dump() << std::endl;
    return kExitOk;
  } catch (const ConfigError &e) {
    for (const auto &m : e.messages()) err << "config error: " << m << "\n";
    out << Json{{"config", path}, {"valid", false}, {"errors", e.messages()}}.dump() << std::endl;
    return kExitConfig;
  }
}

}  // namespace pft

#endif  // PFT_RUNNER_HPP
