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

#ifndef PFT_REPORT_IO_HPP
#define PFT_REPORT_IO_HPP

#include <fmt/format.h>

#include <charconv>
#include <complex>
#include <cstddef>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <json.hpp>

#include "pft/error.hpp"
#include "pft/evolve.hpp"
#include "pft/interference.hpp"
#include "pft/transfer.hpp"

namespace pft {

using Json = nlohmann::json;
using Report = std::variant<TransferReport, IntensityProfile, OracleReport>;

enum class TableFormat { Json, Csv };

inline std::string format_name(TableFormat f) { return f == TableFormat::Csv ? "csv" : "json"; }

inline Json complex_to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

inline Complex complex_from_json(const Json &j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return {j[0].get<double>(), j[1].get<double>()};
  throw InvalidArgument("expected a number or a [re, im] pair");
}

inline Json to_json(const TransferReport &r) {
  Json phases = Json::array();
  for (const auto &[d, z] : r.degree_phases) phases.push_back({{"degree", d}, {"phase", complex_to_json(z)}});
  return {{"experiment", r.experiment},
          {"N", r.sites},
          {"n", r.processor_sites},
          {"sector", r.sector},
          {"t0", r.transfer_time},
          {"J", r.hopping},
          {"epsilon", r.field},
          {"U", r.repulsion},
          {"dressing", r.dressing},
          {"dressing_parameter", complex_to_json(r.dressing_parameter)},
          {"signature", complex_to_json(r.signature)},
          {"phase", complex_to_json(r.phase_factor)},
          {"expected_phase", complex_to_json(r.expected_phase_factor)},
          {"fidelity", r.fidelity},
          {"phase_error", r.phase_error},
          {"truncation_loss", r.truncation_loss},
          {"pst_configuration", r.pst_configuration},
          {"reliable", r.reliable},
          {"degree_phases", phases}};
}

inline TransferReport transfer_report_from_json(const Json &j) {
  TransferReport r;
  r.experiment = j.at("experiment").get<std::string>();
  r.sites = j.at("N").get<int>();
  r.processor_sites = j.at("n").get<int>();
  r.sector = j.at("sector").get<std::string>();
  r.transfer_time = j.at("t0").get<double>();
  r.hopping = j.at("J").get<double>();
  r.field = j.at("epsilon").get<double>();
  r.repulsion = j.at("U").get<double>();
  r.dressing = j.at("dressing").get<std::string>();
  r.dressing_parameter = complex_from_json(j.at("dressing_parameter"));
  r.signature = complex_from_json(j.at("signature"));
  r.phase_factor = complex_from_json(j.at("phase"));
  r.expected_phase_factor = complex_from_json(j.at("expected_phase"));
  r.fidelity = j.at("fidelity").get<double>();
  r.phase_error = j.at("phase_error").get<double>();
  r.truncation_loss = j.at("truncation_loss").get<double>();
  r.pst_configuration = j.at("pst_configuration").get<bool>();
  r.reliable = j.at("reliable").get<bool>();
  for (const Json &p : j.value("degree_phases", Json::array()))
    r.degree_phases.emplace_back(p.at("degree").get<int>(), complex_from_json(p.at("phase")));
  return r;
}

inline Json to_json(const IntensityProfile &p) {
  Json amps = Json::array();
  for (Complex z : p.receiver_amplitudes) amps.push_back(complex_to_json(z));
  return {{"time", p.time},
          {"paths", p.path_lengths},
          {"site_intensities", p.site_intensities},
          {"receiver_amplitudes", amps},
          {"receiver_intensity", p.receiver_intensity},
          {"initial_intensity", p.initial_intensity},
          {"interference_factor", p.interference_factor},
          {"closed_form_factor", p.closed_form_factor},
          {"total_number", p.total_number}};
}

inline IntensityProfile intensity_profile_from_json(const Json &j) {
  IntensityProfile p;
  p.time = j.at("time").get<double>();
  p.path_lengths = j.at("paths").get<std::vector<int>>();
  p.site_intensities = j.at("site_intensities").get<std::vector<std::vector<double>>>();
  for (const Json &z : j.at("receiver_amplitudes")) p.receiver_amplitudes.push_back(complex_from_json(z));
  p.receiver_intensity = j.at("receiver_intensity").get<double>();
  p.initial_intensity = j.at("initial_intensity").get<double>();
  p.interference_factor = j.at("interference_factor").get<double>();
  p.closed_form_factor = j.at("closed_form_factor").get<double>();
  p.total_number = j.at("total_number").get<double>();
  return p;
}

inline Json to_json(const OracleReport &o) {
  return {{"N", o.sites},
          {"time", o.time},
          {"max_abs_diff", o.max_abs_diff},
          {"unitarity_error", o.unitarity_error}};
}

inline OracleReport oracle_report_from_json(const Json &j) {
  OracleReport o;
  o.sites = j.at("N").get<int>();
  o.time = j.at("time").get<double>();
  o.max_abs_diff = j.at("max_abs_diff").get<double>();
  o.unitarity_error = j.at("unitarity_error").get<double>();
  return o;
}

inline Json to_json(const Report &r) {
  return std::visit([](const auto &x) { return to_json(x); }, r);
}

// CSV column orders. Changing these changes the file format.
inline const std::vector<std::string> &transfer_csv_header() {
  static const std::vector<std::string> h = {
      "experiment", "N", "n", "sector", "t0", "J", "epsilon", "U", "dressing",
      "dressing_re", "dressing_im", "signature_re", "signature_im", "phase_re", "phase_im",
      "expected_phase_re", "expected_phase_im", "fidelity", "phase_error", "truncation_loss",
      "pst_configuration", "reliable"};
  return h;
}

inline const std::vector<std::string> &interference_csv_header() {
  static const std::vector<std::string> h = {"time", "paths", "receiver_intensity",
                                             "initial_intensity", "interference_factor",
                                             "closed_form_factor", "total_number"};
  return h;
}

inline const std::vector<std::string> &oracle_csv_header() {
  static const std::vector<std::string> h = {"N", "time", "max_abs_diff", "unitarity_error"};
  return h;
}

namespace detail {

inline std::string num(double v) { return fmt::format("{:.17g}", v); }

inline std::string csv_field(const std::string &s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + "\"";
}

inline std::string join_csv(const std::vector<std::string> &fields) {
  std::string line;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) line += ',';
    line += csv_field(fields[i]);
  }
  return line;
}

inline std::vector<std::string> split_csv(const std::string &line) {
  std::vector<std::string> out;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cur += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        cur += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      out.push_back(std::move(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(std::move(cur));
  return out;
}

inline double parse_double(const std::string &s) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw InvalidArgument("CSV: bad number '" + s + "'");
  return v;
}

inline int parse_int(const std::string &s) {
  int v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw InvalidArgument("CSV: bad integer '" + s + "'");
  return v;
}

inline std::vector<std::string> csv_row(const TransferReport &r) {
  return {r.experiment, std::to_string(r.sites), std::to_string(r.processor_sites), r.sector,
          num(r.transfer_time), num(r.hopping), num(r.field), num(r.repulsion), r.dressing,
          num(r.dressing_parameter.real()), num(r.dressing_parameter.imag()),
          num(r.signature.real()), num(r.signature.imag()), num(r.phase_factor.real()),
          num(r.phase_factor.imag()), num(r.expected_phase_factor.real()),
          num(r.expected_phase_factor.imag()), num(r.fidelity), num(r.phase_error),
          num(r.truncation_loss), r.pst_configuration ? "true" : "false",
          r.reliable ? "true" : "false"};
}

inline std::vector<std::string> csv_row(const IntensityProfile &p) {
  std::string paths;
  for (std::size_t i = 0; i < p.path_lengths.size(); ++i)
    paths += (i ? ";" : "") + std::to_string(p.path_lengths[i]);
  return {num(p.time), paths, num(p.receiver_intensity), num(p.initial_intensity),
          num(p.interference_factor), num(p.closed_form_factor), num(p.total_number)};
}

inline std::vector<std::string> csv_row(const OracleReport &o) {
  return {std::to_string(o.sites), num(o.time), num(o.max_abs_diff), num(o.unitarity_error)};
}

inline const std::vector<std::string> &csv_header_for(const Report &r) {
  switch (r.index()) {
    case 0: return transfer_csv_header();
    case 1: return interference_csv_header();
    default: return oracle_csv_header();
  }
}

}  // namespace detail

/// Serializes a homogeneous list of reports as CSV (header + one row each) or
/// as a JSON array. Floating-point values carry 17 significant digits.
inline std::string format_table(const std::vector<Report> &reports, TableFormat format) {
  for (const Report &r : reports)
    if (r.index() != reports.front().index())
      throw InvalidArgument("emit_table: mixed report types");
  if (format == TableFormat::Json) {
    Json arr = Json::array();
    for (const Report &r : reports) arr.push_back(to_json(r));
    return arr.dump(2) + "\n";
  }
  if (reports.empty()) return "\n";
  std::string out = detail::join_csv(detail::csv_header_for(reports.front())) + "\n";
  for (const Report &r : reports)
    out += detail::join_csv(std::visit([](const auto &x) { return detail::csv_row(x); }, r)) + "\n";
  return out;
}

inline void emit_table(const std::vector<Report> &reports, TableFormat format,
                       const std::string &path) {
  const std::string text = format_table(reports, format);
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error("cannot open output file '" + path + "'");
  f << text;
  if (!f) throw Error("cannot write output file '" + path + "'");
}

inline std::vector<TransferReport> parse_transfer_csv(const std::string &text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || detail::split_csv(line) != transfer_csv_header())
    throw InvalidArgument("CSV: not a transfer table");
  std::vector<TransferReport> out;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto f = detail::split_csv(line);
    if (f.size() != transfer_csv_header().size()) throw InvalidArgument("CSV: wrong field count");
    TransferReport r;
    r.experiment = f[0];
    r.sites = detail::parse_int(f[1]);
    r.processor_sites = detail::parse_int(f[2]);
    r.sector = f[3];
    r.transfer_time = detail::parse_double(f[4]);
    r.hopping = detail::parse_double(f[5]);
    r.field = detail::parse_double(f[6]);
    r.repulsion = detail::parse_double(f[7]);
    r.dressing = f[8];
    r.dressing_parameter = {detail::parse_double(f[9]), detail::parse_double(f[10])};
    r.signature = {detail::parse_double(f[11]), detail::parse_double(f[12])};
    r.phase_factor = {detail::parse_double(f[13]), detail::parse_double(f[14])};
    r.expected_phase_factor = {detail::parse_double(f[15]), detail::parse_double(f[16])};
    r.fidelity = detail::parse_double(f[17]);
    r.phase_error = detail::parse_double(f[18]);
    r.truncation_loss = detail::parse_double(f[19]);
    r.pst_configuration = f[20] == "true";
    r.reliable = f[21] == "true";
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace pft

#endif  // PFT_REPORT_IO_HPP
