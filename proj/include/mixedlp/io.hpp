// Copyright 2026 The mixedlp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Body files, measure dumps and check reports.

#include "mixedlp/bodies.hpp"
#include "mixedlp/functionals.hpp"
#include "mixedlp/lab.hpp"
#include "mixedlp/polytope.hpp"
#include "mixedlp/spherical_measure.hpp"
#include "mixedlp/suite.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

namespace mixedlp::io {

using json = nlohmann::ordered_json;

class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline std::string format_real(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

/// Write via a temporary sibling file and rename over the target.
inline void write_atomic(const std::filesystem::path& path, const std::string& content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    out << content;
    out.flush();
    if (!out) throw std::runtime_error("write to " + tmp.string() + " failed");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw std::runtime_error("cannot rename into " + path.string() + ": " + ec.message());
  }
}

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

// ---------------------------------------------------------------- body files

/// A parsed body file, before it is bound to a dimension.
struct BodyFile {
  int dim = 3;
  std::string kind = "polytope";  // polytope | ball | ellipsoid
  std::vector<std::vector<double>> vertices;
  std::vector<std::vector<double>> shape;  // ellipsoid: the matrix A with E = A B
  double radius = 1.0;                     // ball
};

inline json to_json(const BodyFile& b) {
  json j;
  j["dim"] = b.dim;
  j["kind"] = b.kind;
  if (b.kind == "polytope") j["vertices"] = b.vertices;
  if (b.kind == "ball") j["radius"] = b.radius;
  if (b.kind == "ellipsoid") j["shape"] = b.shape;
  return j;
}

inline BodyFile body_from_json(const json& j) {
  BodyFile b;
  try {
    b.dim = j.at("dim").get<int>();
    b.kind = j.at("kind").get<std::string>();
    if (b.dim != 2 && b.dim != 3) throw FormatError("body file: dim must be 2 or 3");
    const auto rows = [&](const char* key) {
      auto m = j.at(key).get<std::vector<std::vector<double>>>();
      for (const auto& r : m) {
        if (static_cast<int>(r.size()) != b.dim) throw FormatError(std::string("body file: rows of ") + key + " must have dim entries");
        for (double x : r) {
          if (!std::isfinite(x)) throw FormatError(std::string("body file: non-finite entry in ") + key);
        }
      }
      return m;
    };
    if (b.kind == "polytope") {
      b.vertices = rows("vertices");
      if (static_cast<int>(b.vertices.size()) < b.dim + 1) throw FormatError("body file: too few vertices");
    } else if (b.kind == "ellipsoid") {
      b.shape = rows("shape");
      if (static_cast<int>(b.shape.size()) != b.dim) throw FormatError("body file: shape must be dim x dim");
    } else if (b.kind == "ball") {
      if (j.contains("radius")) b.radius = j.at("radius").get<double>();
      if (!(b.radius > 0.0) || !std::isfinite(b.radius)) throw FormatError("body file: radius must be positive");
    } else {
      throw FormatError("body file: kind must be polytope, ball or ellipsoid");
    }
  } catch (const json::exception& e) {
    throw FormatError(std::string("body file: ") + e.what());
  }
  return b;
}

inline BodyFile parse_body(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw FormatError(std::string("body file: ") + e.what());
  }
  return body_from_json(j);
}

template <int N>
BodyFile to_body_file(const Polytope<N>& p) {
  BodyFile b;
  b.dim = N;
  b.kind = "polytope";
  for (const auto& v : p.vertices()) b.vertices.emplace_back(v.data(), v.data() + N);
  return b;
}

template <int N>
Mat<N> shape_matrix(const BodyFile& b) {
  Mat<N> m;
  for (int i = 0; i < N; ++i) {
    for (int j = 0; j < N; ++j) m(i, j) = b.shape[i][j];
  }
  return m;
}

template <int N>
Polytope<N> to_polytope(const BodyFile& b) {
  if (b.dim != N) throw FormatError("body file: dimension mismatch");
  if (b.kind != "polytope") throw FormatError("body file: expected a polytope, got " + b.kind);
  std::vector<Vec<N>> pts;
  for (const auto& r : b.vertices) pts.push_back(Eigen::Map<const Vec<N>>(r.data()));
  return convex_hull<N>(pts);
}

template <int N>
SupportBody<N> to_support_body(const BodyFile& b) {
  if (b.dim != N) throw FormatError("body file: dimension mismatch");
  if (b.kind == "polytope") return SupportBody<N>(to_polytope<N>(b));
  if (b.kind == "ball") return SupportBody<N>::ball(b.radius);
  return SupportBody<N>::ellipsoid(LinMap<N>(shape_matrix<N>(b)));
}

template <int N>
StarBody<N> to_star_body(const BodyFile& b) {
  if (b.dim != N) throw FormatError("body file: dimension mismatch");
  if (b.kind == "polytope") return StarBody<N>(to_polytope<N>(b));
  if (b.kind == "ball") return StarBody<N>::ball(b.radius);
  return StarBody<N>::ellipsoid(LinMap<N>(shape_matrix<N>(b)));
}

// ------------------------------------------------------------- measure dumps

/// One row per atom: direction components then weight, lexicographic by
/// direction, 17 significant digits.
template <int N>
std::string measure_dump(const SphericalMeasure<N>& mu) {
  std::string out;
  for (const auto& a : mu.atoms()) {
    for (int i = 0; i < N; ++i) out += format_real(a.direction[i]) + ",";
    out += format_real(a.weight) + "\n";
  }
  return out;
}

// ------------------------------------------------------------------ results

inline std::string functional_rows(const std::string& name, const FunctionalResult& r) {
  return "functional,value,method,tolerance\n" + name + "," + format_real(r.value) + "," + to_string(r.method) + "," +
         format_real(r.tolerance) + "\n";
}

inline json functional_json(const std::string& name, const FunctionalResult& r) {
  json j;
  j["functional"] = name;
  j["value"] = r.value;
  j["method"] = to_string(r.method);
  j["tolerance"] = r.tolerance;
  return j;
}

// ------------------------------------------------------------------ reports

inline const std::vector<std::string>& report_header() {
  static const std::vector<std::string> h{"name", "anchor", "kind", "case", "seed", "params", "lhs",
                                          "rhs",  "ratio",  "tolerance", "verdict", "note"};
  return h;
}

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char ch : s) {
    if (ch == '"') q += '"';
    q += ch;
  }
  return q + "\"";
}

inline std::string summary_line(const lab::SuiteSummary& s) {
  return "records: " + std::to_string(s.records) + ", holds: " + std::to_string(s.holds) +
         ", equality-case: " + std::to_string(s.equality_cases) + ", violations: " + std::to_string(s.violations);
}

inline std::string report_rows(const std::vector<lab::CheckRecord>& records) {
  std::string out;
  const auto& h = report_header();
  for (std::size_t i = 0; i < h.size(); ++i) out += (i ? "," : "") + h[i];
  out += "\n";
  for (const auto& r : records) {
    const std::vector<std::string> f{r.name,
                                     r.anchor,
                                     r.kind,
                                     std::to_string(r.case_index),
                                     std::to_string(r.seed),
                                     r.params,
                                     format_real(r.lhs),
                                     format_real(r.rhs),
                                     format_real(r.ratio),
                                     format_real(r.tolerance),
                                     lab::to_string(r.verdict),
                                     r.note};
    for (std::size_t i = 0; i < f.size(); ++i) out += (i ? "," : "") + csv_field(f[i]);
    out += "\n";
  }
  return out;
}

inline json record_json(const lab::CheckRecord& r) {
  json j;
  j["name"] = r.name;
  j["anchor"] = r.anchor;
  j["kind"] = r.kind;
  j["case"] = {{"index", r.case_index}, {"seed", r.seed}, {"params", r.params}};
  j["values"] = {{"lhs", r.lhs}, {"rhs", r.rhs}, {"ratio", r.ratio}, {"tolerance", r.tolerance}};
  j["verdict"] = lab::to_string(r.verdict);
  j["note"] = r.note;
  return j;
}

/// Nested variant: a summary plus the records in suite order.
inline std::string report_structured(const std::vector<lab::CheckRecord>& records) {
  const auto s = lab::summarize(records);
  json j;
  j["summary"] = {{"records", s.records}, {"holds", s.holds}, {"equality_cases", s.equality_cases},
                  {"violations", s.violations}};
  json list = json::array();
  for (const auto& r : records) list.push_back(record_json(r));
  j["records"] = std::move(list);
  return j.dump(1) + "\n";
}

inline lab::Verdict verdict_from_string(const std::string& s) {
  if (s == "holds") return lab::Verdict::holds;
  if (s == "equality-case") return lab::Verdict::equality_case;
  if (s == "violated") return lab::Verdict::violated;
  throw FormatError("report: unknown verdict '" + s + "'");
}

namespace detail {

inline std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out(1);
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char ch = line[i];
    if (quoted) {
      if (ch == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        out.back() += '"';
        ++i;
      } else if (ch == '"') {
        quoted = false;
      } else {
        out.back() += ch;
      }
    } else if (ch == '"') {
      quoted = true;
    } else if (ch == ',') {
      out.emplace_back();
    } else {
      out.back() += ch;
    }
  }
  if (quoted) throw FormatError("report: unterminated quote");
  return out;
}

inline double parse_real(const std::string& s) {
  // strtod, unlike stod, accepts subnormals.
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || std::isspace(static_cast<unsigned char>(s[0])) || end != s.c_str() + s.size()) {
    throw FormatError("report: bad number '" + s + "'");
  }
  return v;
}

}  // namespace detail

/// Reads either report variant back into records.
inline std::vector<lab::CheckRecord> parse_report(const std::string& text) {
  std::vector<lab::CheckRecord> out;
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') {
    try {
      const json j = json::parse(text);
      for (const auto& e : j.at("records")) {
        lab::CheckRecord r;
        r.name = e.at("name").get<std::string>();
        r.anchor = e.at("anchor").get<std::string>();
        r.kind = e.at("kind").get<std::string>();
        const json& c = e.at("case");
        r.case_index = c.at("index").get<int>();
        r.seed = c.at("seed").get<std::uint64_t>();
        r.params = c.at("params").get<std::string>();
        const json& v = e.at("values");
        r.lhs = v.at("lhs").get<double>();
        r.rhs = v.at("rhs").get<double>();
        r.ratio = v.at("ratio").get<double>();
        r.tolerance = v.at("tolerance").get<double>();
        r.verdict = verdict_from_string(e.at("verdict").get<std::string>());
        r.note = e.at("note").get<std::string>();
        out.push_back(std::move(r));
      }
    } catch (const json::exception& e) {
      throw FormatError(std::string("report: ") + e.what());
    }
    return out;
  }
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw FormatError("report: empty input");
  if (detail::split_csv_line(line) != report_header()) throw FormatError("report: unexpected header");
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto f = detail::split_csv_line(line);
    if (f.size() != report_header().size()) throw FormatError("report: wrong field count");
    lab::CheckRecord r;
    r.name = f[0];
    r.anchor = f[1];
    r.kind = f[2];
    r.case_index = std::stoi(f[3]);
    r.seed = std::stoull(f[4]);
    r.params = f[5];
    r.lhs = detail::parse_real(f[6]);
    r.rhs = detail::parse_real(f[7]);
    r.ratio = detail::parse_real(f[8]);
    r.tolerance = detail::parse_real(f[9]);
    r.verdict = verdict_from_string(f[10]);
    r.note = f[11];
    out.push_back(std::move(r));
  }
  return out;
}

// ------------------------------------------------------------ suite config

/// Keys mirror SuiteConfig; case counts live under "counts".
inline void apply_config(const json& j, lab::SuiteConfig& c) {
  try {
    if (j.contains("seed")) c.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("p_grid")) c.p_grid = j.at("p_grid").get<std::vector<double>>();
    if (j.contains("t_grid")) c.t_grid = j.at("t_grid").get<std::vector<int>>();
    if (j.contains("strict_p_grid")) c.strict_p_grid = j.at("strict_p_grid").get<std::vector<double>>();
    if (j.contains("normalization_p")) c.normalization_p = j.at("normalization_p").get<std::vector<double>>();
    if (j.contains("dual_p")) c.dual_p = j.at("dual_p").get<double>();
    if (j.contains("quad_level")) c.quad_level = j.at("quad_level").get<int>();
    if (j.contains("volume_quad_level")) c.volume_quad_level = j.at("volume_quad_level").get<int>();
    if (j.contains("ball_m")) c.ball_m = j.at("ball_m").get<int>();
    if (j.contains("vertices")) c.vertices = j.at("vertices").get<int>();
    if (j.contains("condition_bound")) c.condition_bound = j.at("condition_bound").get<double>();
    if (j.contains("threads")) c.threads = j.at("threads").get<int>();
    if (j.contains("monte_carlo_samples")) c.monte_carlo_samples = j.at("monte_carlo_samples").get<int>();
    if (j.contains("counts")) {
      const json& k = j.at("counts");
      const std::pair<const char*, int*> fields[] = {
          {"identity", &c.identity_cases},       {"definition", &c.definition_cases},
          {"minkowski", &c.minkowski_cases},     {"projection", &c.projection_cases},
          {"covariance", &c.covariance_cases},   {"dual", &c.dual_cases},
          {"battery", &c.battery_cases},         {"equality", &c.equality_cases},
          {"brightness", &c.brightness_cases},   {"monte_carlo", &c.monte_carlo_cases},
          {"polarization", &c.polarization_cases}, {"normalization_directions", &c.normalization_directions}};
      for (const auto& [key, _] : k.items()) {
        bool known = false;
        for (const auto& f : fields) known = known || key == f.first;
        if (!known) throw FormatError("config: unknown count '" + key + "'");
      }
      for (const auto& [key, field] : fields) {
        if (k.contains(key)) *field = k.at(key).get<int>();
      }
    }
  } catch (const json::exception& e) {
    throw FormatError(std::string("config: ") + e.what());
  }
}

}  // namespace mixedlp::io
