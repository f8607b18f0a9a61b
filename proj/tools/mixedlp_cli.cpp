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

// Batch front end: bodies, compute, verify, report.

#include "mixedlp/mixedlp.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace {

using namespace mixedlp;
using io::json;

struct Options {
  int dim = 3;
  std::uint64_t seed = 20260101;
  bool seed_set = false;
  std::vector<double> p{1.0};
  std::vector<int> t{0};
  int i = 0;
  int m = 320;
  int quad_level = -1;
  std::string out;
  std::string format = "rows";
  // bodies
  std::string shape = "random";
  int vertices = 12;
  bool no_recenter = false;
  std::string file;
  bool measure = false;
  // compute
  std::string functional;
  std::string k, l, q;
  std::vector<std::string> bodies;
  std::vector<double> u;
  // verify / report
  std::string config;
  int threads = -1;
  int cases = -1;
};

void emit(const Options& o, const std::string& text) {
  if (o.out.empty()) {
    std::cout << text;
  } else {
    io::write_atomic(o.out, text);
  }
}

template <int N>
Polytope<N> builtin_or_file(const std::string& spec) {
  const auto colon = spec.find(':');
  const std::string head = spec.substr(0, colon);
  const std::string arg = colon == std::string::npos ? "" : spec.substr(colon + 1);
  const double a = arg.empty() ? 1.0 : std::stod(arg);
  if (head == "cube" || (head == "square" && N == 2)) return hypercube<N>(a);
  if (head == "octahedron" || head == "cross" || (head == "diamond" && N == 2)) return cross_polytope<N>(a);
  if (head == "ball") return ball_approx<N>(arg.empty() ? 320 : std::stoi(arg)).body;
  if (head == "random") return lab::generate_polytope<N>(12, arg.empty() ? 1 : std::stoull(arg));
  return io::to_polytope<N>(io::parse_body(io::read_file(spec)));
}

template <int N>
SupportBody<N> support_spec(const std::string& spec) {
  if (spec == "unit-ball") return SupportBody<N>::ball();
  if (spec.find(':') == std::string::npos && spec.find('.') != std::string::npos) {
    return io::to_support_body<N>(io::parse_body(io::read_file(spec)));
  }
  return SupportBody<N>(builtin_or_file<N>(spec));
}

template <int N>
StarBody<N> star_spec(const std::string& spec) {
  if (spec == "unit-ball") return StarBody<N>::ball();
  if (spec.find(':') == std::string::npos && spec.find('.') != std::string::npos) {
    return io::to_star_body<N>(io::parse_body(io::read_file(spec)));
  }
  return StarBody<N>(builtin_or_file<N>(spec));
}

const std::string& need(const std::string& value, const char* flag) {
  if (value.empty()) throw std::invalid_argument(std::string("missing ") + flag);
  return value;
}

template <int N>
const Quadrature<N>& rule(const Options& o) {
  return cached_quadrature<N>(o.quad_level >= 0 ? o.quad_level : N == 2 ? kDefaultCircleLevel : kDefaultSphereLevel);
}

template <int N>
Vec<N> direction(const Options& o) {
  if (static_cast<int>(o.u.size()) != N) throw std::invalid_argument("--u needs dim components");
  return Eigen::Map<const Vec<N>>(o.u.data());
}

// ---------------------------------------------------------------- bodies

template <int N>
int bodies_generate(const Options& o) {
  Polytope<N> p = o.shape == "random"       ? lab::generate_polytope<N>(o.vertices, o.seed, !o.no_recenter)
                  : o.shape == "cube"       ? hypercube<N>(1.0)
                  : o.shape == "octahedron" ? cross_polytope<N>(1.0)
                  : o.shape == "ball"       ? ball_approx<N>(o.m).body
                                            : throw std::invalid_argument("unknown --shape " + o.shape);
  emit(o, io::to_json(io::to_body_file(p)).dump(1) + "\n");
  return 0;
}

template <int N>
int bodies_inspect(const Options& o, const io::BodyFile& b) {
  json j;
  j["dim"] = b.dim;
  j["kind"] = b.kind;
  if (b.kind == "polytope") {
    const Polytope<N> p = io::to_polytope<N>(b);
    if (o.measure) {
      emit(o, o.format == "structured" ? json{{"atoms", [&] {
                                                 json a = json::array();
                                                 for (const auto& at : area_measure(p).atoms()) {
                                                   a.push_back({std::vector<double>(at.direction.data(), at.direction.data() + N), at.weight});
                                                 }
                                                 return a;
                                               }()}}.dump(1) + "\n"
                                         : io::measure_dump(area_measure(p)));
      return 0;
    }
    j["vertices"] = p.vertices().size();
    j["facets"] = p.facets().size();
    j["volume"] = p.volume();
    j["surface_area"] = p.surface_area();
    j["origin_interior"] = p.contains_origin();
    j["closedness_residual"] = p.closedness_residual().norm();
  } else {
    const SupportBody<N> s = io::to_support_body<N>(b);
    j["origin_interior"] = s.origin_interior();
    j["volume"] = support_body_volume(s, rule<N>(o)).value;
  }
  emit(o, j.dump(1) + "\n");
  return 0;
}

// ---------------------------------------------------------------- compute

template <int N>
int compute(const Options& o) {
  const std::string& f = o.functional;
  const double p = o.p.front();
  const int t = o.t.front();
  const auto K = [&] { return builtin_or_file<N>(need(o.k, "--K")); };
  const auto Q = [&] { return builtin_or_file<N>(need(o.q, "--Q")); };
  const auto measure_out = [&](const SphericalMeasure<N>& mu) {
    if (o.format == "structured") {
      json a = json::array();
      for (const auto& at : mu.atoms()) a.push_back({std::vector<double>(at.direction.data(), at.direction.data() + N), at.weight});
      emit(o, json{{"measure", f}, {"atoms", a}}.dump(1) + "\n");
    } else {
      emit(o, io::measure_dump(mu));
    }
    return 0;
  };
  if (f == "area_measure") return measure_out(area_measure(K()));
  if (f == "lp_mixed_surface_measure") return measure_out(lp_mixed_surface_measure(K(), Q(), p, t));

  FunctionalResult r{};
  if (f == "volume") {
    r = {K().volume(), Method::exact_sum, 0.0};
  } else if (f == "surface_area") {
    r = {K().surface_area(), Method::exact_sum, 0.0};
  } else if (f == "mixed_volume") {
    std::vector<Polytope<N>> list;
    for (const auto& s : o.bodies) list.push_back(builtin_or_file<N>(s));
    r = mixed_volume<N>(list);
  } else if (f == "lpt_mixed_volume") {
    r = lpt_mixed_volume(K(), support_spec<N>(need(o.l, "--L")), Q(), p, t);
  } else if (f == "lpt_mixed_volume_limit") {
    r = lpt_mixed_volume_limit(K(), support_spec<N>(need(o.l, "--L")), Q(), p, t);
  } else if (f == "lp_mixed_volume") {
    r = lp_mixed_volume(K(), support_spec<N>(need(o.l, "--L")), p);
  } else if (f == "quermassintegral") {
    r = quermassintegral(K(), o.i, o.m);
  } else if (f == "lp_mixed_quermassintegral") {
    r = lp_mixed_quermassintegral(K(), support_spec<N>(need(o.l, "--L")), p, o.i, o.m);
  } else if (f == "star_volume") {
    r = star_volume(star_spec<N>(need(o.k, "--K")), rule<N>(o));
  } else if (f == "dual_mixed_volume") {
    r = dual_mixed_volume(star_spec<N>(need(o.k, "--K")), star_spec<N>(need(o.l, "--L")), p, rule<N>(o));
  } else if (f == "polar_projection_volume") {
    r = star_volume(polar_body(mixed_lp_projection_body(K(), Q(), p, t)), rule<N>(o));
  } else if (f == "centroid_body_volume") {
    r = support_body_volume(centroid_body(star_spec<N>(need(o.k, "--K")), p, rule<N>(o)), rule<N>(o));
  } else if (f == "projection_support") {
    r = {mixed_lp_projection_body(K(), Q(), p, t)(direction<N>(o)), Method::exact_sum, 0.0};
  } else if (f == "brightness") {
    r = {brightness(K(), direction<N>(o)), Method::exact_sum, 0.0};
  } else {
    throw std::invalid_argument("unknown functional '" + f + "'");
  }
  emit(o, o.format == "structured" ? io::functional_json(f, r).dump(1) + "\n" : io::functional_rows(f, r));
  return 0;
}

// ---------------------------------------------------------------- verify

// The summary goes to stdout when the report goes to a file, else to stderr.
int render(const Options& o, const std::vector<lab::CheckRecord>& records) {
  emit(o, o.format == "structured" ? io::report_structured(records) : io::report_rows(records));
  const auto s = lab::summarize(records);
  std::ostream& log = o.out.empty() ? std::cerr : std::cout;
  log << io::summary_line(s) << "\n" << "violations: " << s.violations << "\n";
  return s.violations == 0 ? 0 : 1;
}

int verify(const Options& o, const CLI::App& cmd) {
  lab::SuiteConfig c;
  int dim = 3;
  if (!o.config.empty()) {
    json j;
    try {
      j = json::parse(io::read_file(o.config));
    } catch (const json::exception& e) {
      throw io::FormatError(std::string("config: ") + e.what());
    }
    static const std::vector<std::string> keys{"seed", "dim", "p_grid", "t_grid", "strict_p_grid", "normalization_p",
                                               "dual_p", "quad_level", "volume_quad_level", "ball_m", "vertices",
                                               "condition_bound", "threads", "monte_carlo_samples", "counts"};
    for (const auto& [key, _] : j.items()) {
      if (std::find(keys.begin(), keys.end(), key) == keys.end()) throw io::FormatError("config: unknown key '" + key + "'");
    }
    if (j.contains("dim")) dim = j.at("dim").get<int>();
    io::apply_config(j, c);
  }
  if (cmd.count("--seed")) c.seed = o.seed;
  if (cmd.count("--dim")) dim = o.dim;
  if (cmd.count("--p")) c.p_grid = o.p;
  if (cmd.count("--t")) c.t_grid = o.t;
  if (cmd.count("--quad-level")) c.quad_level = o.quad_level;
  if (cmd.count("--threads")) c.threads = o.threads;
  if (cmd.count("--cases")) {
    for (int* k : {&c.identity_cases, &c.definition_cases, &c.minkowski_cases, &c.projection_cases,
                   &c.covariance_cases, &c.dual_cases, &c.battery_cases, &c.equality_cases, &c.brightness_cases,
                   &c.monte_carlo_cases, &c.polarization_cases}) {
      *k = o.cases;
    }
  }
  if (dim != 2 && dim != 3) throw std::invalid_argument("dim must be 2 or 3");
  const auto records = dim == 2 ? lab::run_suite<2>(c) : lab::run_suite<3>(c);
  return render(o, records);
}

}  // namespace

int main(int argc, char** argv) {
  Options o;
  CLI::App app{"mixedlp: mixed Lp mixed volumes, projection bodies and inequality checks"};
  app.require_subcommand(1);
  std::string p_list, t_list;

  const auto common = [&](CLI::App* c) {
    c->add_option("--dim", o.dim, "dimension (2 or 3)")->check(CLI::IsMember({2, 3}));
    c->add_option("--seed", o.seed, "random seed");
    c->add_option("--out", o.out, "output file (written atomically); stdout if absent");
    c->add_option("--format", o.format, "rows or structured")->check(CLI::IsMember({"rows", "structured"}));
    c->add_option("--quad-level", o.quad_level, "sphere quadrature level");
  };

  auto* bodies = app.add_subcommand("bodies", "generate or inspect body files");
  bodies->require_subcommand(1);
  auto* gen = bodies->add_subcommand("generate", "write a body file");
  common(gen);
  gen->add_option("--shape", o.shape, "random, cube, octahedron or ball")
      ->check(CLI::IsMember({"random", "cube", "octahedron", "ball"}));
  gen->add_option("--vertices", o.vertices, "points sampled for a random polytope")->check(CLI::PositiveNumber);
  gen->add_option("--m", o.m, "points of the ball approximant")->check(CLI::PositiveNumber);
  gen->add_flag("--no-recenter", o.no_recenter, "keep the sampled position");
  auto* inspect = bodies->add_subcommand("inspect", "summarize a body file");
  common(inspect);
  inspect->add_option("file", o.file, "body file")->required();
  inspect->add_flag("--measure", o.measure, "dump the surface area measure instead");

  auto* comp = app.add_subcommand("compute", "evaluate one functional");
  common(comp);
  comp->add_option("functional", o.functional, "functional name")->required();
  comp->add_option("--K", o.k, "body K: file, cube[:a], octahedron[:r], square[:a], ball[:m], random[:seed], unit-ball");
  comp->add_option("--L", o.l, "body L");
  comp->add_option("--Q", o.q, "body Q");
  comp->add_option("--bodies", o.bodies, "bodies for mixed_volume")->delimiter(',');
  comp->add_option("--p", o.p, "exponent p")->delimiter(',');
  comp->add_option("--t", o.t, "index t")->delimiter(',');
  comp->add_option("--i", o.i, "quermassintegral index i");
  comp->add_option("--m", o.m, "points of the ball approximant");
  comp->add_option("--u", o.u, "direction")->delimiter(',');

  auto* ver = app.add_subcommand("verify", "run the verification suite");
  common(ver);
  ver->add_option("--config", o.config, "JSON config file; flags override it");
  ver->add_option("--p", o.p, "p grid")->delimiter(',');
  ver->add_option("--t", o.t, "t grid")->delimiter(',');
  ver->add_option("--threads", o.threads, "worker threads (0: all cores)")->check(CLI::NonNegativeNumber);
  ver->add_option("--cases", o.cases, "override every per-group case count")->check(CLI::NonNegativeNumber);

  auto* rep = app.add_subcommand("report", "re-render a report in either format");
  common(rep);
  rep->add_option("file", o.file, "report produced by verify")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    const bool two = o.dim == 2;
    if (gen->parsed()) return two ? bodies_generate<2>(o) : bodies_generate<3>(o);
    if (inspect->parsed()) {
      const io::BodyFile b = io::parse_body(io::read_file(o.file));
      return b.dim == 2 ? bodies_inspect<2>(o, b) : bodies_inspect<3>(o, b);
    }
    if (comp->parsed()) return two ? compute<2>(o) : compute<3>(o);
    if (ver->parsed()) return verify(o, *ver);
    if (rep->parsed()) return render(o, io::parse_report(io::read_file(o.file)));
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
