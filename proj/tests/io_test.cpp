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

#include "mixedlp/io.hpp"
#include "mixedlp/suite.hpp"

#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <limits>

namespace mixedlp::io {
namespace {

namespace fs = std::filesystem;

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "mixedlp_io_test";
  fs::create_directories(dir);
  return dir / name;
}

TEST(FormatReal, RoundTripsBitExactly) {
  for (double x : {0.1, 1.0 / 3.0, -2.5e-300, 6.02214076e23, std::numeric_limits<double>::denorm_min()}) {
    EXPECT_EQ(std::strtod(format_real(x).c_str(), nullptr), x);
  }
}

TEST(BodyFile, PolytopeRoundTripIsBitExact) {
  for (std::uint64_t s = 0; s < 10; ++s) {
    const auto k = lab::generate_polytope<3>(14, s);
    const std::string text = to_json(to_body_file(k)).dump(1);
    const auto back = to_polytope<3>(parse_body(text));
    EXPECT_TRUE(back == k);
    EXPECT_EQ(to_json(to_body_file(back)).dump(1), text);
  }
  const auto sq = lab::generate_polytope<2>(7, 1);
  EXPECT_TRUE(to_polytope<2>(parse_body(to_json(to_body_file(sq)).dump())) == sq);
}

TEST(BodyFile, BallsAndEllipsoids) {
  const auto ball = parse_body(R"({"dim": 3, "kind": "ball", "radius": 2.5})");
  EXPECT_NEAR(to_support_body<3>(ball).support(Vec<3>(0, 1, 0)), 2.5, 1e-15);
  EXPECT_NEAR(to_star_body<3>(ball).radial(Vec<3>(0, 0, 1)), 2.5, 1e-15);
  const auto e = parse_body(R"({"dim": 2, "kind": "ellipsoid", "shape": [[2, 0], [0, 0.5]]})");
  EXPECT_NEAR(to_support_body<2>(e).support(Vec<2>(1, 0)), 2.0, 1e-15);
  EXPECT_NEAR(to_star_body<2>(e).radial(Vec<2>(0, 1)), 0.5, 1e-15);
  EXPECT_EQ(parse_body(R"({"dim": 3, "kind": "ball"})").radius, 1.0);
}

TEST(BodyFile, MalformedInputsRaiseFormatError) {
  const char* bad[] = {
      "not json",
      R"({"kind": "ball"})",
      R"({"dim": 4, "kind": "ball"})",
      R"({"dim": 3, "kind": "cone"})",
      R"({"dim": 3, "kind": "ball", "radius": -1})",
      R"({"dim": 3, "kind": "polytope", "vertices": [[0, 0, 0], [1, 0, 0], [0, 1, 0]]})",
      R"({"dim": 3, "kind": "polytope", "vertices": [[0, 0], [1, 0, 0], [0, 1, 0], [0, 0, 1]]})",
      R"({"dim": 2, "kind": "ellipsoid", "shape": [[1, 0]]})",
      R"({"dim": 2, "kind": "polytope", "vertices": "abc"})",
  };
  for (const char* text : bad) EXPECT_THROW(parse_body(text), FormatError) << text;
  const auto ball = parse_body(R"({"dim": 3, "kind": "ball"})");
  EXPECT_THROW(to_polytope<3>(ball), FormatError);
  EXPECT_THROW(to_support_body<2>(ball), FormatError);
}

TEST(MeasureDump, RowsAreSortedWithFullPrecision) {
  const auto dump = measure_dump(area_measure(hypercube<3>(1.0)));
  EXPECT_EQ(dump,
            "-1,0,0,4\n"
            "0,-1,0,4\n"
            "0,0,-1,4\n"
            "0,0,1,4\n"
            "0,1,0,4\n"
            "1,0,0,4\n");
}

TEST(Functional, RowsAndJson) {
  const FunctionalResult r{8.0, Method::exact_sum, 0.0};
  EXPECT_EQ(functional_rows("volume", r), "functional,value,method,tolerance\nvolume,8,exact-sum,0\n");
  const auto j = functional_json("volume", FunctionalResult{1.5, Method::quadrature, 1e-3});
  EXPECT_EQ(j.at("method"), "quadrature");
  EXPECT_EQ(j.at("value").get<double>(), 1.5);
}

TEST(Csv, FieldQuoting) {
  EXPECT_EQ(csv_field("plain"), "plain");
  EXPECT_EQ(csv_field("a,b"), "\"a,b\"");
  EXPECT_EQ(csv_field("say \"hi\""), "\"say \"\"hi\"\"\"");
  EXPECT_EQ(csv_field("two\nlines"), "\"two\nlines\"");
}

std::vector<lab::CheckRecord> sample_records() {
  lab::CheckRecord a;
  a.name = "MLPMI";
  a.anchor = "mixed Lp Minkowski, with \"quotes\", commas";
  a.kind = "inequality";
  a.lhs = 1.0 / 3.0;
  a.rhs = 0.1;
  a.ratio = 10.0 / 3.0;
  a.tolerance = 1e-9;
  a.verdict = lab::Verdict::holds;
  a.seed = 18446744073709551615ull;
  a.case_index = 4;
  a.params = "p=1.5;t=1;m=12";
  lab::CheckRecord b = a;
  b.name = "brightness";
  b.kind = "identity";
  b.verdict = lab::Verdict::violated;
  b.note = "line one, then two";
  lab::CheckRecord c = a;
  c.verdict = lab::Verdict::equality_case;
  c.ratio = std::numeric_limits<double>::denorm_min();
  return {a, b, c};
}

void expect_same(const std::vector<lab::CheckRecord>& x, const std::vector<lab::CheckRecord>& y) {
  ASSERT_EQ(x.size(), y.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    EXPECT_EQ(x[i].name, y[i].name);
    EXPECT_EQ(x[i].anchor, y[i].anchor);
    EXPECT_EQ(x[i].kind, y[i].kind);
    EXPECT_EQ(x[i].seed, y[i].seed);
    EXPECT_EQ(x[i].case_index, y[i].case_index);
    EXPECT_EQ(x[i].params, y[i].params);
    EXPECT_EQ(x[i].lhs, y[i].lhs);
    EXPECT_EQ(x[i].rhs, y[i].rhs);
    EXPECT_EQ(x[i].ratio, y[i].ratio);
    EXPECT_EQ(x[i].tolerance, y[i].tolerance);
    EXPECT_EQ(x[i].verdict, y[i].verdict);
    EXPECT_EQ(x[i].note, y[i].note);
  }
}

TEST(Report, CsvRoundTrip) {
  const auto recs = sample_records();
  const auto text = report_rows(recs);
  EXPECT_EQ(text.substr(0, text.find('\n')), "name,anchor,kind,case,seed,params,lhs,rhs,ratio,tolerance,verdict,note");
  const auto back = parse_report(text);
  expect_same(recs, back);
  EXPECT_EQ(report_rows(back), text);
}

TEST(Report, StructuredRoundTripKeepsOrder) {
  const auto recs = sample_records();
  const auto text = report_structured(recs);
  const auto j = json::parse(text);
  EXPECT_EQ(j.at("summary").at("violations"), 1);
  EXPECT_EQ(j.at("summary").at("equality_cases"), 1);
  EXPECT_EQ(j.at("records").at(1).at("name"), "brightness");
  expect_same(recs, parse_report(text));
  EXPECT_EQ(report_structured(parse_report(text)), text);
}

TEST(Report, SummaryLine) {
  EXPECT_EQ(summary_line(lab::summarize(sample_records())), "records: 3, holds: 1, equality-case: 1, violations: 1");
}

TEST(Report, MalformedInputs) {
  EXPECT_THROW(parse_report(""), FormatError);
  EXPECT_THROW(parse_report("a,b,c\n"), FormatError);
  const auto good = report_rows(sample_records());
  const std::string header = good.substr(0, good.find('\n') + 1);
  EXPECT_THROW(parse_report(header + "x,y\n"), FormatError);
  std::string wrong = good;
  wrong.replace(wrong.find(",holds,"), 7, ",fine,");
  EXPECT_THROW(parse_report(wrong), FormatError);
  EXPECT_THROW(parse_report(R"({"records": [{"name": 1}]})"), FormatError);
}

TEST(Config, AppliesKnownKeysAndRejectsUnknownCounts) {
  lab::SuiteConfig c;
  apply_config(json::parse(R"({"seed": 5, "p_grid": [1, 4], "threads": 3,
                               "counts": {"minkowski": 7, "monte_carlo": 0}})"),
               c);
  EXPECT_EQ(c.seed, 5u);
  EXPECT_EQ(c.p_grid, (std::vector<double>{1.0, 4.0}));
  EXPECT_EQ(c.threads, 3);
  EXPECT_EQ(c.minkowski_cases, 7);
  EXPECT_EQ(c.monte_carlo_cases, 0);
  EXPECT_EQ(c.identity_cases, lab::SuiteConfig{}.identity_cases);
  EXPECT_THROW(apply_config(json::parse(R"({"counts": {"mikowski": 7}})"), c), FormatError);
  EXPECT_THROW(apply_config(json::parse(R"({"seed": "x"})"), c), FormatError);
}

TEST(WriteAtomic, ReplacesContentAndLeavesNoTemporary) {
  const auto path = scratch("atomic.txt");
  write_atomic(path, "first\n");
  write_atomic(path, "second\n");
  EXPECT_EQ(read_file(path), "second\n");
  fs::path tmp = path;
  tmp += ".tmp";
  EXPECT_FALSE(fs::exists(tmp));
  EXPECT_THROW(write_atomic(scratch("missing") / "dir" / "x.txt", "x"), std::runtime_error);
  EXPECT_THROW(read_file(scratch("does-not-exist")), std::runtime_error);
}

}  // namespace
}  // namespace mixedlp::io
