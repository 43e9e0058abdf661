/*
 * Copyright 2026 The bolmoufang Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "bm/classifier.hpp"

#include <regex>

#include "doctest.h"
#include "json.hpp"
#include "oracles.hpp"

using namespace bm;

namespace {
ClassificationReport synthetic() {
  ClassificationReport r;
  r.cells.assign(60, std::vector<Cell>(60));
  for (int i = 0; i < 60; ++i) {
    r.cells[i][i].status = CellStatus::Proved;
    ClassInfo c;
    c.representative = bm_at(i);
    c.members = {bm_at(i)};
    c.complete = false;
    r.classes.push_back(c);
    r.minimal_classes.push_back(i);
  }
  r.classes[0].label = "XA";
  r.classes[0].status = LoopStatus::LeftOnly;
  return r;
}
}  // namespace

TEST_CASE("M(S3,2) is a non-associative Moufang loop") {
  const auto t = moufang_loop_12();
  const auto m = t.rows();
  CHECK(t.order() == 12);
  CHECK(oracle::has_left_neutral(m));
  CHECK(oracle::has_right_neutral(m));
  for (const char* n : {"D34", "D23", "B15", "E15"}) CHECK(oracle::holds(m, resolve_identity(n)));
  CHECK_FALSE(oracle::holds(m, resolve_identity("assoc")));
}

TEST_CASE("the octonion units form a non-associative extra loop") {
  const auto t = octonion_loop_16();
  const auto m = t.rows();
  CHECK(t.order() == 16);
  CHECK(oracle::has_left_neutral(m));
  for (const char* n : {"D15", "B23", "E34", "D34"}) CHECK(oracle::holds(m, resolve_identity(n)));
  CHECK_FALSE(oracle::holds(m, resolve_identity("assoc")));
  CHECK_FALSE(oracle::commutative(m));
}

TEST_CASE("the Z2 x Z6 loop is LC1 but neither flexible nor RNQ") {
  const auto m = lc_loop_12().rows();
  CHECK(oracle::is_latin(m));
  CHECK(oracle::has_left_neutral(m));
  CHECK(oracle::has_right_neutral(m));
  CHECK(oracle::holds(m, resolve_identity("A34")));
  CHECK_FALSE(oracle::holds(m, resolve_identity("F13")));
  CHECK_FALSE(oracle::holds(m, resolve_identity("flex")));
  CHECK_FALSE(oracle::holds(transpose(lc_loop_12()).rows(), resolve_identity("A35")));
}

TEST_CASE("text rendering") {
  const auto r = synthetic();
  const auto text = render_report(r, ReportFormat::Text);
  CHECK(text.find("UNKNOWN CELLS: 3540") != std::string::npos);
  CHECK(text.find("\nXA^L: {A12}\n") != std::string::npos);
  CHECK(text.find("\nA13^?: {A13}\n") != std::string::npos);
}

TEST_CASE("dot rendering has one node per class") {
  auto r = synthetic();
  r.hasse_edges = {{1, 0}};
  const auto dot = render_report(r, ReportFormat::Dot);
  const std::regex node(R"(\n  c\d+ \[label=)");
  CHECK(std::distance(std::sregex_iterator(dot.begin(), dot.end(), node), std::sregex_iterator()) == 60);
  CHECK(dot.find("c1 -> c0;") != std::string::npos);
  CHECK(dot.find("XA<sup>L</sup>") != std::string::npos);
}

TEST_CASE("json is stable under parse and render") {
  const auto r = synthetic();
  const auto text = render_report(r, ReportFormat::Json);
  const auto doc = nlohmann::ordered_json::parse(text);
  CHECK(doc.dump(1) + "\n" == text);
  std::vector<std::string> keys;
  for (const auto& [k, v] : doc.items()) keys.push_back(k);
  CHECK(keys.front() == "mode");
  CHECK(doc["identities"].size() == 60);
  CHECK(doc["cells"].size() == 60);
  CHECK(doc["cells"][0][1]["status"] == "unknown");
}

TEST_CASE("check_report catches a witness that does not separate") {
  auto r = synthetic();
  CHECK(check_report(r).ok);
  r.witnesses.push_back({"witnesses/w000.tbl", "test", moufang_loop_12()});
  // M(S3,2) satisfies both D34 and B15, so it cannot refute D34 => B15.
  auto& c = r.cells[bm_index(parse_bm_name("D34"))][bm_index(parse_bm_name("B15"))];
  c.status = CellStatus::Refuted;
  c.witness = 0;
  const auto chk = check_report(r);
  CHECK_FALSE(chk.ok);
  REQUIRE(chk.problems.size() == 1);
  CHECK(chk.problems[0].find("D34 => B15") != std::string::npos);
}

TEST_CASE("report formats") {
  CHECK(parse_report_format("dot") == ReportFormat::Dot);
  CHECK_THROWS_AS(parse_report_format("xml"), Error);
  CHECK(loop_status_symbol(LoopStatus::Both) == "2");
  CHECK(loop_status_symbol(LoopStatus::Neither) == "0");
}
