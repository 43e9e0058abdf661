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

#include "bm/table.hpp"

#include <random>
#include <sstream>

#include "bm/catalog.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace bm;

namespace {
QuasigroupTable load(const char* name) { return read_table_file(std::string(BM_FIXTURE_DIR) + "/" + name); }

oracle::Rows random_latin(int n, std::mt19937& rng) {
  // Cyclic square with random row, column and symbol permutations.
  std::vector<int> pr(n), pc(n), ps(n);
  for (int i = 0; i < n; ++i) pr[i] = pc[i] = ps[i] = i;
  std::shuffle(pr.begin(), pr.end(), rng);
  std::shuffle(pc.begin(), pc.end(), rng);
  std::shuffle(ps.begin(), ps.end(), rng);
  oracle::Rows m(n, std::vector<int>(n));
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) m[pr[r]][pc[c]] = ps[(r + c) % n];
  return m;
}
}  // namespace

TEST_CASE("Latin validation") {
  CHECK_NOTHROW(QuasigroupTable::from_rows({{0, 1}, {1, 0}}));
  CHECK_THROWS_AS(QuasigroupTable::from_rows({{0, 1}, {0, 1}}), NotLatinError);
  CHECK_THROWS_AS(QuasigroupTable::from_rows({{0, 0}, {1, 1}}), NotLatinError);
  CHECK_THROWS_AS(QuasigroupTable::from_rows({{0, 2}, {1, 0}}), NotLatinError);
  CHECK_THROWS_AS(QuasigroupTable::from_rows({{0, 1}, {1}}), NotLatinError);
}

TEST_CASE("divisions agree with naive search") {
  std::mt19937 rng(7);
  for (int n = 1; n <= 7; ++n) {
    const auto m = random_latin(n, rng);
    const auto t = QuasigroupTable::from_rows(m);
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        CHECK(t.mul(a, b) == m[a][b]);
        CHECK(t.ldiv(a, b) == oracle::ldiv(m, a, b));
        CHECK(t.rdiv(b, a) == oracle::rdiv(m, b, a));
      }
  }
}

TEST_CASE("identity checks agree with the naive evaluator") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 1 + trial % 5;
    auto m = random_latin(n, rng);
    const auto t = QuasigroupTable::from_rows(m);
    for (const auto& [name, id] : enumerate_bm()) {
      const bool expect = oracle::holds(m, id);
      CHECK(check_identity(t, id).holds == expect);
      CHECK(CompiledIdentity(id).holds(t) == expect);
    }
    CHECK(neutral_status(t).left.has_value() == oracle::has_left_neutral(m));
    CHECK(neutral_status(t).right.has_value() == oracle::has_right_neutral(m));
    CHECK(is_commutative(t) == oracle::commutative(m));
  }
}

TEST_CASE("failing assignment is the first in lexicographic order") {
  const auto a3 = load("a3.tbl");
  const auto r = check_identity(a3, resolve_identity("B45"));
  REQUIRE_FALSE(r.holds);
  CHECK(r.witness.str() == "x=1 y=0 z=0");
  CHECK_FALSE(holds_at(a3, resolve_identity("B45"), r.witness));
}

TEST_CASE("transpose swaps an identity for its dual") {
  for (const char* f : {"a1.tbl", "a3.tbl", "e12.tbl", "e25.tbl", "elast.tbl"}) {
    const auto t = load(f);
    const auto tt = transpose(t);
    for (const auto& [name, id] : enumerate_bm())
      CHECK(check_identity(t, id).holds == check_identity(tt, identity_of(dual_name(name))).holds);
  }
}

TEST_CASE("canonical form is invariant under relabeling") {
  std::mt19937 rng(3);
  const auto t = load("e25.tbl");
  const auto c = canonical_form(t);
  for (int k = 0; k < 10; ++k) {
    std::vector<int> perm(t.order());
    for (int i = 0; i < t.order(); ++i) perm[i] = i;
    std::shuffle(perm.begin(), perm.end(), rng);
    const auto r = relabel(t, perm);
    CHECK(canonical_form(r) == c);
    for (const auto& [name, id] : enumerate_bm()) CHECK(check_identity(r, id).holds == check_identity(t, id).holds);
  }
}

TEST_CASE("table text round-trip and parse errors") {
  const auto t = load("e18.tbl");
  std::istringstream in(table_text(t));
  CHECK(read_table(in) == t);
  std::istringstream bad("2\n0 1\n0 1\n");
  CHECK_THROWS_AS(read_table(bad), NotLatinError);
  std::istringstream short_rows("3\n0 1 2\n");
  CHECK_THROWS_AS(read_table(short_rows), Error);
}
