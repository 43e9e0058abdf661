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

#include "bm/finder.hpp"

#include "bm/catalog.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace bm;

namespace {
bool naive_ok(const oracle::Rows& m, const ConstraintSet& c) {
  for (const auto& id : c.satisfy)
    if (!oracle::holds(m, id)) return false;
  for (const auto& id : c.violate)
    if (oracle::holds(m, id)) return false;
  if (c.commutative && !oracle::commutative(m)) return false;
  if (c.not_commutative && oracle::commutative(m)) return false;
  if (c.not_left_loop && oracle::has_left_neutral(m)) return false;
  if (c.not_right_loop && oracle::has_right_neutral(m)) return false;
  return true;
}

std::uint64_t naive_count(const ConstraintSet& c, int n) {
  std::uint64_t k = 0;
  oracle::all_latin_squares(n, [&](const oracle::Rows& m) { k += naive_ok(m, c); });
  return k;
}
}  // namespace

TEST_CASE("Latin square counts match the naive enumeration") {
  const ConstraintSet none;
  for (int n = 1; n <= 4; ++n) CHECK(count_models(none, n, {}).total == naive_count(none, n));
  CHECK(count_models(none, 4, {}).total == 576);
}

TEST_CASE("constrained counts match the naive enumeration") {
  std::vector<ConstraintSet> sets;
  ConstraintSet a;
  a.satisfy = {resolve_identity("F14")};
  a.not_left_loop = true;
  sets.push_back(a);
  ConstraintSet b;
  b.satisfy = {resolve_identity("flex")};
  b.violate = {resolve_identity("A14")};
  b.commutative = true;
  sets.push_back(b);
  ConstraintSet c;
  c.satisfy = {resolve_identity("D34")};
  c.not_right_loop = true;
  sets.push_back(c);
  for (const auto& s : sets)
    for (int n = 1; n <= 4; ++n) CHECK(count_models(s, n, {}).total == naive_count(s, n));
}

TEST_CASE("found models satisfy the constraints and searches are deterministic") {
  ConstraintSet c;
  c.satisfy = {resolve_identity("F34")};
  c.violate = {resolve_identity("A14")};
  SearchConfig cfg;
  cfg.max_order = 6;
  const auto r1 = find_model(c, cfg);
  REQUIRE(r1.found());
  CHECK(satisfies_constraints(*r1.table, c));
  const auto r2 = find_model(c, cfg);
  CHECK(*r1.table == *r2.table);
  cfg.parallel_width = 3;
  const auto r3 = find_model(c, cfg);
  REQUIRE(r3.found());
  CHECK(*r3.table == *r1.table);
  CHECK(r1.summary_line().rfind("RESULT: found nodes=", 0) == 0);
}

TEST_CASE("impossible constraints exhaust") {
  ConstraintSet c;
  c.satisfy = {resolve_identity("assoc")};
  c.violate = {resolve_identity("D34")};
  SearchConfig cfg;
  cfg.max_order = 5;
  const auto r = find_model(c, cfg);
  CHECK(r.kind == SearchOutcome::Kind::Exhausted);
  CHECK(r.exhausted_orders.size() == 5);
}

TEST_CASE("node limit aborts") {
  ConstraintSet c;
  c.satisfy = {resolve_identity("D34")};
  c.violate = {resolve_identity("assoc")};
  SearchConfig cfg;
  cfg.min_order = 6;
  cfg.max_order = 6;
  cfg.node_limit = 5;
  CHECK(find_model(c, cfg).kind == SearchOutcome::Kind::Aborted);
}

TEST_CASE("for_each_model visits every model once") {
  ConstraintSet c;
  c.commutative = true;
  std::uint64_t k = 0;
  for_each_model(c, 4, {}, [&](const QuasigroupTable& t) {
    CHECK(is_commutative(t));
    ++k;
    return true;
  });
  CHECK(k == naive_count(c, 4));
}
