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

#include "bm/prover.hpp"

#include "bm/catalog.hpp"
#include "doctest.h"

using namespace bm;

namespace {
ProverConfig quick(double seconds = 20) {
  ProverConfig c;
  c.time_limit = seconds;
  return c;
}
}  // namespace

TEST_CASE("axiom consequences need no hypotheses") {
  for (const char* g : {"(x/(y\\x)) = y", "((x*y)/(x\\(x*y))) = x", "(x\\(x*(y*z))) = (y*z)"}) {
    const auto r = prove({}, parse_identity(g), quick());
    CHECK_MESSAGE(r.proved, g);
    if (r.proved) CHECK(verify_proof(r.proof).valid);
  }
}

TEST_CASE("flexibility from B45 and back") {
  const auto a = prove({resolve_identity("B45")}, resolve_identity("flex"), quick());
  REQUIRE(a.proved);
  CHECK(verify_proof(a.proof).valid);
  CHECK(a.proof.hypotheses == std::vector<Identity>{resolve_identity("B45")});
  CHECK(a.proof.goal == resolve_identity("flex"));
  const auto b = prove({resolve_identity("flex")}, resolve_identity("B45"), quick());
  REQUIRE(b.proved);
  CHECK(verify_proof(b.proof).valid);
}

TEST_CASE("loop goals") {
  const auto r = prove_right_loop({resolve_identity("E14")}, quick());
  REQUIRE(r.proved);
  CHECK(r.proof.goal == right_loop_goal());
  CHECK(verify_proof(r.proof).valid);
  const auto l = prove_left_loop({resolve_identity("lalt")}, quick());
  REQUIRE(l.proved);
  CHECK(verify_proof(l.proof).valid);
}

TEST_CASE("LPO proves easy goals too") {
  ProverConfig c = quick();
  c.ordering = TermOrderingKind::LPO;
  const auto r = prove({resolve_identity("C23")}, resolve_identity("assoc"), c);
  REQUIRE(r.proved);
  CHECK(verify_proof(r.proof).valid);
}

TEST_CASE("non-theorems end without a proof") {
  // Commutativity does not follow from associativity; the run must stop on a limit.
  ProverConfig c = quick(2);
  c.max_equations = 20000;
  const auto r = prove({resolve_identity("assoc")}, resolve_identity("comm"), c);
  CHECK_FALSE(r.proved);
  CHECK(r.summary_line().rfind("RESULT: gave-up reason=", 0) == 0);
}

TEST_CASE("saturation is reported when nothing was discarded") {
  // The quasigroup axioms complete to a finite convergent system.
  const auto r = prove({}, parse_identity("x = y"), quick(10));
  CHECK_FALSE(r.proved);
  CHECK(r.reason == GaveUpReason::Saturated);
}

TEST_CASE("lemma-assisted proofs verify with the loop goals as hypotheses") {
  const auto r = prove_with_loop_lemmas({resolve_identity("D34")}, resolve_identity("B15"), true, true, quick(30));
  REQUIRE(r.proved);
  REQUIRE(r.proof.hypotheses.size() == 3);
  CHECK(r.proof.hypotheses[1] == left_loop_goal());
  CHECK(r.proof.hypotheses[2] == right_loop_goal());
  CHECK(verify_proof(r.proof).valid);
  for (const auto& s : r.proof.steps) {
    CHECK(max_const_id(s.conclusion) <= 2);  // no helper constant survives
  }
}

TEST_CASE("summary line format") {
  const auto r = prove({resolve_identity("B45")}, resolve_identity("flex"), quick());
  CHECK(r.summary_line().rfind("RESULT: proved steps=", 0) == 0);
}

TEST_CASE("normal_form with oriented rules") {
  const auto nf = normal_form(parse_term("((x*y)*z)"), {parse_identity("((x*y)*z) = (x*(y*z))")});
  CHECK(nf.str() == "(x*(y*z))");
  CHECK_THROWS_AS(normal_form(parse_term("x"), {parse_identity("x = (x*x)")}), Error);
}
