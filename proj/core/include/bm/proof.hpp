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

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bm/term.hpp"

namespace bm {

/// The four quasigroup axioms, in order:
///   x*(x\y) = y,  (y/x)*x = y,  x\(x*y) = y,  (y*x)/x = y.
const std::vector<Identity>& quasigroup_axioms();

/// Variable id -> replacement term. Variables not listed map to themselves.
using Substitution = std::vector<std::pair<std::uint32_t, Term>>;

Term apply_subst(const Term& t, const Substitution& s);

enum class StepKind : std::uint8_t {
  Axiom,           // index = axiom number
  Hypothesis,      // index = hypothesis number
  Goal,            // skolemized negated goal
  Paramodulation,  // parents {from, into}
  Rewrite,         // parents {target, rule}
  Conflict,        // parents {target}
};

std::string_view step_kind_name(StepKind k);

/// One inference. Steps are numbered from 1 in file order.
///
/// Paramodulation: with (l, r) = conclusion of `from` (swapped when
/// `reversed`), the subterm of subst_into(into) at `position` must equal
/// subst(l); it is replaced by subst(r). Rewrite is the same with the
/// target left uninstantiated. `position` is [side, path...] where side 0
/// is the left-hand side.
struct ProofStep {
  StepKind kind = StepKind::Axiom;
  std::uint32_t index = 0;
  std::vector<std::uint32_t> parents;
  bool reversed = false;
  std::vector<int> position;
  Substitution subst;
  Substitution subst_into;
  Identity conclusion;
  bool negative = false;
};

struct ProofObject {
  std::vector<Identity> hypotheses;
  Identity goal;  // as stated, before skolemization
  std::vector<ProofStep> steps;

  std::size_t derived_steps() const;
};

void write_proof(std::ostream& out, const ProofObject& p);
std::string proof_text(const ProofObject& p);
/// Throws ParseError on malformed input. Semantic problems are left to verify_proof.
ProofObject read_proof(std::istream& in);
ProofObject parse_proof(std::string_view text);

struct VerifyResult {
  bool valid = false;
  std::uint32_t step = 0;  // 1-based step id of the first failure; 0 for whole-object errors
  std::string reason;

  explicit operator bool() const { return valid; }
};

/// Syntactic replay; no search. Conclusions must match exactly.
VerifyResult verify_proof(const ProofObject& p);

}  // namespace bm
