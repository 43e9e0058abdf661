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

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "bm/proof.hpp"
#include "bm/term.hpp"

namespace bm {

enum class TermOrderingKind : std::uint8_t { KBO, LPO };

struct ProverConfig {
  TermOrderingKind ordering = TermOrderingKind::KBO;
  /// Precedence ranks for mul, ldiv, rdiv (larger is bigger). Constants are
  /// always below the operations and ordered c > b > a.
  std::array<int, 3> op_rank{0, 2, 1};
  /// KBO weights for mul, ldiv, rdiv, constants, variables.
  std::array<std::uint32_t, 5> weights{1, 1, 1, 1, 1};
  double time_limit = 60.0;             // seconds; <= 0 disables
  std::size_t max_equations = 200'000;  // retained passive + active equations
  std::size_t max_term_size = 60;       // symbols per side
  unsigned age_picks = 1;               // given-clause selection: age picks ...
  unsigned weight_picks = 4;            // ... per this many weight picks
};

enum class GaveUpReason : std::uint8_t {
  Timeout,
  EquationLimit,  // heaviest equations were discarded to stay within max_equations
  SizeLimit,      // equations above max_term_size were discarded
  Saturated,      // nothing left to do and nothing was discarded: the goal does not follow
};

std::string_view gave_up_reason_name(GaveUpReason r);

struct ProverStats {
  double seconds = 0;
  std::size_t given = 0;       // equations activated
  std::size_t generated = 0;   // critical pairs computed
  std::size_t active = 0;      // active equations at the end
  std::size_t passive = 0;     // passive equations at the end
};

struct ProveResult {
  bool proved = false;
  GaveUpReason reason = GaveUpReason::Timeout;  // meaningful when !proved
  ProofObject proof;                            // meaningful when proved
  ProverStats stats;

  explicit operator bool() const { return proved; }
  std::string summary_line() const;
};

/// Unfailing completion for the quasigroup axioms plus `hypotheses`.
/// The goal is skolemized (variable k becomes constant k) and negated.
ProveResult prove(const std::vector<Identity>& hypotheses, const Identity& goal, const ProverConfig& cfg = {});

/// Goal x\x = y\y: every model has a right neutral element.
ProveResult prove_right_loop(const std::vector<Identity>& hypotheses, const ProverConfig& cfg = {});
/// Goal x/x = y/y: every model has a left neutral element.
ProveResult prove_left_loop(const std::vector<Identity>& hypotheses, const ProverConfig& cfg = {});

Identity right_loop_goal();
Identity left_loop_goal();

/// Like prove(), for hypotheses already known to imply the left and/or
/// right loop goal. Internally a fresh constant names the neutral element
/// (x/x = e); the returned proof replaces it by a/a (or a\a) and lists the
/// used loop goals after `hypotheses`, so it verifies on its own.
ProveResult prove_with_loop_lemmas(const std::vector<Identity>& hypotheses, const Identity& goal, bool left,
                                   bool right, const ProverConfig& cfg = {});

/// Innermost-leftmost rewriting with `rules`, each oriented left to right.
/// Throws Error when a rule's left side is not greater than its right side
/// under the configured ordering.
Term normal_form(const Term& t, const std::vector<Identity>& rules, const ProverConfig& cfg = {});

}  // namespace bm
