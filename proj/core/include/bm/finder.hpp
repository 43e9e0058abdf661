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
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "bm/table.hpp"
#include "bm/term.hpp"

namespace bm {

/// What a searched quasigroup must look like.
struct ConstraintSet {
  std::vector<Identity> satisfy;
  /// Each of these must fail for at least one assignment.
  std::vector<Identity> violate;
  bool not_left_loop = false;
  bool not_right_loop = false;
  bool commutative = false;
  bool not_commutative = false;
};

struct SearchConfig {
  int min_order = 1;
  int max_order = 8;
  std::uint64_t node_limit = 0;  // 0 = unlimited
  double time_limit = 0;         // seconds, 0 = unlimited
  bool dedup_isomorphic = false;
  int parallel_width = 1;
};

struct SearchOutcome {
  enum class Kind { Found, Exhausted, Aborted };
  Kind kind = Kind::Exhausted;
  std::optional<QuasigroupTable> table;
  std::uint64_t nodes = 0;
  double seconds = 0;
  /// Orders whose search space was covered completely.
  std::vector<int> exhausted_orders;

  bool found() const { return kind == Kind::Found; }
  /// `RESULT: {found|exhausted|aborted} nodes=<n> seconds=<s>`
  std::string summary_line() const;
};

/// True iff the table meets every constraint; checked by exhaustive
/// evaluation, independent of the search.
bool satisfies_constraints(const QuasigroupTable& t, const ConstraintSet& c);

/// Backtracking search over Latin squares of each order in the configured
/// range. Deterministic for a given configuration; with parallel_width > 1
/// the top-level branches are split over threads and the witness from the
/// lowest branch is returned, which matches the serial result.
SearchOutcome find_model(const ConstraintSet& c, const SearchConfig& cfg);

/// Calls `visit` for every model of one order in search order until it
/// returns false. Returns Exhausted when the enumeration completed.
SearchOutcome for_each_model(const ConstraintSet& c, int order, const SearchConfig& cfg,
                             const std::function<bool(const QuasigroupTable&)>& visit);

struct ModelCount {
  std::uint64_t total = 0;
  std::optional<std::uint64_t> up_to_isomorphism;
  bool complete = true;
};

/// Exact number of models of a given order (order <= 6 unless limits are
/// raised), optionally also counted up to isomorphism.
ModelCount count_models(const ConstraintSet& c, int order, const SearchConfig& cfg);

}  // namespace bm
