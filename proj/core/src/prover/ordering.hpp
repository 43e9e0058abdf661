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

#include <unordered_map>
#include <vector>

#include "prover/bank.hpp"

namespace bm::prover {

enum class Cmp { Greater, Less, Equal, Incomparable };

/// Knuth-Bendix or lexicographic path ordering over a bank's terms.
/// Operations rank above all constants; constants rank by id.
class TermOrdering {
 public:
  enum class Kind { KBO, LPO };

  /// `op_rank[s]` for s in {kMul, kLDiv, kRDiv}; larger is bigger.
  TermOrdering(const TermBank& bank, Kind kind, std::vector<int> op_rank);

  bool greater(TermId s, TermId t) const;
  Cmp compare(TermId s, TermId t) const;

 private:
  long prec(Sym s) const;
  bool kbo_gt(TermId s, TermId t) const;
  bool lpo_gt(TermId s, TermId t) const;
  bool lpo_gt_uncached(TermId s, TermId t) const;
  bool var_condition(TermId s, TermId t) const;

  const TermBank& bank_;
  Kind kind_;
  std::vector<int> op_rank_;
  mutable std::vector<int> counts_;
  mutable std::unordered_map<std::uint64_t, bool> lpo_memo_;
};

}  // namespace bm::prover
