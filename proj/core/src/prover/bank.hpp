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
#include <vector>

#include "bm/term.hpp"

namespace bm::prover {

using TermId = std::uint32_t;
inline constexpr TermId kNoTerm = 0xffffffffu;

/// Symbols: 0..2 are the binary operations, constants start at kConstBase,
/// variables at kVarBase.
using Sym = std::uint32_t;
inline constexpr Sym kMul = 0, kLDiv = 1, kRDiv = 2;
inline constexpr Sym kConstBase = 16;
inline constexpr Sym kVarBase = 1u << 20;

inline bool is_var_sym(Sym s) { return s >= kVarBase; }
inline bool is_const_sym(Sym s) { return s >= kConstBase && s < kVarBase; }
inline bool is_op_sym(Sym s) { return s < kConstBase; }

struct Weights {
  std::uint32_t mul = 1, ldiv = 1, rdiv = 1, constant = 1, variable = 1;
};

/// Hash-consed term storage. Structurally equal terms share one id.
class TermBank {
 public:
  struct Node {
    Sym sym;
    TermId left, right;
    std::uint32_t weight;
    std::uint16_t size;
    std::uint16_t vars_end;  // 1 + largest variable index, 0 if ground
  };

  explicit TermBank(Weights w = {});

  TermId var(std::uint32_t v);
  TermId constant(std::uint32_t c);
  TermId app(Sym op, TermId l, TermId r);

  const Node& node(TermId t) const { return nodes_[t]; }
  Sym sym(TermId t) const { return nodes_[t].sym; }
  TermId left(TermId t) const { return nodes_[t].left; }
  TermId right(TermId t) const { return nodes_[t].right; }
  bool is_var(TermId t) const { return is_var_sym(nodes_[t].sym); }
  bool is_app(TermId t) const { return is_op_sym(nodes_[t].sym); }
  bool ground(TermId t) const { return nodes_[t].vars_end == 0; }
  std::uint32_t var_index(TermId t) const { return nodes_[t].sym - kVarBase; }
  std::uint32_t weight(TermId t) const { return nodes_[t].weight; }
  std::uint32_t size(TermId t) const { return nodes_[t].size; }
  std::uint32_t vars_end(TermId t) const { return nodes_[t].vars_end; }
  std::size_t count() const { return nodes_.size(); }
  const Weights& weights() const { return weights_; }

  bool occurs(TermId var_term, TermId in) const;
  void count_vars(TermId t, std::vector<int>& counts, int delta) const;

  TermId from_term(const Term& t);
  Term to_term(TermId t) const;

  /// Copies `t` (owned by `from`) into this bank.
  TermId import(const TermBank& from, TermId t, std::vector<TermId>& memo);

 private:
  TermId intern(Sym sym, TermId l, TermId r);
  void grow();

  Weights weights_;
  std::vector<Node> nodes_;
  std::vector<TermId> table_;  // open addressing, kNoTerm = empty
  std::size_t mask_ = 0;
};

}  // namespace bm::prover
