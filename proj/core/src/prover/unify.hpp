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

#include <vector>

#include "prover/bank.hpp"

namespace bm::prover {

/// Syntactic unification of two terms whose variables live in separate
/// namespaces ("sides" 0 and 1), so equations need not be renamed apart.
class Unifier {
 public:
  explicit Unifier(TermBank& bank) : bank_(bank) {}

  void reset() {
    for (auto& [side, v] : trail_) bind_[side][v] = {kNoTerm, 0};
    trail_.clear();
    fresh_.clear();
  }

  bool unify(TermId a, int sa, TermId b, int sb);

  /// Instantiates `t` from `side`; unbound variables are numbered freshly
  /// in order of first encounter across calls until the next reset().
  TermId apply(TermId t, int side);

  /// Binding of a variable of `side` after unification, as a term built
  /// with apply() numbering. Unbound variables map to themselves renamed.
  TermId binding(std::uint32_t var, int side) { return apply(bank_.var(var), side); }

 private:
  struct Ref {
    TermId t = kNoTerm;
    int side = 0;
  };

  Ref deref(TermId t, int side) const;
  bool occurs(std::uint32_t v, int vside, TermId t, int side) const;
  void bind(std::uint32_t v, int side, TermId t, int tside);

  TermBank& bank_;
  std::vector<Ref> bind_[2];
  std::vector<std::pair<int, std::uint32_t>> trail_;
  std::vector<std::pair<std::uint64_t, TermId>> fresh_;
};

/// One-way matching: finds s with s(pattern) == subject.
class Matcher {
 public:
  explicit Matcher(TermBank& bank) : bank_(bank) {}

  void reset() {
    for (auto v : trail_) subst_[v] = kNoTerm;
    trail_.clear();
  }
  /// Extends the current substitution. On failure the substitution is
  /// left partially extended; call reset().
  bool match(TermId pattern, TermId subject);
  /// Instantiates; returns kNoTerm if a variable is unbound.
  TermId apply(TermId t);
  TermId value(std::uint32_t v) const { return v < subst_.size() ? subst_[v] : kNoTerm; }
  const std::vector<std::uint32_t>& bound() const { return trail_; }

 private:
  TermBank& bank_;
  std::vector<TermId> subst_;
  std::vector<std::uint32_t> trail_;
};

}  // namespace bm::prover
