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

#include <chrono>
#include <cstdint>
#include <optional>
#include <vector>

#include "bm/prover.hpp"
#include "prover/bank.hpp"
#include "prover/index.hpp"
#include "prover/ordering.hpp"
#include "prover/unify.hpp"

namespace bm::prover {

/// Position below a side: bit i is the child taken at depth i.
struct Path {
  std::uint64_t bits = 0;
  std::uint8_t depth = 0;

  Path child(int i) const;
  int at(int i) const { return static_cast<int>((bits >> i) & 1u); }
};

struct RewriteRec {
  std::uint32_t rule;  // derivation node whose conclusion is the rule
  std::uint8_t dir;    // 0: lhs -> rhs, 1: rhs -> lhs
  std::uint8_t side;
  Path path;
  TermId result;  // replacement term when the rule has variables missing from its left side
};

/// How an equation came to be. Conclusions are stored exactly as derived:
/// the engine never renames variables or swaps sides.
struct DerivNode {
  enum Kind : std::uint8_t { Axiom, Hypothesis, Goal, Para, Simplify };
  Kind kind = Axiom;
  std::uint8_t from_dir = 0, into_side = 0;
  std::uint32_t index = 0;
  std::uint32_t p0 = 0, p1 = 0;  // Para: from, into. Simplify: target.
  Path path;
  std::vector<RewriteRec> rewrites;
  TermId lhs = kNoTerm, rhs = kNoTerm;
};

class Completion {
 public:
  Completion(const ProverConfig& cfg);

  /// Runs to a proof or a resource limit.
  ProveResult run(const std::vector<Identity>& hypotheses, const Identity& goal);

  /// Adds fixed rules (oriented as given) and normalizes; for normal_form().
  Term normalize_with(const std::vector<Identity>& rules, const Term& t);

 private:
  struct Eq {
    TermId lhs, rhs;
    std::uint32_t node;
    Cmp cmp;
    bool alive;
    std::uint8_t usable;  // bit d: from side d; bit 2+d: rewrite with side d
  };
  struct Passive {
    std::uint32_t from, into;
    std::uint8_t from_dir, into_side;
    Path path;
    std::uint32_t weight;
    std::uint32_t age;
  };
  struct IntoRec {
    std::uint32_t eq;
    std::uint8_t side;
    Path path;
  };

  TermId side_of(const Eq& e, int s) const { return s == 0 ? e.lhs : e.rhs; }
  static bool from_usable(const Eq& e, int dir) { return (e.usable >> dir) & 1u; }
  static bool into_usable(const Eq& e, int side) { return from_usable(e, side); }
  static bool rewrite_usable(const Eq& e, int dir) { return (e.usable >> (2 + dir)) & 1u; }
  std::uint8_t usability(TermId l, TermId r, Cmp c) const;
  void vars_of(TermId t, std::vector<std::uint32_t>& out) const;

  TermId subterm(TermId t, Path p) const;
  TermId replace(TermId t, Path p, TermId with, int i = 0);
  TermId build(TermId t, Path p, int i, TermId repl);

  // Normalization.
  bool try_rule(TermId t, std::uint32_t eq, std::uint8_t dir, TermId& out);
  /// Only equations with index >= first are tried.
  bool rewrite_root(TermId t, TermId& out, std::uint32_t& eq, std::uint8_t& dir, std::uint32_t first = 0);
  TermId nf(TermId t);
  TermId remember(TermId t, TermId nf);
  TermId nf_rec(TermId t, std::uint8_t side, Path path, std::vector<RewriteRec>& out);

  // Critical pairs.
  bool make_cp(std::uint32_t from, int dir, std::uint32_t into, int side, Path path, TermId& l, TermId& r);
  void generate(std::uint32_t given);
  void add_passive(std::uint32_t from, int dir, std::uint32_t into, int side, Path path);
  std::optional<std::uint32_t> pick();
  void evict();

  // Equation bookkeeping.
  std::uint32_t add_node(DerivNode n);
  void process(std::uint32_t node);
  bool subsumed(TermId s, TermId t);
  bool instance_of_active(TermId s, TermId t, std::uint32_t& eq, std::uint8_t& dir);
  bool reducible_by(TermId t, const Eq& rule);
  void rebuild_indexes();
  void activate(std::uint32_t node, TermId l, TermId r);
  void interreduce(std::uint32_t given);
  void index_into(std::uint32_t eq, int side, TermId t, Path p);
  bool goal_closed();
  ProofObject extract(std::uint32_t final_node);

  bool out_of_time() const;

  ProverConfig cfg_;
  TermBank bank_;
  TermOrdering ord_;
  Unifier unifier_;
  Matcher matcher_;

  std::vector<DerivNode> nodes_;
  std::vector<Eq> eqs_;
  std::size_t alive_ = 0;
  DiscTree from_index_;  // value = eq * 2 + dir
  DiscTree into_index_;  // value = index into intos_
  std::vector<IntoRec> intos_;
  std::size_t dead_into_ = 0;

  std::vector<Passive> passive_;
  std::vector<std::uint32_t> weight_heap_;  // indices into passive_
  std::vector<std::uint32_t> age_queue_;
  std::size_t age_head_ = 0;
  std::vector<bool> passive_done_;
  std::size_t passive_live_ = 0;
  std::uint32_t age_counter_ = 0;
  std::uint32_t pick_counter_ = 0;

  std::vector<std::uint32_t> todo_;  // derivation nodes awaiting processing (FIFO)
  std::size_t todo_head_ = 0;

  std::vector<TermId> nf_cache_;
  std::vector<std::uint32_t> nf_stamp_;  // 1 + equation count when cached; 0 = never

  TermId goal_l_ = kNoTerm, goal_r_ = kNoTerm;
  std::uint32_t goal_node_ = 0;
  std::optional<std::uint32_t> conflict_node_;

  bool size_discarded_ = false;
  bool evicted_ = false;
  bool timed_out_ = false;
  ProverStats stats_;
  std::chrono::steady_clock::time_point start_;

  std::vector<Identity> hypotheses_;
  Identity goal_;
};

}  // namespace bm::prover
