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

#include "prover/bank.hpp"

#include <algorithm>

namespace bm::prover {

namespace {

inline std::uint64_t mix(Sym s, TermId l, TermId r) {
  std::uint64_t h = s * 0x9E3779B97F4A7C15ull;
  h ^= (static_cast<std::uint64_t>(l) + 0x632BE59BD9B4E019ull) * 0xC2B2AE3D27D4EB4Full;
  h = (h << 31) | (h >> 33);
  h ^= (static_cast<std::uint64_t>(r) + 0x85EBCA77C2B2AE63ull) * 0x165667B19E3779F9ull;
  h ^= h >> 29;
  return h;
}

}  // namespace

TermBank::TermBank(Weights w) : weights_(w) {
  table_.assign(1 << 16, kNoTerm);
  mask_ = table_.size() - 1;
  nodes_.reserve(1 << 15);
}

void TermBank::grow() {
  std::vector<TermId> bigger(table_.size() * 2, kNoTerm);
  const std::size_t mask = bigger.size() - 1;
  for (TermId id = 0; id < nodes_.size(); ++id) {
    const Node& n = nodes_[id];
    std::size_t h = mix(n.sym, n.left, n.right) & mask;
    while (bigger[h] != kNoTerm) h = (h + 1) & mask;
    bigger[h] = id;
  }
  table_.swap(bigger);
  mask_ = mask;
}

TermId TermBank::intern(Sym sym, TermId l, TermId r) {
  std::size_t h = mix(sym, l, r) & mask_;
  for (;;) {
    const TermId id = table_[h];
    if (id == kNoTerm) break;
    const Node& n = nodes_[id];
    if (n.sym == sym && n.left == l && n.right == r) return id;
    h = (h + 1) & mask_;
  }
  Node n{sym, l, r, 0, 1, 0};
  if (is_var_sym(sym)) {
    n.weight = weights_.variable;
    n.vars_end = static_cast<std::uint16_t>(sym - kVarBase + 1);
  } else if (is_const_sym(sym)) {
    n.weight = weights_.constant;
  } else {
    const Node& a = nodes_[l];
    const Node& b = nodes_[r];
    const std::uint32_t w = sym == kMul ? weights_.mul : sym == kLDiv ? weights_.ldiv : weights_.rdiv;
    n.weight = w + a.weight + b.weight;
    n.size = static_cast<std::uint16_t>(std::min<std::uint32_t>(0xffff, 1u + a.size + b.size));
    n.vars_end = std::max(a.vars_end, b.vars_end);
  }
  const TermId id = static_cast<TermId>(nodes_.size());
  nodes_.push_back(n);
  table_[h] = id;
  if (nodes_.size() * 2 > table_.size()) grow();
  return id;
}

TermId TermBank::var(std::uint32_t v) { return intern(kVarBase + v, kNoTerm, kNoTerm); }
TermId TermBank::constant(std::uint32_t c) { return intern(kConstBase + c, kNoTerm, kNoTerm); }
TermId TermBank::app(Sym op, TermId l, TermId r) { return intern(op, l, r); }

bool TermBank::occurs(TermId v, TermId in) const {
  if (v == in) return true;
  const Node& n = nodes_[in];
  if (!is_op_sym(n.sym)) return false;
  if (n.vars_end == 0 || var_index(v) >= n.vars_end) return false;
  return occurs(v, n.left) || occurs(v, n.right);
}

void TermBank::count_vars(TermId t, std::vector<int>& counts, int delta) const {
  const Node& n = nodes_[t];
  if (n.vars_end == 0) return;
  if (is_var_sym(n.sym)) {
    const auto v = n.sym - kVarBase;
    if (counts.size() <= v) counts.resize(v + 1, 0);
    counts[v] += delta;
    return;
  }
  count_vars(n.left, counts, delta);
  count_vars(n.right, counts, delta);
}

TermId TermBank::from_term(const Term& t) {
  switch (t.kind()) {
    case Term::Kind::Var: return var(t.id());
    case Term::Kind::Const: return constant(t.id());
    case Term::Kind::App: {
      const TermId l = from_term(t.left());
      const TermId r = from_term(t.right());
      const Sym op = t.op() == Op::Mul ? kMul : t.op() == Op::LDiv ? kLDiv : kRDiv;
      return app(op, l, r);
    }
  }
  return kNoTerm;
}

Term TermBank::to_term(TermId t) const {
  const Node& n = nodes_[t];
  if (is_var_sym(n.sym)) return Term::var(n.sym - kVarBase);
  if (is_const_sym(n.sym)) return Term::constant(n.sym - kConstBase);
  const Op op = n.sym == kMul ? Op::Mul : n.sym == kLDiv ? Op::LDiv : Op::RDiv;
  return Term::app(op, to_term(n.left), to_term(n.right));
}

TermId TermBank::import(const TermBank& from, TermId t, std::vector<TermId>& memo) {
  if (memo.size() < from.count()) memo.resize(from.count(), kNoTerm);
  if (memo[t] != kNoTerm) return memo[t];
  const Node& n = from.nodes_[t];
  TermId out;
  if (is_op_sym(n.sym)) {
    const TermId l = import(from, n.left, memo);
    const TermId r = import(from, n.right, memo);
    out = app(n.sym, l, r);
  } else {
    out = intern(n.sym, kNoTerm, kNoTerm);
  }
  memo[t] = out;
  return out;
}

}  // namespace bm::prover
