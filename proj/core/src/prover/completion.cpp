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

#include "prover/completion.hpp"

#include <algorithm>

namespace bm::prover {

Path Path::child(int i) const {
  if (depth >= 63) throw Error("term too deep for the prover");
  return {bits | (static_cast<std::uint64_t>(i) << depth), static_cast<std::uint8_t>(depth + 1)};
}

namespace {

std::vector<int> op_ranks(const ProverConfig& cfg) {
  return {cfg.op_rank[0], cfg.op_rank[1], cfg.op_rank[2]};
}

Weights weights_of(const ProverConfig& cfg) {
  const auto& w = cfg.weights;
  return {w[0], w[1], w[2], w[3], w[4]};
}

TermOrdering::Kind ordering_of(const ProverConfig& cfg) {
  return cfg.ordering == TermOrderingKind::KBO ? TermOrdering::Kind::KBO : TermOrdering::Kind::LPO;
}

}  // namespace

Completion::Completion(const ProverConfig& cfg)
    : cfg_(cfg),
      bank_(weights_of(cfg)),
      ord_(bank_, ordering_of(cfg), op_ranks(cfg)),
      unifier_(bank_),
      matcher_(bank_) {}

bool Completion::out_of_time() const {
  if (cfg_.time_limit <= 0) return false;
  const std::chrono::duration<double> d = std::chrono::steady_clock::now() - start_;
  return d.count() > cfg_.time_limit;
}

void Completion::vars_of(TermId t, std::vector<std::uint32_t>& out) const {
  if (bank_.ground(t)) return;
  if (bank_.is_var(t)) {
    const auto v = bank_.var_index(t);
    if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
    return;
  }
  vars_of(bank_.left(t), out);
  vars_of(bank_.right(t), out);
}

std::uint8_t Completion::usability(TermId l, TermId r, Cmp c) const {
  std::uint8_t u = 0;
  auto subset = [&](TermId a, TermId b) {  // vars(b) within vars(a)
    std::vector<std::uint32_t> va, vb;
    vars_of(a, va);
    vars_of(b, vb);
    return std::all_of(vb.begin(), vb.end(),
                       [&](std::uint32_t v) { return std::find(va.begin(), va.end(), v) != va.end(); });
  };
  if (!bank_.is_var(l) && (c == Cmp::Greater || c == Cmp::Incomparable)) {
    u |= 1;
    if (subset(l, r)) u |= 4;
  }
  if (!bank_.is_var(r) && (c == Cmp::Less || c == Cmp::Incomparable)) {
    u |= 2;
    if (subset(r, l)) u |= 8;
  }
  return u;
}

TermId Completion::subterm(TermId t, Path p) const {
  for (int i = 0; i < p.depth; ++i) t = p.at(i) == 0 ? bank_.left(t) : bank_.right(t);
  return t;
}

TermId Completion::replace(TermId t, Path p, TermId with, int i) {
  if (i == p.depth) return with;
  if (p.at(i) == 0) return bank_.app(bank_.sym(t), replace(bank_.left(t), p, with, i + 1), bank_.right(t));
  return bank_.app(bank_.sym(t), bank_.left(t), replace(bank_.right(t), p, with, i + 1));
}

// ---------------------------------------------------------------------------
// Normalization

bool Completion::try_rule(TermId t, std::uint32_t e, std::uint8_t d, TermId& out) {
  const Eq& E = eqs_[e];
  if (!E.alive || !rewrite_usable(E, d)) return false;
  matcher_.reset();
  if (!matcher_.match(side_of(E, d), t)) return false;
  const TermId r = matcher_.apply(side_of(E, 1 - d));
  if (E.cmp == Cmp::Incomparable && !ord_.greater(t, r)) return false;
  out = r;
  return true;
}

bool Completion::rewrite_root(TermId t, TermId& out, std::uint32_t& eq, std::uint8_t& dir, std::uint32_t first) {
  if (first > 0 && eqs_.size() - first <= 16) {
    for (std::uint32_t e = first; e < eqs_.size(); ++e)
      for (std::uint8_t d = 0; d < 2; ++d)
        if (try_rule(t, e, d, out)) {
          eq = e;
          dir = d;
          return true;
        }
    return false;
  }
  return from_index_.generalizations(bank_, t, [&](std::uint32_t v) {
    const std::uint32_t e = v >> 1;
    const auto d = static_cast<std::uint8_t>(v & 1);
    if (e < first || !try_rule(t, e, d, out)) return false;
    eq = e;
    dir = d;
    return true;
  });
}

// Cached normalization. A cache entry records the number of equations that
// existed when it was computed; a term that was irreducible then only needs
// checking against equations activated since.
TermId Completion::nf(TermId t) {
  if (bank_.is_var(t)) return t;
  const auto now = static_cast<std::uint32_t>(eqs_.size() + 1);
  std::uint32_t stamp = 0;
  if (t < nf_stamp_.size()) {
    stamp = nf_stamp_[t];
    if (stamp == now) return nf_cache_[t];
    if (stamp != 0 && nf_cache_[t] != t) return remember(t, nf(nf_cache_[t]));
  }
  TermId u = t;
  if (bank_.is_app(t)) {
    const TermId l = nf(bank_.left(t));
    const TermId r = nf(bank_.right(t));
    if (l != bank_.left(t) || r != bank_.right(t)) u = bank_.app(bank_.sym(t), l, r);
  }
  if (u != t) return remember(t, nf(u));
  TermId v;
  std::uint32_t e;
  std::uint8_t d;
  if (rewrite_root(t, v, e, d, stamp == 0 ? 0 : stamp - 1)) return remember(t, nf(v));
  return remember(t, t);
}

TermId Completion::remember(TermId t, TermId nf) {
  if (nf_stamp_.size() < bank_.count()) {
    nf_stamp_.resize(bank_.count() + bank_.count() / 2, 0);
    nf_cache_.resize(nf_stamp_.size(), kNoTerm);
  }
  nf_stamp_[t] = static_cast<std::uint32_t>(eqs_.size() + 1);
  nf_cache_[t] = nf;
  return nf;
}

TermId Completion::nf_rec(TermId t, std::uint8_t side, Path path, std::vector<RewriteRec>& out) {
  if (bank_.is_var(t)) return t;
  TermId u = t;
  if (bank_.is_app(t)) {
    const TermId l = nf_rec(bank_.left(t), side, path.child(0), out);
    const TermId r = nf_rec(bank_.right(t), side, path.child(1), out);
    if (l != bank_.left(t) || r != bank_.right(t)) u = bank_.app(bank_.sym(t), l, r);
  }
  TermId v;
  std::uint32_t e;
  std::uint8_t d;
  if (!rewrite_root(u, v, e, d)) return u;
  out.push_back({eqs_[e].node, d, side, path, v});
  return nf_rec(v, side, path, out);
}

// ---------------------------------------------------------------------------
// Critical pairs

TermId Completion::build(TermId t, Path p, int i, TermId repl) {
  if (i == p.depth) return unifier_.apply(repl, 0);
  TermId l, r;
  if (p.at(i) == 0) {
    l = build(bank_.left(t), p, i + 1, repl);
    r = unifier_.apply(bank_.right(t), 1);
  } else {
    l = unifier_.apply(bank_.left(t), 1);
    r = build(bank_.right(t), p, i + 1, repl);
  }
  return bank_.app(bank_.sym(t), l, r);
}

bool Completion::make_cp(std::uint32_t from, int dir, std::uint32_t into, int side, Path path, TermId& l,
                         TermId& r) {
  const Eq& F = eqs_[from];
  const Eq& I = eqs_[into];
  const TermId fl = side_of(F, dir), fr = side_of(F, 1 - dir);
  const TermId is = side_of(I, side), io = side_of(I, 1 - side);
  unifier_.reset();
  if (!unifier_.unify(fl, 0, subterm(is, path), 1)) return false;
  if (side == 0) {
    l = build(is, path, 0, fr);
    r = unifier_.apply(io, 1);
  } else {
    l = unifier_.apply(io, 1);
    r = build(is, path, 0, fr);
  }
  if (F.cmp == Cmp::Incomparable) {
    const Cmp c = ord_.compare(unifier_.apply(fl, 0), unifier_.apply(fr, 0));
    if (c == Cmp::Less || c == Cmp::Equal) return false;
  }
  if (I.cmp == Cmp::Incomparable) {
    const Cmp c = ord_.compare(unifier_.apply(is, 1), unifier_.apply(io, 1));
    if (c == Cmp::Less || c == Cmp::Equal) return false;
  }
  return true;
}

void Completion::add_passive(std::uint32_t from, int dir, std::uint32_t into, int side, Path path) {
  if (timed_out_) return;
  if ((++stats_.generated & 0xfff) == 0 && out_of_time()) {
    timed_out_ = true;
    return;
  }
  TermId l, r;
  if (!make_cp(from, dir, into, side, path, l, r)) return;
  if (l == r) return;
  if (bank_.size(l) > cfg_.max_term_size || bank_.size(r) > cfg_.max_term_size) {
    size_discarded_ = true;
    return;
  }
  const TermId nl = nf(l), nr = nf(r);
  if (nl == nr) return;
  const auto idx = static_cast<std::uint32_t>(passive_.size());
  passive_.push_back({from, into, static_cast<std::uint8_t>(dir), static_cast<std::uint8_t>(side), path,
                      bank_.weight(nl) + bank_.weight(nr), age_counter_++});
  passive_done_.push_back(false);
  ++passive_live_;
  auto heavier = [this](std::uint32_t a, std::uint32_t b) {
    const Passive& x = passive_[a];
    const Passive& y = passive_[b];
    return x.weight != y.weight ? x.weight > y.weight : x.age > y.age;
  };
  weight_heap_.push_back(idx);
  std::push_heap(weight_heap_.begin(), weight_heap_.end(), heavier);
  age_queue_.push_back(idx);
  if (cfg_.max_equations > 0 && passive_live_ + alive_ > cfg_.max_equations) evict();
}

void Completion::evict() {
  std::vector<std::uint32_t> live;
  live.reserve(passive_live_);
  for (std::uint32_t i = 0; i < passive_.size(); ++i)
    if (!passive_done_[i]) live.push_back(i);
  std::sort(live.begin(), live.end(), [this](std::uint32_t a, std::uint32_t b) {
    const Passive& x = passive_[a];
    const Passive& y = passive_[b];
    return x.weight != y.weight ? x.weight < y.weight : x.age < y.age;
  });
  const std::size_t budget = cfg_.max_equations - std::min(cfg_.max_equations, alive_);
  const std::size_t keep = std::min(live.size(), budget * 9 / 10);
  if (keep < live.size()) evicted_ = true;
  live.resize(keep);
  std::sort(live.begin(), live.end(), [this](std::uint32_t a, std::uint32_t b) {
    return passive_[a].age < passive_[b].age;
  });
  std::vector<Passive> kept;
  kept.reserve(live.size());
  for (auto i : live) kept.push_back(passive_[i]);
  passive_.swap(kept);
  passive_done_.assign(passive_.size(), false);
  passive_live_ = passive_.size();
  age_queue_.resize(passive_.size());
  for (std::uint32_t i = 0; i < passive_.size(); ++i) age_queue_[i] = i;
  age_head_ = 0;
  weight_heap_ = age_queue_;
  std::make_heap(weight_heap_.begin(), weight_heap_.end(), [this](std::uint32_t a, std::uint32_t b) {
    const Passive& x = passive_[a];
    const Passive& y = passive_[b];
    return x.weight != y.weight ? x.weight > y.weight : x.age > y.age;
  });
}

std::optional<std::uint32_t> Completion::pick() {
  if (passive_live_ == 0) return std::nullopt;
  const unsigned cycle = std::max(1u, cfg_.age_picks + cfg_.weight_picks);
  const bool by_age = (pick_counter_++ % cycle) < cfg_.age_picks;
  std::uint32_t idx;
  if (by_age) {
    while (passive_done_[age_queue_[age_head_]]) ++age_head_;
    idx = age_queue_[age_head_++];
  } else {
    auto heavier = [this](std::uint32_t a, std::uint32_t b) {
      const Passive& x = passive_[a];
      const Passive& y = passive_[b];
      return x.weight != y.weight ? x.weight > y.weight : x.age > y.age;
    };
    for (;;) {
      std::pop_heap(weight_heap_.begin(), weight_heap_.end(), heavier);
      idx = weight_heap_.back();
      weight_heap_.pop_back();
      if (!passive_done_[idx]) break;
    }
  }
  passive_done_[idx] = true;
  --passive_live_;
  return idx;
}

void Completion::generate(std::uint32_t g) {
  struct Cand {
    std::uint32_t from;
    int dir;
    std::uint32_t into;
    int side;
    Path path;
  };
  std::vector<Cand> cands;
  const Eq G = eqs_[g];
  for (int dir = 0; dir < 2; ++dir) {
    if (!from_usable(G, dir)) continue;
    into_index_.unifiable(bank_, side_of(G, dir), [&](std::uint32_t v) {
      const IntoRec& rec = intos_[v];
      if (!eqs_[rec.eq].alive) return;
      if (rec.eq == g && rec.side == dir && rec.path.depth == 0) return;
      cands.push_back({g, dir, rec.eq, rec.side, rec.path});
    });
  }
  for (int side = 0; side < 2; ++side) {
    if (!into_usable(G, side)) continue;
    std::vector<std::pair<TermId, Path>> subs{{side_of(G, side), Path{}}};
    for (std::size_t k = 0; k < subs.size(); ++k) {
      const auto [t, p] = subs[k];
      if (bank_.is_app(t)) {
        subs.push_back({bank_.left(t), p.child(0)});
        subs.push_back({bank_.right(t), p.child(1)});
      }
      if (bank_.is_var(t)) continue;
      from_index_.unifiable(bank_, t, [&](std::uint32_t v) {
        const std::uint32_t e = v >> 1;
        const int d = static_cast<int>(v & 1);
        if (e == g || !eqs_[e].alive) return;
        cands.push_back({e, d, g, side, p});
      });
    }
  }
  for (const auto& c : cands) add_passive(c.from, c.dir, c.into, c.side, c.path);
}

// ---------------------------------------------------------------------------
// Active set

std::uint32_t Completion::add_node(DerivNode n) {
  nodes_.push_back(std::move(n));
  return static_cast<std::uint32_t>(nodes_.size() - 1);
}

bool Completion::instance_of_active(TermId s, TermId t, std::uint32_t& eq, std::uint8_t& dir) {
  return from_index_.generalizations(bank_, s, [&](std::uint32_t v) {
    const std::uint32_t e = v >> 1;
    const auto d = static_cast<std::uint8_t>(v & 1);
    const Eq& E = eqs_[e];
    if (!E.alive) return false;
    matcher_.reset();
    if (!matcher_.match(side_of(E, d), s) || !matcher_.match(side_of(E, 1 - d), t)) return false;
    eq = e;
    dir = d;
    return true;
  });
}

bool Completion::subsumed(TermId s, TermId t) {
  for (;;) {
    if (s == t) return true;
    std::uint32_t e;
    std::uint8_t d;
    if (instance_of_active(s, t, e, d)) return true;
    if (!bank_.is_app(s) || bank_.sym(s) != bank_.sym(t)) return false;
    if (bank_.left(s) == bank_.left(t)) {
      s = bank_.right(s);
      t = bank_.right(t);
    } else if (bank_.right(s) == bank_.right(t)) {
      s = bank_.left(s);
      t = bank_.left(t);
    } else {
      return false;
    }
  }
}

void Completion::index_into(std::uint32_t eq, int side, TermId t, Path p) {
  if (bank_.is_var(t)) return;
  into_index_.insert(bank_, t, static_cast<std::uint32_t>(intos_.size()));
  intos_.push_back({eq, static_cast<std::uint8_t>(side), p});
  if (bank_.is_app(t)) {
    index_into(eq, side, bank_.left(t), p.child(0));
    index_into(eq, side, bank_.right(t), p.child(1));
  }
}

void Completion::rebuild_indexes() {
  from_index_.clear();
  into_index_.clear();
  intos_.clear();
  dead_into_ = 0;
  for (std::uint32_t e = 0; e < eqs_.size(); ++e) {
    const Eq& E = eqs_[e];
    if (!E.alive) continue;
    for (int d = 0; d < 2; ++d)
      if (from_usable(E, d)) from_index_.insert(bank_, side_of(E, d), e * 2 + d);
    for (int s = 0; s < 2; ++s)
      if (into_usable(E, s)) index_into(e, s, side_of(E, s), Path{});
  }
}

bool Completion::reducible_by(TermId t, const Eq& rule) {
  if (bank_.is_var(t)) return false;
  for (int d = 0; d < 2; ++d) {
    if (!rewrite_usable(rule, d)) continue;
    const TermId l = side_of(rule, d);
    if (bank_.size(l) > bank_.size(t)) continue;
    matcher_.reset();
    if (!matcher_.match(l, t)) continue;
    if (rule.cmp != Cmp::Incomparable) return true;
    if (ord_.greater(t, matcher_.apply(side_of(rule, 1 - d)))) return true;
  }
  return bank_.is_app(t) && (reducible_by(bank_.left(t), rule) || reducible_by(bank_.right(t), rule));
}

void Completion::interreduce(std::uint32_t g) {
  const Eq rule = eqs_[g];
  bool removed = false;
  for (std::uint32_t e = 0; e < g; ++e) {
    Eq& E = eqs_[e];
    if (!E.alive) continue;
    if (!reducible_by(E.lhs, rule) && !reducible_by(E.rhs, rule)) continue;
    E.alive = false;
    --alive_;
    removed = true;
    todo_.push_back(E.node);
  }
  if (removed) {
    std::size_t live_into = 0;
    for (const auto& rec : intos_) live_into += eqs_[rec.eq].alive ? 1 : 0;
    if (intos_.size() > 1024 && live_into * 2 < intos_.size()) rebuild_indexes();
  }
}

void Completion::activate(std::uint32_t node, TermId l, TermId r) {
  const Cmp c = ord_.compare(l, r);
  const auto g = static_cast<std::uint32_t>(eqs_.size());
  eqs_.push_back({l, r, node, c, true, usability(l, r, c)});
  ++alive_;
  ++stats_.given;
  const Eq& E = eqs_.back();
  for (int d = 0; d < 2; ++d)
    if (from_usable(E, d)) from_index_.insert(bank_, side_of(E, d), g * 2 + d);
  for (int s = 0; s < 2; ++s)
    if (into_usable(E, s)) index_into(g, s, side_of(E, s), Path{});
  interreduce(g);
  generate(g);
}

void Completion::process(std::uint32_t node) {
  std::vector<RewriteRec> recs;
  const TermId nl = nf_rec(nodes_[node].lhs, 0, Path{}, recs);
  const TermId nr = nf_rec(nodes_[node].rhs, 1, Path{}, recs);
  std::uint32_t cur = node;
  if (!recs.empty()) {
    DerivNode s;
    s.kind = DerivNode::Simplify;
    s.p0 = node;
    s.rewrites = std::move(recs);
    s.lhs = nl;
    s.rhs = nr;
    cur = add_node(std::move(s));
  }
  if (nl == nr || subsumed(nl, nr)) return;
  activate(cur, nl, nr);
  if (goal_closed()) return;
}

bool Completion::goal_closed() {
  if (conflict_node_) return true;
  const TermId nl = nf(goal_l_), nr = nf(goal_r_);
  std::uint32_t e;
  std::uint8_t d;
  if (nl != nr && !instance_of_active(nl, nr, e, d)) return false;

  std::vector<RewriteRec> recs;
  const TermId gl = nf_rec(goal_l_, 0, Path{}, recs);
  const TermId gr = nf_rec(goal_r_, 1, Path{}, recs);
  if (gl != gr) {
    if (!instance_of_active(gl, gr, e, d)) return false;
    recs.push_back({eqs_[e].node, d, 0, Path{}, gr});
  }
  std::uint32_t cur = goal_node_;
  if (!recs.empty()) {
    DerivNode s;
    s.kind = DerivNode::Simplify;
    s.p0 = goal_node_;
    s.rewrites = std::move(recs);
    s.lhs = gr;
    s.rhs = gr;
    cur = add_node(std::move(s));
  }
  conflict_node_ = cur;
  return true;
}

// ---------------------------------------------------------------------------

ProveResult Completion::run(const std::vector<Identity>& hypotheses, const Identity& goal) {
  start_ = std::chrono::steady_clock::now();
  hypotheses_ = hypotheses;
  goal_ = goal;
  ProveResult result;

  const auto& axioms = quasigroup_axioms();
  for (std::uint32_t k = 0; k < axioms.size(); ++k) {
    DerivNode n;
    n.kind = DerivNode::Axiom;
    n.index = k;
    n.lhs = bank_.from_term(axioms[k].lhs);
    n.rhs = bank_.from_term(axioms[k].rhs);
    todo_.push_back(add_node(std::move(n)));
  }
  for (std::uint32_t k = 0; k < hypotheses.size(); ++k) {
    DerivNode n;
    n.kind = DerivNode::Hypothesis;
    n.index = k;
    n.lhs = bank_.from_term(hypotheses[k].lhs);
    n.rhs = bank_.from_term(hypotheses[k].rhs);
    todo_.push_back(add_node(std::move(n)));
  }
  {
    const Identity g = skolemize(goal);
    DerivNode n;
    n.kind = DerivNode::Goal;
    n.lhs = goal_l_ = bank_.from_term(g.lhs);
    n.rhs = goal_r_ = bank_.from_term(g.rhs);
    goal_node_ = add_node(std::move(n));
  }

  auto finish = [&]() {
    const std::chrono::duration<double> d = std::chrono::steady_clock::now() - start_;
    stats_.seconds = d.count();
    stats_.active = alive_;
    stats_.passive = passive_live_;
    result.stats = stats_;
    return result;
  };

  goal_closed();
  while (!conflict_node_) {
    if (timed_out_ || out_of_time()) {
      result.reason = GaveUpReason::Timeout;
      return finish();
    }
    if (todo_head_ < todo_.size()) {
      process(todo_[todo_head_++]);
      continue;
    }
    const auto idx = pick();
    if (!idx) {
      result.reason = size_discarded_ ? GaveUpReason::SizeLimit
                      : evicted_      ? GaveUpReason::EquationLimit
                                      : GaveUpReason::Saturated;
      return finish();
    }
    const Passive p = passive_[*idx];
    if (!eqs_[p.from].alive || !eqs_[p.into].alive) continue;
    TermId l, r;
    if (!make_cp(p.from, p.from_dir, p.into, p.into_side, p.path, l, r)) continue;
    DerivNode n;
    n.kind = DerivNode::Para;
    n.p0 = p.from;
    n.p1 = p.into;
    n.from_dir = p.from_dir;
    n.into_side = p.into_side;
    n.path = p.path;
    n.lhs = l;
    n.rhs = r;
    process(add_node(std::move(n)));
  }
  result.proved = true;
  result.proof = extract(*conflict_node_);
  return finish();
}

Term Completion::normalize_with(const std::vector<Identity>& rules, const Term& t) {
  for (const auto& rule : rules) {
    const TermId l = bank_.from_term(rule.lhs), r = bank_.from_term(rule.rhs);
    if (!ord_.greater(l, r)) throw Error("rule is not orientable left to right: " + rule.str());
    DerivNode n;
    n.lhs = l;
    n.rhs = r;
    const std::uint32_t node = add_node(std::move(n));
    const auto e = static_cast<std::uint32_t>(eqs_.size());
    eqs_.push_back({l, r, node, Cmp::Greater, true, usability(l, r, Cmp::Greater)});
    ++alive_;
    if (from_usable(eqs_.back(), 0)) from_index_.insert(bank_, l, e * 2);
  }
  return bank_.to_term(nf(bank_.from_term(t)));
}

// ---------------------------------------------------------------------------
// Proof extraction

namespace {

std::vector<int> position_of(std::uint8_t side, Path p) {
  std::vector<int> out{side};
  for (int i = 0; i < p.depth; ++i) out.push_back(p.at(i));
  return out;
}

}  // namespace

ProofObject Completion::extract(std::uint32_t final_node) {
  std::vector<bool> needed(nodes_.size(), false);
  std::vector<std::uint32_t> stack{final_node};
  while (!stack.empty()) {
    const auto n = stack.back();
    stack.pop_back();
    if (needed[n]) continue;
    needed[n] = true;
    const DerivNode& d = nodes_[n];
    if (d.kind == DerivNode::Para) {
      stack.push_back(eqs_[d.p0].node);
      stack.push_back(eqs_[d.p1].node);
    } else if (d.kind == DerivNode::Simplify) {
      stack.push_back(d.p0);
      for (const auto& r : d.rewrites) stack.push_back(r.rule);
    }
  }

  ProofObject proof;
  proof.hypotheses = hypotheses_;
  proof.goal = goal_;
  std::vector<std::uint32_t> step_of(nodes_.size(), 0);
  std::vector<bool> negative(nodes_.size(), false);

  auto subst_for = [&](TermId l, TermId r, auto&& value) {
    std::vector<std::uint32_t> vars;
    vars_of(l, vars);
    vars_of(r, vars);
    std::sort(vars.begin(), vars.end());
    Substitution s;
    for (auto v : vars) {
      const TermId t = value(v);
      if (t == kNoTerm) throw Error("internal: unbound variable during proof extraction");
      s.emplace_back(v, bank_.to_term(t));
    }
    return s;
  };
  auto push = [&](ProofStep s) {
    proof.steps.push_back(std::move(s));
    return static_cast<std::uint32_t>(proof.steps.size());
  };

  for (std::uint32_t n = 0; n < nodes_.size(); ++n) {
    if (!needed[n]) continue;
    const DerivNode& d = nodes_[n];
    ProofStep s;
    switch (d.kind) {
      case DerivNode::Axiom:
      case DerivNode::Hypothesis:
      case DerivNode::Goal:
        s.kind = d.kind == DerivNode::Axiom        ? StepKind::Axiom
                 : d.kind == DerivNode::Hypothesis ? StepKind::Hypothesis
                                                   : StepKind::Goal;
        s.index = d.index;
        s.negative = negative[n] = d.kind == DerivNode::Goal;
        s.conclusion = {bank_.to_term(d.lhs), bank_.to_term(d.rhs)};
        step_of[n] = push(std::move(s));
        break;
      case DerivNode::Para: {
        TermId l, r;
        if (!make_cp(d.p0, d.from_dir, d.p1, d.into_side, d.path, l, r) || l != d.lhs || r != d.rhs)
          throw Error("internal: paramodulation does not replay");
        const Eq& F = eqs_[d.p0];
        const Eq& I = eqs_[d.p1];
        s.kind = StepKind::Paramodulation;
        s.parents = {step_of[F.node], step_of[I.node]};
        s.reversed = d.from_dir == 1;
        s.position = position_of(d.into_side, d.path);
        s.subst = subst_for(F.lhs, F.rhs, [&](std::uint32_t v) { return unifier_.binding(v, 0); });
        s.subst_into = subst_for(I.lhs, I.rhs, [&](std::uint32_t v) { return unifier_.binding(v, 1); });
        s.conclusion = {bank_.to_term(l), bank_.to_term(r)};
        step_of[n] = push(std::move(s));
        break;
      }
      case DerivNode::Simplify: {
        TermId cur[2] = {nodes_[d.p0].lhs, nodes_[d.p0].rhs};
        std::uint32_t prev = step_of[d.p0];
        const bool neg = negative[n] = negative[d.p0];
        for (const auto& rec : d.rewrites) {
          const DerivNode& rule = nodes_[rec.rule];
          const TermId rl = rec.dir == 0 ? rule.lhs : rule.rhs;
          const TermId rr = rec.dir == 0 ? rule.rhs : rule.lhs;
          const TermId u = subterm(cur[rec.side], rec.path);
          matcher_.reset();
          if (!matcher_.match(rl, u) || !matcher_.match(rr, rec.result))
            throw Error("internal: rewrite does not replay");
          ProofStep rw;
          rw.kind = StepKind::Rewrite;
          rw.parents = {prev, step_of[rec.rule]};
          rw.reversed = rec.dir == 1;
          rw.position = position_of(rec.side, rec.path);
          rw.subst = subst_for(rule.lhs, rule.rhs, [&](std::uint32_t v) { return matcher_.value(v); });
          cur[rec.side] = replace(cur[rec.side], rec.path, rec.result);
          rw.conclusion = {bank_.to_term(cur[0]), bank_.to_term(cur[1])};
          rw.negative = neg;
          prev = push(std::move(rw));
        }
        if (cur[0] != d.lhs || cur[1] != d.rhs) throw Error("internal: rewrite chain does not replay");
        step_of[n] = prev;
        break;
      }
    }
  }
  ProofStep c;
  c.kind = StepKind::Conflict;
  c.parents = {step_of[final_node]};
  c.conclusion = proof.steps[step_of[final_node] - 1].conclusion;
  c.negative = true;
  push(std::move(c));
  return proof;
}

}  // namespace bm::prover
