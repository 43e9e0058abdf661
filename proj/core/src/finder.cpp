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

#include "bm/finder.hpp"

#include <atomic>
#include <bit>
#include <chrono>
#include <cstdio>
#include <mutex>
#include <set>
#include <thread>

namespace bm {

namespace {

using Clock = std::chrono::steady_clock;
constexpr int kMaxVars = 4;
constexpr int kMaxSearchOrder = 16;

struct Instr {
  Op op;
  std::int8_t a, b;  // >= 0 slot index, < 0 variable -(k+1)
};

struct Side {
  std::vector<Instr> code;
  int root = 0;  // slot of the result, or a variable operand
};

struct Program {
  Side lhs, rhs;
  int nvars = 0;
};

int emit(const Term& t, Side& s) {
  if (t.is_var()) {
    if (t.id() >= kMaxVars) throw Error("finder identities may use at most 4 variables");
    return -static_cast<int>(t.id()) - 1;
  }
  if (t.is_const()) throw Error("finder identities cannot contain constants");
  const int a = emit(t.left(), s);
  const int b = emit(t.right(), s);
  if (s.code.size() >= 100) throw Error("identity too large for the finder");
  s.code.push_back({t.op(), static_cast<std::int8_t>(a), static_cast<std::int8_t>(b)});
  return static_cast<int>(s.code.size()) - 1;
}

Program compile(const Identity& id) {
  Program p;
  p.lhs.root = emit(id.lhs, p.lhs);
  p.rhs.root = emit(id.rhs, p.rhs);
  p.nvars = has_vars(id) ? static_cast<int>(max_var_id(id)) + 1 : 0;
  return p;
}

struct Instance {
  std::uint16_t prog;
  std::uint8_t vals[kMaxVars];
};

/// Shared budget for one find_model / enumeration call.
struct Budget {
  std::uint64_t node_limit = 0;
  Clock::time_point deadline{};
  bool has_deadline = false;
  std::atomic<std::uint64_t> nodes{0};
  std::atomic<bool> exceeded{false};

  bool spend(std::uint64_t local_nodes) {
    const auto total = nodes.fetch_add(local_nodes) + local_nodes;
    if (node_limit && total > node_limit) exceeded = true;
    if (has_deadline && Clock::now() > deadline) exceeded = true;
    return !exceeded;
  }
};

/// Latin square search for one order.
class Engine {
 public:
  Engine(const std::vector<Program>& progs, const ConstraintSet& c, int n, Budget& budget)
      : progs_(progs), cons_(c), n_(n), n2_(n * n), full_((1u << n) - 1), budget_(budget) {
    cells_.assign(static_cast<std::size_t>(n2_), -1);
    rowmask_.assign(static_cast<std::size_t>(n), 0);
    colmask_.assign(static_cast<std::size_t>(n), 0);
    rowpos_.assign(static_cast<std::size_t>(n2_), -1);
    colpos_.assign(static_cast<std::size_t>(n2_), -1);
    watches_.resize(static_cast<std::size_t>(3 * n2_));
    for (const auto& id : c.violate) violate_.emplace_back(id);
    for (const auto& id : c.satisfy) satisfy_.emplace_back(id);
  }

  /// Root propagation. False when the order has no model at all.
  bool init() {
    for (std::size_t p = 0; p < progs_.size(); ++p) {
      const int k = progs_[p].nvars;
      int total = 1;
      for (int i = 0; i < k; ++i) total *= n_;
      for (int code = 0; code < total; ++code) {
        Instance inst{static_cast<std::uint16_t>(p), {0, 0, 0, 0}};
        int rest = code;
        for (int i = k - 1; i >= 0; --i) {
          inst.vals[i] = static_cast<std::uint8_t>(rest % n_);
          rest /= n_;
        }
        instances_.push_back(inst);
      }
    }
    for (std::uint32_t i = 0; i < instances_.size(); ++i)
      if (!process(i)) return false;
    return drain();
  }

  /// Depth-first search. `visit` returns false to stop. `branch_filter`
  /// restricts the top-level branches explored (for parallel workers).
  void run(const std::function<bool(const QuasigroupTable&)>& visit,
           const std::function<bool(int)>& branch_filter = {}) {
    visit_ = &visit;
    filter_ = branch_filter ? &branch_filter : nullptr;
    dfs(0);
    flush_nodes();
  }

  bool stopped() const { return stop_; }
  bool aborted() const { return aborted_; }
  /// Top-level branch (value ordinal) that produced the last visited model.
  int last_branch() const { return last_branch_; }
  void set_cancel(const std::atomic<int>* best_branch) { cancel_ = best_branch; }

 private:
  struct Eval {
    int value = -1;
    int key = -1;
    bool at_root = false;
    int p = 0, q = 0;
    Op op = Op::Mul;
  };

  int key_mul(int a, int b) const { return a * n_ + b; }
  int key_ldiv(int row, int v) const { return n2_ + row * n_ + v; }
  int key_rdiv(int col, int v) const { return 2 * n2_ + col * n_ + v; }

  Eval eval(const Side& s, const std::uint8_t* vals) const {
    int slots[100];
    Eval e;
    const int last = static_cast<int>(s.code.size()) - 1;
    for (int k = 0; k <= last; ++k) {
      const Instr& ins = s.code[static_cast<std::size_t>(k)];
      const int a = ins.a >= 0 ? slots[ins.a] : vals[-ins.a - 1];
      const int b = ins.b >= 0 ? slots[ins.b] : vals[-ins.b - 1];
      int v = -1;
      int key = -1;
      switch (ins.op) {
        case Op::Mul:
          v = cells_[static_cast<std::size_t>(a * n_ + b)];
          key = key_mul(a, b);
          break;
        case Op::LDiv:  // a\b: column of b in row a
          v = rowpos_[static_cast<std::size_t>(a * n_ + b)];
          key = key_ldiv(a, b);
          break;
        case Op::RDiv:  // a/b: row of a in column b
          v = colpos_[static_cast<std::size_t>(b * n_ + a)];
          key = key_rdiv(b, a);
          break;
      }
      if (v < 0) {
        e.key = key;
        e.at_root = k == last && s.root == last;
        e.p = a;
        e.q = b;
        e.op = ins.op;
        return e;
      }
      slots[k] = v;
    }
    e.value = s.root >= 0 ? slots[s.root] : vals[-s.root - 1];
    return e;
  }

  // Cell assignment forced by an instance whose other side is known.
  bool force(const Eval& blocked, int value) {
    switch (blocked.op) {
      case Op::Mul: queue_.push_back({blocked.p * n_ + blocked.q, value}); break;
      case Op::LDiv: queue_.push_back({blocked.p * n_ + value, blocked.q}); break;
      case Op::RDiv: queue_.push_back({value * n_ + blocked.q, blocked.p}); break;
    }
    return true;
  }

  bool process(std::uint32_t idx) {
    const Instance& inst = instances_[idx];
    const Program& prog = progs_[inst.prog];
    const Eval l = eval(prog.lhs, inst.vals);
    const Eval r = eval(prog.rhs, inst.vals);
    if (l.value >= 0 && r.value >= 0) return l.value == r.value;
    if (l.value >= 0 && r.at_root) force(r, l.value);
    if (r.value >= 0 && l.at_root) force(l, r.value);
    watch(l.value < 0 ? l.key : r.key, idx);
    return true;
  }

  void watch(int key, std::uint32_t idx) {
    watches_[static_cast<std::size_t>(key)].push_back(idx);
    watch_trail_.push_back(key);
  }

  bool trigger(int key) {
    auto& list = watches_[static_cast<std::size_t>(key)];
    for (std::size_t i = 0; i < list.size(); ++i)
      if (!process(list[i])) return false;
    return true;
  }

  bool line_is_identity_row(int r) const {
    for (int c = 0; c < n_; ++c)
      if (cells_[static_cast<std::size_t>(r * n_ + c)] != c) return false;
    return true;
  }
  bool line_is_identity_col(int c) const {
    for (int r = 0; r < n_; ++r)
      if (cells_[static_cast<std::size_t>(r * n_ + c)] != r) return false;
    return true;
  }

  bool assign_one(int cell, int v) {
    const int cur = cells_[static_cast<std::size_t>(cell)];
    if (cur == v) return true;
    if (cur >= 0) return false;
    const int r = cell / n_, c = cell % n_;
    const unsigned bit = 1u << v;
    if ((rowmask_[r] & bit) || (colmask_[c] & bit)) return false;
    cells_[static_cast<std::size_t>(cell)] = static_cast<std::int8_t>(v);
    rowmask_[r] |= bit;
    colmask_[c] |= bit;
    rowpos_[static_cast<std::size_t>(r * n_ + v)] = static_cast<std::int8_t>(c);
    colpos_[static_cast<std::size_t>(c * n_ + v)] = static_cast<std::int8_t>(r);
    cell_trail_.push_back(cell);
    if (cons_.commutative && r != c) queue_.push_back({c * n_ + r, v});
    if (cons_.not_left_loop && rowmask_[r] == full_ && line_is_identity_row(r)) return false;
    if (cons_.not_right_loop && colmask_[c] == full_ && line_is_identity_col(c)) return false;
    return trigger(key_mul(r, c)) && trigger(key_ldiv(r, v)) && trigger(key_rdiv(c, v));
  }

  bool drain() {
    while (!queue_.empty()) {
      const auto [cell, v] = queue_.back();
      queue_.pop_back();
      if (!assign_one(cell, v)) {
        queue_.clear();
        return false;
      }
    }
    return true;
  }

  void undo(std::size_t cell_mark, std::size_t watch_mark) {
    while (cell_trail_.size() > cell_mark) {
      const int cell = cell_trail_.back();
      cell_trail_.pop_back();
      const int r = cell / n_, c = cell % n_;
      const int v = cells_[static_cast<std::size_t>(cell)];
      cells_[static_cast<std::size_t>(cell)] = -1;
      rowmask_[r] &= ~(1u << v);
      colmask_[c] &= ~(1u << v);
      rowpos_[static_cast<std::size_t>(r * n_ + v)] = -1;
      colpos_[static_cast<std::size_t>(c * n_ + v)] = -1;
    }
    while (watch_trail_.size() > watch_mark) {
      watches_[static_cast<std::size_t>(watch_trail_.back())].pop_back();
      watch_trail_.pop_back();
    }
  }

  int pick_cell() const {
    int best = -1;
    int best_count = 99;
    for (int r = 0; r < n_; ++r) {
      for (int c = cons_.commutative ? r : 0; c < n_; ++c) {
        if (cells_[static_cast<std::size_t>(r * n_ + c)] >= 0) continue;
        const int cnt = std::popcount(full_ & ~rowmask_[r] & ~colmask_[c]);
        if (cnt < best_count) {
          best_count = cnt;
          best = r * n_ + c;
          if (cnt <= 1) return best;
        }
      }
    }
    return best;
  }

  void flush_nodes() {
    if (local_nodes_ == 0) return;
    if (!budget_.spend(local_nodes_)) aborted_ = true;
    local_nodes_ = 0;
  }

  void dfs(int depth) {
    if (stop_ || aborted_) return;
    if (cancel_ && cancel_->load() < branch_) {
      stop_ = true;
      return;
    }
    if (++local_nodes_ >= 1024) {
      flush_nodes();
      if (aborted_) return;
    }
    const int cell = pick_cell();
    if (cell < 0) {
      complete();
      return;
    }
    const int r = cell / n_, c = cell % n_;
    unsigned cands = full_ & ~rowmask_[r] & ~colmask_[c];
    int ordinal = 0;
    while (cands) {
      const int v = std::countr_zero(cands);
      cands &= cands - 1;
      const int this_ordinal = ordinal++;
      if (depth == 0) {
        if (filter_ && !(*filter_)(this_ordinal)) continue;
        branch_ = this_ordinal;
      }
      const std::size_t cm = cell_trail_.size(), wm = watch_trail_.size();
      queue_.push_back({cell, v});
      if (drain()) dfs(depth + 1);
      undo(cm, wm);
      if (stop_ || aborted_) return;
    }
  }

  void complete() {
    std::vector<Element> flat(static_cast<std::size_t>(n2_));
    for (int i = 0; i < n2_; ++i) flat[static_cast<std::size_t>(i)] = static_cast<Element>(cells_[static_cast<std::size_t>(i)]);
    const QuasigroupTable t = QuasigroupTable::from_flat(n_, flat);
    for (const auto& s : satisfy_)
      if (!s.holds(t)) throw Error("internal finder error: witness violates a required identity");
    for (const auto& v : violate_)
      if (v.holds(t)) return;
    if (cons_.not_commutative && is_commutative(t)) return;
    if (cons_.not_left_loop || cons_.not_right_loop) {
      const auto ns = neutral_status(t);
      if (cons_.not_left_loop && ns.left) return;
      if (cons_.not_right_loop && ns.right) return;
    }
    last_branch_ = branch_;
    if (!(*visit_)(t)) stop_ = true;
  }

  const std::vector<Program>& progs_;
  const ConstraintSet& cons_;
  const int n_, n2_;
  const unsigned full_;
  Budget& budget_;

  std::vector<std::int8_t> cells_;
  std::vector<unsigned> rowmask_, colmask_;
  std::vector<std::int8_t> rowpos_, colpos_;
  std::vector<Instance> instances_;
  std::vector<std::vector<std::uint32_t>> watches_;
  std::vector<int> cell_trail_;
  std::vector<int> watch_trail_;
  std::vector<std::pair<int, int>> queue_;
  std::vector<CompiledIdentity> violate_, satisfy_;

  const std::function<bool(const QuasigroupTable&)>* visit_ = nullptr;
  const std::function<bool(int)>* filter_ = nullptr;
  const std::atomic<int>* cancel_ = nullptr;
  std::uint64_t local_nodes_ = 0;
  bool stop_ = false;
  bool aborted_ = false;
  int branch_ = 0;
  int last_branch_ = -1;
};

bool trivially_unsatisfiable(const ConstraintSet& c) {
  for (const auto& v : c.violate)
    if (v.lhs == v.rhs) return true;
  return c.commutative && c.not_commutative;
}

std::vector<Program> compile_all(const ConstraintSet& c) {
  std::vector<Program> progs;
  for (const auto& id : c.satisfy) progs.push_back(compile(id));
  for (const auto& id : c.violate) compile(id);  // validates the shape
  return progs;
}

void setup_budget(Budget& b, const SearchConfig& cfg) {
  b.node_limit = cfg.node_limit;
  if (cfg.time_limit > 0) {
    b.has_deadline = true;
    b.deadline = Clock::now() + std::chrono::microseconds(static_cast<std::int64_t>(cfg.time_limit * 1e6));
  }
}

void check_order(int n) {
  if (n < 1 || n > kMaxSearchOrder)
    throw Error("search order must lie in 1.." + std::to_string(kMaxSearchOrder));
}

}  // namespace

std::string SearchOutcome::summary_line() const {
  const char* k = kind == Kind::Found ? "found" : kind == Kind::Exhausted ? "exhausted" : "aborted";
  char buf[128];
  std::snprintf(buf, sizeof buf, "RESULT: %s nodes=%llu seconds=%.3f", k,
                static_cast<unsigned long long>(nodes), seconds);
  return buf;
}

bool satisfies_constraints(const QuasigroupTable& t, const ConstraintSet& c) {
  for (const auto& id : c.satisfy)
    if (!check_identity(t, id).holds) return false;
  for (const auto& id : c.violate)
    if (check_identity(t, id).holds) return false;
  const bool comm = is_commutative(t);
  if (c.commutative && !comm) return false;
  if (c.not_commutative && comm) return false;
  const auto ns = neutral_status(t);
  if (c.not_left_loop && ns.left) return false;
  if (c.not_right_loop && ns.right) return false;
  return true;
}

SearchOutcome find_model(const ConstraintSet& c, const SearchConfig& cfg) {
  const auto start = Clock::now();
  SearchOutcome out;
  auto finish = [&](SearchOutcome::Kind kind, std::uint64_t nodes) {
    out.kind = kind;
    out.nodes = nodes;
    out.seconds = std::chrono::duration<double>(Clock::now() - start).count();
    if (out.table && !satisfies_constraints(*out.table, c))
      throw Error("internal finder error: witness fails re-verification");
    return out;
  };
  if (trivially_unsatisfiable(c)) {
    for (int n = cfg.min_order; n <= cfg.max_order; ++n) out.exhausted_orders.push_back(n);
    return finish(SearchOutcome::Kind::Exhausted, 0);
  }
  const auto progs = compile_all(c);
  Budget budget;
  setup_budget(budget, cfg);
  for (int n = cfg.min_order; n <= cfg.max_order; ++n) {
    check_order(n);
    const int width = std::max(1, cfg.parallel_width);
    if (width == 1) {
      Engine e(progs, c, n, budget);
      if (e.init()) {
        e.run([&](const QuasigroupTable& t) {
          out.table = t;
          return false;
        });
        if (e.aborted() && !out.table) return finish(SearchOutcome::Kind::Aborted, budget.nodes);
      }
    } else {
      std::atomic<int> best{1 << 30};
      std::mutex mu;
      std::vector<std::thread> workers;
      bool any_aborted = false;
      for (int w = 0; w < width; ++w) {
        workers.emplace_back([&, w] {
          Engine e(progs, c, n, budget);
          e.set_cancel(&best);
          if (!e.init()) return;
          std::optional<QuasigroupTable> mine;
          e.run(
              [&](const QuasigroupTable& t) {
                mine = t;
                return false;
              },
              [&](int b) { return b % width == w; });
          std::lock_guard lock(mu);
          if (mine && e.last_branch() < best) {
            best = e.last_branch();
            out.table = mine;
          }
          if (e.aborted()) any_aborted = true;
        });
      }
      for (auto& t : workers) t.join();
      if (any_aborted && !out.table) return finish(SearchOutcome::Kind::Aborted, budget.nodes);
    }
    if (out.table) return finish(SearchOutcome::Kind::Found, budget.nodes);
    out.exhausted_orders.push_back(n);
  }
  return finish(SearchOutcome::Kind::Exhausted, budget.nodes);
}

SearchOutcome for_each_model(const ConstraintSet& c, int order, const SearchConfig& cfg,
                             const std::function<bool(const QuasigroupTable&)>& visit) {
  const auto start = Clock::now();
  check_order(order);
  SearchOutcome out;
  out.kind = SearchOutcome::Kind::Exhausted;
  if (!trivially_unsatisfiable(c)) {
    const auto progs = compile_all(c);
    Budget budget;
    setup_budget(budget, cfg);
    Engine e(progs, c, order, budget);
    if (e.init()) {
      e.run(visit);
      if (e.aborted()) out.kind = SearchOutcome::Kind::Aborted;
      else if (e.stopped()) out.kind = SearchOutcome::Kind::Found;
    }
    out.nodes = budget.nodes;
  }
  if (out.kind == SearchOutcome::Kind::Exhausted) out.exhausted_orders.push_back(order);
  out.seconds = std::chrono::duration<double>(Clock::now() - start).count();
  return out;
}

ModelCount count_models(const ConstraintSet& c, int order, const SearchConfig& cfg) {
  ModelCount mc;
  std::set<std::vector<Element>> classes;
  const bool dedup = cfg.dedup_isomorphic;
  if (dedup && order > 8) throw Error("isomorphism classes need order <= 8");
  const auto out = for_each_model(c, order, cfg, [&](const QuasigroupTable& t) {
    ++mc.total;
    if (dedup) {
      const auto canon = canonical_form(t);
      classes.emplace(canon.cells().begin(), canon.cells().end());
    }
    return true;
  });
  mc.complete = out.kind == SearchOutcome::Kind::Exhausted;
  if (dedup) mc.up_to_isomorphism = classes.size();
  return mc;
}

}  // namespace bm
