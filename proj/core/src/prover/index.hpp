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
#include <utility>
#include <vector>

#include "prover/bank.hpp"

namespace bm::prover {

/// Discrimination tree over preorder symbol strings, variables collapsed
/// to a wildcard. Retrieval is a filter: callers confirm candidates by
/// matching or unification.
class DiscTree {
 public:
  DiscTree() { nodes_.emplace_back(); }

  void insert(const TermBank& bank, TermId key, std::uint32_t value);
  void clear() {
    nodes_.clear();
    nodes_.emplace_back();
    size_ = 0;
  }
  std::size_t size() const { return size_; }

  /// Calls f(value) for entries whose key may generalize `query`; stops
  /// early when f returns true. Returns whether it stopped.
  template <class F>
  bool generalizations(const TermBank& bank, TermId query, F&& f) const {
    stack_.clear();
    stack_.push_back(query);
    return gen(bank, 0, f);
  }

  /// Calls f(value) for entries whose key may unify with `query`.
  template <class F>
  void unifiable(const TermBank& bank, TermId query, F&& f) const {
    std::vector<TermId> stack{query};
    unif(bank, 0, stack, f);
  }

 private:
  static constexpr Sym kStar = 0xffffffffu;

  struct Node {
    std::vector<std::pair<Sym, std::uint32_t>> children;
    std::vector<std::uint32_t> values;
  };

  static Sym key_of(const TermBank& bank, TermId t) { return bank.is_var(t) ? kStar : bank.sym(t); }
  static int arity(Sym s) { return is_op_sym(s) ? 2 : 0; }

  std::uint32_t child(std::uint32_t n, Sym s) const {
    for (const auto& [k, c] : nodes_[n].children)
      if (k == s) return c;
    return 0;  // the root is never a child
  }

  template <class F>
  bool gen(const TermBank& bank, std::uint32_t n, F& f) const {
    if (stack_.empty()) {
      for (auto v : nodes_[n].values)
        if (f(v)) return true;
      return false;
    }
    const TermId t = stack_.back();
    stack_.pop_back();
    bool stop = false;
    if (const auto c = child(n, kStar)) stop = gen(bank, c, f);
    if (!stop && !bank.is_var(t)) {
      if (const auto c = child(n, bank.sym(t))) {
        if (bank.is_app(t)) {
          stack_.push_back(bank.right(t));
          stack_.push_back(bank.left(t));
          stop = gen(bank, c, f);
          stack_.pop_back();
          stack_.pop_back();
        } else {
          stop = gen(bank, c, f);
        }
      }
    }
    stack_.push_back(t);
    return stop;
  }

  void skip(std::uint32_t n, int terms, std::vector<std::uint32_t>& out) const {
    if (terms == 0) {
      out.push_back(n);
      return;
    }
    for (const auto& [k, c] : nodes_[n].children) skip(c, terms - 1 + (k == kStar ? 0 : arity(k)), out);
  }

  template <class F>
  void unif(const TermBank& bank, std::uint32_t n, std::vector<TermId>& stack, F& f) const {
    if (stack.empty()) {
      for (auto v : nodes_[n].values) f(v);
      return;
    }
    const TermId t = stack.back();
    stack.pop_back();
    if (bank.is_var(t)) {
      std::vector<std::uint32_t> ends;
      skip(n, 1, ends);
      for (auto e : ends) unif(bank, e, stack, f);
    } else {
      if (const auto c = child(n, kStar)) unif(bank, c, stack, f);
      if (const auto c = child(n, bank.sym(t))) {
        if (bank.is_app(t)) {
          stack.push_back(bank.right(t));
          stack.push_back(bank.left(t));
          unif(bank, c, stack, f);
          stack.pop_back();
          stack.pop_back();
        } else {
          unif(bank, c, stack, f);
        }
      }
    }
    stack.push_back(t);
  }

  std::vector<Node> nodes_;
  std::size_t size_ = 0;
  mutable std::vector<TermId> stack_;
};

inline void DiscTree::insert(const TermBank& bank, TermId key, std::uint32_t value) {
  std::vector<TermId> todo{key};
  std::uint32_t n = 0;
  while (!todo.empty()) {
    const TermId t = todo.back();
    todo.pop_back();
    const Sym s = key_of(bank, t);
    std::uint32_t c = child(n, s);
    if (c == 0) {
      c = static_cast<std::uint32_t>(nodes_.size());
      nodes_.emplace_back();
      nodes_[n].children.emplace_back(s, c);
    }
    n = c;
    if (bank.is_app(t)) {
      todo.push_back(bank.right(t));
      todo.push_back(bank.left(t));
    }
  }
  nodes_[n].values.push_back(value);
  ++size_;
}

}  // namespace bm::prover
