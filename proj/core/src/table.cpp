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

#include "bm/table.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <sstream>

namespace bm {

QuasigroupTable QuasigroupTable::from_flat(int n, std::span<const Element> cells) {
  if (n < 1 || n > kMaxOrder) throw Error("order out of range: " + std::to_string(n));
  if (cells.size() != static_cast<std::size_t>(n * n)) throw Error("cell count does not match order");
  QuasigroupTable t;
  t.n_ = n;
  t.mul_.assign(cells.begin(), cells.end());
  t.ldiv_.assign(cells.size(), 0);
  t.rdiv_.assign(cells.size(), 0);
  std::vector<int> seen(static_cast<std::size_t>(n));
  for (int r = 0; r < n; ++r) {
    std::fill(seen.begin(), seen.end(), -1);
    for (int c = 0; c < n; ++c) {
      const int v = t.mul(r, c);
      if (v >= n) throw NotLatinError("entry out of range in row " + std::to_string(r));
      if (seen[v] >= 0)
        throw NotLatinError("row " + std::to_string(r) + " repeats " + std::to_string(v));
      seen[v] = c;
      t.ldiv_[t.index(r, v)] = static_cast<Element>(c);
    }
  }
  for (int c = 0; c < n; ++c) {
    std::fill(seen.begin(), seen.end(), -1);
    for (int r = 0; r < n; ++r) {
      const int v = t.mul(r, c);
      if (seen[v] >= 0)
        throw NotLatinError("column " + std::to_string(c) + " repeats " + std::to_string(v));
      seen[v] = r;
      t.rdiv_[t.index(v, c)] = static_cast<Element>(r);
    }
  }
  return t;
}

QuasigroupTable QuasigroupTable::from_rows(const std::vector<std::vector<int>>& cells) {
  const int n = static_cast<int>(cells.size());
  if (n < 1 || n > kMaxOrder) throw Error("order out of range: " + std::to_string(n));
  std::vector<Element> flat;
  flat.reserve(static_cast<std::size_t>(n * n));
  for (int r = 0; r < n; ++r) {
    if (static_cast<int>(cells[r].size()) != n)
      throw NotLatinError("row " + std::to_string(r) + " has the wrong length");
    for (int v : cells[r]) {
      if (v < 0 || v >= n) throw NotLatinError("entry out of range in row " + std::to_string(r));
      flat.push_back(static_cast<Element>(v));
    }
  }
  return from_flat(n, flat);
}

Element QuasigroupTable::apply(Op op, int a, int b) const {
  switch (op) {
    case Op::Mul: return mul(a, b);
    case Op::LDiv: return ldiv(a, b);
    case Op::RDiv: return rdiv(a, b);
  }
  return 0;
}

std::vector<std::vector<int>> QuasigroupTable::rows() const {
  std::vector<std::vector<int>> out(static_cast<std::size_t>(n_));
  for (int r = 0; r < n_; ++r)
    for (int c = 0; c < n_; ++c) out[r].push_back(mul(r, c));
  return out;
}

std::string Assignment::str() const {
  std::string out;
  for (std::size_t i = 0; i < vars.size(); ++i) {
    if (vars[i] < 0) continue;
    if (!out.empty()) out += ' ';
    out += var_name(static_cast<std::uint32_t>(i)) + "=" + std::to_string(vars[i]);
  }
  for (std::size_t i = 0; i < consts.size(); ++i) {
    if (consts[i] < 0) continue;
    if (!out.empty()) out += ' ';
    out += const_name(static_cast<std::uint32_t>(i)) + "=" + std::to_string(consts[i]);
  }
  return out;
}

int eval_term(const QuasigroupTable& t, const Term& term, const Assignment& a) {
  switch (term.kind()) {
    case Term::Kind::Var: {
      if (term.id() >= a.vars.size() || a.vars[term.id()] < 0)
        throw Error("unbound variable " + var_name(term.id()));
      const int v = a.vars[term.id()];
      if (v >= t.order()) throw Error("assignment value out of range");
      return v;
    }
    case Term::Kind::Const: {
      if (term.id() >= a.consts.size() || a.consts[term.id()] < 0)
        throw Error("unbound constant " + const_name(term.id()));
      const int v = a.consts[term.id()];
      if (v >= t.order()) throw Error("assignment value out of range");
      return v;
    }
    case Term::Kind::App:
      return t.apply(term.op(), eval_term(t, term.left(), a), eval_term(t, term.right(), a));
  }
  return 0;
}

bool holds_at(const QuasigroupTable& t, const Identity& id, const Assignment& a) {
  return eval_term(t, id.lhs, a) == eval_term(t, id.rhs, a);
}

CheckResult check_identity(const QuasigroupTable& t, const Identity& id) {
  const int k = has_vars(id) ? static_cast<int>(max_var_id(id)) + 1 : 0;
  const int n = t.order();
  Assignment a;
  a.vars.assign(static_cast<std::size_t>(k), 0);
  for (;;) {
    if (!holds_at(t, id, a)) return {false, a};
    int pos = k - 1;
    while (pos >= 0 && a.vars[pos] == n - 1) a.vars[pos--] = 0;
    if (pos < 0) break;
    ++a.vars[pos];
  }
  return {true, {}};
}

NeutralStatus neutral_status(const QuasigroupTable& t) {
  NeutralStatus s;
  const int n = t.order();
  for (int e = 0; e < n && !s.left; ++e) {
    bool ok = true;
    for (int a = 0; a < n && ok; ++a) ok = t.mul(e, a) == a;
    if (ok) s.left = e;
  }
  for (int e = 0; e < n && !s.right; ++e) {
    bool ok = true;
    for (int a = 0; a < n && ok; ++a) ok = t.mul(a, e) == a;
    if (ok) s.right = e;
  }
  return s;
}

bool is_commutative(const QuasigroupTable& t) {
  for (int a = 0; a < t.order(); ++a)
    for (int b = a + 1; b < t.order(); ++b)
      if (t.mul(a, b) != t.mul(b, a)) return false;
  return true;
}

QuasigroupTable relabel(const QuasigroupTable& t, std::span<const int> perm) {
  const int n = t.order();
  if (static_cast<int>(perm.size()) != n) throw Error("permutation size mismatch");
  std::vector<Element> cells(static_cast<std::size_t>(n * n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      cells[static_cast<std::size_t>(perm[a] * n + perm[b])] = static_cast<Element>(perm[t.mul(a, b)]);
  return QuasigroupTable::from_flat(n, cells);
}

QuasigroupTable transpose(const QuasigroupTable& t) {
  const int n = t.order();
  std::vector<Element> cells(static_cast<std::size_t>(n * n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) cells[static_cast<std::size_t>(a * n + b)] = t.mul(b, a);
  return QuasigroupTable::from_flat(n, cells);
}

QuasigroupTable canonical_form(const QuasigroupTable& t) {
  const int n = t.order();
  if (n > 8) throw Error("canonical form needs order <= 8, got " + std::to_string(n));
  std::vector<int> inv(static_cast<std::size_t>(n));  // new label -> old label
  std::iota(inv.begin(), inv.end(), 0);
  std::vector<int> fwd(static_cast<std::size_t>(n));
  std::vector<Element> best(t.cells().begin(), t.cells().end());
  do {
    for (int i = 0; i < n; ++i) fwd[inv[i]] = i;
    // Compare the relabeled table against the best one cell by cell.
    bool smaller = false;
    for (int i = 0; i < n && !smaller; ++i) {
      bool larger = false;
      for (int j = 0; j < n; ++j) {
        const Element v = static_cast<Element>(fwd[t.mul(inv[i], inv[j])]);
        const Element b = best[static_cast<std::size_t>(i * n + j)];
        if (v < b) {
          smaller = true;
          break;
        }
        if (v > b) {
          larger = true;
          break;
        }
      }
      if (larger) break;
    }
    if (smaller) {
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          best[static_cast<std::size_t>(i * n + j)] = static_cast<Element>(fwd[t.mul(inv[i], inv[j])]);
    }
  } while (std::next_permutation(inv.begin(), inv.end()));
  return QuasigroupTable::from_flat(n, best);
}

QuasigroupTable read_table(std::istream& in) {
  std::string line;
  int n = -1;
  std::vector<std::vector<int>> rows;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    if (line[first] == '#') continue;
    std::istringstream ls(line);
    std::vector<int> values;
    std::string tok;
    while (ls >> tok) {
      try {
        std::size_t used = 0;
        const int v = std::stoi(tok, &used);
        if (used != tok.size()) throw std::invalid_argument(tok);
        values.push_back(v);
      } catch (const std::exception&) {
        throw Error("table line " + std::to_string(lineno) + ": bad integer '" + tok + "'");
      }
    }
    if (n < 0) {
      if (values.size() != 1 || values[0] < 1 || values[0] > QuasigroupTable::kMaxOrder)
        throw Error("table line " + std::to_string(lineno) + ": expected the order");
      n = values[0];
      continue;
    }
    if (static_cast<int>(rows.size()) == n)
      throw Error("table line " + std::to_string(lineno) + ": too many rows");
    if (static_cast<int>(values.size()) != n)
      throw Error("table line " + std::to_string(lineno) + ": expected " + std::to_string(n) + " entries");
    rows.push_back(std::move(values));
  }
  if (n < 0) throw Error("empty table file");
  if (static_cast<int>(rows.size()) != n) throw Error("table has too few rows");
  return QuasigroupTable::from_rows(rows);
}

QuasigroupTable read_table_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open table file " + path);
  return read_table(in);
}

void write_table(std::ostream& out, const QuasigroupTable& t) { out << table_text(t); }

std::string table_text(const QuasigroupTable& t) {
  std::string s = std::to_string(t.order()) + "\n";
  for (int r = 0; r < t.order(); ++r) {
    for (int c = 0; c < t.order(); ++c) {
      if (c) s += ' ';
      s += std::to_string(t.mul(r, c));
    }
    s += '\n';
  }
  return s;
}

CompiledIdentity::CompiledIdentity(const Identity& id) {
  bool has_const = false;
  lhs_root_ = emit(id.lhs, lhs_, has_const);
  std::swap(lhs_, rhs_);
  rhs_root_ = emit(id.rhs, lhs_, has_const);
  std::swap(lhs_, rhs_);
  if (has_const) throw Error("compiled identities cannot contain constants");
  num_vars_ = has_vars(id) ? static_cast<int>(max_var_id(id)) + 1 : 0;
}

int CompiledIdentity::emit(const Term& t, std::vector<Instr>& code, bool& has_const) {
  if (t.is_var()) return -static_cast<int>(t.id()) - 1;
  if (t.is_const()) {
    has_const = true;
    return -1;
  }
  const int a = emit(t.left(), code, has_const);
  const int b = emit(t.right(), code, has_const);
  code.push_back({t.op(), static_cast<std::int16_t>(a), static_cast<std::int16_t>(b)});
  return static_cast<int>(code.size()) - 1;
}

namespace {

template <typename Code>
int run(const QuasigroupTable& t, const Code& code, int root, const int* values, int* slots) {
  for (std::size_t k = 0; k < code.size(); ++k) {
    const auto& ins = code[k];
    const int a = ins.a >= 0 ? slots[ins.a] : values[-ins.a - 1];
    const int b = ins.b >= 0 ? slots[ins.b] : values[-ins.b - 1];
    slots[k] = t.apply(ins.op, a, b);
  }
  return root >= 0 ? slots[root] : values[-root - 1];
}

}  // namespace

bool CompiledIdentity::holds_at(const QuasigroupTable& t, const int* values) const {
  int slots[64];
  if (lhs_.size() > 64 || rhs_.size() > 64) throw Error("identity too large to compile");
  const int l = run(t, lhs_, lhs_root_, values, slots);
  const int r = run(t, rhs_, rhs_root_, values, slots);
  return l == r;
}

bool CompiledIdentity::holds(const QuasigroupTable& t, std::vector<int>* witness) const {
  const int n = t.order();
  std::vector<int> v(static_cast<std::size_t>(std::max(num_vars_, 1)), 0);
  for (;;) {
    if (!holds_at(t, v.data())) {
      if (witness) *witness = std::vector<int>(v.begin(), v.begin() + num_vars_);
      return false;
    }
    int pos = num_vars_ - 1;
    while (pos >= 0 && v[pos] == n - 1) v[pos--] = 0;
    if (pos < 0) return true;
    ++v[pos];
  }
}

}  // namespace bm
