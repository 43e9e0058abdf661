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
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "bm/term.hpp"

namespace bm {

using Element = std::uint8_t;

class NotLatinError : public Error {
 public:
  using Error::Error;
};

/// Multiplication table of a finite quasigroup: an n x n Latin square with
/// precomputed left and right division tables.
class QuasigroupTable {
 public:
  static constexpr int kMaxOrder = 64;

  /// Validates `cells` (row r, column c holds r*c) and derives the divisions.
  static QuasigroupTable from_rows(const std::vector<std::vector<int>>& cells);
  static QuasigroupTable from_flat(int n, std::span<const Element> cells);

  int order() const { return n_; }
  Element mul(int a, int b) const { return mul_[index(a, b)]; }
  /// a\b: the unique s with a*s = b.
  Element ldiv(int a, int b) const { return ldiv_[index(a, b)]; }
  /// b/a: the unique s with s*a = b.
  Element rdiv(int b, int a) const { return rdiv_[index(b, a)]; }
  Element apply(Op op, int a, int b) const;

  std::span<const Element> cells() const { return mul_; }
  std::vector<std::vector<int>> rows() const;

  friend bool operator==(const QuasigroupTable& a, const QuasigroupTable& b) {
    return a.n_ == b.n_ && a.mul_ == b.mul_;
  }
  friend auto operator<=>(const QuasigroupTable& a, const QuasigroupTable& b) {
    if (a.n_ != b.n_) return a.n_ <=> b.n_;
    return a.mul_ <=> b.mul_;
  }

 private:
  QuasigroupTable() = default;
  std::size_t index(int a, int b) const { return static_cast<std::size_t>(a * n_ + b); }

  int n_ = 0;
  std::vector<Element> mul_;
  std::vector<Element> ldiv_;
  std::vector<Element> rdiv_;
};

/// Values of variables and constants. Unbound entries are -1.
struct Assignment {
  std::vector<int> vars;
  std::vector<int> consts;

  static Assignment of_vars(std::vector<int> v) { return {std::move(v), {}}; }
  std::string str() const;  // "x=1 y=0 z=0"
  friend bool operator==(const Assignment&, const Assignment&) = default;
};

int eval_term(const QuasigroupTable& t, const Term& term, const Assignment& a);

struct CheckResult {
  bool holds = true;
  Assignment witness;  // first failing assignment when !holds
};

/// Exhaustive check over all assignments of the identity's variables, in
/// lexicographic (x, y, z, ...) order.
CheckResult check_identity(const QuasigroupTable& t, const Identity& id);

/// Evaluates both sides at a single assignment.
bool holds_at(const QuasigroupTable& t, const Identity& id, const Assignment& a);

struct NeutralStatus {
  std::optional<int> left;
  std::optional<int> right;
  bool is_loop() const { return left && right; }
};

NeutralStatus neutral_status(const QuasigroupTable& t);
bool is_commutative(const QuasigroupTable& t);

/// perm maps old element -> new element; rows, columns and symbols are
/// relabeled simultaneously.
QuasigroupTable relabel(const QuasigroupTable& t, std::span<const int> perm);
/// Opposite quasigroup: a*'b = b*a.
QuasigroupTable transpose(const QuasigroupTable& t);

/// Lexicographically least isomorphic copy (row-major). Orders up to 8.
QuasigroupTable canonical_form(const QuasigroupTable& t);

/// Table file format: optional '#' comment lines, the order n, then n rows.
QuasigroupTable read_table(std::istream& in);
QuasigroupTable read_table_file(const std::string& path);
void write_table(std::ostream& out, const QuasigroupTable& t);
std::string table_text(const QuasigroupTable& t);

/// Identity compiled into straight-line code for repeated evaluation.
class CompiledIdentity {
 public:
  explicit CompiledIdentity(const Identity& id);

  int num_vars() const { return num_vars_; }
  bool holds_at(const QuasigroupTable& t, const int* values) const;
  /// Evaluates every assignment; returns false at the first failure and
  /// stores it in `witness` when non-null.
  bool holds(const QuasigroupTable& t, std::vector<int>* witness = nullptr) const;

 private:
  struct Instr {
    Op op;
    std::int16_t a, b;  // operands: >= 0 slot, < 0 leaf -(k+1)
  };
  int emit(const Term& t, std::vector<Instr>& code, bool& has_const);

  std::vector<Instr> lhs_, rhs_;
  int lhs_root_ = 0, rhs_root_ = 0;
  int num_vars_ = 0;
};

}  // namespace bm
