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

#include <compare>
#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace bm {

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : Error(what + " at position " + std::to_string(position)), position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

enum class Op : std::uint8_t { Mul, LDiv, RDiv };

char op_char(Op op);

/// Immutable binary term over {*, \, /}. Leaves are variables or constants.
///
/// Variables 0, 1, 2 print as x, y, z; higher ids print as v<N>.
/// Constants 0, 1, 2 print as a, b, c; higher ids print as k<N>.
/// Copies share structure; a Term is safe to share between threads.
class Term {
 public:
  enum class Kind : std::uint8_t { Var, Const, App };

  /// Empty handle; only valid as an assignment target.
  Term() = default;

  static Term var(std::uint32_t id);
  static Term constant(std::uint32_t id);
  static Term app(Op op, Term left, Term right);
  static Term mul(Term left, Term right) { return app(Op::Mul, std::move(left), std::move(right)); }

  Kind kind() const;
  bool is_var() const { return kind() == Kind::Var; }
  bool is_const() const { return kind() == Kind::Const; }
  bool is_app() const { return kind() == Kind::App; }

  /// Leaf id. Only meaningful for Var and Const.
  std::uint32_t id() const;
  Op op() const;
  const Term& left() const;
  const Term& right() const;
  const Term& child(int i) const;

  /// Number of symbol occurrences.
  std::uint32_t size() const;
  bool ground() const;

  /// True iff every operation in the term is multiplication.
  bool mul_only() const;

  /// Leaves in left-to-right order.
  void leaves(std::vector<Term>& out) const;

  /// Subterm at a path of child indices (0 = left, 1 = right).
  const Term& at(const std::vector<int>& path, std::size_t from = 0) const;
  /// Copy with the subterm at `path` replaced.
  Term replace(const std::vector<int>& path, const Term& with, std::size_t from = 0) const;

  std::string str() const;

  friend bool operator==(const Term& a, const Term& b);
  friend std::strong_ordering operator<=>(const Term& a, const Term& b);

 private:
  struct Node;
  explicit Term(std::shared_ptr<const Node> n) : node_(std::move(n)) {}

  std::shared_ptr<const Node> node_;
};

struct Term::Node {
  Kind kind;
  Op op;
  bool ground;
  std::uint32_t id;
  std::uint32_t size;
  Term children[2];
};

inline Term::Kind Term::kind() const { return node_->kind; }
inline std::uint32_t Term::id() const { return node_->id; }
inline Op Term::op() const { return node_->op; }
inline const Term& Term::left() const { return node_->children[0]; }
inline const Term& Term::right() const { return node_->children[1]; }
inline const Term& Term::child(int i) const { return node_->children[i]; }
inline std::uint32_t Term::size() const { return node_->size; }
inline bool Term::ground() const { return node_->ground; }

struct Identity {
  Term lhs;
  Term rhs;

  std::string str() const { return lhs.str() + " = " + rhs.str(); }
  Identity swapped() const { return {rhs, lhs}; }
  friend bool operator==(const Identity&, const Identity&) = default;
};

/// Number of distinct variables; variables must be numbered 0..k-1 densely
/// for callers that index assignments by id, see `max_var_id`.
std::uint32_t max_var_id(const Term& t);  // returns 0 when there are no variables
std::uint32_t max_var_id(const Identity& id);
bool has_vars(const Identity& id);
std::uint32_t max_const_id(const Identity& id);

/// Renumber variables by first occurrence (lhs then rhs) starting at 0.
Identity normalize_vars(const Identity& id);

/// Replace every variable k by constant k (goal skolemization).
Term skolemize(const Term& t);
Identity skolemize(const Identity& id);

Term parse_term(std::string_view text);
Identity parse_identity(std::string_view text);

std::string var_name(std::uint32_t id);
std::string const_name(std::uint32_t id);

}  // namespace bm
