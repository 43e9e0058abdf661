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

#include "bm/term.hpp"

#include <algorithm>
#include <cctype>
#include <map>

namespace bm {

char op_char(Op op) {
  switch (op) {
    case Op::Mul: return '*';
    case Op::LDiv: return '\\';
    case Op::RDiv: return '/';
  }
  return '?';
}

std::string var_name(std::uint32_t id) {
  static constexpr char kNames[] = {'x', 'y', 'z'};
  if (id < 3) return std::string(1, kNames[id]);
  return "v" + std::to_string(id);
}

std::string const_name(std::uint32_t id) {
  static constexpr char kNames[] = {'a', 'b', 'c'};
  if (id < 3) return std::string(1, kNames[id]);
  return "k" + std::to_string(id);
}

Term Term::var(std::uint32_t id) {
  return Term(std::make_shared<const Node>(Node{Kind::Var, Op::Mul, false, id, 1, {}}));
}

Term Term::constant(std::uint32_t id) {
  return Term(std::make_shared<const Node>(Node{Kind::Const, Op::Mul, true, id, 1, {}}));
}

Term Term::app(Op op, Term left, Term right) {
  const bool g = left.ground() && right.ground();
  const std::uint32_t sz = 1 + left.size() + right.size();
  return Term(std::make_shared<const Node>(
      Node{Kind::App, op, g, 0, sz, {std::move(left), std::move(right)}}));
}

bool Term::mul_only() const {
  if (!is_app()) return true;
  return op() == Op::Mul && left().mul_only() && right().mul_only();
}

void Term::leaves(std::vector<Term>& out) const {
  if (!is_app()) {
    out.push_back(*this);
    return;
  }
  left().leaves(out);
  right().leaves(out);
}

const Term& Term::at(const std::vector<int>& path, std::size_t from) const {
  const Term* t = this;
  for (std::size_t i = from; i < path.size(); ++i) {
    if (!t->is_app() || path[i] < 0 || path[i] > 1) throw Error("invalid term position");
    t = &t->child(path[i]);
  }
  return *t;
}

Term Term::replace(const std::vector<int>& path, const Term& with, std::size_t from) const {
  if (from == path.size()) return with;
  if (!is_app() || path[from] < 0 || path[from] > 1) throw Error("invalid term position");
  if (path[from] == 0) return app(op(), left().replace(path, with, from + 1), right());
  return app(op(), left(), right().replace(path, with, from + 1));
}

std::string Term::str() const {
  switch (kind()) {
    case Kind::Var: return var_name(id());
    case Kind::Const: return const_name(id());
    case Kind::App: return "(" + left().str() + op_char(op()) + right().str() + ")";
  }
  return {};
}

bool operator==(const Term& a, const Term& b) {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind() || a.size() != b.size()) return false;
  if (!a.is_app()) return a.id() == b.id();
  return a.op() == b.op() && a.left() == b.left() && a.right() == b.right();
}

std::strong_ordering operator<=>(const Term& a, const Term& b) {
  if (a.node_ == b.node_) return std::strong_ordering::equal;
  if (auto c = a.kind() <=> b.kind(); c != 0) return c;
  if (!a.is_app()) return a.id() <=> b.id();
  if (auto c = a.op() <=> b.op(); c != 0) return c;
  if (auto c = a.left() <=> b.left(); c != 0) return c;
  return a.right() <=> b.right();
}

namespace {

void scan_max(const Term& t, Term::Kind kind, std::uint32_t& best, bool& any) {
  if (t.is_app()) {
    scan_max(t.left(), kind, best, any);
    scan_max(t.right(), kind, best, any);
  } else if (t.kind() == kind) {
    best = any ? std::max(best, t.id()) : t.id();
    any = true;
  }
}

Term rename(const Term& t, std::map<std::uint32_t, std::uint32_t>& map) {
  if (t.is_var()) {
    auto [it, fresh] = map.emplace(t.id(), static_cast<std::uint32_t>(map.size()));
    return Term::var(it->second);
  }
  if (t.is_const()) return t;
  Term l = rename(t.left(), map);
  Term r = rename(t.right(), map);
  return Term::app(t.op(), std::move(l), std::move(r));
}

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  Term term() {
    skip_ws();
    if (pos_ >= text_.size()) throw ParseError("unexpected end of input", pos_);
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Term l = term();
      skip_ws();
      if (pos_ >= text_.size()) throw ParseError("expected operator", pos_);
      Op op;
      switch (text_[pos_]) {
        case '*': op = Op::Mul; break;
        case '\\': op = Op::LDiv; break;
        case '/': op = Op::RDiv; break;
        default: throw ParseError(std::string("expected operator, got '") + text_[pos_] + "'", pos_);
      }
      ++pos_;
      Term r = term();
      skip_ws();
      if (pos_ >= text_.size() || text_[pos_] != ')') throw ParseError("expected ')'", pos_);
      ++pos_;
      return Term::app(op, std::move(l), std::move(r));
    }
    if (std::isalpha(static_cast<unsigned char>(c))) return leaf();
    throw ParseError(std::string("unexpected character '") + c + "'", pos_);
  }

  void expect(char c) {
    skip_ws();
    if (pos_ >= text_.size() || text_[pos_] != c)
      throw ParseError(std::string("expected '") + c + "'", pos_);
    ++pos_;
  }

  void finish() {
    skip_ws();
    if (pos_ != text_.size()) throw ParseError("trailing input", pos_);
  }

 private:
  Term leaf() {
    const std::size_t start = pos_;
    std::string name;
    while (pos_ < text_.size() && std::isalnum(static_cast<unsigned char>(text_[pos_])))
      name += text_[pos_++];
    if (name == "x") return Term::var(0);
    if (name == "y") return Term::var(1);
    if (name == "z") return Term::var(2);
    if (name == "a") return Term::constant(0);
    if (name == "b") return Term::constant(1);
    if (name == "c") return Term::constant(2);
    if (name.size() > 1 && (name[0] == 'v' || name[0] == 'k') &&
        std::all_of(name.begin() + 1, name.end(), [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)); })) {
      const auto id = static_cast<std::uint32_t>(std::stoul(name.substr(1)));
      return name[0] == 'v' ? Term::var(id) : Term::constant(id);
    }
    throw ParseError("unknown variable name '" + name + "'", start);
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

std::uint32_t max_var_id(const Term& t) {
  std::uint32_t best = 0;
  bool any = false;
  scan_max(t, Term::Kind::Var, best, any);
  return best;
}

std::uint32_t max_var_id(const Identity& id) {
  return std::max(max_var_id(id.lhs), max_var_id(id.rhs));
}

bool has_vars(const Identity& id) { return !id.lhs.ground() || !id.rhs.ground(); }

std::uint32_t max_const_id(const Identity& id) {
  std::uint32_t best = 0;
  bool any = false;
  scan_max(id.lhs, Term::Kind::Const, best, any);
  scan_max(id.rhs, Term::Kind::Const, best, any);
  return best;
}

Identity normalize_vars(const Identity& id) {
  std::map<std::uint32_t, std::uint32_t> map;
  Term l = rename(id.lhs, map);
  Term r = rename(id.rhs, map);
  return {std::move(l), std::move(r)};
}

Term skolemize(const Term& t) {
  if (t.is_var()) return Term::constant(t.id());
  if (t.is_const()) return t;
  return Term::app(t.op(), skolemize(t.left()), skolemize(t.right()));
}

Identity skolemize(const Identity& id) { return {skolemize(id.lhs), skolemize(id.rhs)}; }

Term parse_term(std::string_view text) {
  Parser p(text);
  Term t = p.term();
  p.finish();
  return t;
}

Identity parse_identity(std::string_view text) {
  Parser p(text);
  Term l = p.term();
  p.expect('=');
  Term r = p.term();
  p.finish();
  return {std::move(l), std::move(r)};
}

}  // namespace bm
