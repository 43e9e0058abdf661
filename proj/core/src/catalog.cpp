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

#include "bm/catalog.hpp"

#include <algorithm>
#include <array>

namespace bm {

namespace {

constexpr std::string_view kLetters = "ABCDEF";

// Variable words for letters A..F.
constexpr std::array<std::array<std::uint32_t, 4>, 6> kWords = {{
    {0, 0, 1, 2},  // A xxyz
    {0, 1, 0, 2},  // B xyxz
    {0, 1, 1, 2},  // C xyyz
    {0, 1, 2, 0},  // D xyzx
    {0, 1, 2, 1},  // E xyzy
    {0, 1, 2, 2},  // F xyzz
}};

char dual_letter(char letter) {
  switch (letter) {
    case 'A': return 'F';
    case 'B': return 'E';
    case 'F': return 'A';
    case 'E': return 'B';
    default: return letter;
  }
}

int dual_shape(int k) { return 6 - k; }

// Inverse of `bracket`: which of the five shapes a 4-leaf tree has.
int shape_of(const Term& t) {
  auto is_pair = [](const Term& s) { return s.is_app() && !s.left().is_app() && !s.right().is_app(); };
  if (!t.is_app()) return 0;
  const Term& l = t.left();
  const Term& r = t.right();
  if (!l.is_app() && r.is_app()) {
    if (r.right().is_app() && !r.left().is_app() && is_pair(r.right())) return 1;
    if (r.left().is_app() && !r.right().is_app() && is_pair(r.left())) return 2;
    return 0;
  }
  if (is_pair(l) && is_pair(r)) return 3;
  if (l.is_app() && !r.is_app()) {
    if (!l.left().is_app() && l.right().is_app() && is_pair(l.right())) return 4;
    if (l.left().is_app() && !l.right().is_app() && is_pair(l.left())) return 5;
  }
  return 0;
}

Term mirror(const Term& t) {
  if (!t.is_app()) return t;
  return Term::app(t.op(), mirror(t.right()), mirror(t.left()));
}

std::vector<BmName> all_names() {
  std::vector<BmName> out;
  for (char letter : kLetters)
    for (int i = 1; i <= 5; ++i)
      for (int j = i + 1; j <= 5; ++j) out.push_back({letter, i, j});
  return out;
}

}  // namespace

std::string BmName::str() const {
  return std::string(1, letter) + std::to_string(i) + std::to_string(j);
}

BmName parse_bm_name(std::string_view text) {
  if (text.size() != 3) throw Error("malformed identity name '" + std::string(text) + "'");
  const char letter = text[0];
  if (kLetters.find(letter) == std::string_view::npos)
    throw Error("bad letter in identity name '" + std::string(text) + "'");
  if (text[1] < '1' || text[1] > '5' || text[2] < '1' || text[2] > '5')
    throw Error("bad bracketing index in identity name '" + std::string(text) + "'");
  const int i = text[1] - '0';
  const int j = text[2] - '0';
  if (i >= j) throw Error("identity name '" + std::string(text) + "' needs i < j");
  return {letter, i, j};
}

std::vector<std::uint32_t> word_of(char letter) {
  const auto pos = kLetters.find(letter);
  if (pos == std::string_view::npos) throw Error("bad letter");
  const auto& w = kWords[pos];
  return {w.begin(), w.end()};
}

Term bracket(int shape, const std::vector<Term>& v) {
  using T = Term;
  switch (shape) {
    case 1: return T::mul(v[0], T::mul(v[1], T::mul(v[2], v[3])));
    case 2: return T::mul(v[0], T::mul(T::mul(v[1], v[2]), v[3]));
    case 3: return T::mul(T::mul(v[0], v[1]), T::mul(v[2], v[3]));
    case 4: return T::mul(T::mul(v[0], T::mul(v[1], v[2])), v[3]);
    case 5: return T::mul(T::mul(T::mul(v[0], v[1]), v[2]), v[3]);
    default: throw Error("bracketing index out of range");
  }
}

Identity identity_of(BmName name) {
  std::vector<Term> leaves;
  for (auto v : word_of(name.letter)) leaves.push_back(Term::var(v));
  return {bracket(name.i, leaves), bracket(name.j, leaves)};
}

std::vector<std::pair<BmName, Identity>> enumerate_bm() {
  std::vector<std::pair<BmName, Identity>> out;
  for (const auto& n : all_names()) out.emplace_back(n, identity_of(n));
  return out;
}

int bm_index(BmName name) {
  static const std::vector<BmName> names = all_names();
  auto it = std::lower_bound(names.begin(), names.end(), name);
  if (it == names.end() || *it != name) throw Error("not a Bol-Moufang name");
  return static_cast<int>(it - names.begin());
}

BmName bm_at(int index) {
  static const std::vector<BmName> names = all_names();
  return names.at(static_cast<std::size_t>(index));
}

BmName dual_name(BmName name) {
  int a = dual_shape(name.j);
  int b = dual_shape(name.i);
  if (a > b) std::swap(a, b);
  return {dual_letter(name.letter), a, b};
}

Identity dual_identity(const Identity& id) {
  if (!id.lhs.mul_only() || !id.rhs.mul_only())
    throw Error("duality is only defined for multiplication-only identities");
  return normalize_vars({mirror(id.rhs), mirror(id.lhs)});
}

Canonical canonicalize(const Identity& raw) {
  const auto fail = [&](const std::string& why) -> Error {
    return Error("not of Bol-Moufang type (" + why + "): " + raw.str());
  };
  if (!raw.lhs.mul_only() || !raw.rhs.mul_only()) throw fail("operation other than '*'");
  const Identity id = normalize_vars(raw);
  std::vector<Term> l, r;
  id.lhs.leaves(l);
  id.rhs.leaves(r);
  if (l.size() != 4 || r.size() != 4) throw fail("each side needs four leaves");
  std::array<std::uint32_t, 4> word{};
  for (std::size_t k = 0; k < 4; ++k) {
    if (!l[k].is_var() || !r[k].is_var()) throw fail("constant leaf");
    if (l[k].id() != r[k].id()) throw fail("variables differ in order");
    word[k] = l[k].id();
  }
  const auto it = std::find(kWords.begin(), kWords.end(), word);
  if (it == kWords.end()) throw fail("variable word");
  const char letter = kLetters[static_cast<std::size_t>(it - kWords.begin())];
  const int si = shape_of(id.lhs);
  const int sj = shape_of(id.rhs);
  if (si == 0 || sj == 0) throw fail("bracketing");
  if (si == sj) throw fail("identical sides");
  if (si < sj) return {{letter, si, sj}, false};
  return {{letter, sj, si}, true};
}

Identity law_identity(NamedLaw law) {
  const Term x = Term::var(0), y = Term::var(1), z = Term::var(2);
  using T = Term;
  switch (law) {
    case NamedLaw::Associativity: return {T::mul(x, T::mul(y, z)), T::mul(T::mul(x, y), z)};
    case NamedLaw::LeftAlternative: return {T::mul(x, T::mul(x, y)), T::mul(T::mul(x, x), y)};
    case NamedLaw::RightAlternative: return {T::mul(x, T::mul(y, y)), T::mul(T::mul(x, y), y)};
    case NamedLaw::Flexibility: return {T::mul(x, T::mul(y, x)), T::mul(T::mul(x, y), x)};
    case NamedLaw::Commutativity: return {T::mul(x, y), T::mul(y, x)};
  }
  throw Error("unknown law");
}

std::string_view law_keyword(NamedLaw law) {
  switch (law) {
    case NamedLaw::Associativity: return "assoc";
    case NamedLaw::LeftAlternative: return "lalt";
    case NamedLaw::RightAlternative: return "ralt";
    case NamedLaw::Flexibility: return "flex";
    case NamedLaw::Commutativity: return "comm";
  }
  return "";
}

Identity VarietyDef::identity() const {
  if (const auto* n = std::get_if<BmName>(&definer)) return identity_of(*n);
  return law_identity(std::get<NamedLaw>(definer));
}

const std::vector<VarietyDef>& variety_table() {
  static const std::vector<VarietyDef> table = [] {
    auto bm = [](const char* n) { return parse_bm_name(n); };
    return std::vector<VarietyDef>{
        {"groups", "GR", NamedLaw::Associativity},
        {"RG1-quasigroups", "RG1", bm("A25")},
        {"LG1-quasigroups", "LG1", bm("F14")},
        {"RG2-quasigroups", "RG2", bm("A23")},
        {"LG2-quasigroups", "LG2", bm("F34")},
        {"RG3-quasigroups", "RG3", bm("B25")},
        {"LG3-quasigroups", "LG3", bm("E14")},
        {"extra quasigroups", "EQ", bm("D15")},
        {"Moufang quasigroups", "MQ", bm("D34")},
        {"left Bol quasigroups", "LBQ", bm("B14")},
        {"right Bol quasigroups", "RBQ", bm("E25")},
        {"C-quasigroups", "CQ", bm("C15")},
        {"LC1-quasigroups", "LC1", bm("A34")},
        {"LC2-quasigroups", "LC2", bm("A14")},
        {"LC3-quasigroups", "LC3", bm("A15")},
        {"LC4-quasigroups", "LC4", bm("C14")},
        {"RC1-quasigroups", "RC1", bm("F23")},
        {"RC2-quasigroups", "RC2", bm("F25")},
        {"RC3-quasigroups", "RC3", bm("F15")},
        {"RC4-quasigroups", "RC4", bm("C25")},
        {"left alternative quasigroups", "LAQ", NamedLaw::LeftAlternative},
        {"right alternative quasigroups", "RAQ", NamedLaw::RightAlternative},
        {"flexible quasigroups", "FQ", NamedLaw::Flexibility},
        {"left nuclear square quasigroups", "LNQ", bm("A35")},
        {"middle nuclear square quasigroups", "MNQ", bm("C24")},
        {"right nuclear square quasigroups", "RNQ", bm("F13")},
    };
  }();
  return table;
}

std::optional<VarietyDef> find_variety(std::string_view abbreviation) {
  for (const auto& v : variety_table())
    if (v.abbreviation == abbreviation) return v;
  return std::nullopt;
}

Identity resolve_identity(std::string_view text) {
  for (auto law : {NamedLaw::Associativity, NamedLaw::LeftAlternative, NamedLaw::RightAlternative,
                   NamedLaw::Flexibility, NamedLaw::Commutativity})
    if (text == law_keyword(law)) return law_identity(law);
  if (text.size() == 3 && kLetters.find(text[0]) != std::string_view::npos &&
      text.find('=') == std::string_view::npos)
    return identity_of(parse_bm_name(text));
  if (text.find('=') != std::string_view::npos) return parse_identity(text);
  if (auto v = find_variety(text)) return v->identity();
  throw Error("cannot resolve identity '" + std::string(text) + "'");
}

}  // namespace bm
