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

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "bm/term.hpp"

namespace bm {

/// Name `Xij` of one of the 60 Bol-Moufang identities: letter X in A..F
/// selects the variable word, i < j select the bracketings of the two sides.
struct BmName {
  char letter = 'A';
  int i = 1;
  int j = 2;

  std::string str() const;
  friend auto operator<=>(const BmName&, const BmName&) = default;
};

/// Parses `[A-F][1-5][1-5]` with the first digit smaller than the second.
BmName parse_bm_name(std::string_view text);

/// Word over variables 0..2 for letter A..F, e.g. B -> {0,1,0,2}.
std::vector<std::uint32_t> word_of(char letter);

/// Bracket the four leaves with bracketing 1..5.
Term bracket(int shape, const std::vector<Term>& leaves);

Identity identity_of(BmName name);

/// All 60 identities in (letter, i, j) lexicographic order.
std::vector<std::pair<BmName, Identity>> enumerate_bm();

/// Index 0..59 of a name in enumeration order.
int bm_index(BmName name);
BmName bm_at(int index);

BmName dual_name(BmName name);

/// Reads the identity backwards. Only defined for multiplication-only terms.
Identity dual_identity(const Identity& id);

struct Canonical {
  BmName name;
  bool swapped = false;
};

/// Brings a Bol-Moufang identity into the form `Xij` by renaming variables
/// and, if necessary, swapping the two sides.
Canonical canonicalize(const Identity& id);

enum class NamedLaw { Associativity, LeftAlternative, RightAlternative, Flexibility, Commutativity };

Identity law_identity(NamedLaw law);
std::string_view law_keyword(NamedLaw law);

struct VarietyDef {
  std::string name;
  std::string abbreviation;
  std::variant<BmName, NamedLaw> definer;

  Identity identity() const;
  bool has_bm_definer() const { return std::holds_alternative<BmName>(definer); }
};

/// The 26 named varieties in the canonical order of their definitions.
const std::vector<VarietyDef>& variety_table();
std::optional<VarietyDef> find_variety(std::string_view abbreviation);

/// Resolves a user-supplied identity: a name like `D34`, a law keyword
/// (assoc, lalt, ralt, flex, comm), or an identity in the text grammar.
Identity resolve_identity(std::string_view text);

}  // namespace bm
