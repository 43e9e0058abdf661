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

#include "bm/proof.hpp"

#include <istream>
#include <ostream>
#include <sstream>

namespace bm {

const std::vector<Identity>& quasigroup_axioms() {
  static const std::vector<Identity> axioms = {
      parse_identity("(x*(x\\y)) = y"),
      parse_identity("((y/x)*x) = y"),
      parse_identity("(x\\(x*y)) = y"),
      parse_identity("((y*x)/x) = y"),
  };
  return axioms;
}

Term apply_subst(const Term& t, const Substitution& s) {
  if (t.ground()) return t;
  if (t.is_var()) {
    for (const auto& [v, r] : s)
      if (v == t.id()) return r;
    return t;
  }
  return Term::app(t.op(), apply_subst(t.left(), s), apply_subst(t.right(), s));
}

std::string_view step_kind_name(StepKind k) {
  switch (k) {
    case StepKind::Axiom: return "axiom";
    case StepKind::Hypothesis: return "hypothesis";
    case StepKind::Goal: return "goal";
    case StepKind::Paramodulation: return "para";
    case StepKind::Rewrite: return "rewrite";
    case StepKind::Conflict: return "conflict";
  }
  return "?";
}

std::size_t ProofObject::derived_steps() const {
  std::size_t n = 0;
  for (const auto& s : steps)
    if (s.kind == StepKind::Paramodulation || s.kind == StepKind::Rewrite) ++n;
  return n;
}

// ---------------------------------------------------------------------------
// Text format. One record per line, tab separated:
//   hypothesis <identity>
//   goal       <identity>
//   <id> axiom|hypothesis <index> <conclusion>
//   <id> goal <conclusion>
//   <id> para <from>,<into> <rev> <position> <subst> <subst_into> <conclusion>
//   <id> rewrite <target>,<rule> <rev> <position> <subst> <conclusion>
//   <id> conflict <target> <conclusion>
// Positions are dot separated ("0.1.0"); substitutions are "x=t;y=u" or "-".
// A conclusion is "s = t", or "s != t" for a negative equation.

namespace {

std::string subst_text(const Substitution& s) {
  if (s.empty()) return "-";
  std::string out;
  for (const auto& [v, t] : s) {
    if (!out.empty()) out += ';';
    out += var_name(v) + "=" + t.str();
  }
  return out;
}

std::string position_text(const std::vector<int>& p) {
  std::string out;
  for (int i : p) {
    if (!out.empty()) out += '.';
    out += std::to_string(i);
  }
  return out;
}

std::string conclusion_text(const ProofStep& s) {
  return s.conclusion.lhs.str() + (s.negative ? " != " : " = ") + s.conclusion.rhs.str();
}

}  // namespace

void write_proof(std::ostream& out, const ProofObject& p) {
  out << "# bm proof\n";
  for (const auto& h : p.hypotheses) out << "hypothesis\t" << h.str() << '\n';
  out << "goal\t" << p.goal.str() << '\n';
  std::uint32_t id = 0;
  for (const auto& s : p.steps) {
    out << ++id << '\t' << step_kind_name(s.kind) << '\t';
    switch (s.kind) {
      case StepKind::Axiom:
      case StepKind::Hypothesis:
        out << s.index << '\t';
        break;
      case StepKind::Goal:
        break;
      case StepKind::Paramodulation:
      case StepKind::Rewrite:
        out << s.parents.at(0) << ',' << s.parents.at(1) << '\t' << (s.reversed ? 1 : 0) << '\t'
            << position_text(s.position) << '\t' << subst_text(s.subst) << '\t';
        if (s.kind == StepKind::Paramodulation) out << subst_text(s.subst_into) << '\t';
        break;
      case StepKind::Conflict:
        out << s.parents.at(0) << '\t';
        break;
    }
    out << conclusion_text(s) << '\n';
  }
}

std::string proof_text(const ProofObject& p) {
  std::ostringstream os;
  write_proof(os, p);
  return os.str();
}

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  for (;;) {
    const auto pos = s.find(sep, start);
    parts.push_back(s.substr(start, pos - start));
    if (pos == std::string::npos) break;
    start = pos + 1;
  }
  return parts;
}

std::uint32_t parse_uint(const std::string& s, std::size_t line) {
  if (s.empty() || s.size() > 9 || s.find_first_not_of("0123456789") != std::string::npos)
    throw ParseError("expected a number in line " + std::to_string(line), 0);
  return static_cast<std::uint32_t>(std::stoul(s));
}

std::vector<int> parse_position(const std::string& s, std::size_t line) {
  std::vector<int> p;
  for (const auto& part : split(s, '.')) p.push_back(static_cast<int>(parse_uint(part, line)));
  return p;
}

Substitution parse_subst(const std::string& s, std::size_t line) {
  Substitution out;
  if (s == "-") return out;
  for (const auto& entry : split(s, ';')) {
    const auto eq = entry.find('=');
    if (eq == std::string::npos)
      throw ParseError("malformed substitution in line " + std::to_string(line), 0);
    const Term v = parse_term(entry.substr(0, eq));
    if (!v.is_var()) throw ParseError("substitution key is not a variable in line " + std::to_string(line), 0);
    out.emplace_back(v.id(), parse_term(entry.substr(eq + 1)));
  }
  return out;
}

void parse_conclusion(const std::string& s, ProofStep& step) {
  const auto ne = s.find("!=");
  if (ne == std::string::npos) {
    step.conclusion = parse_identity(s);
    step.negative = false;
    return;
  }
  step.conclusion = {parse_term(s.substr(0, ne)), parse_term(s.substr(ne + 2))};
  step.negative = true;
}

}  // namespace

ProofObject read_proof(std::istream& in) {
  ProofObject p;
  bool have_goal = false;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    const auto f = split(line, '\t');
    auto need = [&](std::size_t n) {
      if (f.size() != n) throw ParseError("wrong field count in line " + std::to_string(lineno), 0);
    };
    if (f[0] == "hypothesis") {
      need(2);
      p.hypotheses.push_back(parse_identity(f[1]));
      continue;
    }
    if (f[0] == "goal") {
      need(2);
      p.goal = parse_identity(f[1]);
      have_goal = true;
      continue;
    }
    if (f.size() < 3) throw ParseError("wrong field count in line " + std::to_string(lineno), 0);
    if (parse_uint(f[0], lineno) != p.steps.size() + 1)
      throw ParseError("step ids must be consecutive from 1 (line " + std::to_string(lineno) + ")", 0);
    ProofStep s;
    const std::string& kind = f[1];
    if (kind == "axiom" || kind == "hypothesis") {
      need(4);
      s.kind = kind == "axiom" ? StepKind::Axiom : StepKind::Hypothesis;
      s.index = parse_uint(f[2], lineno);
    } else if (kind == "goal") {
      need(3);
      s.kind = StepKind::Goal;
    } else if (kind == "para" || kind == "rewrite") {
      const bool para = kind == "para";
      need(para ? 8 : 7);
      s.kind = para ? StepKind::Paramodulation : StepKind::Rewrite;
      const auto ps = split(f[2], ',');
      if (ps.size() != 2) throw ParseError("expected two parents in line " + std::to_string(lineno), 0);
      s.parents = {parse_uint(ps[0], lineno), parse_uint(ps[1], lineno)};
      if (f[3] != "0" && f[3] != "1") throw ParseError("bad direction flag in line " + std::to_string(lineno), 0);
      s.reversed = f[3] == "1";
      s.position = parse_position(f[4], lineno);
      s.subst = parse_subst(f[5], lineno);
      if (para) s.subst_into = parse_subst(f[6], lineno);
    } else if (kind == "conflict") {
      need(4);
      s.kind = StepKind::Conflict;
      s.parents = {parse_uint(f[2], lineno)};
    } else {
      throw ParseError("unknown step kind '" + kind + "' in line " + std::to_string(lineno), 0);
    }
    parse_conclusion(f.back(), s);
    p.steps.push_back(std::move(s));
  }
  if (!have_goal) throw ParseError("missing goal line", 0);
  return p;
}

ProofObject parse_proof(std::string_view text) {
  std::istringstream is{std::string(text)};
  return read_proof(is);
}

// ---------------------------------------------------------------------------

namespace {

void collect_vars(const Term& t, std::vector<std::uint32_t>& out) {
  if (t.ground()) return;
  if (t.is_var()) {
    for (auto v : out)
      if (v == t.id()) return;
    out.push_back(t.id());
    return;
  }
  collect_vars(t.left(), out);
  collect_vars(t.right(), out);
}

// Empty string when the substitution is acceptable for `parent`.
std::string check_domain(const Substitution& s, const Identity& parent) {
  std::vector<std::uint32_t> vars;
  collect_vars(parent.lhs, vars);
  collect_vars(parent.rhs, vars);
  for (std::size_t i = 0; i < s.size(); ++i) {
    bool found = false;
    for (auto v : vars) found = found || v == s[i].first;
    if (!found) return "substitution binds " + var_name(s[i].first) + ", which does not occur in the parent";
    for (std::size_t j = 0; j < i; ++j)
      if (s[j].first == s[i].first) return "substitution binds " + var_name(s[i].first) + " twice";
  }
  return {};
}

}  // namespace

VerifyResult verify_proof(const ProofObject& p) {
  auto fail = [](std::uint32_t step, std::string why) { return VerifyResult{false, step, std::move(why)}; };
  if (p.steps.empty()) return fail(0, "proof has no steps");

  const Identity goal = skolemize(p.goal);
  for (std::uint32_t i = 0; i < p.steps.size(); ++i) {
    const std::uint32_t id = i + 1;
    const ProofStep& s = p.steps[i];
    for (auto par : s.parents)
      if (par == 0 || par >= id) return fail(id, "parent " + std::to_string(par) + " is not an earlier step");
    auto parent = [&](std::size_t k) -> const ProofStep& { return p.steps[s.parents[k] - 1]; };
    if (s.negative && !(s.conclusion.lhs.ground() && s.conclusion.rhs.ground()))
      return fail(id, "negative equation is not ground");

    switch (s.kind) {
      case StepKind::Axiom: {
        const auto& ax = quasigroup_axioms();
        if (s.index >= ax.size()) return fail(id, "no such axiom");
        if (s.negative || s.conclusion != ax[s.index]) return fail(id, "axiom text does not match");
        break;
      }
      case StepKind::Hypothesis:
        if (s.index >= p.hypotheses.size()) return fail(id, "no such hypothesis");
        if (s.negative || s.conclusion != p.hypotheses[s.index]) return fail(id, "hypothesis text does not match");
        break;
      case StepKind::Goal:
        if (!s.negative || s.conclusion != goal) return fail(id, "goal step is not the negated skolemized goal");
        break;
      case StepKind::Paramodulation:
      case StepKind::Rewrite: {
        if (s.parents.size() != 2) return fail(id, "expected two parents");
        const bool para = s.kind == StepKind::Paramodulation;
        const ProofStep& from = para ? parent(0) : parent(1);
        const ProofStep& into = para ? parent(1) : parent(0);
        if (from.negative) return fail(id, "cannot replace using a negative equation");
        if (auto e = check_domain(s.subst, from.conclusion); !e.empty()) return fail(id, e);
        if (!para && !s.subst_into.empty()) return fail(id, "rewrite steps do not instantiate the target");
        if (auto e = check_domain(s.subst_into, into.conclusion); !e.empty()) return fail(id, e);
        if (s.position.empty() || (s.position[0] != 0 && s.position[0] != 1))
          return fail(id, "position must start with side 0 or 1");
        const Term& l = s.reversed ? from.conclusion.rhs : from.conclusion.lhs;
        const Term& r = s.reversed ? from.conclusion.lhs : from.conclusion.rhs;
        Identity base{apply_subst(into.conclusion.lhs, s.subst_into), apply_subst(into.conclusion.rhs, s.subst_into)};
        Term& side = s.position[0] == 0 ? base.lhs : base.rhs;
        try {
          if (side.at(s.position, 1) != apply_subst(l, s.subst))
            return fail(id, "instantiated subterm does not match the equation");
          side = side.replace(s.position, apply_subst(r, s.subst), 1);
        } catch (const Error&) {
          return fail(id, "position does not exist");
        }
        if (s.negative != into.negative) return fail(id, "polarity differs from the target");
        if (base != s.conclusion) return fail(id, "conclusion does not match the replay");
        break;
      }
      case StepKind::Conflict: {
        if (s.parents.size() != 1) return fail(id, "expected one parent");
        const ProofStep& t = parent(0);
        if (!t.negative) return fail(id, "conflict must cite a negative equation");
        if (t.conclusion.lhs != t.conclusion.rhs) return fail(id, "sides of the cited equation differ");
        if (!s.negative || s.conclusion != t.conclusion) return fail(id, "conclusion must repeat the cited equation");
        if (id != p.steps.size()) return fail(id, "conflict must be the last step");
        break;
      }
    }
  }
  if (p.steps.back().kind != StepKind::Conflict) return fail(0, "proof does not end in a conflict");
  return {true, 0, {}};
}

}  // namespace bm
