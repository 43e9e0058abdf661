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

#include "bm/prover.hpp"

#include <algorithm>
#include <cstdio>

#include "prover/completion.hpp"

namespace bm {

std::string_view gave_up_reason_name(GaveUpReason r) {
  switch (r) {
    case GaveUpReason::Timeout: return "timeout";
    case GaveUpReason::EquationLimit: return "equation-limit";
    case GaveUpReason::SizeLimit: return "size-limit";
    case GaveUpReason::Saturated: return "saturated";
  }
  return "?";
}

std::string ProveResult::summary_line() const {
  char buf[160];
  std::snprintf(buf, sizeof buf, "given=%zu generated=%zu seconds=%.3f", stats.given, stats.generated,
                stats.seconds);
  if (proved) return "RESULT: proved steps=" + std::to_string(proof.steps.size()) + " " + buf;
  return "RESULT: gave-up reason=" + std::string(gave_up_reason_name(reason)) + " " + buf;
}

ProveResult prove(const std::vector<Identity>& hypotheses, const Identity& goal, const ProverConfig& cfg) {
  prover::Completion engine(cfg);
  return engine.run(hypotheses, goal);
}

Identity right_loop_goal() { return parse_identity("(x\\x) = (y\\y)"); }
Identity left_loop_goal() { return parse_identity("(x/x) = (y/y)"); }

ProveResult prove_right_loop(const std::vector<Identity>& hypotheses, const ProverConfig& cfg) {
  return prove(hypotheses, right_loop_goal(), cfg);
}

ProveResult prove_left_loop(const std::vector<Identity>& hypotheses, const ProverConfig& cfg) {
  return prove(hypotheses, left_loop_goal(), cfg);
}

namespace {

Term map_consts(const Term& t, const std::vector<std::pair<std::uint32_t, Term>>& m) {
  if (t.is_const()) {
    for (const auto& [k, v] : m)
      if (t.id() == k) return v;
    return t;
  }
  if (!t.is_app()) return t;
  return Term::app(t.op(), map_consts(t.left(), m), map_consts(t.right(), m));
}

Identity map_consts(const Identity& id, const std::vector<std::pair<std::uint32_t, Term>>& m) {
  return {map_consts(id.lhs, m), map_consts(id.rhs, m)};
}

}  // namespace

ProveResult prove_with_loop_lemmas(const std::vector<Identity>& hypotheses, const Identity& goal, bool left,
                                   bool right, const ProverConfig& cfg) {
  if (!left && !right) return prove(hypotheses, goal, cfg);
  const std::uint32_t first = std::max<std::uint32_t>(3, max_var_id(goal) + 1);
  const Term a = Term::constant(0);
  struct Def {
    Identity lemma;
    Term image;  // what the constant stands for
    std::uint32_t cst;
  };
  std::vector<Def> defs;
  if (left) defs.push_back({left_loop_goal(), Term::app(Op::RDiv, a, a), 0});
  if (right) defs.push_back({right_loop_goal(), Term::app(Op::LDiv, a, a), 0});
  std::vector<Identity> hyps = hypotheses;
  std::vector<std::pair<std::uint32_t, Term>> images;
  for (std::size_t i = 0; i < defs.size(); ++i) {
    defs[i].cst = first + static_cast<std::uint32_t>(i);
    hyps.push_back({defs[i].lemma.lhs, Term::constant(defs[i].cst)});
    images.emplace_back(defs[i].cst, defs[i].image);
  }

  ProveResult r = prove(hyps, goal, cfg);
  if (!r.proved) return r;

  ProofObject out;
  out.hypotheses = hypotheses;
  for (const auto& d : defs) out.hypotheses.push_back(d.lemma);
  out.goal = goal;
  std::vector<std::uint32_t> remap(r.proof.steps.size() + 1, 0);
  for (std::size_t i = 0; i < r.proof.steps.size(); ++i) {
    ProofStep st = r.proof.steps[i];
    if (st.kind == StepKind::Hypothesis && st.index >= hypotheses.size()) {
      const Def& d = defs[st.index - hypotheses.size()];
      // (x op x) = (y op y), then rewrite its right side with itself under
      // {x -> y, y -> a} to reach (x op x) = (a op a).
      ProofStep lemma;
      lemma.kind = StepKind::Hypothesis;
      lemma.index = st.index;
      lemma.conclusion = d.lemma;
      out.steps.push_back(lemma);
      const auto id = static_cast<std::uint32_t>(out.steps.size());
      ProofStep inst;
      inst.kind = StepKind::Rewrite;
      inst.parents = {id, id};
      inst.position = {1};
      inst.subst = {{0, Term::var(1)}, {1, a}};
      inst.conclusion = {d.lemma.lhs, d.image};
      out.steps.push_back(inst);
      remap[i + 1] = id + 1;
      continue;
    }
    for (auto& p : st.parents) p = remap[p];
    for (auto& [v, t] : st.subst) t = map_consts(t, images);
    for (auto& [v, t] : st.subst_into) t = map_consts(t, images);
    st.conclusion = map_consts(st.conclusion, images);
    out.steps.push_back(std::move(st));
    remap[i + 1] = static_cast<std::uint32_t>(out.steps.size());
  }
  r.proof = std::move(out);
  return r;
}

Term normal_form(const Term& t, const std::vector<Identity>& rules, const ProverConfig& cfg) {
  prover::Completion engine(cfg);
  return engine.normalize_with(rules, t);
}

}  // namespace bm
