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

#include "prover/unify.hpp"

namespace bm::prover {

Unifier::Ref Unifier::deref(TermId t, int side) const {
  for (;;) {
    if (!bank_.is_var(t)) return {t, side};
    const auto v = bank_.var_index(t);
    const auto& b = bind_[side];
    if (v >= b.size() || b[v].t == kNoTerm) return {t, side};
    const Ref next = b[v];
    t = next.t;
    side = next.side;
  }
}

void Unifier::bind(std::uint32_t v, int side, TermId t, int tside) {
  auto& b = bind_[side];
  if (b.size() <= v) b.resize(v + 1);
  b[v] = {t, tside};
  trail_.emplace_back(side, v);
}

bool Unifier::occurs(std::uint32_t v, int vside, TermId t, int side) const {
  const Ref r = deref(t, side);
  if (bank_.ground(r.t)) return false;
  if (bank_.is_var(r.t)) return r.side == vside && bank_.var_index(r.t) == v;
  if (!bank_.is_app(r.t)) return false;
  return occurs(v, vside, bank_.left(r.t), r.side) || occurs(v, vside, bank_.right(r.t), r.side);
}

bool Unifier::unify(TermId a, int sa, TermId b, int sb) {
  const Ref x = deref(a, sa);
  const Ref y = deref(b, sb);
  if (x.t == y.t && (x.side == y.side || bank_.ground(x.t))) return true;
  const bool xv = bank_.is_var(x.t), yv = bank_.is_var(y.t);
  if (xv) {
    if (yv) {
      bind(bank_.var_index(x.t), x.side, y.t, y.side);
      return true;
    }
    if (occurs(bank_.var_index(x.t), x.side, y.t, y.side)) return false;
    bind(bank_.var_index(x.t), x.side, y.t, y.side);
    return true;
  }
  if (yv) {
    if (occurs(bank_.var_index(y.t), y.side, x.t, x.side)) return false;
    bind(bank_.var_index(y.t), y.side, x.t, x.side);
    return true;
  }
  if (bank_.sym(x.t) != bank_.sym(y.t)) return false;
  if (!bank_.is_app(x.t)) return true;
  return unify(bank_.left(x.t), x.side, bank_.left(y.t), y.side) &&
         unify(bank_.right(x.t), x.side, bank_.right(y.t), y.side);
}

TermId Unifier::apply(TermId t, int side) {
  if (bank_.ground(t)) return t;
  const Ref r = deref(t, side);
  if (bank_.is_var(r.t)) {
    const std::uint64_t key = (static_cast<std::uint64_t>(r.side) << 32) | bank_.var_index(r.t);
    for (const auto& [k, id] : fresh_)
      if (k == key) return id;
    const TermId id = bank_.var(static_cast<std::uint32_t>(fresh_.size()));
    fresh_.emplace_back(key, id);
    return id;
  }
  if (bank_.ground(r.t)) return r.t;
  const TermId l = apply(bank_.left(r.t), r.side);
  const TermId rr = apply(bank_.right(r.t), r.side);
  return bank_.app(bank_.sym(r.t), l, rr);
}

bool Matcher::match(TermId p, TermId s) {
  if (bank_.is_var(p)) {
    const auto v = bank_.var_index(p);
    if (subst_.size() <= v) subst_.resize(v + 1, kNoTerm);
    if (subst_[v] == kNoTerm) {
      subst_[v] = s;
      trail_.push_back(v);
      return true;
    }
    return subst_[v] == s;
  }
  if (bank_.ground(p)) return p == s;
  if (bank_.sym(p) != bank_.sym(s)) return false;
  return match(bank_.left(p), bank_.left(s)) && match(bank_.right(p), bank_.right(s));
}

TermId Matcher::apply(TermId t) {
  if (bank_.ground(t)) return t;
  if (bank_.is_var(t)) return value(bank_.var_index(t));
  const TermId l = apply(bank_.left(t));
  if (l == kNoTerm) return kNoTerm;
  const TermId r = apply(bank_.right(t));
  if (r == kNoTerm) return kNoTerm;
  return bank_.app(bank_.sym(t), l, r);
}

}  // namespace bm::prover
