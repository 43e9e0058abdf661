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

#include "prover/ordering.hpp"

#include <algorithm>

namespace bm::prover {

TermOrdering::TermOrdering(const TermBank& bank, Kind kind, std::vector<int> op_rank)
    : bank_(bank), kind_(kind), op_rank_(std::move(op_rank)) {}

long TermOrdering::prec(Sym s) const {
  if (is_op_sym(s)) return 1'000'000L + op_rank_.at(s);
  return static_cast<long>(s - kConstBase);
}

bool TermOrdering::var_condition(TermId s, TermId t) const {
  if (bank_.ground(t)) return true;
  if (bank_.ground(s)) return false;
  std::fill(counts_.begin(), counts_.end(), 0);
  bank_.count_vars(s, counts_, 1);
  bank_.count_vars(t, counts_, -1);
  return std::all_of(counts_.begin(), counts_.end(), [](int c) { return c >= 0; });
}

bool TermOrdering::kbo_gt(TermId s, TermId t) const {
  if (s == t) return false;
  if (bank_.is_var(t)) return bank_.occurs(t, s);
  if (bank_.is_var(s)) return false;
  const auto ws = bank_.weight(s), wt = bank_.weight(t);
  if (ws < wt) return false;
  if (!var_condition(s, t)) return false;
  if (ws > wt) return true;
  const long ps = prec(bank_.sym(s)), pt = prec(bank_.sym(t));
  if (ps != pt) return ps > pt;
  if (!bank_.is_app(s)) return false;
  if (bank_.left(s) != bank_.left(t)) return kbo_gt(bank_.left(s), bank_.left(t));
  return kbo_gt(bank_.right(s), bank_.right(t));
}

bool TermOrdering::lpo_gt(TermId s, TermId t) const {
  if (s == t) return false;
  if (bank_.is_var(t)) return bank_.occurs(t, s);
  if (bank_.is_var(s)) return false;
  const std::uint64_t key = (static_cast<std::uint64_t>(s) << 32) | t;
  if (const auto it = lpo_memo_.find(key); it != lpo_memo_.end()) return it->second;
  const bool r = lpo_gt_uncached(s, t);
  lpo_memo_.emplace(key, r);
  return r;
}

bool TermOrdering::lpo_gt_uncached(TermId s, TermId t) const {
  if (bank_.is_app(s)) {
    const TermId sl = bank_.left(s), sr = bank_.right(s);
    if (sl == t || sr == t || lpo_gt(sl, t) || lpo_gt(sr, t)) return true;
  }
  const long ps = prec(bank_.sym(s)), pt = prec(bank_.sym(t));
  if (ps > pt) {
    if (!bank_.is_app(t)) return true;
    return lpo_gt(s, bank_.left(t)) && lpo_gt(s, bank_.right(t));
  }
  if (ps < pt || !bank_.is_app(s)) return false;
  const TermId sl = bank_.left(s), sr = bank_.right(s);
  const TermId tl = bank_.left(t), tr = bank_.right(t);
  if (sl != tl) return lpo_gt(sl, tl) && lpo_gt(s, tr);
  return lpo_gt(sr, tr);
}

bool TermOrdering::greater(TermId s, TermId t) const {
  if (kind_ == Kind::KBO) return kbo_gt(s, t);
  lpo_memo_.clear();
  return lpo_gt(s, t);
}

Cmp TermOrdering::compare(TermId s, TermId t) const {
  if (s == t) return Cmp::Equal;
  if (greater(s, t)) return Cmp::Greater;
  if (greater(t, s)) return Cmp::Less;
  return Cmp::Incomparable;
}

}  // namespace bm::prover
