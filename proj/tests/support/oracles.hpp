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

// Deliberately naive reference implementations used as test oracles. They
// share nothing with the library beyond the Term and Identity types.

#include <functional>
#include <vector>

#include "bm/term.hpp"

namespace oracle {

using Rows = std::vector<std::vector<int>>;

inline int ldiv(const Rows& m, int a, int b) {
  for (int s = 0; s < static_cast<int>(m.size()); ++s)
    if (m[a][s] == b) return s;
  return -1;
}

inline int rdiv(const Rows& m, int b, int a) {
  for (int s = 0; s < static_cast<int>(m.size()); ++s)
    if (m[s][a] == b) return s;
  return -1;
}

inline int eval(const Rows& m, const bm::Term& t, const std::vector<int>& vars) {
  if (t.is_var()) return vars.at(t.id());
  if (t.is_const()) return static_cast<int>(t.id());
  const int a = eval(m, t.left(), vars), b = eval(m, t.right(), vars);
  switch (t.op()) {
    case bm::Op::Mul: return m[a][b];
    case bm::Op::LDiv: return ldiv(m, a, b);
    case bm::Op::RDiv: return rdiv(m, a, b);
  }
  return -1;
}

inline int num_vars(const bm::Identity& id) { return has_vars(id) ? static_cast<int>(max_var_id(id)) + 1 : 0; }

inline bool holds(const Rows& m, const bm::Identity& id) {
  const int n = static_cast<int>(m.size()), k = num_vars(id);
  std::vector<int> v(k, 0);
  for (;;) {
    if (eval(m, id.lhs, v) != eval(m, id.rhs, v)) return false;
    int i = k - 1;
    while (i >= 0 && ++v[i] == n) v[i--] = 0;
    if (i < 0) return true;
  }
}

inline bool is_latin(const Rows& m) {
  const int n = static_cast<int>(m.size());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = j + 1; k < n; ++k)
        if (m[i][j] == m[i][k] || m[j][i] == m[k][i]) return false;
  return true;
}

inline bool has_left_neutral(const Rows& m) {
  const int n = static_cast<int>(m.size());
  for (int e = 0; e < n; ++e) {
    bool ok = true;
    for (int x = 0; x < n && ok; ++x) ok = m[e][x] == x;
    if (ok) return true;
  }
  return false;
}

inline bool has_right_neutral(const Rows& m) {
  const int n = static_cast<int>(m.size());
  for (int e = 0; e < n; ++e) {
    bool ok = true;
    for (int x = 0; x < n && ok; ++x) ok = m[x][e] == x;
    if (ok) return true;
  }
  return false;
}

inline bool commutative(const Rows& m) {
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m.size(); ++j)
      if (m[i][j] != m[j][i]) return false;
  return true;
}

/// Every n x n Latin square, by filling cells in row-major order with every
/// value and rejecting at the end. Only for n <= 4.
inline void all_latin_squares(int n, const std::function<void(const Rows&)>& f) {
  Rows m(n, std::vector<int>(n, 0));
  const int cells = n * n;
  std::function<void(int)> go = [&](int k) {
    if (k == cells) {
      if (is_latin(m)) f(m);
      return;
    }
    const int r = k / n, c = k % n;
    for (int v = 0; v < n; ++v) {
      bool clash = false;  // prune only on exact row/column repeats to keep it obviously right
      for (int j = 0; j < c && !clash; ++j) clash = m[r][j] == v;
      for (int i = 0; i < r && !clash; ++i) clash = m[i][c] == v;
      if (clash) continue;
      m[r][c] = v;
      go(k + 1);
    }
  };
  go(0);
}

}  // namespace oracle
