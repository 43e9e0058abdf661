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

#include "bm/classifier.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <condition_variable>
#include <cstdio>
#include <map>
#include <mutex>
#include <set>
#include <thread>

namespace bm {

std::string_view mode_name(ClassifyMode m) {
  return m == ClassifyMode::Quasigroup ? "quasigroup" : "commutative";
}

std::string_view cell_status_name(CellStatus s) {
  switch (s) {
    case CellStatus::Proved: return "proved";
    case CellStatus::Refuted: return "refuted";
    case CellStatus::Unknown: return "unknown";
  }
  return "?";
}

std::string_view loop_status_symbol(LoopStatus s) {
  switch (s) {
    case LoopStatus::Both: return "2";
    case LoopStatus::LeftOnly: return "L";
    case LoopStatus::RightOnly: return "R";
    case LoopStatus::Neither: return "0";
    case LoopStatus::Unknown: return "?";
  }
  return "?";
}

std::size_t ClassificationReport::unknown_cells() const {
  std::size_t n = 0;
  for (const auto& row : cells)
    for (const auto& c : row) n += c.status == CellStatus::Unknown;
  return n;
}

int ClassificationReport::class_of(BmName name) const {
  for (std::size_t c = 0; c < classes.size(); ++c)
    for (const auto& m : classes[c].members)
      if (m == name) return static_cast<int>(c);
  return -1;
}

int ClassificationReport::find_class(std::string_view abbreviation) const {
  for (std::size_t c = 0; c < classes.size(); ++c) {
    std::string_view label = classes[c].label;
    while (!label.empty()) {
      const auto cut = label.find('=');
      if (label.substr(0, cut) == abbreviation) return static_cast<int>(c);
      if (cut == std::string_view::npos) break;
      label.remove_prefix(cut + 1);
    }
  }
  return -1;
}

// ---------------------------------------------------------------------------
// Constructed loops.

QuasigroupTable moufang_loop_12() {
  std::vector<std::array<int, 3>> perms;
  std::array<int, 3> p{0, 1, 2};
  do perms.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  auto index = [&](const std::array<int, 3>& q) {
    return static_cast<int>(std::find(perms.begin(), perms.end(), q) - perms.begin());
  };
  auto mul = [&](int g, int h) {
    std::array<int, 3> r{};
    for (int x = 0; x < 3; ++x) r[x] = perms[g][perms[h][x]];
    return index(r);
  };
  auto inv = [&](int g) {
    std::array<int, 3> r{};
    for (int x = 0; x < 3; ++x) r[perms[g][x]] = x;
    return index(r);
  };
  // Elements g (0..5) and gu (6..11).
  std::vector<std::vector<int>> rows(12, std::vector<int>(12));
  for (int a = 0; a < 12; ++a)
    for (int b = 0; b < 12; ++b) {
      const int g = a % 6, h = b % 6;
      const bool gu = a >= 6, hu = b >= 6;
      if (!gu && !hu) rows[a][b] = mul(g, h);
      else if (!gu && hu) rows[a][b] = 6 + mul(h, g);
      else if (gu && !hu) rows[a][b] = 6 + mul(g, inv(h));
      else rows[a][b] = mul(inv(h), g);
    }
  return QuasigroupTable::from_rows(rows);
}

namespace {

using Vec = std::vector<int>;

Vec cd_conj(const Vec& x) {
  Vec r(x.size());
  r[0] = x[0];
  for (std::size_t i = 1; i < x.size(); ++i) r[i] = -x[i];
  return r;
}

Vec cd_add(const Vec& a, const Vec& b, int sign) {
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + sign * b[i];
  return r;
}

// Cayley-Dickson: (a, b)(c, d) = (ac - d*b, da + bc*).
Vec cd_mul(const Vec& x, const Vec& y) {
  if (x.size() == 1) return {x[0] * y[0]};
  const std::size_t h = x.size() / 2;
  const Vec a(x.begin(), x.begin() + h), b(x.begin() + h, x.end());
  const Vec c(y.begin(), y.begin() + h), d(y.begin() + h, y.end());
  Vec lo = cd_add(cd_mul(a, c), cd_mul(cd_conj(d), b), -1);
  const Vec hi = cd_add(cd_mul(d, a), cd_mul(b, cd_conj(c)), 1);
  lo.insert(lo.end(), hi.begin(), hi.end());
  return lo;
}

}  // namespace

QuasigroupTable octonion_loop_16() {
  // Element s*8 + i stands for (-1)^s e_i.
  auto vec = [](int el) {
    Vec v(8, 0);
    v[el % 8] = el >= 8 ? -1 : 1;
    return v;
  };
  std::vector<std::vector<int>> rows(16, std::vector<int>(16));
  for (int a = 0; a < 16; ++a)
    for (int b = 0; b < 16; ++b) {
      const Vec p = cd_mul(vec(a), vec(b));
      for (int i = 0; i < 8; ++i)
        if (p[i] != 0) rows[a][b] = i + (p[i] < 0 ? 8 : 0);
    }
  return QuasigroupTable::from_rows(rows);
}

QuasigroupTable lc_loop_12() {
  // Element e*6 + j stands for (e, j) in Z2 x Z6.
  std::vector<std::vector<int>> rows(12, std::vector<int>(12));
  for (int x = 0; x < 12; ++x)
    for (int y = 0; y < 12; ++y) {
      const int e = x / 6, j = x % 6, f = y / 6, k = y % 6;
      const int s = (e == 1 && j % 2 == 0) ? 5 : 1;
      rows[x][y] = ((e + f) % 2) * 6 + (j + s * k) % 6;
    }
  return QuasigroupTable::from_rows(rows);
}

// ---------------------------------------------------------------------------

namespace {

constexpr int kBm = 60;
constexpr int kIds = 64;  // 60 Bol-Moufang identities, then assoc, lalt, ralt, flex
constexpr NamedLaw kLaws[4] = {NamedLaw::Associativity, NamedLaw::LeftAlternative, NamedLaw::RightAlternative,
                               NamedLaw::Flexibility};

std::string id_name(int i) { return i < kBm ? bm_at(i).str() : std::string(law_keyword(kLaws[i - kBm])); }

int law_index(NamedLaw law) {
  for (int k = 0; k < 4; ++k)
    if (kLaws[k] == law) return kBm + k;
  throw Error("law outside the classifier's identity set");
}

struct Strategy {
  std::string name;
  ProverConfig cfg;
  bool lemmas = false;
};

struct Attempt {
  bool proved = false;
  ProofObject proof;
  std::string strategy;
  double seconds = 0;
  std::string note;  // strategies tried and the last reason
};

/// Processes items in list order with `width` threads. An item is computed
/// only while `wanted` holds and committed only if it still holds once
/// every earlier item is committed, so the outcome equals a serial run.
template <class Item, class Result>
void run_ordered(const std::vector<Item>& items, int width, std::mutex& mu,
                 const std::function<bool(const Item&)>& wanted,
                 const std::function<std::optional<Result>(const Item&)>& compute,
                 const std::function<void(const Item&, Result&)>& commit) {
  if (width <= 1 || items.size() < 2) {
    for (const auto& it : items) {
      if (!wanted(it)) continue;
      auto r = compute(it);
      if (r) commit(it, *r);
    }
    return;
  }
  std::vector<std::optional<Result>> slots(items.size());
  std::vector<char> done(items.size(), 0);
  std::atomic<std::size_t> next{0};
  std::condition_variable cv;
  auto worker = [&] {
    for (;;) {
      const std::size_t k = next.fetch_add(1);
      if (k >= items.size()) return;
      bool w;
      {
        std::lock_guard<std::mutex> lk(mu);
        w = wanted(items[k]);
      }
      std::optional<Result> r;
      if (w) r = compute(items[k]);
      {
        std::lock_guard<std::mutex> lk(mu);
        slots[k] = std::move(r);
        done[k] = 1;
      }
      cv.notify_all();
    }
  };
  std::vector<std::thread> pool;
  for (int t = 0; t < width; ++t) pool.emplace_back(worker);
  for (std::size_t k = 0; k < items.size(); ++k) {
    std::unique_lock<std::mutex> lk(mu);
    cv.wait(lk, [&] { return done[k] != 0; });
    if (slots[k] && wanted(items[k])) commit(items[k], *slots[k]);
    slots[k].reset();
  }
  for (auto& t : pool) t.join();
}

class Classifier {
 public:
  explicit Classifier(const ClassifierConfig& cfg) : cfg_(cfg) {
    r_.config = cfg;
    r_.cells.assign(kBm, std::vector<Cell>(kBm));
    for (int i = 0; i < kBm; ++i) ids_.push_back(identity_of(bm_at(i)));
    for (auto law : kLaws) ids_.push_back(law_identity(law));
    comm_ = cfg.mode == ClassifyMode::Commutative;
    for (int i = 0; i < kBm; ++i) {
      r_.cells[i][i].status = CellStatus::Proved;
      proved_[i][i] = true;
    }
  }

  ClassificationReport run();

 private:
  void log(const std::string& s) const {
    if (cfg_.log) cfg_.log(s);
  }
  double elapsed() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

  // Witness pool.
  int add_witness(const QuasigroupTable& t, const std::string& source);
  int refuting_witness(int i, int j) const;  // identity indices 0..63
  int loop_refuting_witness(int i, int side) const;
  void refresh_refuted();
  bool open(int i, int j) const { return r_.cells[i][j].status == CellStatus::Unknown; }

  // Proofs.
  std::uint32_t add_proof(const std::string& stem, const Attempt& a);
  std::vector<Identity> base_hyps(int i) const {
    std::vector<Identity> h{ids_[i]};
    if (comm_) h.push_back(law_identity(NamedLaw::Commutativity));
    return h;
  }
  std::vector<Strategy> schedule(double timeout, bool lemmas) const;
  Attempt attempt(int i, const Identity& goal, const std::vector<Strategy>& sched, bool left, bool right) const;
  void set_proved(int a, int b, std::vector<std::uint32_t> chain);
  std::vector<std::uint32_t> chain(int i, int j) const { return r_.cells[i][j].proofs; }

  // Loop lemmas per identity; side 0 = left, 1 = right.
  bool lemma_resolved(int i, int side) const;
  std::optional<std::vector<std::uint32_t>> lemma_chain(int i, int side) const;

  ConstraintSet pair_constraints(int i, int j) const {
    ConstraintSet c;
    c.satisfy = {ids_[i]};
    c.violate = {ids_[j]};
    c.commutative = comm_;
    return c;
  }
  SearchConfig search_cfg(int lo, int hi) const {
    SearchConfig s;
    s.min_order = lo;
    s.max_order = hi;
    s.time_limit = cfg_.finder_time_limit;
    return s;
  }

  /// node_limit > 0 makes this a probe: it may find witnesses but leaves no bounds.
  void phase_finder(int lo, int hi, const std::string& label, std::uint64_t node_limit = 0);
  /// Least index proved equivalent to i so far.
  int rep(int i) const;
  /// Without `full` each pair gets one attempt: with loop lemmas when `lemmas` and some are known, else kbo.
  void phase_prover(const std::string& label, double timeout, bool lemmas, bool full);
  /// Without `full`: quick and medium single attempts plus a probe search.
  void phase_loops(bool full);
  void phase_laws();
  void build_classes();
  void build_hasse();
  void check_duality();

  ClassifierConfig cfg_;
  ClassificationReport r_;
  std::vector<Identity> ids_;
  bool comm_ = false;
  std::vector<std::uint64_t> sat_;  // per witness: bit k = identity k holds
  std::vector<std::uint8_t> flags_;  // bit 0: left neutral exists, bit 1: right neutral exists
  bool proved_[kBm][kBm] = {};
  SideResult lemma_[kBm][2];
  std::map<std::pair<int, int>, std::string> bounds_;
  std::set<std::string> stems_;
  std::mutex mu_;
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

int Classifier::add_witness(const QuasigroupTable& t, const std::string& source) {
  if (comm_ && !is_commutative(t)) return -1;
  for (const auto& w : r_.witnesses)
    if (w.table == t) return -1;
  std::uint64_t mask = 0;
  for (int k = 0; k < kIds; ++k)
    if (CompiledIdentity(ids_[k]).holds(t)) mask |= std::uint64_t{1} << k;
  const auto ns = neutral_status(t);
  char path[32];
  std::snprintf(path, sizeof path, "witnesses/w%03zu.tbl", r_.witnesses.size());
  r_.witnesses.push_back({path, source, t});
  sat_.push_back(mask);
  flags_.push_back(static_cast<std::uint8_t>((ns.left ? 1 : 0) | (ns.right ? 2 : 0)));
  refresh_refuted();
  return static_cast<int>(r_.witnesses.size()) - 1;
}

int Classifier::refuting_witness(int i, int j) const {
  int best = -1;
  for (std::size_t w = 0; w < sat_.size(); ++w) {
    if (!((sat_[w] >> i) & 1u) || ((sat_[w] >> j) & 1u)) continue;
    if (best < 0 || r_.witnesses[w].table.order() < r_.witnesses[best].table.order()) best = static_cast<int>(w);
  }
  return best;
}

int Classifier::loop_refuting_witness(int i, int side) const {
  int best = -1;
  for (std::size_t w = 0; w < sat_.size(); ++w) {
    if (!((sat_[w] >> i) & 1u) || ((flags_[w] >> side) & 1u)) continue;
    if (best < 0 || r_.witnesses[w].table.order() < r_.witnesses[best].table.order()) best = static_cast<int>(w);
  }
  return best;
}

void Classifier::refresh_refuted() {
  for (int i = 0; i < kBm; ++i)
    for (int j = 0; j < kBm; ++j) {
      auto& c = r_.cells[i][j];
      const int w = refuting_witness(i, j);
      if (w < 0) continue;
      if (c.status == CellStatus::Proved)
        throw Error("inconsistent: " + id_name(i) + " => " + id_name(j) + " is proved but " +
                    r_.witnesses[w].source + " refutes it");
      c.status = CellStatus::Refuted;
      c.witness = w;
    }
  for (int i = 0; i < kBm; ++i)
    for (int side = 0; side < 2; ++side) {
      auto& s = lemma_[i][side];
      const int w = loop_refuting_witness(i, side);
      if (w < 0) continue;
      if (s.status == CellStatus::Proved) throw Error("inconsistent loop status for " + id_name(i));
      s.status = CellStatus::Refuted;
      s.witness = w;
    }
}

std::uint32_t Classifier::add_proof(const std::string& stem, const Attempt& a) {
  std::string s = stem;
  for (int k = 2; stems_.count(s); ++k) s = stem + "-" + std::to_string(k);
  stems_.insert(s);
  r_.proofs.push_back({"proofs/" + s + ".proof", a.strategy, a.seconds, a.proof});
  return static_cast<std::uint32_t>(r_.proofs.size() - 1);
}

std::vector<Strategy> Classifier::schedule(double timeout, bool lemmas) const {
  ProverConfig base = cfg_.prover;
  base.time_limit = timeout;
  ProverConfig heavy = base;
  heavy.weights[0] = 2;
  std::vector<Strategy> s;
  if (lemmas) s.push_back({"kbo+loop", base, true});
  s.push_back({"kbo", base, false});
  s.push_back({"kbo-mul2", heavy, false});
  return s;
}

Attempt Classifier::attempt(int i, const Identity& goal, const std::vector<Strategy>& sched, bool left,
                            bool right) const {
  Attempt out;
  const auto hyps = base_hyps(i);
  for (const auto& st : sched) {
    if (st.lemmas && !left && !right) continue;
    const ProveResult res =
        st.lemmas ? prove_with_loop_lemmas(hyps, goal, left, right, st.cfg) : prove(hyps, goal, st.cfg);
    out.seconds += res.stats.seconds;
    if (!out.note.empty()) out.note += ", ";
    out.note += st.name + ":" + (res.proved ? "proved" : std::string(gave_up_reason_name(res.reason)));
    if (res.proved) {
      out.proved = true;
      out.proof = res.proof;
      out.strategy = st.name;
      return out;
    }
  }
  return out;
}

void Classifier::set_proved(int a, int b, std::vector<std::uint32_t> direct) {
  if (proved_[a][b]) return;
  auto& cell = r_.cells[a][b];
  if (cell.status == CellStatus::Refuted)
    throw Error("inconsistent: proof of " + id_name(a) + " => " + id_name(b) + " contradicts " +
                r_.witnesses[cell.witness].source);
  cell.status = CellStatus::Proved;
  cell.proofs = std::move(direct);
  cell.bounds.clear();
  proved_[a][b] = true;
  std::vector<int> before, after;
  for (int i = 0; i < kBm; ++i)
    if (proved_[i][a]) before.push_back(i);
  for (int j = 0; j < kBm; ++j)
    if (proved_[b][j]) after.push_back(j);
  for (int i : before)
    for (int j : after) {
      if (proved_[i][j]) continue;
      auto& c = r_.cells[i][j];
      if (c.status == CellStatus::Refuted)
        throw Error("inconsistent: closure gives " + id_name(i) + " => " + id_name(j) + " but " +
                    r_.witnesses[c.witness].source + " refutes it");
      std::vector<std::uint32_t> ch = r_.cells[i][a].proofs;
      ch.insert(ch.end(), cell.proofs.begin(), cell.proofs.end());
      const auto& tail = r_.cells[b][j].proofs;
      ch.insert(ch.end(), tail.begin(), tail.end());
      c.status = CellStatus::Proved;
      c.proofs = std::move(ch);
      c.bounds.clear();
      proved_[i][j] = true;
    }
}

std::optional<std::vector<std::uint32_t>> Classifier::lemma_chain(int i, int side) const {
  if (lemma_[i][side].status == CellStatus::Proved) return lemma_[i][side].proofs;
  for (int k = 0; k < kBm; ++k)
    if (k != i && proved_[i][k] && lemma_[k][side].status == CellStatus::Proved) {
      auto ch = r_.cells[i][k].proofs;
      const auto& l = lemma_[k][side].proofs;
      ch.insert(ch.end(), l.begin(), l.end());
      return ch;
    }
  return std::nullopt;
}

bool Classifier::lemma_resolved(int i, int side) const {
  return lemma_[i][side].status != CellStatus::Unknown || lemma_chain(i, side).has_value();
}

void Classifier::phase_finder(int lo, int hi, const std::string& label, std::uint64_t node_limit) {
  if (lo > hi) return;
  std::vector<std::pair<int, int>> items;
  for (int i = 0; i < kBm; ++i)
    for (int j = 0; j < kBm; ++j)
      if (i != j && open(i, j)) items.emplace_back(i, j);
  log(label + ": " + std::to_string(items.size()) + " open pairs");
  std::size_t found = 0, done = 0;
  run_ordered<std::pair<int, int>, SearchOutcome>(
      items, cfg_.parallel_width, mu_, [&](const auto& p) { return open(p.first, p.second); },
      [&](const auto& p) -> std::optional<SearchOutcome> {
        auto sc = search_cfg(lo, hi);
        sc.node_limit = node_limit;
        return find_model(pair_constraints(p.first, p.second), sc);
      },
      [&](const auto& p, SearchOutcome& o) {
        if (++done % 250 == 0) log("  " + std::to_string(done) + " searched, " + std::to_string(found) + " found");
        if (o.seconds > 5)
          log("  slow search " + id_name(p.first) + " and not " + id_name(p.second) + ": " +
              o.summary_line());
        if (o.table) {
          add_witness(*o.table, "finder: " + id_name(p.first) + " and not " + id_name(p.second));
          ++found;
        } else if (node_limit == 0) {
          char buf[96];
          std::snprintf(buf, sizeof buf, "finder orders %d..%d %s", lo, hi,
                        o.kind == SearchOutcome::Kind::Aborted ? "aborted" : "exhausted");
          bounds_[p] = buf;
        }
      });
  log(label + ": " + std::to_string(found) + " witnesses added");
}

int Classifier::rep(int i) const {
  for (int k = 0; k < i; ++k)
    if (r_.cells[i][k].status == CellStatus::Proved && r_.cells[k][i].status == CellStatus::Proved) return k;
  return i;
}

void Classifier::phase_prover(const std::string& label, double timeout, bool lemmas, bool full) {
  std::vector<std::pair<int, int>> mutual, cover, rest;
  for (int i = 0; i < kBm; ++i)
    for (int j = 0; j < kBm; ++j) {
      if (i == j || !open(i, j)) continue;
      if (open(j, i)) {
        mutual.emplace_back(i, j);
        continue;
      }
      bool is_cover = true;
      for (int k = 0; k < kBm && is_cover; ++k)
        if (k != i && k != j && r_.cells[i][k].status != CellStatus::Refuted &&
            r_.cells[k][j].status != CellStatus::Refuted)
          is_cover = false;
      (is_cover ? cover : rest).emplace_back(i, j);
    }
  std::vector<std::pair<int, int>> items = mutual;
  items.insert(items.end(), cover.begin(), cover.end());
  items.insert(items.end(), rest.begin(), rest.end());
  log(label + ": " + std::to_string(items.size()) + " open pairs");

  // Lemma availability is fixed for the whole pass so that results do not
  // depend on commit timing.
  bool left[kBm], right[kBm];
  for (int i = 0; i < kBm; ++i) {
    left[i] = lemmas && lemma_chain(i, 0).has_value();
    right[i] = lemmas && lemma_chain(i, 1).has_value();
  }
  std::size_t proved = 0;
  // One failed attempt per pair of current classes and pass.
  std::map<std::pair<int, int>, std::pair<int, int>> failed;
  auto class_pair = [&](const std::pair<int, int>& p) { return std::make_pair(rep(p.first), rep(p.second)); };
  run_ordered<std::pair<int, int>, Attempt>(
      items, cfg_.parallel_width, mu_,
      [&](const auto& p) { return open(p.first, p.second) && !failed.count(class_pair(p)); },
      [&](const auto& p) -> std::optional<Attempt> {
        const int i = p.first, j = p.second;
        auto sched = schedule(timeout, left[i] || right[i]);
        if (!full) sched.resize(1);
        return attempt(i, ids_[j], sched, left[i], right[i]);
      },
      [&](const auto& p, Attempt& a) {
        const int i = p.first, j = p.second;
        if (!a.proved) {
          auto& b = bounds_[p];
          b += (b.empty() ? "" : "; ") + std::string("prover ") + a.note;
          if (full) log("  open: " + id_name(i) + " => " + id_name(j) + " (" + a.note + ")");
          failed.emplace(class_pair(p), p);
          return;
        }
        std::vector<std::uint32_t> ch;
        if (a.strategy == "kbo+loop") {
          for (int side = 0; side < 2; ++side)
            if (side == 0 ? left[i] : right[i]) {
              const auto l = *lemma_chain(i, side);
              ch.insert(ch.end(), l.begin(), l.end());
            }
        }
        ch.push_back(add_proof(id_name(i) + "-" + id_name(j), a));
        set_proved(i, j, std::move(ch));
        ++proved;
        log("  proved " + id_name(i) + " => " + id_name(j) + " [" + a.strategy + "]");
      });
  std::size_t skipped = 0;
  for (const auto& p : items) {
    if (!open(p.first, p.second)) continue;
    const auto it = failed.find(class_pair(p));
    if (it == failed.end() || it->second == p) continue;
    auto& b = bounds_[p];
    b += (b.empty() ? "" : "; ") + label + " skipped: " + id_name(it->second.first) + " => " +
         id_name(it->second.second) + " failed";
    ++skipped;
  }
  log(label + ": " + std::to_string(proved) + " proofs, " + std::to_string(skipped) + " skipped");
}

void Classifier::phase_loops(bool full) {
  std::vector<std::pair<int, int>> items;
  for (int i = 0; i < kBm; ++i)
    for (int side = 0; side < 2; ++side)
      if (!lemma_resolved(i, side)) items.emplace_back(i, side);
  log(std::string(full ? "loops" : "quick loops") + ": " + std::to_string(items.size()) + " open sides");
  struct Out {
    std::optional<QuasigroupTable> table;
    Attempt a;
  };
  run_ordered<std::pair<int, int>, Out>(
      items, cfg_.parallel_width, mu_, [&](const auto& p) { return !lemma_resolved(p.first, p.second); },
      [&](const auto& p) -> std::optional<Out> {
        const int i = p.first, side = p.second;
        const Identity goal = side == 0 ? left_loop_goal() : right_loop_goal();
        Out o;
        auto quick = schedule(cfg_.quick_timeout, false);
        quick.resize(1);
        o.a = attempt(i, goal, quick, false, false);
        if (o.a.proved) return o;
        ConstraintSet c;
        c.satisfy = {ids_[i]};
        (side == 0 ? c.not_left_loop : c.not_right_loop) = true;
        c.commutative = comm_;
        auto sc = search_cfg(1, cfg_.max_order);
        if (!full) sc.node_limit = cfg_.probe_nodes;
        const auto s = find_model(c, sc);
        if (s.table) {
          o.table = s.table;
          return o;
        }
        auto sched = schedule(full ? cfg_.timeout : cfg_.medium_timeout, false);
        if (!full) sched.resize(1);
        o.a = attempt(i, goal, sched, false, false);
        return o;
      },
      [&](const auto& p, Out& o) {
        const int i = p.first, side = p.second;
        const char* what = side == 0 ? "left-loop" : "right-loop";
        if (o.table) {
          add_witness(*o.table, "finder: " + id_name(i) + " and not a " + std::string(what));
        } else if (o.a.proved) {
          lemma_[i][side].status = CellStatus::Proved;
          lemma_[i][side].proofs = {add_proof(id_name(i) + "-" + what, o.a)};
          log("  proved " + id_name(i) + " => " + what + " [" + o.a.strategy + "]");
        } else {
          log("  open: " + id_name(i) + " " + what + " (" + o.a.note + ")");
        }
      });
}

void Classifier::phase_laws() {
  for (const auto& v : variety_table()) {
    if (v.has_bm_definer()) continue;
    const NamedLaw law = std::get<NamedLaw>(v.definer);
    const int L = law_index(law);
    LawLink link;
    link.abbreviation = v.abbreviation;
    link.law = law;
    for (std::size_t c = 0; c < r_.classes.size() && link.cls < 0; ++c) {
      const int rep = bm_index(r_.classes[c].representative);
      if (refuting_witness(L, rep) >= 0 || refuting_witness(rep, L) >= 0) continue;
      // law => representative, with the law as the only hypothesis.
      std::vector<Identity> hyps{ids_[L]};
      if (comm_) hyps.push_back(law_identity(NamedLaw::Commutativity));
      Attempt to;
      for (const auto& st : schedule(cfg_.timeout, false)) {
        const auto res = prove(hyps, ids_[rep], st.cfg);
        to.seconds += res.stats.seconds;
        if (res.proved) {
          to.proved = true;
          to.proof = res.proof;
          to.strategy = st.name;
          break;
        }
      }
      if (!to.proved) continue;
      const Attempt from = attempt(rep, ids_[L], schedule(cfg_.timeout, false), false, false);
      if (!from.proved) continue;
      link.cls = static_cast<int>(c);
      link.to_rep = {add_proof(id_name(L) + "-" + id_name(rep), to)};
      link.from_rep = {add_proof(id_name(rep) + "-" + id_name(L), from)};
      log("  " + v.abbreviation + " = class of " + id_name(rep));
    }
    if (link.cls < 0) log("  " + v.abbreviation + ": no class proved equivalent");
    r_.laws.push_back(link);
  }
  // Relabel classes now that law links are known.
  for (const auto& link : r_.laws) {
    if (link.cls < 0) continue;
    auto& lab = r_.classes[link.cls].label;
    lab = lab.empty() ? link.abbreviation : link.abbreviation + "=" + lab;
  }
}

void Classifier::build_classes() {
  std::vector<int> cls(kBm, -1);
  std::vector<std::vector<int>> groups;
  for (int i = 0; i < kBm; ++i) {
    if (cls[i] >= 0) continue;
    cls[i] = static_cast<int>(groups.size());
    groups.push_back({i});
    for (int j = i + 1; j < kBm; ++j)
      if (cls[j] < 0 && proved_[i][j] && proved_[j][i]) {
        cls[j] = cls[i];
        groups.back().push_back(j);
      }
  }
  // Order: by the first catalog variety definer contained, then by representative.
  auto table_pos = [&](const std::vector<int>& g) {
    const auto& vt = variety_table();
    for (std::size_t v = 0; v < vt.size(); ++v)
      if (vt[v].has_bm_definer() &&
          std::find(g.begin(), g.end(), bm_index(std::get<BmName>(vt[v].definer))) != g.end())
        return static_cast<int>(v);
    return 1000;
  };
  std::stable_sort(groups.begin(), groups.end(),
                   [&](const auto& a, const auto& b) { return table_pos(a) < table_pos(b); });
  r_.classes.clear();
  for (const auto& g : groups) {
    ClassInfo c;
    for (int i : g) c.members.push_back(bm_at(i));
    c.representative = c.members.front();
    for (const auto& v : variety_table())
      if (v.has_bm_definer() && std::find(g.begin(), g.end(), bm_index(std::get<BmName>(v.definer))) != g.end())
        c.label += (c.label.empty() ? "" : "=") + v.abbreviation;
    for (int i : g)
      for (int j = 0; j < kBm; ++j)
        if (r_.cells[i][j].status == CellStatus::Unknown || r_.cells[j][i].status == CellStatus::Unknown)
          c.complete = false;
    const int rep = g.front();
    for (int side = 0; side < 2; ++side) {
      SideResult s = lemma_[rep][side];
      if (s.status == CellStatus::Unknown)
        if (auto ch = lemma_chain(rep, side)) {
          s.status = CellStatus::Proved;
          s.proofs = *ch;
        }
      (side == 0 ? c.left : c.right) = s;
    }
    const auto L = c.left.status, R = c.right.status;
    using S = CellStatus;
    if (L == S::Proved && R == S::Proved) c.status = LoopStatus::Both;
    else if (L == S::Proved && R == S::Refuted) c.status = LoopStatus::LeftOnly;
    else if (L == S::Refuted && R == S::Proved) c.status = LoopStatus::RightOnly;
    else if (L == S::Refuted && R == S::Refuted) c.status = LoopStatus::Neither;
    else c.status = LoopStatus::Unknown;
    r_.classes.push_back(std::move(c));
  }
}

void Classifier::build_hasse() {
  const int n = static_cast<int>(r_.classes.size());
  std::vector<int> rep(n);
  for (int c = 0; c < n; ++c) rep[c] = bm_index(r_.classes[c].representative);
  auto below = [&](int a, int b) { return a != b && proved_[rep[a]][rep[b]]; };
  for (int a = 0; a < n; ++a) {
    bool has_out = false;
    for (int b = 0; b < n; ++b) {
      if (!below(a, b)) continue;
      has_out = true;
      if (below(b, a)) throw Error("internal: classes " + r_.classes[a].label + " and " + r_.classes[b].label +
                                   " are mutually included");
      bool covered = true;
      for (int c = 0; c < n && covered; ++c)
        if (below(a, c) && below(c, b)) covered = false;
      if (covered) r_.hasse_edges.emplace_back(a, b);
    }
    if (!has_out) r_.minimal_classes.push_back(a);
  }
}

void Classifier::check_duality() {
  for (int i = 0; i < kBm; ++i)
    for (int j = 0; j < kBm; ++j) {
      const int di = bm_index(dual_name(bm_at(i))), dj = bm_index(dual_name(bm_at(j)));
      if (r_.cells[i][j].status != r_.cells[di][dj].status) r_.dual_mismatches.emplace_back(i, j);
    }
}

ClassificationReport Classifier::run() {
  for (const auto& path : cfg_.fixture_paths) {
    const auto slash = path.find_last_of('/');
    add_witness(read_table_file(path), "fixture: " + path.substr(slash == std::string::npos ? 0 : slash + 1));
  }
  if (cfg_.constructed_loops) {
    add_witness(moufang_loop_12(), "construction: M(S3,2)");
    add_witness(octonion_loop_16(), "construction: octonion units");
    add_witness(lc_loop_12(), "construction: LC loop on Z2 x Z6");
    add_witness(transpose(lc_loop_12()), "construction: transposed LC loop on Z2 x Z6");
  }
  log("pool: " + std::to_string(r_.witnesses.size()) + " tables");
  const int small = std::min(4, cfg_.max_order);
  phase_finder(1, small, "finder (small orders)");
  phase_finder(small + 1, cfg_.max_order, "finder probe (large orders)", cfg_.probe_nodes);
  phase_prover("quick prover", cfg_.quick_timeout, false, false);
  phase_loops(false);
  phase_prover("medium prover", cfg_.medium_timeout, true, false);
  phase_finder(small + 1, cfg_.max_order, "finder (large orders)");
  phase_loops(true);
  phase_prover("prover", cfg_.timeout, true, true);
  for (int i = 0; i < kBm; ++i)
    for (int j = 0; j < kBm; ++j)
      if (r_.cells[i][j].status == CellStatus::Unknown) {
        auto it = bounds_.find({i, j});
        r_.cells[i][j].bounds = it == bounds_.end() ? "not attempted" : it->second;
      }
  build_classes();
  log("classes: " + std::to_string(r_.classes.size()));
  phase_laws();
  build_hasse();
  check_duality();
  r_.wall_seconds = elapsed();
  return std::move(r_);
}

}  // namespace

ClassificationReport classify(const ClassifierConfig& cfg) {
  Classifier c(cfg);
  return c.run();
}

}  // namespace bm
