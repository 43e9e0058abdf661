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

#include <filesystem>
#include <fstream>
#include <sstream>

#include "bm/classifier.hpp"
#include "json.hpp"

namespace bm {

namespace {

using Json = nlohmann::ordered_json;

Json paths(const ClassificationReport& r, const std::vector<std::uint32_t>& ids) {
  Json a = Json::array();
  for (auto id : ids) a.push_back(r.proofs.at(id).path);
  return a;
}

Json side_json(const ClassificationReport& r, const SideResult& s) {
  Json j;
  j["status"] = cell_status_name(s.status);
  if (s.status == CellStatus::Proved) j["proof_path"] = paths(r, s.proofs);
  if (s.status == CellStatus::Refuted) j["witness_path"] = r.witnesses.at(s.witness).path;
  return j;
}

std::string class_name(const ClassificationReport& r, int c) {
  const auto& k = r.classes.at(c);
  return k.label.empty() ? k.representative.str() : k.label;
}

std::string render_json(const ClassificationReport& r) {
  Json doc;
  doc["mode"] = mode_name(r.config.mode);
  Json ids = Json::array();
  for (const auto& [name, id] : enumerate_bm())
    ids.push_back({{"name", name.str()}, {"identity", id.str()}, {"dual", dual_name(name).str()}});
  doc["identities"] = ids;

  Json cells = Json::array();
  for (const auto& row : r.cells) {
    Json jr = Json::array();
    for (const auto& c : row) {
      Json jc;
      jc["status"] = cell_status_name(c.status);
      if (c.status == CellStatus::Proved) jc["proof_path"] = paths(r, c.proofs);
      if (c.status == CellStatus::Refuted) {
        jc["order"] = r.witnesses.at(c.witness).table.order();
        jc["witness_path"] = r.witnesses.at(c.witness).path;
      }
      if (c.status == CellStatus::Unknown) jc["bounds"] = c.bounds;
      jr.push_back(jc);
    }
    cells.push_back(jr);
  }
  doc["cells"] = cells;

  Json unknown = Json::array();
  for (std::size_t i = 0; i < r.cells.size(); ++i)
    for (std::size_t j = 0; j < r.cells[i].size(); ++j)
      if (r.cells[i][j].status == CellStatus::Unknown)
        unknown.push_back({bm_at(static_cast<int>(i)).str(), bm_at(static_cast<int>(j)).str()});
  doc["unknown_cells"] = unknown;

  Json classes = Json::array();
  for (std::size_t c = 0; c < r.classes.size(); ++c) {
    const auto& k = r.classes[c];
    Json jc;
    jc["label"] = class_name(r, static_cast<int>(c));
    jc["representative"] = k.representative.str();
    Json members = Json::array();
    for (const auto& m : k.members) members.push_back(m.str());
    jc["members"] = members;
    jc["status"] = loop_status_symbol(k.status);
    jc["complete"] = k.complete;
    jc["left_loop"] = side_json(r, k.left);
    jc["right_loop"] = side_json(r, k.right);
    classes.push_back(jc);
  }
  doc["classes"] = classes;

  Json edges = Json::array();
  for (const auto& [a, b] : r.hasse_edges) edges.push_back({class_name(r, a), class_name(r, b)});
  doc["hasse_edges"] = edges;

  Json statuses = Json::object();
  for (std::size_t c = 0; c < r.classes.size(); ++c)
    statuses[class_name(r, static_cast<int>(c))] = loop_status_symbol(r.classes[c].status);
  doc["statuses"] = statuses;

  Json minimal = Json::array();
  for (int c : r.minimal_classes) minimal.push_back(class_name(r, c));
  doc["minimal_classes"] = minimal;

  Json laws = Json::array();
  for (const auto& l : r.laws) {
    Json jl;
    jl["variety"] = l.abbreviation;
    jl["law"] = law_keyword(l.law);
    jl["class"] = l.cls >= 0 ? Json(class_name(r, l.cls)) : Json(nullptr);
    jl["law_to_rep"] = paths(r, l.to_rep);
    jl["rep_to_law"] = paths(r, l.from_rep);
    laws.push_back(jl);
  }
  doc["laws"] = laws;

  Json mism = Json::array();
  for (const auto& [i, j] : r.dual_mismatches) mism.push_back({bm_at(i).str(), bm_at(j).str()});
  doc["dual_mismatches"] = mism;

  Json wit = Json::array();
  for (const auto& w : r.witnesses)
    wit.push_back({{"path", w.path}, {"order", w.table.order()}, {"source", w.source}});
  doc["witnesses"] = wit;

  Json prf = Json::array();
  for (const auto& p : r.proofs) {
    Json h = Json::array();
    for (const auto& id : p.proof.hypotheses) h.push_back(id.str());
    prf.push_back({{"path", p.path},
                   {"strategy", p.strategy},
                   {"hypotheses", h},
                   {"goal", p.proof.goal.str()},
                   {"steps", p.proof.steps.size()},
                   {"seconds", p.seconds}});
  }
  doc["proofs"] = prf;

  const auto& cfg = r.config;
  Json jc;
  jc["max_order"] = cfg.max_order;
  jc["timeout"] = cfg.timeout;
  jc["quick_timeout"] = cfg.quick_timeout;
  jc["medium_timeout"] = cfg.medium_timeout;
  jc["probe_nodes"] = cfg.probe_nodes;
  jc["finder_time_limit"] = cfg.finder_time_limit;
  jc["parallel_width"] = cfg.parallel_width;
  jc["constructed_loops"] = cfg.constructed_loops;
  jc["ordering"] = cfg.prover.ordering == TermOrderingKind::KBO ? "kbo" : "lpo";
  jc["max_equations"] = cfg.prover.max_equations;
  jc["max_term_size"] = cfg.prover.max_term_size;
  jc["wall_seconds"] = r.wall_seconds;
  doc["config"] = jc;
  return doc.dump(1) + "\n";
}

std::string render_dot(const ClassificationReport& r) {
  std::ostringstream out;
  out << "digraph bolmoufang {\n  rankdir=BT;\n  node [shape=box];\n";
  for (std::size_t c = 0; c < r.classes.size(); ++c) {
    const auto& k = r.classes[c];
    out << "  c" << c << " [label=<" << class_name(r, static_cast<int>(c)) << "<sup>"
        << loop_status_symbol(k.status) << "</sup>>";
    if (!k.complete) out << ", style=dashed";
    out << "];\n";
  }
  for (const auto& [a, b] : r.hasse_edges) out << "  c" << a << " -> c" << b << ";\n";
  out << "}\n";
  return out.str();
}

std::string render_text(const ClassificationReport& r) {
  std::ostringstream out;
  const auto unknown = r.unknown_cells();
  if (unknown > 0) {
    out << "UNKNOWN CELLS: " << unknown << "\n";
    for (std::size_t i = 0; i < r.cells.size(); ++i)
      for (std::size_t j = 0; j < r.cells[i].size(); ++j)
        if (r.cells[i][j].status == CellStatus::Unknown)
          out << "  " << bm_at(static_cast<int>(i)).str() << " => " << bm_at(static_cast<int>(j)).str() << ": "
              << r.cells[i][j].bounds << "\n";
  }
  for (std::size_t c = 0; c < r.classes.size(); ++c) {
    const auto& k = r.classes[c];
    out << class_name(r, static_cast<int>(c)) << "^" << loop_status_symbol(k.status) << ": {";
    for (std::size_t m = 0; m < k.members.size(); ++m) out << (m ? ", " : "") << k.members[m].str();
    out << "}\n";
  }
  out << "classes: " << r.classes.size() << "\n";
  out << "hasse edges: " << r.hasse_edges.size() << "\n";
  out << "minimal:";
  for (int c : r.minimal_classes) out << " " << class_name(r, c);
  out << "\n";
  out << "dual mismatches: " << r.dual_mismatches.size() << "\n";
  return out.str();
}

}  // namespace

ReportFormat parse_report_format(std::string_view name) {
  if (name == "json") return ReportFormat::Json;
  if (name == "dot") return ReportFormat::Dot;
  if (name == "text") return ReportFormat::Text;
  throw Error("unknown report format '" + std::string(name) + "'");
}

std::string render_report(const ClassificationReport& r, ReportFormat format) {
  switch (format) {
    case ReportFormat::Json: return render_json(r);
    case ReportFormat::Dot: return render_dot(r);
    case ReportFormat::Text: return render_text(r);
  }
  throw Error("unknown report format");
}

void write_artifacts(const ClassificationReport& r, const std::string& dir) {
  namespace fs = std::filesystem;
  auto open = [&](const std::string& rel) {
    const fs::path p = fs::path(dir) / rel;
    fs::create_directories(p.parent_path());
    std::ofstream f(p);
    if (!f) throw Error("cannot write " + p.string());
    return f;
  };
  for (const auto& p : r.proofs) {
    auto f = open(p.path);
    write_proof(f, p.proof);
  }
  for (const auto& w : r.witnesses) {
    auto f = open(w.path);
    f << "# " << w.source << "\n";
    write_table(f, w.table);
  }
}

ReportCheck check_report(const ClassificationReport& r) {
  ReportCheck out;
  auto fail = [&](std::string s) {
    out.ok = false;
    out.problems.push_back(std::move(s));
  };
  const bool comm = r.config.mode == ClassifyMode::Commutative;
  const Identity comm_law = law_identity(NamedLaw::Commutativity);

  for (const auto& p : r.proofs) {
    const auto v = verify_proof(p.proof);
    if (!v) fail(p.path + ": step " + std::to_string(v.step) + ": " + v.reason);
  }
  // A chain is valid when each proof only assumes what is already known.
  auto chain_ok = [&](const Identity& from, const Identity& to, const std::vector<std::uint32_t>& chain) {
    std::vector<Identity> known{from};
    if (comm) known.push_back(comm_law);
    for (auto id : chain) {
      if (id >= r.proofs.size()) return false;
      const auto& p = r.proofs[id].proof;
      for (const auto& h : p.hypotheses)
        if (std::find(known.begin(), known.end(), h) == known.end()) return false;
      known.push_back(p.goal);
    }
    return std::find(known.begin(), known.end(), to) != known.end();
  };

  std::vector<std::vector<bool>> holds(r.witnesses.size(), std::vector<bool>(60));
  for (std::size_t w = 0; w < r.witnesses.size(); ++w) {
    for (int i = 0; i < 60; ++i) holds[w][i] = check_identity(r.witnesses[w].table, identity_of(bm_at(i))).holds;
    if (comm && !is_commutative(r.witnesses[w].table)) fail(r.witnesses[w].path + ": not commutative");
  }

  if (r.cells.size() != 60) fail("matrix is not 60 x 60");
  for (std::size_t i = 0; i < r.cells.size(); ++i)
    for (std::size_t j = 0; j < r.cells[i].size(); ++j) {
      const auto& c = r.cells[i][j];
      const std::string at = bm_at(static_cast<int>(i)).str() + " => " + bm_at(static_cast<int>(j)).str();
      if (c.status == CellStatus::Proved && i != j &&
          !chain_ok(identity_of(bm_at(static_cast<int>(i))), identity_of(bm_at(static_cast<int>(j))), c.proofs))
        fail(at + ": proof chain does not connect");
      if (c.status == CellStatus::Refuted &&
          (c.witness < 0 || static_cast<std::size_t>(c.witness) >= r.witnesses.size() || !holds[c.witness][i] ||
           holds[c.witness][j]))
        fail(at + ": witness does not separate");
      if (i == j && c.status != CellStatus::Proved) fail(at + ": diagonal not proved");
    }

  std::vector<int> seen(60, 0);
  for (const auto& k : r.classes) {
    for (const auto& m : k.members) ++seen[bm_index(m)];
    const Identity rep = identity_of(k.representative);
    for (int side = 0; side < 2; ++side) {
      const SideResult& s = side == 0 ? k.left : k.right;
      const Identity goal = side == 0 ? left_loop_goal() : right_loop_goal();
      if (s.status == CellStatus::Proved && !chain_ok(rep, goal, s.proofs))
        fail(k.label + ": loop proof chain does not connect");
      if (s.status == CellStatus::Refuted) {
        const auto& t = r.witnesses.at(s.witness).table;
        const auto ns = neutral_status(t);
        if (!check_identity(t, rep).holds || (side == 0 ? ns.left.has_value() : ns.right.has_value()))
          fail(k.label + ": loop witness does not separate");
      }
    }
  }
  for (int i = 0; i < 60; ++i)
    if (seen[i] != 1) fail(bm_at(i).str() + " is not in exactly one class");
  for (const auto& l : r.laws) {
    if (l.cls < 0) continue;
    const Identity law = law_identity(l.law);
    const Identity rep = identity_of(r.classes.at(l.cls).representative);
    if (!chain_ok(law, rep, l.to_rep) || !chain_ok(rep, law, l.from_rep))
      fail(l.abbreviation + ": law proofs do not connect");
  }
  return out;
}

}  // namespace bm
