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

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "bm/catalog.hpp"
#include "bm/finder.hpp"
#include "bm/proof.hpp"
#include "bm/prover.hpp"
#include "bm/table.hpp"

namespace bm {

enum class ClassifyMode : std::uint8_t { Quasigroup, Commutative };
std::string_view mode_name(ClassifyMode m);

struct ClassifierConfig {
  ClassifyMode mode = ClassifyMode::Quasigroup;
  int max_order = 6;
  /// Per prover attempt in the full pass; the schedule may make several attempts per cell.
  double timeout = 60.0;
  /// Single-attempt prover passes before the exhaustive searches above order 4.
  double quick_timeout = 0.25;
  double medium_timeout = 15.0;
  /// Node budget of the probe searches at orders above 4 that run before the quick prover pass.
  std::uint64_t probe_nodes = 20000;
  /// Per finder search.
  double finder_time_limit = 60.0;
  int parallel_width = 1;
  /// Tables added to the witness pool before any search (e.g. the shipped fixtures).
  std::vector<std::string> fixture_paths;
  /// Add the constructed loops (M(S3,2), the octonion units, lc_loop_12 and its transpose) to the pool.
  bool constructed_loops = true;
  ProverConfig prover;
  /// Progress messages; may be empty.
  std::function<void(const std::string&)> log;
};

enum class CellStatus : std::uint8_t { Proved, Refuted, Unknown };
std::string_view cell_status_name(CellStatus s);

struct Cell {
  CellStatus status = CellStatus::Unknown;
  /// Proved: proof records to replay in order, starting from the row
  /// identity. Empty on the diagonal.
  std::vector<std::uint32_t> proofs;
  /// Refuted: witness record.
  std::int32_t witness = -1;
  /// Unknown: what was tried.
  std::string bounds;
};

struct ProofRecord {
  std::string path;  // relative, e.g. "proofs/B15-D34.proof"
  std::string strategy;
  double seconds = 0;
  ProofObject proof;
};

struct WitnessRecord {
  std::string path;  // relative, e.g. "witnesses/w003.tbl"
  std::string source;
  QuasigroupTable table;
};

enum class LoopStatus : std::uint8_t { Both, LeftOnly, RightOnly, Neither, Unknown };
/// "2", "L", "R", "0", "?"
std::string_view loop_status_symbol(LoopStatus s);

/// One side of a loop status: proved (proof chain), refuted (witness) or unknown.
struct SideResult {
  CellStatus status = CellStatus::Unknown;
  std::vector<std::uint32_t> proofs;
  std::int32_t witness = -1;
};

struct ClassInfo {
  std::string label;  // catalog variety abbreviations of the member definers, joined by '='
  BmName representative;
  std::vector<BmName> members;
  SideResult left;   // every member has a left neutral element
  SideResult right;  // ... a right neutral element
  LoopStatus status = LoopStatus::Unknown;
  bool complete = true;  // no Unknown cell touches a member
};

/// A catalog variety defined by a named law, tied to the class whose
/// representative is proved equivalent to the law.
struct LawLink {
  std::string abbreviation;
  NamedLaw law = NamedLaw::Associativity;
  int cls = -1;
  std::vector<std::uint32_t> to_rep;    // law => representative
  std::vector<std::uint32_t> from_rep;  // representative => law
};

struct ClassificationReport {
  ClassifierConfig config;
  std::vector<std::vector<Cell>> cells;  // 60 x 60 in enumeration order
  std::vector<ProofRecord> proofs;
  std::vector<WitnessRecord> witnesses;
  std::vector<ClassInfo> classes;
  std::vector<std::pair<int, int>> hasse_edges;  // (a, b): class a is strictly inside class b
  std::vector<int> minimal_classes;              // classes with no outgoing Hasse edge
  std::vector<LawLink> laws;
  /// Cells (i, j) whose status differs from cell (dual i, dual j).
  std::vector<std::pair<int, int>> dual_mismatches;
  double wall_seconds = 0;

  std::size_t unknown_cells() const;
  int class_of(BmName name) const;
  /// Class whose label contains `abbreviation`, or -1.
  int find_class(std::string_view abbreviation) const;
};

ClassificationReport classify(const ClassifierConfig& cfg);

enum class ReportFormat : std::uint8_t { Json, Dot, Text };
/// Throws Error on an unknown format name.
ReportFormat parse_report_format(std::string_view name);
std::string render_report(const ClassificationReport& r, ReportFormat format);

/// Writes every proof and witness under `dir` at its relative path.
void write_artifacts(const ClassificationReport& r, const std::string& dir);

struct ReportCheck {
  bool ok = true;
  std::vector<std::string> problems;
};
/// Re-verifies the report: each proof replays, each proof chain starts at
/// the row identity and ends at the column identity, each witness satisfies
/// the row and fails the column, and the class structure is consistent.
ReportCheck check_report(const ClassificationReport& r);

/// The Moufang loop M(S3, 2) of order 12.
QuasigroupTable moufang_loop_12();
/// The loop of the 16 unit octonions +-e0..+-e7.
QuasigroupTable octonion_loop_16();
/// An LC1 loop on Z2 x Z6 that is neither flexible nor right nuclear square:
/// (e, j)(f, k) = (e + f, j + s k) with s = -1 when e = 1 and j is even, else s = 1.
QuasigroupTable lc_loop_12();

}  // namespace bm
