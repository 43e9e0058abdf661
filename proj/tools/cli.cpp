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

#include "cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "bm/catalog.hpp"
#include "bm/classifier.hpp"
#include "bm/finder.hpp"
#include "bm/proof.hpp"
#include "bm/prover.hpp"
#include "bm/table.hpp"

namespace bm::cli {

namespace {

constexpr int kOk = 0, kNegative = 1, kUsage = 2, kUnknown = 3;

struct UsageError : Error {
  using Error::Error;
};

Identity resolve_goal(const std::string& s) {
  if (s == "left-loop") return left_loop_goal();
  if (s == "right-loop") return right_loop_goal();
  return resolve_identity(s);
}

std::pair<int, int> parse_orders(const std::string& s) {
  const auto dots = s.find("..");
  try {
    if (dots == std::string::npos) {
      const int n = std::stoi(s);
      return {n, n};
    }
    return {std::stoi(s.substr(0, dots)), std::stoi(s.substr(dots + 2))};
  } catch (const std::exception&) {
    throw UsageError("bad order range '" + s + "', expected A..B");
  }
}

std::string one_line_usage(const CLI::App& app) {
  std::string name = app.get_name();
  for (const CLI::App* p = app.get_parent(); p; p = p->get_parent()) name = p->get_name() + " " + name;
  return "usage: " + name + " --help";
}

std::vector<std::string> default_fixtures(const std::string& dir) {
  std::vector<std::string> out;
  if (dir.empty() || !std::filesystem::is_directory(dir)) return out;
  for (const auto& e : std::filesystem::directory_iterator(dir))
    if (e.path().extension() == ".tbl") out.push_back(e.path().string());
  std::sort(out.begin(), out.end());
  return out;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path);
  if (!f) throw Error("cannot write " + path);
  f << text;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Quasigroup varieties of Bol-Moufang type", "bm"};
  app.require_subcommand(1);
  int jobs = 1;
  app.add_option("--jobs", jobs, "Worker threads for finder and classifier")->check(CLI::PositiveNumber);

  int code = kOk;

  auto* list = app.add_subcommand("list", "List the 60 identities");
  list->callback([&] {
    for (const auto& [name, id] : enumerate_bm()) out << name.str() << "\t" << id.str() << "\n";
  });

  std::string show_name;
  auto* show = app.add_subcommand("show", "Show one identity, its dual and the varieties it defines");
  show->add_option("NAME", show_name)->required();
  show->callback([&] {
    const BmName n = parse_bm_name(show_name);
    out << "name: " << n.str() << "\n";
    out << "identity: " << identity_of(n).str() << "\n";
    out << "dual: " << dual_name(n).str() << "\n";
    for (const auto& v : variety_table())
      if (v.has_bm_definer() && std::get<BmName>(v.definer) == n) out << "defines: " << v.abbreviation << " (" << v.name << ")\n";
  });

  std::string dual_arg;
  auto* dual = app.add_subcommand("dual", "Print the dual of a name or identity");
  dual->add_option("NAME", dual_arg)->required();
  dual->callback([&] {
    if (dual_arg.size() == 3 && dual_arg[0] >= 'A' && dual_arg[0] <= 'F') {
      out << dual_name(parse_bm_name(dual_arg)).str() << "\n";
    } else {
      out << dual_identity(resolve_identity(dual_arg)).str() << "\n";
    }
  });

  std::string canon_arg;
  auto* canon = app.add_subcommand("canon", "Canonical Xij name of a Bol-Moufang identity");
  canon->add_option("IDENT", canon_arg)->required();
  canon->callback([&] {
    const Identity id = parse_identity(canon_arg);
    Canonical c;
    try {
      c = canonicalize(id);
    } catch (const ParseError&) {
      throw;
    } catch (const Error& e) {
      err << "not of Bol-Moufang type: " << e.what() << "\n";
      code = kNegative;
      return;
    }
    out << c.name.str() << (c.swapped ? " (sides swapped)" : "") << "\n";
  });

  std::string check_table;
  std::vector<std::string> check_bm, check_ident;
  auto* check = app.add_subcommand("check", "Check identities in a table");
  check->add_option("--table", check_table)->required();
  check->add_option("--bm", check_bm, "Identity name or law keyword")->take_all();
  check->add_option("--ident", check_ident, "Identity in the text grammar")->take_all();
  check->callback([&] {
    if (check_bm.empty() && check_ident.empty()) throw UsageError("check needs --bm or --ident");
    const auto t = read_table_file(check_table);
    std::vector<std::pair<std::string, Identity>> ids;
    for (const auto& s : check_bm) ids.emplace_back(s, resolve_identity(s));
    for (const auto& s : check_ident) ids.emplace_back(s, parse_identity(s));
    for (const auto& [label, id] : ids) {
      const auto r = check_identity(t, id);
      if (r.holds) {
        out << label << ": holds\n";
      } else {
        out << label << ": fails " << r.witness.str() << "\n";
        code = kNegative;
      }
    }
  });

  std::string status_table;
  auto* status = app.add_subcommand("status", "Neutral elements, commutativity and the identities a table satisfies");
  status->add_option("--table", status_table)->required();
  status->callback([&] {
    const auto t = read_table_file(status_table);
    const auto ns = neutral_status(t);
    out << "order: " << t.order() << "\n";
    out << "left neutral: " << (ns.left ? std::to_string(*ns.left) : "none") << "\n";
    out << "right neutral: " << (ns.right ? std::to_string(*ns.right) : "none") << "\n";
    out << "loop: " << (ns.is_loop() ? "yes" : "no") << "\n";
    out << "commutative: " << (is_commutative(t) ? "yes" : "no") << "\n";
    out << "holds:";
    for (const auto& [name, id] : enumerate_bm())
      if (check_identity(t, id).holds) out << " " << name.str();
    out << "\n";
    out << "varieties:";
    for (const auto& v : variety_table())
      if (check_identity(t, v.identity()).holds) out << " " << v.abbreviation;
    out << "\n";
  });

  std::vector<std::string> sat, vio;
  bool nll = false, nrl = false, fcomm = false;
  std::string orders = "1..6", find_out;
  double find_limit = 0;
  auto* find = app.add_subcommand("find", "Search for a finite quasigroup");
  find->add_option("--satisfy", sat)->take_all();
  find->add_option("--violate", vio)->take_all();
  find->add_flag("--not-left-loop", nll);
  find->add_flag("--not-right-loop", nrl);
  find->add_flag("--commutative", fcomm);
  find->add_option("--orders", orders, "Order range A..B")->capture_default_str();
  find->add_option("--time-limit", find_limit, "Seconds, 0 = none");
  find->add_option("--out", find_out, "Write the table here");
  find->callback([&] {
    ConstraintSet c;
    for (const auto& s : sat) c.satisfy.push_back(resolve_identity(s));
    for (const auto& s : vio) c.violate.push_back(resolve_identity(s));
    c.not_left_loop = nll;
    c.not_right_loop = nrl;
    c.commutative = fcomm;
    SearchConfig cfg;
    std::tie(cfg.min_order, cfg.max_order) = parse_orders(orders);
    if (cfg.min_order < 1 || cfg.max_order < cfg.min_order || cfg.max_order > QuasigroupTable::kMaxOrder)
      throw UsageError("bad order range '" + orders + "'");
    cfg.time_limit = find_limit;
    cfg.parallel_width = jobs;
    const auto r = find_model(c, cfg);
    if (r.table) {
      write_table(out, *r.table);
      if (!find_out.empty()) write_file(find_out, table_text(*r.table));
    }
    out << r.summary_line() << "\n";
    code = r.found() ? kOk : r.kind == SearchOutcome::Kind::Exhausted ? kNegative : kUnknown;
  });

  std::vector<std::string> from;
  std::string to, proof_out, strategy = "kbo";
  double timeout = 60;
  bool loop_left = false, loop_right = false;
  auto* prove_cmd = app.add_subcommand("prove", "Prove an identity from hypotheses over the quasigroup axioms");
  prove_cmd->add_option("--from", from)->take_all();
  prove_cmd->add_option("--to", to, "Identity, or left-loop / right-loop")->required();
  prove_cmd->add_option("--timeout", timeout)->capture_default_str();
  prove_cmd->add_option("--proof", proof_out, "Write the proof object here");
  prove_cmd->add_option("--strategy", strategy)
      ->check(CLI::IsMember({"kbo", "lpo", "kbo-mul2"}))
      ->capture_default_str();
  prove_cmd->add_flag("--left-loop-lemma", loop_left, "Hypotheses are known to force a left neutral element");
  prove_cmd->add_flag("--right-loop-lemma", loop_right, "Hypotheses are known to force a right neutral element");
  prove_cmd->callback([&] {
    std::vector<Identity> hyps;
    for (const auto& s : from) hyps.push_back(resolve_identity(s));
    const Identity goal = resolve_goal(to);
    ProverConfig cfg;
    cfg.time_limit = timeout;
    if (strategy == "lpo") cfg.ordering = TermOrderingKind::LPO;
    if (strategy == "kbo-mul2") cfg.weights[0] = 2;
    const auto r = prove_with_loop_lemmas(hyps, goal, loop_left, loop_right, cfg);
    out << r.summary_line() << "\n";
    if (r.proved && !proof_out.empty()) write_file(proof_out, proof_text(r.proof));
    code = r.proved ? kOk : r.reason == GaveUpReason::Saturated ? kNegative : kUnknown;
  });

  std::string proof_in;
  auto* verify = app.add_subcommand("verify-proof", "Replay a proof object");
  verify->add_option("FILE", proof_in)->required();
  verify->callback([&] {
    std::ifstream f(proof_in);
    if (!f) throw UsageError("cannot read " + proof_in);
    const auto p = read_proof(f);
    const auto v = verify_proof(p);
    if (v) {
      out << "VALID steps=" << p.steps.size() << "\n";
    } else {
      out << "INVALID step=" << v.step << " " << v.reason << "\n";
      code = kNegative;
    }
  });

  bool ccomm = false, quiet = false;
  int max_order = 6;
  double ctimeout = 60;
  std::string json_out, dot_out, text_out, artifacts, fixtures = BM_DEFAULT_FIXTURE_DIR;
  auto* cls = app.add_subcommand("classify", "Classify all 60 identities");
  cls->add_flag("--commutative", ccomm);
  cls->add_option("--max-order", max_order)->capture_default_str();
  cls->add_option("--timeout", ctimeout, "Seconds per prover attempt")->capture_default_str();
  cls->add_option("--json", json_out);
  cls->add_option("--dot", dot_out);
  cls->add_option("--text", text_out);
  cls->add_option("--artifacts", artifacts, "Directory for proofs and witnesses (default: next to --json)");
  cls->add_option("--fixtures", fixtures, "Directory of .tbl files seeding the witness pool")->capture_default_str();
  cls->add_flag("--quiet", quiet, "No progress messages");
  cls->callback([&] {
    ClassifierConfig cfg;
    cfg.mode = ccomm ? ClassifyMode::Commutative : ClassifyMode::Quasigroup;
    cfg.max_order = max_order;
    cfg.timeout = ctimeout;
    cfg.parallel_width = jobs;
    cfg.fixture_paths = default_fixtures(fixtures);
    if (!quiet) cfg.log = [&](const std::string& s) { err << s << "\n"; };
    const auto r = classify(cfg);
    const std::string text = render_report(r, ReportFormat::Text);
    out << text;
    if (!text_out.empty()) write_file(text_out, text);
    if (!dot_out.empty()) write_file(dot_out, render_report(r, ReportFormat::Dot));
    if (!json_out.empty()) {
      write_file(json_out, render_report(r, ReportFormat::Json));
      if (artifacts.empty()) {
        const auto parent = std::filesystem::path(json_out).parent_path();
        artifacts = parent.empty() ? "." : parent.string();
      }
    }
    if (!artifacts.empty()) write_artifacts(r, artifacts);
    const auto chk = check_report(r);
    for (const auto& p : chk.problems) err << "report check: " << p << "\n";
    if (!chk.ok) throw Error("report failed its own consistency check");
    code = r.unknown_cells() == 0 ? kOk : kUnknown;
  });

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    const CLI::App* sub = nullptr;
    for (const auto* s : app.get_subcommands()) sub = s;
    err << e.what() << "\n" << one_line_usage(sub ? *sub : app) << "\n";
    return kUsage;
  } catch (const UsageError& e) {
    err << e.what() << "\n";
    return kUsage;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kUsage;
  } catch (const NotLatinError& e) {
    err << "not a Latin square: " << e.what() << "\n";
    return kUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
  return code;
}

}  // namespace bm::cli
