// Command-line front end. Every command first builds a structured record
//
//   {command, inputs, caps, result, evidence}
//
// and then prints it either as JSON (--json) or as text rendered from that
// same record.
//
// Exit codes: 0 computed, 1 negative verdict under --strict, 2 usage, parse
// or precondition error.

#ifndef ESCALATOR_TOOLS_CLI_HPP
#define ESCALATOR_TOOLS_CLI_HPP

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <CLI11.hpp>

#include "escalator/criterion.hpp"
#include "escalator/escalation.hpp"
#include "escalator/grammar.hpp"
#include "escalator/serialize.hpp"

namespace escalator::cli {

inline std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

/// A set of binary forms: "S2", "{}", "f1; f2; ...", optionally in braces, or
/// "@path" for a file with one form per line and '#' comments.
inline FormSet parse_form_set(const std::string& text) {
  FormSet out;
  std::string body = trim(text);
  if (!body.empty() && body.front() == '@') {
    std::ifstream in(body.substr(1));
    if (!in) throw Error("cannot open form set file: " + body.substr(1));
    std::string line;
    while (std::getline(in, line)) {
      if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
      line = trim(line);
      if (!line.empty()) out.insert(parse_binary(line));
    }
    return out;
  }
  if (body == "S2") return criterion_s2();
  if (body.size() >= 2 && body.front() == '{' && body.back() == '}') body = trim(body.substr(1, body.size() - 2));
  std::stringstream ss(body);
  std::string item;
  while (std::getline(ss, item, ';')) {
    item = trim(item);
    if (!item.empty()) out.insert(parse_binary(item));
  }
  return out;
}

/// An integer target if the text is a plain positive integer, else a form.
inline std::optional<Int> parse_integer_target(const std::string& text) {
  std::string t = trim(text);
  if (t.empty() || !std::all_of(t.begin(), t.end(), [](unsigned char c) { return std::isdigit(c); }))
    return std::nullopt;
  Int v = std::stoll(t);
  if (v < 1) throw Error("integer target must be positive");
  return v;
}

struct Outcome {
  Json record;
  bool negative = false;
};

inline Json record(const std::string& command, Json inputs, Json caps, Json result, Json evidence) {
  return {{"command", command},
          {"inputs", std::move(inputs)},
          {"caps", std::move(caps)},
          {"result", std::move(result)},
          {"evidence", std::move(evidence)}};
}

// Commands -------------------------------------------------------------------

inline Outcome cmd_reduce(const std::string& form) {
  BinaryForm f = parse_binary(form);
  BinaryForm r = reduce_binary(f);
  return {record("reduce", {{"form", form}}, Json::object(), {{"reduced", to_json(r)}, {"det", r.det()}},
                 Json::object())};
}

inline Outcome cmd_represents(const std::string& lattice, const std::string& target) {
  GramLattice l = parse_form(lattice);
  std::optional<Embedding> e;
  Json tgt;
  if (auto k = parse_integer_target(target)) {
    e = represents_integer(l, *k);
    tgt = *k;
  } else {
    BinaryForm f = parse_binary(target);
    e = represents_binary(l, f);
    tgt = to_json(reduce_binary(f));
  }
  return {record("represents", {{"lattice", to_json(l)}, {"target", tgt}}, Json::object(),
                 {{"present", e.has_value()}}, {{"embedding", to_json(e)}}),
          !e.has_value()};
}

inline Outcome cmd_truant(const std::string& lattice, bool binary, Int det_cap, Int truant_cap) {
  GramLattice l = parse_form(lattice);
  if (binary) {
    FormOrdering ord = default_ordering();
    auto t = binary_truant(l, ord, det_cap);
    return {record("truant", {{"lattice", to_json(l)}, {"kind", "binary"}},
                   {{"det_cap", det_cap}, {"ordering", ord.name}},
                   {{"truant", t ? to_json(*t) : Json(nullptr)}, {"exhausted", !t}}, Json::object()),
            t.has_value()};
  }
  auto t = integer_truant(l, truant_cap);
  return {record("truant", {{"lattice", to_json(l)}, {"kind", "integer"}}, {{"truant_cap", truant_cap}},
                 {{"truant", t ? Json(*t) : Json(nullptr)}, {"exhausted", !t}}, Json::object()),
          t.has_value()};
}

inline Outcome cmd_escalate(const std::string& lattice, const std::string& truant) {
  GramLattice l = parse_form(lattice);
  std::vector<GramLattice> out;
  Json tgt;
  if (auto k = parse_integer_target(truant)) {
    out = escalations_by_integer(l, *k);
    tgt = *k;
  } else {
    BinaryForm f = reduce_binary(parse_binary(truant));
    out = escalations_by_binary(l, f);
    tgt = to_json(f);
  }
  Json list = Json::array();
  for (const auto& e : out) list.push_back(to_json(e));
  return {record("escalate", {{"lattice", to_json(l)}, {"truant", tgt}}, Json::object(),
                 {{"count", out.size()}, {"escalations", list}}, Json::object())};
}

inline Json tree_summary(const EscalationNode& root) {
  std::size_t nodes = 0, leaves = 0, truncated = 0, exhausted = 0;
  std::map<int, std::size_t> per_depth;
  std::vector<Json> truants;
  std::set<std::string> seen;
  visit_tree(root, [&](const EscalationNode& n) {
    ++nodes;
    ++per_depth[n.depth];
    if (n.children.empty()) ++leaves;
    if (n.truncated) ++truncated;
    if (n.exhausted) ++exhausted;
    if (n.truant) {
      Json t = to_json(*n.truant);
      if (seen.insert(t.dump()).second) truants.push_back(t);
    }
  });
  std::sort(truants.begin(), truants.end());
  Json depths = Json::object();
  for (auto [d, c] : per_depth) depths[std::to_string(d)] = c;
  return {{"nodes", nodes},      {"leaves", leaves},   {"truncated", truncated},
          {"exhausted", exhausted}, {"nodes_per_depth", depths}, {"truants", truants}};
}

inline Outcome cmd_tree(const std::string& root_text, int mode, const TreeCaps& caps) {
  GramLattice root = parse_form(root_text);
  if (mode != 1 && mode != 2) throw Error("--mode must be 1 or 2");
  auto tree = escalation_tree(root, mode == 1 ? UniversalityMode::Integer : UniversalityMode::Binary, caps);
  Json c = {{"depth", caps.depth}};
  if (mode == 1)
    c["truant_cap"] = caps.truant_cap;
  else
    c["det_cap"] = caps.det_cap;
  return {record("tree", {{"root", to_json(root)}, {"mode", mode}}, c,
                 {{"summary", tree_summary(tree)}, {"tree", to_json(tree)}}, Json::object())};
}

inline Outcome cmd_witness(const std::string& tset, const std::string& target) {
  FormSet t = parse_form_set(tset);
  BinaryForm ell = parse_binary(target);
  WitnessReport r = build_witness(t, ell);
  return {record("witness", {{"members", to_json(t)}, {"target", to_json(reduce_binary(ell))}}, Json::object(),
                 to_json(r), Json::object()),
          !r.pass};
}

inline Outcome cmd_verify(const std::string& lattice, bool s2) {
  GramLattice l = parse_form(lattice);
  if (s2) {
    CriterionReport rep = is_2_universal(l);
    Json failing = Json::array();
    for (const auto& v : rep.evidence.verdicts)
      if (!v.present()) failing.push_back(to_json(v.form));
    return {record("verify", {{"lattice", to_json(l)}, {"criterion", "S2"}}, Json::object(),
                   {{"two_universal", rep.universal}, {"failing", failing}},
                   {{"verdicts", to_json(rep.evidence.verdicts)}}),
            !rep.universal};
  }
  Json verdicts = Json::array();
  Json missing = Json::array();
  for (Int k : critical_integers()) {
    auto e = represents_integer(l, k);
    if (!e) missing.push_back(k);
    verdicts.push_back({{"integer", k}, {"present", e.has_value()}, {"embedding", to_json(e)}});
  }
  bool universal = missing.empty();
  return {record("verify", {{"lattice", to_json(l)}, {"criterion", "S1"}}, Json::object(),
                 {{"universal", universal}, {"failing", missing}}, {{"verdicts", verdicts}}),
          !universal};
}

inline Outcome cmd_verify_witness(const std::string& w, const std::string& tset, const std::string& target) {
  GramLattice l = parse_form(w);
  FormSet t = parse_form_set(tset);
  BinaryForm ell = parse_binary(target);
  WitnessReport r = verify_witness(l, t, ell);
  return {record("verify-witness",
                 {{"witness", to_json(l)}, {"members", to_json(t)}, {"target", to_json(reduce_binary(ell))}},
                 Json::object(), to_json(r), Json::object()),
          !r.pass};
}

inline Outcome cmd_search(const std::string& tset, const std::string& target, const SearchCaps& caps) {
  FormSet t = parse_form_set(tset);
  BinaryForm ell = parse_binary(target);
  SearchOutcome s = witness_search(t, ell, caps);
  return {record("search", {{"members", to_json(t)}, {"target", to_json(reduce_binary(ell))}},
                 {{"rank_cap", caps.rank_cap}, {"entry_cap", caps.entry_cap}}, to_json(s), Json::object()),
          !s.found.has_value()};
}

inline Outcome cmd_demo_uniqueness(const SearchCaps& caps) {
  Json entries = Json::array();
  bool all_settled = true;
  for (const auto& e : uniqueness_demo(caps)) {
    const WitnessReport* settled = e.settled();
    bool reverified = false;
    if (settled)
      reverified = verify_witness(settled->witness, settled->members, settled->target).pass;
    all_settled = all_settled && settled && reverified;
    entries.push_back({{"excluded", to_json(e.excluded)},
                       {"recipe_report", to_json(e.recipe_report)},
                       {"search", e.search ? to_json(*e.search) : Json(nullptr)},
                       {"settled_by", settled ? Json(recipe_name(settled->recipe)) : Json(nullptr)},
                       {"witness", settled ? to_json(settled->witness) : Json(nullptr)},
                       {"pass", settled != nullptr},
                       {"reverified", reverified}});
  }
  return {record("demo", {{"demo", "uniqueness"}},
                 {{"rank_cap", caps.rank_cap}, {"entry_cap", caps.entry_cap}},
                 {{"all_settled", all_settled}, {"entries", entries}}, Json::object()),
          !all_settled};
}

inline Outcome cmd_demo_fifteen(const TreeCaps& caps) {
  auto tree = escalation_tree(GramLattice{}, UniversalityMode::Integer, caps);
  std::set<Int> truants;
  std::size_t leaves = 0;
  Json bad_leaves = Json::array();
  visit_tree(tree, [&](const EscalationNode& n) {
    if (n.truant) truants.insert(std::get<Int>(*n.truant));
    if (!n.children.empty() || n.truncated || n.exhausted) return;
    ++leaves;
    if (integer_truant(n.lattice, 15)) bad_leaves.push_back(to_json(n.lattice));
  });
  const auto& s1 = critical_integers();
  bool equals_s1 = std::vector<Int>(truants.begin(), truants.end()) == s1;
  bool leaves_ok = bad_leaves.empty();
  return {record("demo", {{"demo", "fifteen"}, {"root", "<>"}},
                 {{"truant_cap", caps.truant_cap}, {"depth", caps.depth}},
                 {{"truants", std::vector<Int>(truants.begin(), truants.end())},
                  {"truants_equal_s1", equals_s1},
                  {"leaves_checked", leaves},
                  {"leaves_represent_1_to_15", leaves_ok},
                  {"summary", tree_summary(tree)}},
                 {{"failing_leaves", bad_leaves}}),
          !(equals_s1 && leaves_ok)};
}

// Text rendering ---------------------------------------------------------------

inline std::string str(const Json& j) { return j.is_string() ? j.get<std::string>() : j.dump(); }

inline std::string embedding_text(const Json& e) {
  if (e.is_null()) return "-";
  std::string out;
  for (const auto& v : e) {
    if (!out.empty()) out += ", ";
    std::string c;
    for (const auto& x : v) c += (c.empty() ? "" : ",") + x.dump();
    out += "(" + c + ")";
  }
  return out;
}

inline void render_caps(const Json& caps, std::ostream& os) {
  if (caps.empty()) return;
  os << "caps:";
  for (const auto& [k, v] : caps.items()) os << " " << k << "=" << str(v);
  os << "\n";
}

inline void render_verdicts(const Json& verdicts, std::ostream& os, const std::string& indent) {
  for (const auto& v : verdicts) {
    std::string label = v.contains("form") ? str(v["form"]) : str(v["integer"]);
    os << indent << label << ": " << (v["present"].get<bool>() ? "present " + embedding_text(v["embedding"]) : "absent")
       << "\n";
  }
}

inline void render_witness(const Json& r, std::ostream& os, const std::string& indent) {
  os << indent << "witness: " << str(r["witness"]) << "\n";
  os << indent << "target: " << str(r["target"]) << "  recipe: " << str(r["recipe"]) << "\n";
  os << indent << "members:\n";
  render_verdicts(r["member_verdicts"], os, indent + "  ");
  os << indent << "truancy: " << (r["truancy_verdict"].get<bool>() ? "target not represented" : "target represented by " + embedding_text(r["target_embedding"])) << "\n";
  os << indent << "pass: " << (r["pass"].get<bool>() ? "true" : "false") << "\n";
}

inline void render_tree(const Json& node, std::ostream& os, int indent) {
  os << std::string(static_cast<std::size_t>(indent) * 2, ' ') << str(node["lattice"]);
  if (!node["truant"].is_null()) os << "  truant " << str(node["truant"]);
  if (node["truncated"].get<bool>()) os << "  [truncated]";
  if (node["exhausted"].get<bool>()) os << "  [exhausted]";
  os << "\n";
  for (const auto& c : node["children"]) render_tree(c, os, indent + 1);
}

inline void render_summary(const Json& s, std::ostream& os) {
  os << "nodes: " << s["nodes"] << "  leaves: " << s["leaves"] << "  truncated: " << s["truncated"]
     << "  exhausted: " << s["exhausted"] << "\n";
  os << "truants:";
  for (const auto& t : s["truants"]) os << " " << str(t);
  os << "\n";
}

/// Human-readable text; a pure function of the structured record.
inline std::string render_text(const Json& rec) {
  std::ostringstream os;
  const std::string cmd = rec["command"];
  const Json& in = rec["inputs"];
  const Json& res = rec["result"];
  const Json& ev = rec["evidence"];
  render_caps(rec["caps"], os);
  if (cmd == "reduce") {
    os << str(in["form"]) << " reduces to " << str(res["reduced"]) << " (det " << res["det"] << ")\n";
  } else if (cmd == "represents") {
    os << str(in["lattice"]) << " represents " << str(in["target"]) << ": "
       << (res["present"].get<bool>() ? "present" : "absent") << "\n";
    if (res["present"].get<bool>()) os << "embedding: " << embedding_text(ev["embedding"]) << "\n";
  } else if (cmd == "truant") {
    os << str(in["kind"]) << " truant of " << str(in["lattice"]) << ": "
       << (res["exhausted"].get<bool>() ? "exhausted (none within cap)" : str(res["truant"])) << "\n";
  } else if (cmd == "escalate") {
    os << res["count"] << " escalation(s) of " << str(in["lattice"]) << " by " << str(in["truant"]) << "\n";
    for (const auto& e : res["escalations"]) os << "  " << str(e) << "\n";
  } else if (cmd == "tree") {
    render_summary(res["summary"], os);
    render_tree(res["tree"], os, 0);
  } else if (cmd == "witness" || cmd == "verify-witness") {
    render_witness(res, os, "");
  } else if (cmd == "verify") {
    if (str(in["criterion"]) == "S2")
      os << str(in["lattice"]) << " 2-universal: " << (res["two_universal"].get<bool>() ? "true" : "false") << "\n";
    else
      os << str(in["lattice"]) << " universal: " << (res["universal"].get<bool>() ? "true" : "false") << "\n";
    if (!res["failing"].empty()) {
      os << "failing:";
      for (const auto& f : res["failing"]) os << " " << str(f);
      os << "\n";
    }
    render_verdicts(ev["verdicts"], os, "  ");
  } else if (cmd == "search") {
    os << "candidates scanned: " << res["candidates_scanned"] << "  classes: " << res["classes_scanned"] << "\n";
    if (res["found"].is_null())
      os << "no witness within caps (exhausted)\n";
    else
      render_witness(res["found"], os, "");
  } else if (cmd == "demo" && str(in["demo"]) == "uniqueness") {
    for (const auto& e : res["entries"]) {
      os << "excluded " << str(e["excluded"]) << ": " << (e["pass"].get<bool>() ? "pass" : "FAIL");
      if (!e["settled_by"].is_null()) os << " via " << str(e["settled_by"]) << ", witness " << str(e["witness"]);
      os << ", re-verified: " << (e["reverified"].get<bool>() ? "true" : "false") << "\n";
      os << "  recipe:\n";
      render_witness(e["recipe_report"], os, "    ");
      if (!e["search"].is_null()) {
        const Json& s = e["search"];
        os << "  search: candidates " << s["candidates_scanned"] << ", classes " << s["classes_scanned"]
           << (s["found"].is_null() ? ", exhausted" : ", found") << "\n";
      }
    }
    os << "all settled: " << (res["all_settled"].get<bool>() ? "true" : "false") << "\n";
  } else if (cmd == "demo") {
    os << "truants:";
    for (const auto& t : res["truants"]) os << " " << t;
    os << "\ntruants equal S1: " << (res["truants_equal_s1"].get<bool>() ? "true" : "false") << "\n";
    os << "leaves checked: " << res["leaves_checked"]
       << "  all represent 1..15: " << (res["leaves_represent_1_to_15"].get<bool>() ? "true" : "false") << "\n";
    render_summary(res["summary"], os);
  }
  return os.str();
}

// Entry point --------------------------------------------------------------------

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact computation with positive-definite integral quadratic forms", "escalator"};
  app.require_subcommand(1);
  bool json = false, strict = false;
  app.add_flag("--json", json, "Print the structured record as JSON");
  app.add_flag("--strict", strict, "Exit with status 1 on a negative verdict");

  std::string a1, a2, a3;
  Int det_cap = 16, truant_cap = 15;
  int depth = -1, mode = 1;
  std::string root = "<>";
  SearchCaps scaps;
  bool binary = false, s2 = false, uniq = false, fifteen = false;

  auto* reduce = app.add_subcommand("reduce", "Minkowski-reduce a binary form");
  reduce->add_option("FORM", a1)->required();

  auto* reps = app.add_subcommand("represents", "Does LATTICE represent TARGET (integer or binary form)?");
  reps->add_option("LATTICE", a1)->required();
  reps->add_option("TARGET", a2)->required();

  auto* truant = app.add_subcommand("truant", "Smallest integer (or binary form) not represented");
  truant->add_option("LATTICE", a1)->required();
  truant->add_flag("--binary", binary, "Look for a binary truant");
  truant->add_option("--det-cap", det_cap, "Determinant cap for binary truants")->capture_default_str();
  truant->add_option("--truant-cap", truant_cap, "Integer cap for integer truants")->capture_default_str();

  auto* esc = app.add_subcommand("escalate", "Escalations of LATTICE by TRUANT");
  esc->add_option("LATTICE", a1)->required();
  esc->add_option("TRUANT", a2)->required();

  auto* tree = app.add_subcommand("tree", "Escalation tree");
  tree->add_option("--mode", mode, "1 = integer universality, 2 = 2-universality")->capture_default_str();
  tree->add_option("--depth", depth, "Depth cap (default 5 in mode 1, 2 in mode 2)");
  tree->add_option("--root", root, "Root lattice")->capture_default_str();
  tree->add_option("--truant-cap", truant_cap)->capture_default_str();
  tree->add_option("--det-cap", det_cap)->capture_default_str();

  auto* witness = app.add_subcommand("witness", "Build and verify the witness for excluding TARGET from TSET");
  witness->add_option("TSET", a1)->required();
  witness->add_option("TARGET", a2)->required();

  auto* verify = app.add_subcommand("verify", "Universality (S1) or, with --s2, 2-universality check");
  verify->add_flag("--s2", s2, "Use the six-form 2-universality criterion");
  verify->add_option("LATTICE", a1)->required();

  auto* vw = app.add_subcommand("verify-witness", "Verify a candidate witness W for TSET and TARGET");
  vw->add_option("W", a1)->required();
  vw->add_option("TSET", a2)->required();
  vw->add_option("TARGET", a3)->required();

  auto* search = app.add_subcommand("search", "Bounded search for a witness lattice");
  search->add_option("TSET", a1)->required();
  search->add_option("TARGET", a2)->required();
  search->add_option("--rank-cap", scaps.rank_cap)->capture_default_str();
  search->add_option("--entry-cap", scaps.entry_cap)->capture_default_str();

  auto* demo = app.add_subcommand("demo", "Built-in demonstrations");
  demo->add_flag("--uniqueness", uniq, "Witnesses for dropping each member of S2");
  demo->add_flag("--fifteen", fifteen, "Escalation skeleton of the Fifteen Theorem");
  demo->add_option("--rank-cap", scaps.rank_cap)->capture_default_str();
  demo->add_option("--entry-cap", scaps.entry_cap)->capture_default_str();
  demo->add_option("--depth", depth, "Depth cap for --fifteen (default 5)");
  demo->add_option("--truant-cap", truant_cap)->capture_default_str();

  std::vector<std::string> argv_rev(args.rbegin(), args.rend());
  try {
    app.parse(argv_rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return 2;
  }

  Outcome o;
  try {
    if (reduce->parsed()) {
      o = cmd_reduce(a1);
    } else if (reps->parsed()) {
      o = cmd_represents(a1, a2);
    } else if (truant->parsed()) {
      o = cmd_truant(a1, binary, det_cap, truant_cap);
    } else if (esc->parsed()) {
      o = cmd_escalate(a1, a2);
    } else if (tree->parsed()) {
      TreeCaps caps{truant_cap, det_cap, depth >= 0 ? depth : (mode == 2 ? 2 : 5)};
      o = cmd_tree(root, mode, caps);
    } else if (witness->parsed()) {
      o = cmd_witness(a1, a2);
    } else if (verify->parsed()) {
      o = cmd_verify(a1, s2);
    } else if (vw->parsed()) {
      o = cmd_verify_witness(a1, a2, a3);
    } else if (search->parsed()) {
      o = cmd_search(a1, a2, scaps);
    } else if (demo->parsed()) {
      if (uniq == fifteen) throw Error("demo needs exactly one of --uniqueness or --fifteen");
      if (uniq)
        o = cmd_demo_uniqueness(scaps);
      else
        o = cmd_demo_fifteen({truant_cap, det_cap, depth >= 0 ? depth : 5});
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  if (json)
    out << o.record.dump(2) << "\n";
  else
    out << render_text(o.record);
  return (strict && o.negative) ? 1 : 0;
}

}  // namespace escalator::cli

#endif  // ESCALATOR_TOOLS_CLI_HPP
