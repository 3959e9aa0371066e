// JSON / text / CSV rendering of the library's report types, plus re-parsers
// used to round-trip the JSON payloads. Key order is fixed and payloads carry
// no timestamps, so identical inputs serialize byte-identically.
#pragma once

#include <nlohmann/json.hpp>
#include <sstream>
#include <string>
#include <vector>

#include "subsetsum/construct.hpp"
#include "subsetsum/search.hpp"
#include "subsetsum/sequences.hpp"
#include "subsetsum/verify.hpp"

namespace subsetsum::io {

using json = nlohmann::ordered_json;

inline json to_json(const Condition& c) {
  return json{{"state", to_string(c.state)}, {"witness", c.witness}};
}

inline json to_json(const BClassification& c) {
  json j;
  j["thmC"] = to_json(c.thm_c);
  j["thmE"] = to_json(c.thm_e);
  j["thmD"] = to_json(c.thm_d);
  j["thmD"]["case"] = c.thm_d_case;
  j["thm12"] = to_json(c.thm12);
  j["thm12"]["case"] = c.thm12_case;
  j["problem1"] = to_json(c.problem1);
  if (c.problem1_m) j["problem1"]["m"] = *c.problem1_m;
  j["problem1"]["m1_ambiguous"] = c.problem1_m1_ambiguous;
  j["d"] = c.comparison_d;
  j["equal_indices"] = c.equal_indices;
  return j;
}

inline json stage_to_json(const Stage& s) {
  json j;
  j["k"] = s.k;
  j["added"] = s.added;
  j["size"] = s.cumulative.size();
  j["span"] = s.expected.span;
  j["expected_holes"] = s.expected.holes;
  return j;
}

inline json to_json(const ConstructionTrace& trace, const TraceReport* report) {
  json j;
  switch (trace.bspec.family) {
    case BSpec::Family::recurrence: j["family"] = "thm11"; break;
    case BSpec::Family::progression: j["family"] = "ap"; break;
    case BSpec::Family::explicit_prefix: j["family"] = "explicit"; break;
  }
  j["b1"] = trace.bspec.b1;
  if (trace.bspec.family == BSpec::Family::progression) j["d"] = trace.bspec.d;
  j["stages"] = json::array();
  for (std::size_t i = 0; i < trace.steps.size(); ++i) {
    json s = stage_to_json(trace.steps[i]);
    if (report) {
      const StageReport& r = report->stages.at(i);
      s["verified"] = r.status == StageStatus::verified;
      s["mismatches"] = json::array();
      for (u64 v : r.match.unexpected_present)
        s["mismatches"].push_back(json{{"value", v}, {"kind", "extra"}});
      for (u64 v : r.match.unexpected_absent)
        s["mismatches"].push_back(json{{"value", v}, {"kind", "missing"}});
      if (!r.note.empty()) s["note"] = r.note;
    }
    j["stages"].push_back(std::move(s));
  }
  if (report) j["all_verified"] = report->all_verified;
  return j;
}

inline json to_json(const SearchOutcome& out) {
  json j;
  j["outcome"] = to_string(out.kind);
  switch (out.kind) {
    case SearchOutcome::Kind::exhausted:
      j["nodes"] = out.nodes;
      j["max_depth"] = out.max_depth_reached;
      break;
    case SearchOutcome::Kind::prefix_satisfiable:
      j["witness"] = out.witness;
      j["note"] =
          "witness covers the finite window obligations only; it does not prove a full "
          "sequence exists";
      break;
    case SearchOutcome::Kind::inconclusive:
      j["nodes"] = out.nodes;
      j["limit"] = out.limit;
      break;
  }
  return j;
}

inline json to_json(const DeadEnd& d) {
  json j;
  j["prefix"] = d.prefix;
  j["unmet"] = d.unmet;
  j["rejected"] = json::array();
  for (const RejectedCandidate& r : d.rejected)
    j["rejected"].push_back(json{{"value", r.value}, {"witness", r.witness}});
  return j;
}

inline json to_json(const ComplementReport& r) {
  json j;
  j["equal"] = r.equal;
  j["window"] = r.window;
  j["full_equality_cutoff"] = r.full_equality_cutoff;
  j["pending"] = r.pending;
  j["wrong_present"] = r.wrong_present;
  j["wrong_absent"] = r.wrong_absent;
  if (r.first_disagreement) j["first_disagreement"] = *r.first_disagreement;
  if (r.stage) j["stage"] = *r.stage;
  return j;
}

// ---- re-parsers (round-trip checks) ----

inline SearchOutcome search_outcome_from_json(const json& j) {
  SearchOutcome out;
  const std::string kind = j.at("outcome").get<std::string>();
  if (kind == "exhausted") {
    out.kind = SearchOutcome::Kind::exhausted;
    out.nodes = j.at("nodes").get<u64>();
    out.max_depth_reached = j.at("max_depth").get<std::size_t>();
  } else if (kind == "prefix_satisfiable") {
    out.kind = SearchOutcome::Kind::prefix_satisfiable;
    out.witness = j.at("witness").get<std::vector<u64>>();
  } else if (kind == "inconclusive") {
    out.kind = SearchOutcome::Kind::inconclusive;
    out.nodes = j.at("nodes").get<u64>();
    out.limit = j.at("limit").get<std::string>();
  } else {
    throw InvalidInput("unknown outcome kind: " + kind);
  }
  return out;
}

inline Verdict verdict_from_string(const std::string& s) {
  if (s == "no") return Verdict::no;
  if (s == "yes") return Verdict::yes;
  if (s == "undetermined") return Verdict::undetermined;
  throw InvalidInput("unknown verdict: " + s);
}

// ---- text / csv renderers ----

inline std::string join(const std::vector<u64>& v, const char* sep = " ") {
  std::ostringstream os;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) os << sep;
    os << v[i];
  }
  return os.str();
}

inline std::string join(const std::vector<std::string>& v, const char* sep = " ") {
  std::ostringstream os;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) os << sep;
    os << v[i];
  }
  return os.str();
}

inline std::string render_condition_text(const char* name, const Condition& c,
                                         const std::string& extra = "") {
  std::string line = std::string(name) + ": " + to_string(c.state);
  if (!extra.empty()) line += " [" + extra + "]";
  if (!c.witness.empty()) line += " — " + c.witness;
  return line;
}

inline std::string render_text(const BClassification& c) {
  std::ostringstream os;
  os << render_condition_text("thmC", c.thm_c) << "\n";
  os << render_condition_text("thmE", c.thm_e) << "\n";
  os << render_condition_text("thmD", c.thm_d, c.thm_d_case) << "\n";
  os << render_condition_text("thm12", c.thm12, c.thm12_case) << "\n";
  std::string extra;
  if (c.problem1_m) extra = "m=" + std::to_string(*c.problem1_m);
  if (c.problem1_m1_ambiguous) extra += (extra.empty() ? "" : ", ") + std::string("m=1 reading ambiguous");
  os << render_condition_text("problem1", c.problem1, extra) << "\n";
  os << "d: " << join(c.comparison_d) << "\n";
  std::vector<u64> eq(c.equal_indices.begin(), c.equal_indices.end());
  os << "equal_indices: " << join(eq) << "\n";
  return os.str();
}

inline std::string render_csv(const BClassification& c) {
  std::ostringstream os;
  os << "condition,state,detail\n";
  auto row = [&](const char* name, const Condition& cond, const std::string& extra) {
    os << name << "," << to_string(cond.state) << ",\"" << (extra.empty() ? cond.witness : extra)
       << "\"\n";
  };
  row("thmC", c.thm_c, "");
  row("thmE", c.thm_e, "");
  row("thmD", c.thm_d, c.thm_d_case);
  row("thm12", c.thm12, c.thm12_case);
  row("problem1", c.problem1, c.problem1_m ? "m=" + std::to_string(*c.problem1_m) : "");
  os << "d,," << "\"" << join(c.comparison_d, " ") << "\"\n";
  return os.str();
}

inline std::string render_text(const ConstructionTrace& trace, const TraceReport* report) {
  std::ostringstream os;
  for (std::size_t i = 0; i < trace.steps.size(); ++i) {
    const Stage& s = trace.steps[i];
    os << "stage " << s.k << ": added {" << join(s.added, ", ") << "}, " << s.cumulative.size()
       << " elements, span " << s.expected.span;
    if (report) {
      const StageReport& r = report->stages.at(i);
      os << " — " << to_string(r.status);
      if (!r.note.empty()) os << " (" << r.note << ")";
    }
    os << "\n";
  }
  if (report)
    os << (report->all_verified ? "all stages verified\n" : "not all stages verified\n");
  return os.str();
}

inline std::string render_csv(const ConstructionTrace& trace, const TraceReport* report) {
  std::ostringstream os;
  os << "k,added,size,span" << (report ? ",status\n" : "\n");
  for (std::size_t i = 0; i < trace.steps.size(); ++i) {
    const Stage& s = trace.steps[i];
    os << s.k << ",\"" << join(s.added) << "\"," << s.cumulative.size() << "," << s.expected.span;
    if (report) os << "," << to_string(report->stages.at(i).status);
    os << "\n";
  }
  return os.str();
}

inline std::string render_text(const SearchOutcome& out) {
  std::ostringstream os;
  os << "outcome: " << to_string(out.kind) << "\n";
  switch (out.kind) {
    case SearchOutcome::Kind::exhausted:
      os << "nodes: " << out.nodes << "\nmax_depth: " << out.max_depth_reached << "\n";
      break;
    case SearchOutcome::Kind::prefix_satisfiable:
      os << "witness: " << join(out.witness) << "\n"
         << "note: witness covers the finite window obligations only; it does not prove a "
            "full sequence exists\n";
      break;
    case SearchOutcome::Kind::inconclusive:
      os << "nodes: " << out.nodes << "\nlimit: " << out.limit << "\n";
      break;
  }
  return os.str();
}

inline std::string render_csv(const SearchOutcome& out) {
  std::ostringstream os;
  os << "outcome,nodes,max_depth,witness,limit\n";
  os << to_string(out.kind) << ",";
  if (out.kind != SearchOutcome::Kind::prefix_satisfiable) os << out.nodes;
  os << ",";
  if (out.kind == SearchOutcome::Kind::exhausted) os << out.max_depth_reached;
  os << ",\"" << join(out.witness) << "\",\"" << out.limit << "\"\n";
  return os.str();
}

}  // namespace subsetsum::io
