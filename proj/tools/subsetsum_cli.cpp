// Command-line front end: generate excluded sequences, build and verify
// constructions, run bounded-horizon non-existence searches, and classify
// sequence prefixes. JSON payloads go to stdout; run metadata to stderr.
//
// Exit codes: 0 success, 1 verification mismatch, 2 invalid input,
// 3 overflow, 4 resource limit, 5 inconclusive search.

#include <CLI11.hpp>
#include <cerrno>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "serialize.hpp"
#include "subsetsum/bigseq.hpp"
#include "subsetsum/subsetsum.hpp"

namespace {

using namespace subsetsum;
using subsetsum::io::json;

constexpr int kExitOk = 0;
constexpr int kExitMismatch = 1;
constexpr int kExitInvalidInput = 2;
constexpr int kExitOverflow = 3;
constexpr int kExitResourceLimit = 4;
constexpr int kExitInconclusive = 5;

struct RunConfig {
  std::string format = "json";
  u64 mem_budget_bits = kDefaultWindowBudgetBits;
  bool mem_budget_from_flag = false;

  // gen-b
  std::string family;
  u64 b1 = 0;
  u64 d = 0;
  std::size_t n = 0;
  bool bigint = false;

  // build
  std::string thm;
  std::size_t kmax = 0;
  bool verify = false;

  // search / classify
  std::string b_csv;
  std::string b_file;
  std::optional<u64> horizon;
  u64 max_nodes = SearchLimits{}.max_nodes;
  std::size_t max_depth = SearchLimits{}.max_depth;
  unsigned threads = 1;
  std::string deadend_file;
};

u64 parse_u64(const std::string& s) {
  if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
    throw InvalidInput("not a decimal integer: '" + s + "'");
  errno = 0;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(s.c_str(), &end, 10);
  if (errno == ERANGE) throw Overflow("value does not fit in 64 bits: '" + s + "'");
  return static_cast<u64>(v);
}

std::vector<u64> parse_u64_csv(const std::string& csv) {
  std::vector<u64> out;
  std::size_t pos = 0;
  while (pos <= csv.size()) {
    const std::size_t comma = csv.find(',', pos);
    const std::string item =
        csv.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    out.push_back(parse_u64(item));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return out;
}

// Newline-delimited decimal integers; '#' starts a comment line.
std::vector<u64> read_u64_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open file: " + path);
  std::vector<u64> out;
  std::string line;
  while (std::getline(in, line)) {
    const std::size_t start = line.find_first_not_of(" \t\r");
    if (start == std::string::npos) continue;
    if (line[start] == '#') continue;
    const std::size_t stop = line.find_last_not_of(" \t\r");
    out.push_back(parse_u64(line.substr(start, stop - start + 1)));
  }
  if (out.empty()) throw InvalidInput("no values in file: " + path);
  return out;
}

std::vector<u64> resolve_b_list(const RunConfig& cfg) {
  if (!cfg.b_csv.empty() && !cfg.b_file.empty())
    throw InvalidInput("give the sequence inline or as a file, not both");
  if (!cfg.b_csv.empty()) return parse_u64_csv(cfg.b_csv);
  if (!cfg.b_file.empty()) return read_u64_file(cfg.b_file);
  throw InvalidInput("a sequence prefix is required (--b or --b-file)");
}

void resolve_mem_budget(RunConfig& cfg) {
  if (cfg.mem_budget_from_flag) return;
  if (const char* env = std::getenv("SUBSETSUM_MEM_BUDGET")) {
    cfg.mem_budget_bits = parse_u64(env);
    if (cfg.mem_budget_bits == 0) throw InvalidInput("memory budget must be positive");
  }
}

void emit(const std::string& payload) { std::cout << payload << "\n"; }
void emit_json(const json& j) { emit(j.dump()); }

int cmd_gen_b(RunConfig& cfg) {
  std::vector<std::string> values;
  if (cfg.bigint) {
    values = cfg.family == "thm11" ? gen_b_thm11_big(cfg.b1, cfg.n)
                                   : gen_b_ap_big(cfg.b1, cfg.d, cfg.n);
  } else {
    const std::vector<u64> b =
        cfg.family == "thm11" ? gen_b_thm11(cfg.b1, cfg.n) : gen_b_ap(cfg.b1, cfg.d, cfg.n);
    for (u64 v : b) values.push_back(std::to_string(v));
  }
  std::cerr << "gen-b: family=" << cfg.family << " b1=" << cfg.b1
            << (cfg.family == "ap" ? " d=" + std::to_string(cfg.d) : "") << " n=" << cfg.n
            << (cfg.bigint ? " bigint" : "") << "\n";
  if (cfg.format == "json") {
    json j;
    if (cfg.bigint) {
      j["b"] = values;
    } else {
      j["b"] = json::array();
      for (const std::string& v : values) j["b"].push_back(parse_u64(v));
    }
    emit_json(j);
  } else if (cfg.format == "csv") {
    std::string out = "b\n";
    for (const std::string& v : values) out += v + "\n";
    std::cout << out;
  } else {
    emit(subsetsum::io::join(values));
  }
  return kExitOk;
}

int cmd_build(RunConfig& cfg) {
  const bool recurrence = cfg.thm == "1.1";
  if (!recurrence && cfg.d == 0)
    throw InvalidInput("the progression construction needs --d");
  const std::size_t kmin = recurrence ? 3 : 2;
  if (cfg.kmax < kmin)
    throw InvalidInput("kmax must be at least " + std::to_string(kmin));

  // Build stage by stage so an overflow deep in the schedule still leaves
  // the last good stage in the report.
  std::optional<ConstructionTrace> trace;
  int failure = kExitOk;
  std::string failure_note;
  for (std::size_t k = kmin; k <= cfg.kmax; ++k) {
    try {
      trace = recurrence ? build_a_thm11(cfg.b1, k) : build_a_thm13(cfg.b1, cfg.d, k);
    } catch (const Overflow& e) {
      failure = kExitOverflow;
      failure_note = e.what();
      break;
    } catch (const ResourceLimit& e) {
      failure = kExitResourceLimit;
      failure_note = e.what();
      break;
    }
  }
  if (!trace) {
    // Nothing built at all: re-run once to surface the original error.
    if (failure == kExitOk)
      throw InvalidInput("no stages in range");
    std::cerr << "build: no stage could be built — " << failure_note << "\n";
    return failure;
  }

  std::optional<TraceReport> report;
  if (cfg.verify) {
    report = verify_trace(*trace, cfg.mem_budget_bits);
    for (const StageReport& r : report->stages) {
      if (r.status == StageStatus::skipped && failure == kExitOk) {
        failure = kExitResourceLimit;
        failure_note = r.note;
      }
      if (r.status == StageStatus::mismatch) {
        failure = kExitMismatch;
        failure_note = "stage " + std::to_string(r.k) + " mismatch";
      }
    }
  }

  std::cerr << "build: thm=" << cfg.thm << " b1=" << cfg.b1
            << (recurrence ? "" : " d=" + std::to_string(cfg.d))
            << " stages=" << trace->steps.size() << "/" << (cfg.kmax - kmin + 1)
            << (cfg.verify ? " verify=on" : "")
            << " mem_budget_bits=" << cfg.mem_budget_bits << "\n";
  if (!failure_note.empty()) std::cerr << "build: " << failure_note << "\n";

  const TraceReport* rep = report ? &*report : nullptr;
  if (cfg.format == "json")
    emit_json(subsetsum::io::to_json(*trace, rep));
  else if (cfg.format == "csv")
    std::cout << subsetsum::io::render_csv(*trace, rep);
  else
    std::cout << subsetsum::io::render_text(*trace, rep);
  return failure;
}

int cmd_search(RunConfig& cfg) {
  const std::vector<u64> known_b = resolve_b_list(cfg);
  const u64 horizon = cfg.horizon.value_or(known_b.empty() ? 0 : known_b.back());
  SearchLimits limits;
  limits.max_nodes = cfg.max_nodes;
  limits.max_depth = cfg.max_depth;
  limits.threads = cfg.threads;
  limits.collect_dead_ends = !cfg.deadend_file.empty();

  const SearchOutcome out = nonexistence_search(known_b, horizon, limits, cfg.mem_budget_bits);

  std::cerr << "search: known_b=[" << subsetsum::io::join(known_b, ",") << "] horizon=" << horizon
            << " node_budget=" << limits.max_nodes << " depth_budget=" << limits.max_depth
            << " threads=" << limits.threads
            << (limits.collect_dead_ends ? " (dead-end dump forces single-threaded order)" : "")
            << "\n";

  if (!cfg.deadend_file.empty()) {
    std::ofstream dump(cfg.deadend_file);
    if (!dump) throw InvalidInput("cannot write file: " + cfg.deadend_file);
    for (const DeadEnd& d : out.dead_ends) dump << subsetsum::io::to_json(d).dump() << "\n";
    std::cerr << "search: " << out.dead_ends.size() << " dead ends written to "
              << cfg.deadend_file << "\n";
  }

  if (cfg.format == "json")
    emit_json(subsetsum::io::to_json(out));
  else if (cfg.format == "csv")
    std::cout << subsetsum::io::render_csv(out);
  else
    std::cout << subsetsum::io::render_text(out);
  return out.kind == SearchOutcome::Kind::inconclusive ? kExitInconclusive : kExitOk;
}

int cmd_classify(RunConfig& cfg) {
  const std::vector<u64> prefix = resolve_b_list(cfg);
  const BClassification c = classify_b(prefix);
  std::cerr << "classify: prefix=[" << subsetsum::io::join(prefix, ",") << "]\n";
  if (cfg.format == "json")
    emit_json(subsetsum::io::to_json(c));
  else if (cfg.format == "csv")
    std::cout << subsetsum::io::render_csv(c);
  else
    std::cout << subsetsum::io::render_text(c);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  RunConfig cfg;
  CLI::App app{"subset-sum constructions, windowed verification, and bounded-horizon search"};
  app.require_subcommand(1);
  const auto format_check = CLI::IsMember({"json", "csv", "text"});

  CLI::App* gen = app.add_subcommand("gen-b", "generate an excluded-sequence prefix");
  gen->add_option("--family", cfg.family, "thm11 (recurrence) or ap (progression)")
      ->required()
      ->check(CLI::IsMember({"thm11", "ap"}));
  gen->add_option("--b1", cfg.b1, "first term")->required();
  gen->add_option("--d", cfg.d, "common difference (ap only)");
  gen->add_option("--n", cfg.n, "number of terms")->required();
  gen->add_flag("--bigint", cfg.bigint, "arbitrary-precision terms as decimal strings");
  cfg.format = "text";  // gen-b default; overridden below for the other commands
  gen->add_option("--format", cfg.format, "json | csv | text (default text)")->check(format_check);

  std::string build_format = "json", search_format = "json", classify_format = "json";
  CLI::App* build = app.add_subcommand("build", "build construction stages, optionally verify");
  build->add_option("--thm", cfg.thm, "1.1 (recurrence family) or 1.3 (progression family)")
      ->required()
      ->check(CLI::IsMember({"1.1", "1.3"}));
  build->add_option("--b1", cfg.b1, "first excluded term")->required();
  build->add_option("--d", cfg.d, "common difference (1.3 only)");
  build->add_option("--kmax", cfg.kmax, "last stage to build")->required();
  build->add_flag("--verify", cfg.verify, "check every stage against the sum oracle");
  build->add_option("--mem-budget", cfg.mem_budget_bits, "window budget in bits")
      ->check(CLI::PositiveNumber);
  build->add_option("--format", build_format, "json | csv | text (default json)")
      ->check(format_check);

  CLI::App* search = app.add_subcommand("search", "bounded-horizon non-existence search");
  search->add_option("--b", cfg.b_csv, "known excluded values, comma-separated");
  search->add_option("--b-file", cfg.b_file, "file of excluded values, one per line, # comments");
  search->add_option("--horizon", cfg.horizon,
                     "obligation bound; must equal the largest excluded value");
  search->add_option("--nodes", cfg.max_nodes, "node budget")->check(CLI::PositiveNumber);
  search->add_option("--depth", cfg.max_depth, "depth budget")->check(CLI::PositiveNumber);
  search->add_option("--threads", cfg.threads, "worker threads")->check(CLI::PositiveNumber);
  search->add_option("--dump-deadends", cfg.deadend_file, "write dead ends as JSON lines");
  search->add_option("--mem-budget", cfg.mem_budget_bits, "window budget in bits")
      ->check(CLI::PositiveNumber);
  search->add_option("--format", search_format, "json | csv | text (default json)")
      ->check(format_check);

  CLI::App* classify = app.add_subcommand("classify", "evaluate hypothesis sets on a prefix");
  classify->add_option("--b", cfg.b_csv, "sequence prefix, comma-separated");
  classify->add_option("--b-file", cfg.b_file, "file of terms, one per line, # comments");
  classify->add_option("--format", classify_format, "json | csv | text (default json)")
      ->check(format_check);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInvalidInput;
  }

  try {
    if (app.got_subcommand(gen)) {
      resolve_mem_budget(cfg);
      if (cfg.family == "ap" && gen->count("--d") == 0)
        throw InvalidInput("the progression family needs --d");
      return cmd_gen_b(cfg);
    }
    if (app.got_subcommand(build)) {
      cfg.format = build_format;
      cfg.mem_budget_from_flag = build->count("--mem-budget") > 0;
      resolve_mem_budget(cfg);
      return cmd_build(cfg);
    }
    if (app.got_subcommand(search)) {
      cfg.format = search_format;
      cfg.mem_budget_from_flag = search->count("--mem-budget") > 0;
      resolve_mem_budget(cfg);
      return cmd_search(cfg);
    }
    if (app.got_subcommand(classify)) {
      cfg.format = classify_format;
      resolve_mem_budget(cfg);
      return cmd_classify(cfg);
    }
    throw InvalidInput("no command given");
  } catch (const NoBaseConstruction& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalidInput;
  } catch (const InvalidInput& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalidInput;
  } catch (const Overflow& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitOverflow;
  } catch (const ResourceLimit& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitResourceLimit;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitMismatch;
  }
}
