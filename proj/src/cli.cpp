#include "satfuzz/cli.hpp"

#include <openssl/evp.h>

#include <CLI11.hpp>
#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <json.hpp>
#include <optional>
#include <sstream>

#include "satfuzz/cgf.hpp"
#include "satfuzz/circuit_graph.hpp"
#include "satfuzz/cnf.hpp"
#include "satfuzz/compare.hpp"
#include "satfuzz/coverage.hpp"
#include "satfuzz/error.hpp"
#include "satfuzz/netlist.hpp"
#include "satfuzz/pattern.hpp"
#include "satfuzz/sat.hpp"
#include "satfuzz/seed_generator.hpp"
#include "satfuzz/simulator.hpp"
#include "satfuzz/targets.hpp"

namespace satfuzz {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

std::string sha256_hex(std::string_view bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &length, EVP_sha256(), nullptr) != 1) {
    throw Error("SHA-256 digest failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string hex;
  hex.reserve(2 * length);
  for (unsigned int i = 0; i < length; ++i) {
    hex.push_back(kHex[digest[i] >> 4]);
    hex.push_back(kHex[digest[i] & 0xf]);
  }
  return hex;
}

namespace {

// Unreadable input file; reported with the parse-error exit code.
class InputError : public Error {
 public:
  using Error::Error;
};

// Target spec with no satisfying input.
class InvalidTarget : public Error {
 public:
  using Error::Error;
};

class Manifest {
 public:
  explicit Manifest(std::string command) {
    doc_["tool_version"] = kToolVersion;
    doc_["command"] = std::move(command);
    doc_["inputs"] = ordered_json::array();
    doc_["config"] = ordered_json::object();
    doc_["stage_times_s"] = ordered_json::object();
    doc_["outputs"] = ordered_json::array();
  }

  // Reads a file and records the digest of the bytes read.
  std::string read(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot read " + path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    std::string bytes = buffer.str();
    doc_["inputs"].push_back({{"path", path.string()}, {"sha256", sha256_hex(bytes)}});
    return bytes;
  }

  ordered_json& config() { return doc_["config"]; }
  void output(const fs::path& path) { doc_["outputs"].push_back(path.string()); }

  template <typename F>
  auto stage(const char* name, F&& body) {
    const auto start = std::chrono::steady_clock::now();
    struct Record {
      ordered_json& times;
      const char* name;
      std::chrono::steady_clock::time_point start;
      ~Record() {
        std::chrono::duration<double> took = std::chrono::steady_clock::now() - start;
        times[name] = took.count();
      }
    } record{doc_["stage_times_s"], name, start};
    return body();
  }

  void emit(const std::optional<fs::path>& path, std::ostream& err) const {
    if (path) {
      std::ofstream out(*path, std::ios::binary);
      if (!out) throw Error("cannot write " + path->string());
      out << doc_.dump(2) << '\n';
    } else {
      err << doc_.dump(2) << '\n';
    }
  }

 private:
  ordered_json doc_;
};

std::ofstream open_output(const fs::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  return out;
}

struct Design {
  CircuitGraph graph;
  CnfFormula formula;
};

Design load_design(Manifest& manifest, const fs::path& path) {
  std::string text = manifest.read(path);
  Netlist netlist = manifest.stage("parse", [&] { return scan_convert(parse_netlist(text, path)); });
  CircuitGraph graph = manifest.stage("build_graph", [&] { return build_graph(netlist); });
  CnfFormula formula = manifest.stage("encode", [&] { return encode(graph); });
  return {std::move(graph), std::move(formula)};
}

CircuitGraph load_graph(Manifest& manifest, const fs::path& path) {
  std::string text = manifest.read(path);
  return build_graph(scan_convert(parse_netlist(text, path)));
}

TargetSpec load_targets(Manifest& manifest, const fs::path& path, const Design& design,
                        const SolverOptions& options, std::ostream& err) {
  std::string text = manifest.read(path);
  TargetSpec spec = manifest.stage("parse_targets", [&] { return parse_targets(text, design.graph); });
  if (spec.empty()) throw ConfigError("target spec " + path.string() + " lists no nodes");
  ValidityVerdict verdict =
      manifest.stage("check_validity", [&] { return check_validity(spec, design.formula, options); });
  if (!verdict.valid) {
    err << "verdict: invalid (no input drives the target state)\n";
    throw InvalidTarget("target state in " + path.string() + " is unreachable");
  }
  return spec;
}

// --- gen -------------------------------------------------------------------

struct GenArgs {
  std::string netlist, targets;
  GenConfig config;
  std::optional<std::string> dimacs_out, patterns_out, report_out, manifest_out;
  bool record_time = false;
};

void add_gen_options(CLI::App& cmd, GenConfig& config) {
  cmd.add_option("-R,--patterns", config.pattern_budget, "pattern budget")->capture_default_str();
  cmd.add_option("--dmin", config.d_min, "minimum pairwise Hamming distance")
      ->capture_default_str();
  cmd.add_option("--seed", config.seed, "random seed")->capture_default_str();
  cmd.add_option("--retries", config.retry_budget, "consecutive rejections allowed")
      ->capture_default_str();
  cmd.add_option("--conflict-budget", config.conflict_budget,
                 "conflicts per solver call, 0 for no limit")
      ->capture_default_str();
}

void record_gen_config(Manifest& manifest, const GenConfig& c) {
  auto& j = manifest.config();
  j["R"] = c.pattern_budget;
  j["d_min"] = c.d_min;
  j["retry_budget"] = c.retry_budget;
  j["seed"] = c.seed;
  j["conflict_budget"] = c.conflict_budget;
}

SolverOptions solver_options(const GenConfig& c) {
  SolverOptions o;
  o.seed = c.seed;
  o.conflict_budget = c.conflict_budget;
  return o;
}

void run_gen(const GenArgs& a, std::ostream& out, std::ostream& err) {
  Manifest manifest("gen");
  record_gen_config(manifest, a.config);
  Design design = load_design(manifest, a.netlist);
  validate(a.config, design.graph.input_count());
  TargetSpec spec = load_targets(manifest, a.targets, design, solver_options(a.config), err);
  auto literals = build_target_formula(spec, design.formula);

  if (a.dimacs_out) {
    auto f = open_output(*a.dimacs_out);
    write_dimacs(f, design.formula, literals);
    manifest.output(*a.dimacs_out);
  }
  GenReport report = manifest.stage("generate", [&] { return generate(design.formula, literals, a.config); });
  CoverageReport coverage =
      manifest.stage("coverage", [&] { return measure(design.graph, spec, report.patterns); });

  if (a.patterns_out) {
    auto f = open_output(*a.patterns_out);
    write_patterns(f, report.patterns, design.graph);
    manifest.output(*a.patterns_out);
  } else {
    write_patterns(out, report.patterns, design.graph);
  }

  std::optional<double> time_s;
  if (a.record_time) time_s = report.wall_time.count();
  std::ostringstream row;
  write_summary_header(row);
  write_summary_row(row, design.graph, spec, report, coverage, time_s);
  if (a.report_out) {
    auto f = open_output(*a.report_out);
    f << row.str();
    manifest.output(*a.report_out);
  } else {
    err << row.str();
  }
  err << "stop: " << stop_reason_name(report.stop_reason) << ", patterns "
      << report.patterns.size() << ", solver calls " << report.solver_calls << '\n';
  manifest.emit(a.manifest_out, err);
}

// --- compare ---------------------------------------------------------------

struct CompareArgs {
  std::string netlist, targets;
  CompareConfig config;
  std::string out_dir = "compare_out";
  std::optional<std::string> manifest_out;
};

void run_compare(const CompareArgs& a, std::ostream& out, std::ostream& err) {
  Manifest manifest("compare");
  record_gen_config(manifest, a.config.gen);
  manifest.config()["trials"] = a.config.trials;
  Design design = load_design(manifest, a.netlist);
  validate(a.config.gen, design.graph.input_count());
  if (a.config.trials == 0) throw ConfigError("trials must be at least 1");
  TargetSpec spec = load_targets(manifest, a.targets, design, solver_options(a.config.gen), err);

  Comparison result =
      manifest.stage("compare", [&] { return compare(design.graph, design.formula, spec, a.config); });
  for (const auto& path : write_comparison(a.out_dir, result)) manifest.output(path);
  write_comparison_summary(out, result);
  manifest.emit(a.manifest_out, err);
}

// --- targets-diff ----------------------------------------------------------

struct DiffArgs {
  std::string original, modified;
  std::string polarity = "1";
  std::optional<std::string> out_path, manifest_out;
};

fs::path with_suffix(const fs::path& path, std::string_view suffix) {
  fs::path result = path.parent_path() / (path.stem().string() + std::string(suffix));
  result += path.extension();
  return result;
}

void run_targets_diff(const DiffArgs& a, std::ostream& out, std::ostream& err) {
  Manifest manifest("targets-diff");
  manifest.config()["polarity"] = a.polarity;
  Polarity polarity = a.polarity == "0"   ? Polarity::Zero
                      : a.polarity == "1" ? Polarity::One
                                          : Polarity::Both;
  CircuitGraph original = load_graph(manifest, a.original);
  CircuitGraph modified = load_graph(manifest, a.modified);
  GraphDiff diff = diff_graphs(original, modified);
  std::vector<TargetSpec> specs = targets_from_diff(diff, polarity);
  if (specs.empty()) specs.resize(polarity == Polarity::Both ? 2 : 1);

  for (const auto& c : diff.changed) {
    err << "changed " << modified.node(c.node).name << " (" << diff_reason_name(c.reason) << ")\n";
  }
  for (NodeId n : diff.added) err << "added " << modified.node(n).name << '\n';

  if (!a.out_path) {
    for (std::size_t i = 0; i < specs.size(); ++i) {
      if (specs.size() > 1) out << "# polarity " << i << '\n';
      write_targets(out, specs[i], modified);
    }
  } else if (specs.size() == 1) {
    auto f = open_output(*a.out_path);
    write_targets(f, specs[0], modified);
    manifest.output(*a.out_path);
  } else {
    for (std::size_t i = 0; i < specs.size(); ++i) {
      fs::path path = with_suffix(*a.out_path, i == 0 ? "_0" : "_1");
      auto f = open_output(path);
      write_targets(f, specs[i], modified);
      manifest.output(path);
    }
  }
  manifest.emit(a.manifest_out, err);
}

// --- export / sim / solve --------------------------------------------------

void write_to(const std::optional<std::string>& path, std::ostream& fallback,
              const std::function<void(std::ostream&)>& body) {
  if (path) {
    auto f = open_output(*path);
    body(f);
  } else {
    body(fallback);
  }
}

void run_export(const std::string& netlist, const std::string& format,
                const std::optional<std::string>& out_path, std::ostream& out) {
  Manifest manifest("export");
  std::string text = manifest.read(netlist);
  Netlist parsed = scan_convert(parse_netlist(text, netlist));
  write_to(out_path, out, [&](std::ostream& o) {
    if (format == "bench") {
      write_bench(o, parsed);
    } else {
      CircuitGraph graph = build_graph(parsed);
      if (format == "dot") {
        write_dot(o, graph);
      } else {
        write_dimacs(o, encode(graph));
      }
    }
  });
}

void run_sim(const std::string& netlist, const std::string& patterns,
             const std::optional<std::string>& out_path, std::ostream& out) {
  Manifest manifest("sim");
  CircuitGraph graph = load_graph(manifest, netlist);
  std::string text = manifest.read(patterns);
  auto list = read_patterns(text, graph);
  write_to(out_path, out, [&](std::ostream& o) { write_value_dump(o, graph, list); });
}

int run_solve(const std::string& path, std::uint64_t conflict_budget, std::ostream& out) {
  Manifest manifest("solve");
  CnfFormula formula = read_dimacs(manifest.read(path));
  SolverOptions options;
  options.conflict_budget = conflict_budget;
  SolverSession session(formula, options);
  try {
    write_solver_output(out, session.solve());
  } catch (const BudgetExhausted&) {
    out << "s UNKNOWN\n";
    return kExitSolverBudget;
  }
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"SAT-directed test pattern generation for gate-level netlists", "satfuzz"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolVersion);

  GenArgs gen;
  auto* gen_cmd = app.add_subcommand("gen", "generate targeted input patterns");
  gen_cmd->add_option("netlist", gen.netlist, ".bench or .blif netlist")->required();
  gen_cmd->add_option("targets", gen.targets, "target spec, one name=value per line")->required();
  add_gen_options(*gen_cmd, gen.config);
  gen_cmd->add_option("--dimacs-out", gen.dimacs_out, "circuit CNF with target units");
  gen_cmd->add_option("--patterns-out", gen.patterns_out, "pattern file (default stdout)");
  gen_cmd->add_option("--report-out", gen.report_out, "summary CSV (default stderr)");
  gen_cmd->add_option("--manifest-out", gen.manifest_out, "run manifest JSON (default stderr)");
  gen_cmd->add_flag("--record-time", gen.record_time, "write generation time into the report");

  CompareArgs cmp;
  auto* cmp_cmd = app.add_subcommand("compare", "generator against coverage-guided fuzzing");
  cmp_cmd->add_option("netlist", cmp.netlist)->required();
  cmp_cmd->add_option("targets", cmp.targets)->required();
  add_gen_options(*cmp_cmd, cmp.config.gen);
  cmp_cmd->add_option("--trials", cmp.config.trials, "fuzzing runs")->capture_default_str();
  cmp_cmd->add_option("--out-dir", cmp.out_dir, "directory for the CSV files")->capture_default_str();
  cmp_cmd->add_option("--manifest-out", cmp.manifest_out);

  DiffArgs diff;
  auto* diff_cmd = app.add_subcommand("targets-diff", "target spec from a netlist modification");
  diff_cmd->add_option("original", diff.original)->required();
  diff_cmd->add_option("modified", diff.modified)->required();
  diff_cmd->add_option("--polarity", diff.polarity)
      ->check(CLI::IsMember({"0", "1", "both"}))
      ->capture_default_str();
  diff_cmd->add_option("--out", diff.out_path, "with --polarity both, writes <stem>_0 and <stem>_1");
  diff_cmd->add_option("--manifest-out", diff.manifest_out);

  std::string export_netlist, export_format = "bench";
  std::optional<std::string> export_out;
  auto* export_cmd = app.add_subcommand("export", "write the scan-converted netlist");
  export_cmd->add_option("netlist", export_netlist)->required();
  export_cmd->add_option("--format", export_format)
      ->check(CLI::IsMember({"bench", "dot", "dimacs"}))
      ->capture_default_str();
  export_cmd->add_option("--out", export_out);

  std::string sim_netlist, sim_patterns;
  std::optional<std::string> sim_out;
  auto* sim_cmd = app.add_subcommand("sim", "dump node values for each pattern");
  sim_cmd->add_option("netlist", sim_netlist)->required();
  sim_cmd->add_option("patterns", sim_patterns)->required();
  sim_cmd->add_option("--out", sim_out);

  std::string solve_path;
  std::uint64_t solve_budget = 0;
  auto* solve_cmd = app.add_subcommand("solve", "decide a DIMACS CNF file");
  solve_cmd->add_option("cnf", solve_path)->required();
  solve_cmd->add_option("--conflict-budget", solve_budget)->capture_default_str();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (*gen_cmd) run_gen(gen, out, err);
    if (*cmp_cmd) run_compare(cmp, out, err);
    if (*diff_cmd) run_targets_diff(diff, out, err);
    if (*export_cmd) run_export(export_netlist, export_format, export_out, out);
    if (*sim_cmd) run_sim(sim_netlist, sim_patterns, sim_out, out);
    if (*solve_cmd) return run_solve(solve_path, solve_budget, out);
    return kExitOk;
  } catch (const InvalidTarget& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalidTarget;
  } catch (const BudgetExhausted& e) {
    err << "error: solver budget exhausted: " << e.what() << '\n';
    return kExitSolverBudget;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return kExitParse;
  } catch (const NetlistError& e) {
    err << "netlist error: " << e.what() << '\n';
    return kExitParse;
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kExitParse;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitParse;
  }
}

}  // namespace satfuzz
