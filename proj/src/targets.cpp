#include "satfuzz/targets.hpp"

#include <algorithm>
#include <ostream>
#include <unordered_set>

#include "satfuzz/error.hpp"

namespace satfuzz {

namespace {

std::string_view trim(std::string_view s) {
  const char* ws = " \t\r";
  std::size_t first = s.find_first_not_of(ws);
  if (first == std::string_view::npos) return {};
  return s.substr(first, s.find_last_not_of(ws) - first + 1);
}

}  // namespace

TargetSpec parse_targets(std::string_view text, const CircuitGraph& graph) {
  TargetSpec spec;
  spec.source = TargetSource::Manual;
  std::unordered_set<std::size_t> seen;
  std::size_t line_no = 0;
  std::size_t begin = 0;
  while (begin < text.size()) {
    std::size_t end = text.find('\n', begin);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(begin, end - begin);
    begin = end + 1;
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ParseError("expected <node>=<0|1>", line_no);
    std::string_view name = trim(line.substr(0, eq));
    std::string_view value = trim(line.substr(eq + 1));
    if (name.empty()) throw ParseError("missing node name", line_no);
    if (value != "0" && value != "1") {
      throw ParseError("target value must be 0 or 1, got '" + std::string(value) + "'", line_no);
    }
    auto node = graph.find(name);
    if (!node) throw ParseError("unknown node '" + std::string(name) + "'", line_no);
    if (!seen.insert(index(*node)).second) {
      throw ParseError("duplicate target node '" + std::string(name) + "'", line_no);
    }
    spec.entries.push_back({*node, value == "1"});
  }
  return spec;
}

void write_targets(std::ostream& out, const TargetSpec& spec, const CircuitGraph& graph) {
  for (const auto& entry : spec.entries) {
    out << graph.node(entry.node).name << '=' << (entry.desired ? 1 : 0) << '\n';
  }
}

std::vector<TargetSpec> targets_from_diff(const GraphDiff& diff, Polarity polarity) {
  if (diff.empty()) return {};
  std::vector<NodeId> nodes;
  for (const auto& c : diff.changed) nodes.push_back(c.node);
  nodes.insert(nodes.end(), diff.added.begin(), diff.added.end());
  std::sort(nodes.begin(), nodes.end());

  auto make = [&](bool desired) {
    TargetSpec spec;
    spec.source = TargetSource::GraphDiff;
    for (NodeId n : nodes) spec.entries.push_back({n, desired});
    return spec;
  };
  switch (polarity) {
    case Polarity::Zero: return {make(false)};
    case Polarity::One: return {make(true)};
    case Polarity::Both: return {make(false), make(true)};
  }
  return {};
}

std::vector<Literal> build_target_formula(const TargetSpec& spec, const CnfFormula& formula) {
  std::vector<Literal> literals;
  literals.reserve(spec.size());
  for (const auto& entry : spec.entries) {
    literals.emplace_back(formula.node_var(entry.node), !entry.desired);
  }
  return literals;
}

InputPattern project_inputs(const SatResult& result, const CnfFormula& formula) {
  const auto vars = formula.input_vars();
  InputPattern pattern(vars.size());
  for (std::size_t i = 0; i < vars.size(); ++i) pattern.set(i, result.value(vars[i]));
  return pattern;
}

ValidityVerdict check_validity(const TargetSpec& spec, const CnfFormula& formula,
                               const SolverOptions& options) {
  for (const auto& entry : spec.entries) {
    if (index(entry.node) >= formula.node_count()) {
      throw ConfigError("target node id " + std::to_string(index(entry.node)) +
                        " is not in the formula");
    }
  }
  SolverSession session(formula, options);
  auto literals = build_target_formula(spec, formula);
  SatResult result = session.solve(literals);
  ValidityVerdict verdict;
  if (result.sat()) {
    verdict.valid = true;
    verdict.witness = project_inputs(result, formula);
  }
  return verdict;
}

}  // namespace satfuzz
