#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string_view>
#include <vector>

#include "satfuzz/circuit_graph.hpp"
#include "satfuzz/cnf.hpp"
#include "satfuzz/pattern.hpp"
#include "satfuzz/sat.hpp"

namespace satfuzz {

enum class TargetSource { Manual, GraphDiff };

struct TargetEntry {
  NodeId node;
  bool desired;

  bool operator==(const TargetEntry&) const = default;
};

struct TargetSpec {
  std::vector<TargetEntry> entries;
  TargetSource source = TargetSource::Manual;

  std::size_t size() const { return entries.size(); }
  bool empty() const { return entries.empty(); }
};

// Lines of `<node-name>=<0|1>`; `#` comments and blank lines are ignored.
// Throws ParseError for unknown nodes, duplicates and bad values.
TargetSpec parse_targets(std::string_view text, const CircuitGraph& graph);

void write_targets(std::ostream& out, const TargetSpec& spec, const CircuitGraph& graph);

enum class Polarity { Zero, One, Both };

// One spec per requested polarity over changed and added nodes. An empty diff
// yields no specs.
std::vector<TargetSpec> targets_from_diff(const GraphDiff& diff, Polarity polarity);

// The target state as one literal per entry (their conjunction).
std::vector<Literal> build_target_formula(const TargetSpec& spec, const CnfFormula& formula);

struct ValidityVerdict {
  bool valid = false;
  std::optional<InputPattern> witness;  // present iff valid
};

// Valid iff the circuit formula and the target literals are jointly satisfiable.
ValidityVerdict check_validity(const TargetSpec& spec, const CnfFormula& formula,
                               const SolverOptions& options = {});

InputPattern project_inputs(const SatResult& result, const CnfFormula& formula);

}  // namespace satfuzz
