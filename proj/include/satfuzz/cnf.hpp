#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "satfuzz/circuit_graph.hpp"

namespace satfuzz {

using Var = std::uint32_t;

class Literal {
 public:
  constexpr Literal(Var var, bool negated = false) : var_(var), negated_(negated) {}

  // Builds a literal from a signed DIMACS integer. Zero is rejected.
  static Literal from_dimacs(int value);

  constexpr Var var() const { return var_; }
  constexpr bool negated() const { return negated_; }
  constexpr Literal operator~() const { return Literal(var_, !negated_); }
  int dimacs() const { return negated_ ? -static_cast<int>(var_) : static_cast<int>(var_); }

  constexpr bool operator==(const Literal&) const = default;

 private:
  Var var_;
  bool negated_;
};

using Clause = std::vector<Literal>;

// Conjunction of clauses over variables 1..var_count. Variables 1..node_count
// mirror the graph nodes in topological order; anything above is a helper.
class CnfFormula {
 public:
  CnfFormula() = default;

  Var new_var() { return ++var_count_; }
  void add_clause(Clause clause);

  std::span<const Clause> clauses() const { return clauses_; }
  std::size_t clause_count() const { return clauses_.size(); }
  Var var_count() const { return var_count_; }

  std::size_t node_count() const { return node_to_var_.size(); }
  Var node_var(NodeId node) const { return node_to_var_.at(index(node)); }
  std::optional<NodeId> var_node(Var var) const;
  const std::string& node_name(NodeId node) const { return node_names_.at(index(node)); }

  // Variables of the primary inputs, in primary-input order.
  std::span<const Var> input_vars() const { return input_vars_; }

 private:
  friend CnfFormula encode(const CircuitGraph& graph);

  std::vector<Clause> clauses_;
  Var var_count_ = 0;
  std::vector<Var> node_to_var_;
  std::vector<std::optional<NodeId>> var_to_node_;  // index var - 1
  std::vector<std::string> node_names_;
  std::vector<Var> input_vars_;
};

// Gate-wise Tseitin encoding. Satisfying assignments projected onto the node
// variables are exactly the consistent valuations of the circuit.
CnfFormula encode(const CircuitGraph& graph);

// Emits `c node <name> = var <k>` lines, the `p cnf` header, the clauses, and
// each assumption as a unit clause.
void write_dimacs(std::ostream& out, const CnfFormula& formula,
                  std::span<const Literal> assumptions = {});

// Plain DIMACS reader; comment lines are skipped.
CnfFormula read_dimacs(std::string_view text);

}  // namespace satfuzz
