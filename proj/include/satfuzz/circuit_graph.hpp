#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "satfuzz/gate_kind.hpp"
#include "satfuzz/netlist.hpp"

namespace satfuzz {

enum class NodeId : std::uint32_t {};

constexpr std::size_t index(NodeId id) { return static_cast<std::size_t>(id); }
constexpr NodeId node_id(std::size_t i) { return static_cast<NodeId>(i); }

struct Node {
  std::string name;
  GateKind kind = GateKind::Input;
  std::vector<NodeId> fanin;
};

// Levelized DAG over primary inputs, constants and gate outputs.
// NodeIds follow declaration order: primary inputs first, then gates.
// Immutable once built.
class CircuitGraph {
 public:
  static CircuitGraph build(const Netlist& netlist);

  const std::string& design_name() const { return design_name_; }
  std::size_t node_count() const { return nodes_.size(); }
  std::size_t gate_count() const { return nodes_.size() - primary_inputs_.size(); }
  std::size_t input_count() const { return primary_inputs_.size(); }

  const Node& node(NodeId id) const { return nodes_[index(id)]; }
  std::span<const Node> nodes() const { return nodes_; }
  std::span<const NodeId> primary_inputs() const { return primary_inputs_; }
  std::span<const NodeId> primary_outputs() const { return primary_outputs_; }

  // Primary inputs first (in declaration order), then every other node
  // after all of its fanins.
  std::span<const NodeId> topo_order() const { return topo_order_; }
  int level(NodeId id) const { return levels_[index(id)]; }
  int max_level() const;

  std::optional<NodeId> find(std::string_view name) const;

 private:
  std::string design_name_;
  std::vector<Node> nodes_;
  std::vector<NodeId> primary_inputs_;
  std::vector<NodeId> primary_outputs_;
  std::vector<NodeId> topo_order_;
  std::vector<int> levels_;
  std::unordered_map<std::string, NodeId> by_name_;
};

// Requires a scan-converted netlist. Throws CycleError on combinational loops.
inline CircuitGraph build_graph(const Netlist& netlist) { return CircuitGraph::build(netlist); }

enum class DiffReason { KindChanged, FaninChanged, NewNode };

struct DiffEntry {
  NodeId node;
  DiffReason reason;

  bool operator==(const DiffEntry&) const = default;
};

// Node ids refer to the modified graph.
struct GraphDiff {
  std::vector<DiffEntry> changed;
  std::vector<NodeId> added;

  bool empty() const { return changed.empty() && added.empty(); }
};

// Nodes are matched by name. Deleted nodes are not reported.
GraphDiff diff_graphs(const CircuitGraph& original, const CircuitGraph& modified);

std::string_view diff_reason_name(DiffReason reason);

void write_dot(std::ostream& out, const CircuitGraph& graph);

}  // namespace satfuzz
