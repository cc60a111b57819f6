#include "satfuzz/circuit_graph.hpp"

#include <algorithm>
#include <ostream>
#include <queue>

#include "satfuzz/error.hpp"

namespace satfuzz {

namespace {

// Follows unresolved fanins from `start` until a node repeats.
std::vector<std::string> extract_cycle(const std::vector<Node>& nodes,
                                       const std::vector<std::size_t>& pending, NodeId start) {
  std::vector<int> position(nodes.size(), -1);
  std::vector<NodeId> path;
  NodeId current = start;
  while (position[index(current)] < 0) {
    position[index(current)] = static_cast<int>(path.size());
    path.push_back(current);
    const auto& fanin = nodes[index(current)].fanin;
    auto next = std::find_if(fanin.begin(), fanin.end(),
                             [&](NodeId f) { return pending[index(f)] > 0; });
    current = *next;
  }
  std::vector<std::string> names;
  for (auto it = path.begin() + position[index(current)]; it != path.end(); ++it) {
    names.push_back(nodes[index(*it)].name);
  }
  // Report in signal-flow order.
  std::reverse(names.begin(), names.end());
  return names;
}

}  // namespace

CircuitGraph CircuitGraph::build(const Netlist& netlist) {
  if (!netlist.scan_converted) {
    throw NetlistError("netlist '" + netlist.name + "' must be scan converted before graph build");
  }
  validate(netlist);

  CircuitGraph g;
  g.design_name_ = netlist.name;
  g.nodes_.reserve(netlist.primary_inputs.size() + netlist.gates.size());
  for (const auto& pi : netlist.primary_inputs) {
    NodeId id = node_id(g.nodes_.size());
    g.nodes_.push_back(Node{pi, GateKind::Input, {}});
    g.primary_inputs_.push_back(id);
    g.by_name_.emplace(pi, id);
  }
  for (const auto& gate : netlist.gates) {
    g.by_name_.emplace(gate.output, node_id(g.nodes_.size()));
    g.nodes_.push_back(Node{gate.output, gate.kind, {}});
  }
  for (std::size_t i = 0; i < netlist.gates.size(); ++i) {
    auto& fanin = g.nodes_[g.primary_inputs_.size() + i].fanin;
    for (const auto& in : netlist.gates[i].inputs) fanin.push_back(g.by_name_.at(in));
  }
  for (const auto& po : netlist.primary_outputs) g.primary_outputs_.push_back(g.by_name_.at(po));

  // Kahn's algorithm; ties resolved by NodeId so the order is reproducible.
  const std::size_t n = g.nodes_.size();
  std::vector<std::size_t> pending(n, 0);
  std::vector<std::vector<NodeId>> fanout(n);
  for (std::size_t v = 0; v < n; ++v) {
    pending[v] = g.nodes_[v].fanin.size();
    for (NodeId f : g.nodes_[v].fanin) fanout[index(f)].push_back(node_id(v));
  }
  g.levels_.assign(n, 0);
  g.topo_order_.reserve(n);
  std::priority_queue<std::size_t, std::vector<std::size_t>, std::greater<>> ready;
  for (NodeId pi : g.primary_inputs_) g.topo_order_.push_back(pi);
  for (std::size_t v = g.primary_inputs_.size(); v < n; ++v) {
    if (pending[v] == 0) ready.push(v);
  }
  auto release = [&](NodeId from) {
    for (NodeId out : fanout[index(from)]) {
      g.levels_[index(out)] = std::max(g.levels_[index(out)], g.levels_[index(from)] + 1);
      if (--pending[index(out)] == 0) ready.push(index(out));
    }
  };
  for (NodeId pi : g.primary_inputs_) release(pi);
  while (!ready.empty()) {
    NodeId v = node_id(ready.top());
    ready.pop();
    g.topo_order_.push_back(v);
    release(v);
  }
  if (g.topo_order_.size() != n) {
    for (std::size_t v = 0; v < n; ++v) {
      if (pending[v] > 0) throw CycleError(extract_cycle(g.nodes_, pending, node_id(v)));
    }
  }
  return g;
}

int CircuitGraph::max_level() const {
  return levels_.empty() ? 0 : *std::max_element(levels_.begin(), levels_.end());
}

std::optional<NodeId> CircuitGraph::find(std::string_view name) const {
  auto it = by_name_.find(std::string(name));
  if (it == by_name_.end()) return std::nullopt;
  return it->second;
}

std::string_view diff_reason_name(DiffReason reason) {
  switch (reason) {
    case DiffReason::KindChanged: return "kind-changed";
    case DiffReason::FaninChanged: return "fanin-changed";
    case DiffReason::NewNode: return "new-node";
  }
  return "?";
}

GraphDiff diff_graphs(const CircuitGraph& original, const CircuitGraph& modified) {
  auto fanin_names = [](const CircuitGraph& g, const Node& node) {
    std::vector<std::string_view> names;
    for (NodeId f : node.fanin) names.push_back(g.node(f).name);
    std::sort(names.begin(), names.end());
    return names;
  };

  GraphDiff diff;
  for (std::size_t v = 0; v < modified.node_count(); ++v) {
    const Node& node = modified.node(node_id(v));
    auto match = original.find(node.name);
    if (!match) {
      diff.added.push_back(node_id(v));
      continue;
    }
    const Node& before = original.node(*match);
    if (before.kind != node.kind) {
      diff.changed.push_back({node_id(v), DiffReason::KindChanged});
    } else if (fanin_names(original, before) != fanin_names(modified, node)) {
      diff.changed.push_back({node_id(v), DiffReason::FaninChanged});
    }
  }
  return diff;
}

void write_dot(std::ostream& out, const CircuitGraph& graph) {
  auto escaped = [](std::string_view s) {
    std::string q;
    for (char c : s) {
      if (c == '"' || c == '\\') q += '\\';
      q += c;
    }
    return q;
  };
  auto quoted = [&](std::string_view s) { return '"' + escaped(s) + '"'; };
  out << "digraph " << quoted(graph.design_name()) << " {\n  rankdir=LR;\n";
  for (std::size_t v = 0; v < graph.node_count(); ++v) {
    const Node& node = graph.node(node_id(v));
    out << "  n" << v << " [label=\"" << escaped(node.name) << "\\n" << gate_kind_name(node.kind) << '"'
        << (node.kind == GateKind::Input ? ", shape=box" : "") << "];\n";
  }
  for (std::size_t v = 0; v < graph.node_count(); ++v) {
    for (NodeId f : graph.node(node_id(v)).fanin) out << "  n" << index(f) << " -> n" << v << ";\n";
  }
  out << "}\n";
}

}  // namespace satfuzz
