#include "satfuzz/simulator.hpp"

#include <ostream>

#include "satfuzz/error.hpp"

namespace satfuzz {

namespace {

// Evaluates one gate over word-packed fanin values. With Word = uint8_t and
// values in {0, 1} this is the scalar simulator; with uint64_t, 64 lanes.
template <typename Word, typename Values>
Word eval_gate(const Node& node, const Values& values) {
  const Word ones = static_cast<Word>(~Word{0});
  auto in = [&](std::size_t i) { return values[index(node.fanin[i])]; };
  Word acc{};
  switch (node.kind) {
    case GateKind::Const0: return Word{0};
    case GateKind::Const1: return ones;
    case GateKind::Buf:
    case GateKind::Dff: return in(0);
    case GateKind::Not: return static_cast<Word>(~in(0));
    case GateKind::And:
    case GateKind::Nand:
      acc = ones;
      for (std::size_t i = 0; i < node.fanin.size(); ++i) acc &= in(i);
      return node.kind == GateKind::And ? acc : static_cast<Word>(~acc);
    case GateKind::Or:
    case GateKind::Nor:
      for (std::size_t i = 0; i < node.fanin.size(); ++i) acc |= in(i);
      return node.kind == GateKind::Or ? acc : static_cast<Word>(~acc);
    case GateKind::Xor:
    case GateKind::Xnor:
      for (std::size_t i = 0; i < node.fanin.size(); ++i) acc ^= in(i);
      return node.kind == GateKind::Xor ? acc : static_cast<Word>(~acc);
    case GateKind::Input: break;
  }
  return acc;
}

void check_width(const CircuitGraph& graph, const InputPattern& pattern) {
  if (pattern.size() != graph.input_count()) {
    throw ConfigError("pattern has " + std::to_string(pattern.size()) + " bits but the circuit has " +
                      std::to_string(graph.input_count()) + " inputs");
  }
}

}  // namespace

Valuation simulate(const CircuitGraph& graph, const InputPattern& pattern) {
  check_width(graph, pattern);
  std::vector<std::uint8_t> values(graph.node_count(), 0);
  const auto inputs = graph.primary_inputs();
  for (std::size_t i = 0; i < inputs.size(); ++i) values[index(inputs[i])] = pattern[i] ? 1 : 0;
  for (NodeId id : graph.topo_order().subspan(inputs.size())) {
    values[index(id)] = eval_gate<std::uint8_t>(graph.node(id), values) & 1U;
  }
  return Valuation(std::move(values));
}

SimBatch simulate_batch(const CircuitGraph& graph, std::span<const InputPattern> patterns) {
  if (patterns.size() > kBatchWidth) {
    throw ConfigError("batch of " + std::to_string(patterns.size()) + " patterns exceeds " +
                      std::to_string(kBatchWidth) + " lanes");
  }
  SimBatch batch;
  batch.lanes = patterns.size();
  if (patterns.empty()) return batch;
  batch.words.assign(graph.node_count(), 0);
  const auto inputs = graph.primary_inputs();
  for (std::size_t lane = 0; lane < patterns.size(); ++lane) {
    check_width(graph, patterns[lane]);
    for (std::size_t i = 0; i < inputs.size(); ++i) {
      if (patterns[lane][i]) batch.words[index(inputs[i])] |= std::uint64_t{1} << lane;
    }
  }
  const std::uint64_t mask = batch.lane_mask();
  for (NodeId id : graph.topo_order().subspan(inputs.size())) {
    batch.words[index(id)] = eval_gate<std::uint64_t>(graph.node(id), batch.words) & mask;
  }
  return batch;
}

void write_value_dump(std::ostream& out, const CircuitGraph& graph,
                      std::span<const InputPattern> patterns) {
  for (std::size_t p = 0; p < patterns.size(); ++p) {
    Valuation values = simulate(graph, patterns[p]);
    out << "# pattern " << p + 1 << ' ' << patterns[p].to_string() << '\n';
    for (std::size_t v = 0; v < graph.node_count(); ++v) {
      out << graph.node(node_id(v)).name << '=' << (values[node_id(v)] ? 1 : 0) << '\n';
    }
  }
}

}  // namespace satfuzz
