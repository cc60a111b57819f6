#include <gtest/gtest.h>

#include <random>
#include <set>
#include <sstream>

#include "random_circuit.hpp"
#include "satfuzz/circuit_graph.hpp"
#include "satfuzz/error.hpp"

using namespace satfuzz;
using satfuzz::testing::graph_from_bench;
using satfuzz::testing::load_graph;

TEST(CircuitGraph, C17) {
  CircuitGraph g = load_graph("c17.bench");
  EXPECT_EQ(g.design_name(), "c17");
  EXPECT_EQ(g.input_count(), 5u);
  EXPECT_EQ(g.primary_outputs().size(), 2u);
  EXPECT_EQ(g.gate_count(), 6u);
  EXPECT_EQ(g.node_count(), 11u);
  EXPECT_EQ(g.max_level(), 3);
  EXPECT_EQ(g.level(*g.find("n1")), 0);
  EXPECT_EQ(g.level(*g.find("n11")), 1);
  EXPECT_EQ(g.level(*g.find("n16")), 2);
  EXPECT_EQ(g.level(*g.find("n22")), 3);
  EXPECT_FALSE(g.find("n99"));
}

TEST(CircuitGraph, RequiresScanConversion) {
  Netlist n = parse_bench("INPUT(a)\nOUTPUT(y)\nq = DFF(a)\ny = NOT(q)\n");
  EXPECT_THROW(build_graph(n), Error);
}

TEST(CircuitGraph, AndTreeDepth) {
  CircuitGraph g = load_graph("and_tree16.bench");
  EXPECT_EQ(g.input_count(), 16u);
  EXPECT_EQ(g.gate_count(), 15u);
}

TEST(CircuitGraph, InvariantsOnRandomNetlists) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    Netlist n = satfuzz::testing::random_netlist(rng, 1 + rng() % 10, rng() % 40);
    if (n.gates.empty()) continue;
    CircuitGraph g = build_graph(n);
    ASSERT_EQ(g.topo_order().size(), g.node_count());
    std::vector<int> position(g.node_count(), -1);
    for (std::size_t i = 0; i < g.topo_order().size(); ++i) {
      position[index(g.topo_order()[i])] = static_cast<int>(i);
    }
    for (std::size_t i = 0; i < g.input_count(); ++i) {
      EXPECT_EQ(g.topo_order()[i], g.primary_inputs()[i]);
    }
    for (std::size_t v = 0; v < g.node_count(); ++v) {
      const Node& node = g.node(node_id(v));
      int expect_level = 0;
      for (NodeId f : node.fanin) {
        EXPECT_LT(position[index(f)], position[v]);
        expect_level = std::max(expect_level, g.level(f) + 1);
      }
      EXPECT_EQ(g.level(node_id(v)), expect_level);
      EXPECT_EQ(g.find(node.name), node_id(v));
    }
  }
}

TEST(CircuitGraph, ConstantsAreLevelZero) {
  CircuitGraph g = graph_from_bench("INPUT(a)\nOUTPUT(y)\nk = CONST1()\ny = AND(a, k)\n");
  EXPECT_EQ(g.level(*g.find("k")), 0);
  EXPECT_EQ(g.level(*g.find("y")), 1);
}

TEST(CircuitGraph, CycleErrorListsTheLoop) {
  Netlist n = parse_bench("INPUT(a)\nOUTPUT(y)\nx = AND(a, z)\nz = NOT(y)\ny = BUF(x)\n");
  try {
    build_graph(scan_convert(n));
    FAIL();
  } catch (const CycleError& e) {
    std::set<std::string> names(e.cycle().begin(), e.cycle().end());
    EXPECT_EQ(names, (std::set<std::string>{"x", "y", "z"}));
  }
}

TEST(GraphDiff, IdenticalIsEmpty) {
  CircuitGraph a = load_graph("c17.bench");
  CircuitGraph b = load_graph("c17.bench");
  EXPECT_TRUE(diff_graphs(a, b).empty());
}

TEST(GraphDiff, KindMutation) {
  CircuitGraph a = load_graph("c17.bench");
  CircuitGraph b = load_graph("c17_kind_mutated.bench");
  GraphDiff d = diff_graphs(a, b);
  ASSERT_EQ(d.changed.size(), 1u);
  EXPECT_TRUE(d.added.empty());
  EXPECT_EQ(b.node(d.changed[0].node).name, "n19");
  EXPECT_EQ(d.changed[0].reason, DiffReason::KindChanged);
}

TEST(GraphDiff, AddedGate) {
  CircuitGraph a = load_graph("c17.bench");
  CircuitGraph b = load_graph("c17_gate_added.bench");
  GraphDiff d = diff_graphs(a, b);
  ASSERT_EQ(d.changed.size(), 1u);
  ASSERT_EQ(d.added.size(), 1u);
  EXPECT_EQ(b.node(d.changed[0].node).name, "n16");
  EXPECT_EQ(d.changed[0].reason, DiffReason::FaninChanged);
  EXPECT_EQ(b.node(d.added[0]).name, "n30");
}

TEST(GraphDiff, FaninOrderIsIgnored) {
  CircuitGraph a = graph_from_bench("INPUT(a)\nINPUT(b)\nOUTPUT(y)\ny = AND(a, b)\n");
  CircuitGraph b = graph_from_bench("INPUT(a)\nINPUT(b)\nOUTPUT(y)\ny = AND(b, a)\n");
  EXPECT_TRUE(diff_graphs(a, b).empty());
}

TEST(GraphDiff, KindTakesPrecedence) {
  CircuitGraph a = graph_from_bench("INPUT(a)\nINPUT(b)\nOUTPUT(y)\ny = AND(a, b)\n");
  CircuitGraph b = graph_from_bench("INPUT(a)\nINPUT(b)\nOUTPUT(y)\ny = OR(a, a)\n");
  GraphDiff d = diff_graphs(a, b);
  ASSERT_EQ(d.changed.size(), 1u);
  EXPECT_EQ(d.changed[0].reason, DiffReason::KindChanged);
}

TEST(Dot, MentionsEveryEdge) {
  CircuitGraph g = load_graph("c17.bench");
  std::ostringstream out;
  write_dot(out, g);
  std::string text = out.str();
  EXPECT_EQ(text.rfind("digraph", 0), 0u);
  std::size_t edges = 0;
  for (std::size_t at = text.find("->"); at != std::string::npos; at = text.find("->", at + 2)) ++edges;
  EXPECT_EQ(edges, 12u);
}
