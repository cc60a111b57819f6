#include <gtest/gtest.h>

#include <random>
#include <set>
#include <sstream>

#include "random_circuit.hpp"
#include "satfuzz/cnf.hpp"
#include "satfuzz/error.hpp"

using namespace satfuzz;
using satfuzz::testing::load_graph;

namespace {

// Clause count of the gate-wise encoding, derived per gate kind.
std::size_t expected_clauses(const Netlist& n) {
  std::size_t total = 0;
  for (const auto& g : n.gates) {
    std::size_t k = g.inputs.size();
    switch (g.kind) {
      case GateKind::Const0:
      case GateKind::Const1: total += 1; break;
      case GateKind::Buf:
      case GateKind::Not: total += 2; break;
      case GateKind::Xor:
      case GateKind::Xnor: total += 4 * (k - 1); break;
      default: total += k + 1; break;
    }
  }
  return total;
}

bool satisfied(const CnfFormula& f, std::uint64_t assignment) {
  for (const Clause& c : f.clauses()) {
    bool any = false;
    for (const Literal& l : c) {
      bool value = (assignment >> (l.var() - 1)) & 1U;
      any = any || (value != l.negated());
    }
    if (!any) return false;
  }
  return true;
}

}  // namespace

TEST(Literal, Dimacs) {
  Literal l = Literal::from_dimacs(-7);
  EXPECT_EQ(l.var(), 7u);
  EXPECT_TRUE(l.negated());
  EXPECT_EQ(l.dimacs(), -7);
  EXPECT_EQ((~l).dimacs(), 7);
  EXPECT_THROW(Literal::from_dimacs(0), Error);
}

TEST(Encode, C17) {
  CnfFormula f = encode(load_graph("c17.bench"));
  // 5 inputs + 6 gates, six 2-input NANDs at three clauses each
  EXPECT_EQ(f.var_count(), 11u);
  EXPECT_EQ(f.node_count(), 11u);
  EXPECT_EQ(f.clause_count(), 18u);
  ASSERT_EQ(f.input_vars().size(), 5u);
  for (std::size_t i = 0; i < 5; ++i) EXPECT_EQ(f.input_vars()[i], i + 1);
}

TEST(Encode, VariablesFollowTopologicalOrder) {
  CircuitGraph g = load_graph("c432.bench");
  CnfFormula f = encode(g);
  for (std::size_t i = 0; i < g.topo_order().size(); ++i) {
    EXPECT_EQ(f.node_var(g.topo_order()[i]), i + 1);
    EXPECT_EQ(f.var_node(static_cast<Var>(i + 1)), g.topo_order()[i]);
  }
  EXPECT_FALSE(f.var_node(0));
}

TEST(Encode, ClauseCountsOnRandomNetlists) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    Netlist n = satfuzz::testing::random_netlist(rng, 1 + rng() % 8, 1 + rng() % 30);
    CnfFormula f = encode(build_graph(n));
    EXPECT_EQ(f.clause_count(), expected_clauses(n));
    EXPECT_EQ(f.node_count(), n.primary_inputs.size() + n.gates.size());
  }
}

TEST(Encode, ModelsAreExactlyTheCircuitValuations) {
  std::mt19937_64 rng(21);
  int checked = 0;
  while (checked < 40) {
    Netlist n = satfuzz::testing::random_netlist(rng, 1 + rng() % 5, 1 + rng() % 8);
    CircuitGraph g = build_graph(n);
    CnfFormula f = encode(g);
    if (f.var_count() > 18) continue;
    ++checked;
    satfuzz::testing::Oracle oracle(n);

    std::set<std::vector<bool>> from_oracle;
    const std::size_t inputs = n.primary_inputs.size();
    for (std::uint64_t w = 0; w < (1ULL << inputs); ++w) {
      auto values = oracle.eval(satfuzz::testing::bits_of(w, inputs));
      std::vector<bool> row(f.node_count());
      for (std::size_t v = 0; v < f.node_count(); ++v) row[v] = values.at(f.node_name(node_id(v)));
      from_oracle.insert(row);
    }
    std::set<std::vector<bool>> from_cnf;
    for (std::uint64_t a = 0; a < (1ULL << f.var_count()); ++a) {
      if (!satisfied(f, a)) continue;
      std::vector<bool> row(f.node_count());
      for (std::size_t v = 0; v < f.node_count(); ++v) {
        row[v] = (a >> (f.node_var(node_id(v)) - 1)) & 1U;
      }
      from_cnf.insert(row);
    }
    EXPECT_EQ(from_cnf, from_oracle);
  }
}

TEST(Encode, Constants) {
  CnfFormula f = encode(satfuzz::testing::graph_from_bench("OUTPUT(z)\nOUTPUT(o)\nz = CONST0()\no = CONST1()\n"));
  EXPECT_EQ(f.clause_count(), 2u);
  EXPECT_TRUE(satisfied(f, 0b10));
  EXPECT_FALSE(satisfied(f, 0b01));
}

TEST(Dimacs, EmptyFormula) {
  std::ostringstream out;
  write_dimacs(out, CnfFormula{});
  EXPECT_EQ(out.str(), "p cnf 0 0\n");
}

TEST(Dimacs, SingleUnit) {
  CnfFormula f;
  f.add_clause({Literal(1)});
  std::ostringstream out;
  write_dimacs(out, f);
  EXPECT_EQ(out.str(), "p cnf 1 1\n1 0\n");
}

TEST(Dimacs, AssumptionsBecomeUnits) {
  CnfFormula f;
  f.add_clause({Literal(1), Literal(2, true)});
  const Literal a[] = {Literal(3, true)};
  std::ostringstream out;
  write_dimacs(out, f, a);
  EXPECT_EQ(out.str(), "p cnf 3 2\n1 -2 0\n-3 0\n");
}

TEST(Dimacs, RoundTrip) {
  CnfFormula f = encode(load_graph("c432.bench"));
  std::ostringstream out;
  write_dimacs(out, f);
  CnfFormula back = read_dimacs(out.str());
  EXPECT_EQ(back.var_count(), f.var_count());
  ASSERT_EQ(back.clause_count(), f.clause_count());
  for (std::size_t i = 0; i < f.clause_count(); ++i) EXPECT_EQ(back.clauses()[i], f.clauses()[i]);
}

TEST(Dimacs, ReaderAcceptsMultiLineClausesAndTrailer) {
  CnfFormula f = read_dimacs("c hi\np cnf 3 2\n1 -2\n 3 0 -1 0\n%\n0\n");
  ASSERT_EQ(f.clause_count(), 2u);
  EXPECT_EQ(f.clauses()[0].size(), 3u);
  EXPECT_EQ(f.var_count(), 3u);
}

TEST(Dimacs, ReaderErrors) {
  EXPECT_THROW(read_dimacs("1 0\n"), ParseError);
  EXPECT_THROW(read_dimacs("p cnf 1 1\n2 0\n"), ParseError);
  EXPECT_THROW(read_dimacs("p cnf 1 1\n1\n"), ParseError);
  EXPECT_THROW(read_dimacs("p cnf 2 1\n1 x 0\n"), ParseError);
  EXPECT_THROW(read_dimacs("p dnf 1 1\n1 0\n"), ParseError);
  EXPECT_THROW(read_dimacs(""), ParseError);
}
