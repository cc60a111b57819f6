#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "random_circuit.hpp"
#include "satfuzz/error.hpp"
#include "satfuzz/netlist.hpp"

using namespace satfuzz;
using satfuzz::testing::data_path;
using satfuzz::testing::slurp;

namespace {

ParseError bench_error(const std::string& text) {
  try {
    parse_bench(text);
  } catch (const ParseError& e) {
    return e;
  }
  ADD_FAILURE() << "no ParseError for:\n" << text;
  return ParseError("none");
}

}  // namespace

TEST(Bench, C17Shape) {
  Netlist n = parse_bench(slurp(data_path("c17.bench")), "c17");
  EXPECT_EQ(n.primary_inputs.size(), 5u);
  EXPECT_EQ(n.primary_outputs.size(), 2u);
  EXPECT_EQ(n.gates.size(), 6u);
  for (const auto& g : n.gates) EXPECT_EQ(g.kind, GateKind::Nand);
  EXPECT_FALSE(n.scan_converted);
}

TEST(Bench, KeywordsAreCaseInsensitiveAndBuffAliases) {
  Netlist n = parse_bench("input(a)\nINPUT(b)\nOutput(y)\nt = buff(a)\ny = and(t, b)\n");
  ASSERT_EQ(n.gates.size(), 2u);
  EXPECT_EQ(n.gates[0].kind, GateKind::Buf);
  EXPECT_EQ(n.gates[1].kind, GateKind::And);
}

TEST(Bench, CommentsAndBlankLines) {
  Netlist n = parse_bench("# header\n\nINPUT(a) # trailing\n  \nOUTPUT(y)\ny = NOT(a)\n");
  EXPECT_EQ(n.gates.size(), 1u);
}

TEST(Bench, Constants) {
  Netlist n = parse_bench("OUTPUT(z)\nOUTPUT(o)\nz = CONST0()\no = CONST1()\n");
  EXPECT_EQ(n.gates[0].kind, GateKind::Const0);
  EXPECT_EQ(n.gates[1].kind, GateKind::Const1);
}

TEST(Bench, UnsupportedKeywordHasLocation) {
  ParseError e = bench_error("INPUT(a)\nOUTPUT(y)\ny = MUX(a, a)\n");
  EXPECT_EQ(e.line(), 3u);
  EXPECT_EQ(e.column(), 5u);
  EXPECT_NE(std::string(e.what()).find("MUX"), std::string::npos);
}

TEST(Bench, DuplicateDefinition) {
  ParseError e = bench_error("INPUT(a)\nOUTPUT(y)\ny = NOT(a)\ny = BUF(a)\n");
  EXPECT_EQ(e.line(), 4u);
  EXPECT_NE(std::string(e.what()).find("duplicate"), std::string::npos);
}

TEST(Bench, InputRedefinedAsGate) {
  ParseError e = bench_error("INPUT(a)\nOUTPUT(a)\na = NOT(a)\n");
  EXPECT_EQ(e.line(), 3u);
}

TEST(Bench, UndefinedSignalReportsFirstUse) {
  ParseError e = bench_error("INPUT(a)\nOUTPUT(y)\nt = AND(a, ghost)\ny = OR(t, other)\n");
  EXPECT_EQ(e.line(), 3u);
  EXPECT_NE(std::string(e.what()).find("ghost"), std::string::npos);
}

TEST(Bench, UndefinedOutput) {
  ParseError e = bench_error("INPUT(a)\nOUTPUT(nowhere)\ny = NOT(a)\n");
  EXPECT_NE(std::string(e.what()).find("nowhere"), std::string::npos);
}

TEST(Bench, ArityViolations) {
  EXPECT_NE(std::string(bench_error("INPUT(a)\nOUTPUT(y)\ny = AND(a)\n").what())
                .find("AND requires >= 2 inputs, got 1"),
            std::string::npos);
  bench_error("INPUT(a)\nINPUT(b)\nOUTPUT(y)\ny = NOT(a, b)\n");
  bench_error("OUTPUT(y)\ny = CONST1(y)\n");
}

TEST(Bench, MalformedSyntax) {
  bench_error("INPUT a\n");
  bench_error("INPUT(a)\nOUTPUT(y)\ny = NOT(a\n");
  bench_error("INPUT(a)\nOUTPUT(y)\ny NOT(a)\n");
  bench_error("INPUT(a)\nOUTPUT(y)\ny = NOT(a) junk\n");
}

TEST(Bench, CombinationalCycleSurfacesAtGraphBuild) {
  Netlist n = parse_bench("INPUT(a)\nOUTPUT(y)\nx = AND(a, y)\ny = NOT(x)\n");
  try {
    build_graph(scan_convert(n));
    FAIL() << "expected CycleError";
  } catch (const CycleError& e) {
    EXPECT_EQ(e.cycle().size(), 2u);
  }
}

TEST(Bench, CycleThroughDffIsFine) {
  Netlist n = parse_bench("INPUT(a)\nOUTPUT(y)\nq = DFF(y)\ny = AND(a, q)\n");
  EXPECT_NO_THROW(build_graph(scan_convert(n)));
}

TEST(Bench, RoundTripRandom) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    Netlist n = satfuzz::testing::random_netlist(rng, 1 + rng() % 8, 1 + rng() % 30);
    n.scan_converted = false;
    std::ostringstream text;
    write_bench(text, n);
    Netlist back = parse_bench(text.str(), n.name);
    EXPECT_EQ(back, n) << text.str();
  }
}

TEST(ScanConvert, S27) {
  Netlist n = scan_convert(parse_bench(slurp(data_path("s27.bench")), "s27"));
  EXPECT_TRUE(n.scan_converted);
  EXPECT_EQ(n.primary_inputs.size(), 7u);
  EXPECT_EQ(n.primary_outputs.size(), 4u);
  for (const auto& g : n.gates) EXPECT_NE(g.kind, GateKind::Dff);
  EXPECT_EQ(n.gates.size(), 10u);
}

TEST(ScanConvert, Idempotent) {
  Netlist once = scan_convert(parse_bench(slurp(data_path("s27.bench")), "s27"));
  EXPECT_EQ(scan_convert(once), once);
}

TEST(ScanConvert, DffWhoseDIsAlreadyAnOutput) {
  Netlist n = scan_convert(parse_bench("INPUT(a)\nOUTPUT(y)\nq = DFF(y)\ny = AND(a, q)\n"));
  EXPECT_EQ(n.primary_outputs, (std::vector<std::string>{"y"}));
  EXPECT_EQ(n.primary_inputs, (std::vector<std::string>{"a", "q"}));
}

TEST(ScanConvert, CombinationalUnchanged) {
  Netlist n = parse_bench(slurp(data_path("c17.bench")), "c17");
  Netlist s = scan_convert(n);
  EXPECT_EQ(s.gates, n.gates);
  EXPECT_EQ(s.primary_inputs, n.primary_inputs);
}

TEST(Blif, S27MatchesBench) {
  Netlist blif = parse_blif(slurp(data_path("s27.blif")));
  Netlist bench = parse_bench(slurp(data_path("s27.bench")), "s27");
  EXPECT_EQ(blif, bench);
  EXPECT_EQ(blif.warnings.size(), 3u);
  EXPECT_EQ(scan_convert(blif), scan_convert(bench));
}

TEST(Blif, CoversMapToGates) {
  Netlist n = parse_blif(
      ".model m\n.inputs a b c\n.outputs x o n1 z k\n"
      ".names a b c x\n100 1\n010 1\n001 1\n111 1\n"
      ".names a b o\n00 0\n"
      ".names a n1\n1 0\n"
      ".names z\n"
      ".names k\n1\n"
      ".end\n");
  ASSERT_EQ(n.gates.size(), 5u);
  EXPECT_EQ(n.gates[0].kind, GateKind::Xor);
  EXPECT_EQ(n.gates[1].kind, GateKind::Or);
  EXPECT_EQ(n.gates[2].kind, GateKind::Not);
  EXPECT_EQ(n.gates[3].kind, GateKind::Const0);
  EXPECT_EQ(n.gates[4].kind, GateKind::Const1);
}

TEST(Blif, ContinuationLines) {
  Netlist n = parse_blif(".model m\n.inputs a \\\n b\n.outputs y\n.names a b y\n11 1\n.end\n");
  EXPECT_EQ(n.primary_inputs.size(), 2u);
  EXPECT_EQ(n.gates[0].kind, GateKind::And);
}

TEST(Blif, Errors) {
  EXPECT_THROW(parse_blif(".model m\n.inputs a b\n.outputs y\n.names a b y\n10 1\n.end\n"),
               ParseError);  // a AND NOT b is not a supported gate
  EXPECT_THROW(parse_blif(".model m\n.inputs a b\n.outputs y\n.names a b y\n11 1\n00 0\n.end\n"),
               ParseError);  // mixed on/off set
  EXPECT_THROW(parse_blif(".model m\n.inputs a\n.outputs y\n.subckt foo\n.end\n"), ParseError);
  EXPECT_THROW(parse_blif(".model m\n.end\n.model n\n.end\n"), ParseError);
  EXPECT_THROW(parse_blif(".model m\n.inputs a\n.outputs y\n.names a y\n1x 1\n.end\n"), ParseError);
  EXPECT_THROW(parse_blif(".model m\n.inputs a\n.outputs y\n.names a q y\n11 1\n.end\n"),
               ParseError);  // undefined q
}

TEST(ParseNetlist, DispatchesOnExtension) {
  auto bench = data_path("s27.bench");
  auto blif = data_path("s27.blif");
  EXPECT_EQ(parse_netlist(slurp(blif), blif), parse_netlist(slurp(bench), bench));
  EXPECT_EQ(parse_netlist(slurp(bench), bench).name, "s27");
}
