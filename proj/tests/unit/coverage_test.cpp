#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <sstream>

#include "random_circuit.hpp"
#include "satfuzz/coverage.hpp"
#include "satfuzz/error.hpp"

using namespace satfuzz;
using satfuzz::testing::graph_from_bench;

namespace {

const char* kFourWay =
    "INPUT(a)\nINPUT(b)\nINPUT(c)\nINPUT(d)\nOUTPUT(w)\nOUTPUT(x)\nOUTPUT(y)\nOUTPUT(z)\n"
    "w = BUF(a)\nx = BUF(b)\ny = BUF(c)\nz = BUF(d)\n";

struct Naive {
  std::size_t reached = 0;
  std::size_t toggled = 0;
  std::vector<std::optional<std::size_t>> first;
};

// Scalar recount by node name over the netlist.
Naive recount(const Netlist& n, const CircuitGraph& g, const TargetSpec& spec,
              const std::vector<InputPattern>& patterns) {
  satfuzz::testing::Oracle oracle(n);
  std::vector<bool> saw0(spec.size()), saw1(spec.size());
  Naive r;
  r.first.resize(spec.size());
  for (std::size_t p = 0; p < patterns.size(); ++p) {
    std::vector<bool> bits(patterns[p].size());
    for (std::size_t i = 0; i < bits.size(); ++i) bits[i] = patterns[p][i];
    auto values = oracle.eval(bits);
    for (std::size_t t = 0; t < spec.size(); ++t) {
      bool v = values.at(g.node(spec.entries[t].node).name);
      (v ? saw1 : saw0)[t] = true;
      if (v == spec.entries[t].desired && !r.first[t]) r.first[t] = p + 1;
    }
  }
  for (std::size_t t = 0; t < spec.size(); ++t) {
    r.reached += r.first[t].has_value();
    r.toggled += saw0[t] && saw1[t];
  }
  return r;
}

TargetSpec random_spec(std::mt19937_64& rng, const CircuitGraph& g) {
  TargetSpec spec;
  std::vector<std::size_t> ids(g.node_count());
  for (std::size_t i = 0; i < ids.size(); ++i) ids[i] = i;
  std::shuffle(ids.begin(), ids.end(), rng);
  std::size_t k = 1 + rng() % std::min<std::size_t>(ids.size(), 5);
  for (std::size_t i = 0; i < k; ++i) spec.entries.push_back({node_id(ids[i]), (rng() & 1U) != 0});
  return spec;
}

}  // namespace

TEST(Coverage, ThreeOfFour) {
  CircuitGraph g = graph_from_bench(kFourWay);
  TargetSpec spec = parse_targets("w=1\nx=1\ny=1\nz=1\n", g);
  const InputPattern p[] = {InputPattern::from_string("1110")};
  CoverageReport r = measure(g, spec, p);
  EXPECT_DOUBLE_EQ(r.state_coverage_pct, 75.0);
  EXPECT_DOUBLE_EQ(r.site_coverage_pct, 0.0);
  EXPECT_EQ(r.patterns_applied, 1u);
  EXPECT_FALSE(r.full_state_index());
}

TEST(Coverage, SiteIsToggle) {
  CircuitGraph g = graph_from_bench(kFourWay);
  TargetSpec spec = parse_targets("w=1\nx=0\ny=1\nz=1\n", g);
  const InputPattern p[] = {InputPattern::from_string("1100"), InputPattern::from_string("0110")};
  CoverageReport r = measure(g, spec, p);
  // w: 1,0 toggles; x: 1,1; y: 0,1 toggles; z: 0,0
  EXPECT_DOUBLE_EQ(r.site_coverage_pct, 50.0);
  // w=1 at 1, x=0 never, y=1 at 2, z=1 never
  EXPECT_DOUBLE_EQ(r.state_coverage_pct, 50.0);
  EXPECT_EQ(r.per_target[0].first_reach_index, 1u);
  EXPECT_FALSE(r.per_target[1].first_reach_index);
  EXPECT_EQ(r.per_target[2].first_reach_index, 2u);
}

TEST(Coverage, EmptyPatternList) {
  CircuitGraph g = graph_from_bench(kFourWay);
  CoverageReport r = measure(g, parse_targets("w=1\n", g), {});
  EXPECT_EQ(r.state_coverage_pct, 0.0);
  EXPECT_EQ(r.site_coverage_pct, 0.0);
  EXPECT_EQ(r.patterns_applied, 0u);
}

TEST(Coverage, EmptySpec) {
  CircuitGraph g = graph_from_bench(kFourWay);
  const InputPattern p[] = {InputPattern::from_string("1111")};
  CoverageReport r = measure(g, TargetSpec{}, p);
  EXPECT_EQ(r.state_coverage_pct, 0.0);
  EXPECT_EQ(r.site_coverage_pct, 0.0);
  EXPECT_FALSE(r.full_state_index());
}

TEST(Coverage, MissingNode) {
  CircuitGraph g = graph_from_bench(kFourWay);
  TargetSpec spec;
  spec.entries.push_back({node_id(50), true});
  EXPECT_THROW(measure(g, spec, {}), ConfigError);
}

TEST(Coverage, FullStateIndexIsLastFirstReach) {
  CircuitGraph g = graph_from_bench(kFourWay);
  TargetSpec spec = parse_targets("w=1\nz=1\n", g);
  const InputPattern p[] = {InputPattern::from_string("1000"), InputPattern::from_string("0000"),
                            InputPattern::from_string("0001")};
  EXPECT_EQ(measure(g, spec, p).full_state_index(), 3u);
}

TEST(Coverage, MatchesNaiveRecount) {
  std::mt19937_64 rng(51);
  for (int trial = 0; trial < 200; ++trial) {
    Netlist n = satfuzz::testing::random_netlist(rng, 1 + rng() % 8, 1 + rng() % 20);
    CircuitGraph g = build_graph(n);
    TargetSpec spec = random_spec(rng, g);
    std::vector<InputPattern> patterns;
    std::size_t count = rng() % 150;  // spans several batches
    for (std::size_t i = 0; i < count; ++i) {
      patterns.push_back(satfuzz::testing::pattern_of(satfuzz::testing::bits_of(rng(), g.input_count())));
    }
    CoverageReport r = measure(g, spec, patterns);
    Naive expect = recount(n, g, spec, patterns);
    EXPECT_DOUBLE_EQ(r.state_coverage_pct, 100.0 * expect.reached / spec.size());
    EXPECT_DOUBLE_EQ(r.site_coverage_pct, 100.0 * expect.toggled / spec.size());
    for (std::size_t t = 0; t < spec.size(); ++t) {
      ASSERT_EQ(r.per_target[t].first_reach_index, expect.first[t]) << trial;
      EXPECT_EQ(r.per_target[t].reached_state, expect.first[t].has_value());
    }
  }
}

TEST(Coverage, MonotoneAndPermutationInvariant) {
  std::mt19937_64 rng(52);
  for (int trial = 0; trial < 200; ++trial) {
    Netlist n = satfuzz::testing::random_netlist(rng, 1 + rng() % 8, 1 + rng() % 20);
    CircuitGraph g = build_graph(n);
    TargetSpec spec = random_spec(rng, g);
    std::vector<InputPattern> patterns;
    for (std::size_t i = 0; i < 1 + rng() % 40; ++i) {
      patterns.push_back(satfuzz::testing::pattern_of(satfuzz::testing::bits_of(rng(), g.input_count())));
    }
    auto curve = coverage_curve(g, spec, patterns);
    ASSERT_EQ(curve.size(), patterns.size());
    for (std::size_t i = 1; i < curve.size(); ++i) {
      EXPECT_GE(curve[i].state_pct, curve[i - 1].state_pct);
      EXPECT_GE(curve[i].site_pct, curve[i - 1].site_pct);
      EXPECT_EQ(curve[i].index, i + 1);
    }
    CoverageReport whole = measure(g, spec, patterns);
    EXPECT_EQ(curve.back().state_pct, whole.state_coverage_pct);
    EXPECT_EQ(curve.back().site_pct, whole.site_coverage_pct);

    std::shuffle(patterns.begin(), patterns.end(), rng);
    CoverageReport shuffled = measure(g, spec, patterns);
    EXPECT_EQ(shuffled.state_coverage_pct, whole.state_coverage_pct);
    EXPECT_EQ(shuffled.site_coverage_pct, whole.site_coverage_pct);
  }
}

TEST(Coverage, TrackerCountsNewPairs) {
  CircuitGraph g = graph_from_bench(kFourWay);
  CoverageTracker t(g, parse_targets("w=1\nx=1\n", g));
  EXPECT_EQ(t.observe(simulate(g, InputPattern::from_string("1000"))), 2u);
  EXPECT_EQ(t.observe(simulate(g, InputPattern::from_string("1000"))), 0u);
  EXPECT_EQ(t.observe(simulate(g, InputPattern::from_string("0100"))), 2u);
  EXPECT_EQ(t.patterns_applied(), 3u);
  EXPECT_DOUBLE_EQ(t.state_pct(), 100.0);
  EXPECT_DOUBLE_EQ(t.site_pct(), 100.0);
}

TEST(Coverage, CsvOutput) {
  CircuitGraph g = graph_from_bench(kFourWay);
  TargetSpec spec = parse_targets("w=1\nz=1\n", g);
  const InputPattern p[] = {InputPattern::from_string("1000")};
  std::ostringstream rows, curve;
  write_coverage_csv(rows, measure(g, spec, p), g);
  EXPECT_EQ(rows.str(),
            "node,desired,reached,saw_0,saw_1,first_reach_index\nw,1,1,0,1,1\nz,1,0,1,0,\n");
  write_curve_csv(curve, coverage_curve(g, spec, p));
  EXPECT_EQ(curve.str(), "index,state_pct,site_pct\n1,50.00,0.00\n");
  EXPECT_EQ(format_pct(100.0 / 3.0), "33.33");
}
