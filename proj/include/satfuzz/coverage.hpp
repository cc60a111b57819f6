#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "satfuzz/circuit_graph.hpp"
#include "satfuzz/pattern.hpp"
#include "satfuzz/simulator.hpp"
#include "satfuzz/targets.hpp"

namespace satfuzz {

struct TargetCoverage {
  NodeId node;
  bool desired = false;
  bool reached_state = false;
  bool saw_0 = false;
  bool saw_1 = false;
  // 1-based index of the first pattern driving the node to `desired`.
  std::optional<std::size_t> first_reach_index;
};

struct CoverageReport {
  std::vector<TargetCoverage> per_target;
  double state_coverage_pct = 0.0;
  double site_coverage_pct = 0.0;
  std::size_t patterns_applied = 0;

  // 1-based index at which every target had reached its state, if ever.
  std::optional<std::size_t> full_state_index() const;
};

struct CurvePoint {
  std::size_t index;  // patterns applied so far
  double state_pct;
  double site_pct;

  bool operator==(const CurvePoint&) const = default;
};

// Folds simulated patterns into per-target state and toggle flags.
class CoverageTracker {
 public:
  CoverageTracker(const CircuitGraph& graph, const TargetSpec& spec);

  // Returns the number of (target, value) pairs seen for the first time.
  std::size_t observe(const Valuation& valuation);
  // A single lane of a batch, counted as one applied pattern.
  std::size_t observe(const SimBatch& batch, std::size_t lane);
  // Every lane of a batch, in lane order.
  void observe(const SimBatch& batch);

  std::size_t patterns_applied() const { return applied_; }
  double state_pct() const;
  double site_pct() const;
  CoverageReport report() const;

 private:
  std::vector<TargetCoverage> targets_;
  std::size_t reached_ = 0;
  std::size_t toggled_ = 0;
  std::size_t applied_ = 0;
};

// Throws ConfigError if the spec names a node outside the graph.
CoverageReport measure(const CircuitGraph& graph, const TargetSpec& spec,
                       std::span<const InputPattern> patterns);

// One point per prefix of `patterns`; the last point equals measure().
std::vector<CurvePoint> coverage_curve(const CircuitGraph& graph, const TargetSpec& spec,
                                       std::span<const InputPattern> patterns);

// node,desired,reached,saw_0,saw_1,first_reach_index
void write_coverage_csv(std::ostream& out, const CoverageReport& report,
                        const CircuitGraph& graph);

// index,state_pct,site_pct
void write_curve_csv(std::ostream& out, std::span<const CurvePoint> curve);

// Percentages are printed with two decimals everywhere.
std::string format_pct(double pct);

}  // namespace satfuzz
