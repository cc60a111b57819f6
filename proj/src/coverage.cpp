#include "satfuzz/coverage.hpp"

#include <bit>
#include <cstdio>
#include <ostream>

#include "satfuzz/error.hpp"

namespace satfuzz {

std::optional<std::size_t> CoverageReport::full_state_index() const {
  std::size_t last = 0;
  for (const auto& t : per_target) {
    if (!t.first_reach_index) return std::nullopt;
    last = std::max(last, *t.first_reach_index);
  }
  if (per_target.empty()) return std::nullopt;
  return last;
}

CoverageTracker::CoverageTracker(const CircuitGraph& graph, const TargetSpec& spec) {
  targets_.reserve(spec.size());
  for (const auto& entry : spec.entries) {
    if (index(entry.node) >= graph.node_count()) {
      throw ConfigError("target node id " + std::to_string(index(entry.node)) +
                        " is not in the graph");
    }
    TargetCoverage t{};
    t.node = entry.node;
    t.desired = entry.desired;
    targets_.push_back(t);
  }
}

namespace {

// Marks one observed value; returns 1 if the (node, value) pair is new.
std::size_t mark(TargetCoverage& t, bool value, std::size_t pattern_index, std::size_t& reached,
                 std::size_t& toggled) {
  bool& seen = value ? t.saw_1 : t.saw_0;
  if (seen) return 0;
  seen = true;
  if (t.saw_0 && t.saw_1) ++toggled;
  if (value == t.desired && !t.reached_state) {
    t.reached_state = true;
    t.first_reach_index = pattern_index;
    ++reached;
  }
  return 1;
}

}  // namespace

std::size_t CoverageTracker::observe(const Valuation& valuation) {
  ++applied_;
  std::size_t fresh = 0;
  for (auto& t : targets_) fresh += mark(t, valuation[t.node], applied_, reached_, toggled_);
  return fresh;
}

std::size_t CoverageTracker::observe(const SimBatch& batch, std::size_t lane) {
  ++applied_;
  std::size_t fresh = 0;
  for (auto& t : targets_) fresh += mark(t, batch.value(t.node, lane), applied_, reached_, toggled_);
  return fresh;
}

void CoverageTracker::observe(const SimBatch& batch) {
  if (batch.empty()) return;
  const std::uint64_t mask = batch.lane_mask();
  for (auto& t : targets_) {
    std::uint64_t ones = batch.word(t.node) & mask;
    std::uint64_t zeros = ~batch.word(t.node) & mask;
    // Visit the earlier lane first so first_reach_index is exact.
    std::uint64_t first_one = ones ? static_cast<std::uint64_t>(std::countr_zero(ones)) : 64;
    std::uint64_t first_zero = zeros ? static_cast<std::uint64_t>(std::countr_zero(zeros)) : 64;
    auto visit = [&](bool value, std::uint64_t lane) {
      if (lane < 64) mark(t, value, applied_ + lane + 1, reached_, toggled_);
    };
    if (first_one < first_zero) {
      visit(true, first_one);
      visit(false, first_zero);
    } else {
      visit(false, first_zero);
      visit(true, first_one);
    }
  }
  applied_ += batch.lanes;
}

double CoverageTracker::state_pct() const {
  return targets_.empty() ? 0.0
                          : 100.0 * static_cast<double>(reached_) /
                                static_cast<double>(targets_.size());
}

double CoverageTracker::site_pct() const {
  return targets_.empty() ? 0.0
                          : 100.0 * static_cast<double>(toggled_) /
                                static_cast<double>(targets_.size());
}

CoverageReport CoverageTracker::report() const {
  CoverageReport r;
  r.per_target = targets_;
  r.state_coverage_pct = state_pct();
  r.site_coverage_pct = site_pct();
  r.patterns_applied = applied_;
  return r;
}

CoverageReport measure(const CircuitGraph& graph, const TargetSpec& spec,
                       std::span<const InputPattern> patterns) {
  CoverageTracker tracker(graph, spec);
  for (std::size_t i = 0; i < patterns.size(); i += kBatchWidth) {
    auto chunk = patterns.subspan(i, std::min(kBatchWidth, patterns.size() - i));
    tracker.observe(simulate_batch(graph, chunk));
  }
  return tracker.report();
}

std::vector<CurvePoint> coverage_curve(const CircuitGraph& graph, const TargetSpec& spec,
                                       std::span<const InputPattern> patterns) {
  CoverageTracker tracker(graph, spec);
  std::vector<CurvePoint> curve;
  curve.reserve(patterns.size());
  for (std::size_t i = 0; i < patterns.size(); i += kBatchWidth) {
    auto chunk = patterns.subspan(i, std::min(kBatchWidth, patterns.size() - i));
    SimBatch batch = simulate_batch(graph, chunk);
    for (std::size_t lane = 0; lane < batch.lanes; ++lane) {
      tracker.observe(batch, lane);
      curve.push_back({tracker.patterns_applied(), tracker.state_pct(), tracker.site_pct()});
    }
  }
  return curve;
}

std::string format_pct(double pct) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", pct);
  return buf;
}

void write_coverage_csv(std::ostream& out, const CoverageReport& report,
                        const CircuitGraph& graph) {
  out << "node,desired,reached,saw_0,saw_1,first_reach_index\n";
  for (const auto& t : report.per_target) {
    out << graph.node(t.node).name << ',' << (t.desired ? 1 : 0) << ',' << (t.reached_state ? 1 : 0)
        << ',' << (t.saw_0 ? 1 : 0) << ',' << (t.saw_1 ? 1 : 0) << ',';
    if (t.first_reach_index) out << *t.first_reach_index;
    out << '\n';
  }
}

void write_curve_csv(std::ostream& out, std::span<const CurvePoint> curve) {
  out << "index,state_pct,site_pct\n";
  for (const auto& p : curve) {
    out << p.index << ',' << format_pct(p.state_pct) << ',' << format_pct(p.site_pct) << '\n';
  }
}

}  // namespace satfuzz
