#pragma once

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "satfuzz/cnf.hpp"
#include "satfuzz/coverage.hpp"
#include "satfuzz/pattern.hpp"
#include "satfuzz/sat.hpp"

namespace satfuzz {

struct GenConfig {
  std::size_t pattern_budget = 100;
  std::size_t d_min = 2;
  std::size_t retry_budget = 20;
  std::uint64_t seed = 1;
  std::uint64_t conflict_budget = 0;  // per solve call, 0 = unlimited
  bool verify_models = false;
};

enum class StopReason {
  BudgetReached,     // pattern_budget patterns accepted
  SolutionsExhausted,  // no further pattern at distance >= d_min exists
  RetriesExhausted,  // retry_budget consecutive candidates rejected
};

struct GenReport {
  std::vector<InputPattern> patterns;
  std::size_t observed_d_min = 0;  // 0 with fewer than two patterns
  std::size_t observed_d_max = 0;
  bool exhausted = false;  // StopReason::SolutionsExhausted
  StopReason stop_reason = StopReason::BudgetReached;
  std::size_t solver_calls = 0;
  std::size_t rejected = 0;
  std::chrono::duration<double> wall_time{0};
};

// Throws ConfigError when d_min is outside [2, input count], or for a zero
// pattern or retry budget. BudgetExhausted propagates from the solver.
void validate(const GenConfig& config, std::size_t input_count);

// Enumerates input patterns satisfying the circuit formula and the target
// literals, pairwise at Hamming distance >= d_min.
GenReport generate(const CnfFormula& formula, std::span<const Literal> target_literals,
                   const GenConfig& config);

std::string_view stop_reason_name(StopReason reason);

// Summary row in the column order
// design,gates,nodes,inputs,target_pct,patterns,time_s,state_coverage_pct,site_coverage_pct,d_max
// `time` is printed as NA when absent.
void write_summary_header(std::ostream& out);
void write_summary_row(std::ostream& out, const CircuitGraph& graph, const TargetSpec& spec,
                       const GenReport& report, const CoverageReport& coverage,
                       std::optional<double> time_s);

}  // namespace satfuzz
