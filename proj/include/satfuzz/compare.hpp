#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <vector>

#include "satfuzz/cgf.hpp"
#include "satfuzz/circuit_graph.hpp"
#include "satfuzz/cnf.hpp"
#include "satfuzz/coverage.hpp"
#include "satfuzz/seed_generator.hpp"
#include "satfuzz/targets.hpp"

namespace satfuzz {

struct CompareConfig {
  GenConfig gen;
  std::size_t trials = 15;
};

struct MethodSummary {
  std::size_t runs = 0;
  double state_mean = 0, state_min = 0, state_max = 0;
  double site_mean = 0, site_min = 0, site_max = 0;
  // Runs that never reach full state coverage count as budget + 1.
  double full_state_index_mean = 0;
};

struct Comparison {
  GenReport generated;
  CoverageReport generated_coverage;
  std::vector<CurvePoint> generated_curve;
  std::vector<CgfResult> cgf_trials;
  std::size_t cgf_budget = 0;
  MethodSummary generated_summary;
  MethodSummary cgf_summary;
};

// Seed of CGF trial `trial` under base seed `seed`.
std::uint64_t trial_seed(std::uint64_t seed, std::size_t trial);

// One generator run and `trials` CGF runs, each CGF run given the generator's
// pattern budget.
Comparison compare(const CircuitGraph& graph, const CnfFormula& formula, const TargetSpec& spec,
                   const CompareConfig& config);

// Writes sat_curve.csv, cgf_curves.csv, compare_summary.csv and, when there
// is more than one trial, cgf_mean_curve.csv. Returns the paths written.
std::vector<std::filesystem::path> write_comparison(const std::filesystem::path& dir,
                                                    const Comparison& comparison);

void write_comparison_summary(std::ostream& out, const Comparison& comparison);

}  // namespace satfuzz
