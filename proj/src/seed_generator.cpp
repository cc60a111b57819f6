#include "satfuzz/seed_generator.hpp"

#include <algorithm>
#include <cstdio>
#include <ostream>

#include "satfuzz/error.hpp"

namespace satfuzz {

void validate(const GenConfig& config, std::size_t input_count) {
  if (config.pattern_budget == 0) throw ConfigError("pattern budget must be at least 1");
  if (config.retry_budget == 0) throw ConfigError("retry budget must be at least 1");
  if (config.d_min < 2) {
    throw ConfigError("d_min must be at least 2, got " + std::to_string(config.d_min));
  }
  if (config.d_min > input_count) {
    throw ConfigError("d_min " + std::to_string(config.d_min) + " exceeds the input count " +
                      std::to_string(input_count));
  }
}

GenReport generate(const CnfFormula& formula, std::span<const Literal> target_literals,
                   const GenConfig& config) {
  const auto start = std::chrono::steady_clock::now();
  const auto inputs = formula.input_vars();
  validate(config, inputs.size());

  SolverOptions options;
  options.seed = config.seed;
  options.conflict_budget = config.conflict_budget;
  options.verify_models = config.verify_models;
  SolverSession session(formula, options);

  GenReport report;
  std::size_t consecutive_rejects = 0;
  while (report.patterns.size() < config.pattern_budget) {
    SatResult result = session.solve(target_literals);
    if (!result.sat()) {
      report.exhausted = true;
      report.stop_reason = StopReason::SolutionsExhausted;
      break;
    }
    InputPattern candidate = project_inputs(result, formula);

    // Literals that differ from the candidate on each input.
    std::vector<Literal> flipped;
    flipped.reserve(inputs.size());
    for (std::size_t i = 0; i < inputs.size(); ++i) flipped.emplace_back(inputs[i], candidate[i]);
    session.add_clause(flipped);

    bool far_enough = true;
    for (const auto& accepted : report.patterns) {
      std::size_t d = hamming_distance(candidate, accepted);
      if (d < config.d_min) {
        far_enough = false;
        break;
      }
    }
    if (!far_enough) {
      ++report.rejected;
      if (++consecutive_rejects >= config.retry_budget) {
        report.stop_reason = StopReason::RetriesExhausted;
        break;
      }
      continue;
    }
    consecutive_rejects = 0;
    for (const auto& accepted : report.patterns) {
      std::size_t d = hamming_distance(candidate, accepted);
      if (report.observed_d_max == 0) {
        report.observed_d_min = report.observed_d_max = d;
      } else {
        report.observed_d_min = std::min(report.observed_d_min, d);
        report.observed_d_max = std::max(report.observed_d_max, d);
      }
    }
    report.patterns.push_back(std::move(candidate));
    if (report.patterns.size() < config.pattern_budget) {
      session.encode_at_least_k(flipped, config.d_min);
    }
  }
  if (report.patterns.size() == config.pattern_budget) report.stop_reason = StopReason::BudgetReached;
  report.solver_calls = session.solve_calls();
  report.wall_time = std::chrono::steady_clock::now() - start;
  return report;
}

std::string_view stop_reason_name(StopReason reason) {
  switch (reason) {
    case StopReason::BudgetReached: return "budget_reached";
    case StopReason::SolutionsExhausted: return "solutions_exhausted";
    case StopReason::RetriesExhausted: return "retries_exhausted";
  }
  return "unknown";
}

void write_summary_header(std::ostream& out) {
  out << "design,gates,nodes,inputs,target_pct,patterns,time_s,state_coverage_pct,"
         "site_coverage_pct,d_max\n";
}

void write_summary_row(std::ostream& out, const CircuitGraph& graph, const TargetSpec& spec,
                       const GenReport& report, const CoverageReport& coverage,
                       std::optional<double> time_s) {
  const double target_pct = graph.node_count() == 0
                                ? 0.0
                                : 100.0 * static_cast<double>(spec.size()) /
                                      static_cast<double>(graph.node_count());
  out << graph.design_name() << ',' << graph.gate_count() << ',' << graph.node_count() << ','
      << graph.input_count() << ',' << format_pct(target_pct) << ',' << report.patterns.size()
      << ',';
  if (time_s) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", *time_s);
    out << buf;
  } else {
    out << "NA";
  }
  out << ',' << format_pct(coverage.state_coverage_pct) << ','
      << format_pct(coverage.site_coverage_pct) << ',' << report.observed_d_max << '\n';
}

}  // namespace satfuzz
