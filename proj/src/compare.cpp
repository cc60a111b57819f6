#include "satfuzz/compare.hpp"

#include <algorithm>
#include <fstream>
#include <ostream>

#include "satfuzz/error.hpp"

namespace satfuzz {

std::uint64_t trial_seed(std::uint64_t seed, std::size_t trial) {
  // splitmix64 finalizer over the (seed, trial) pair.
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (static_cast<std::uint64_t>(trial) + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

namespace {

MethodSummary summarize(std::span<const CoverageReport> runs, std::size_t budget) {
  MethodSummary s;
  s.runs = runs.size();
  if (runs.empty()) return s;
  s.state_min = s.site_min = 100.0;
  for (const auto& r : runs) {
    s.state_mean += r.state_coverage_pct;
    s.site_mean += r.site_coverage_pct;
    s.state_min = std::min(s.state_min, r.state_coverage_pct);
    s.state_max = std::max(s.state_max, r.state_coverage_pct);
    s.site_min = std::min(s.site_min, r.site_coverage_pct);
    s.site_max = std::max(s.site_max, r.site_coverage_pct);
    s.full_state_index_mean += static_cast<double>(r.full_state_index().value_or(budget + 1));
  }
  const auto n = static_cast<double>(runs.size());
  s.state_mean /= n;
  s.site_mean /= n;
  s.full_state_index_mean /= n;
  return s;
}

void write_summary_line(std::ostream& out, std::string_view method, std::size_t patterns,
                        const MethodSummary& s) {
  out << method << ',' << s.runs << ',' << patterns << ',' << format_pct(s.state_mean) << ','
      << format_pct(s.state_min) << ',' << format_pct(s.state_max) << ','
      << format_pct(s.site_mean) << ',' << format_pct(s.site_min) << ','
      << format_pct(s.site_max) << ',' << format_pct(s.full_state_index_mean) << '\n';
}

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  return out;
}

}  // namespace

Comparison compare(const CircuitGraph& graph, const CnfFormula& formula, const TargetSpec& spec,
                   const CompareConfig& config) {
  if (config.trials == 0) throw ConfigError("trials must be at least 1");
  Comparison c;
  c.cgf_budget = config.gen.pattern_budget;
  c.generated = generate(formula, build_target_formula(spec, formula), config.gen);
  c.generated_coverage = measure(graph, spec, c.generated.patterns);
  c.generated_curve = coverage_curve(graph, spec, c.generated.patterns);
  c.generated_summary = summarize({&c.generated_coverage, 1}, c.cgf_budget);

  std::vector<CoverageReport> reports;
  for (std::size_t t = 0; t < config.trials; ++t) {
    c.cgf_trials.push_back(run_cgf(graph, spec, c.cgf_budget, trial_seed(config.gen.seed, t)));
    reports.push_back(c.cgf_trials.back().coverage);
  }
  c.cgf_summary = summarize(reports, c.cgf_budget);
  return c;
}

void write_comparison_summary(std::ostream& out, const Comparison& c) {
  out << "method,runs,patterns,state_mean,state_min,state_max,site_mean,site_min,site_max,"
         "full_state_index_mean\n";
  write_summary_line(out, "sat", c.generated.patterns.size(), c.generated_summary);
  write_summary_line(out, "cgf", c.cgf_budget, c.cgf_summary);
}

std::vector<std::filesystem::path> write_comparison(const std::filesystem::path& dir,
                                                    const Comparison& c) {
  std::filesystem::create_directories(dir);
  std::vector<std::filesystem::path> written;

  {
    auto path = dir / "sat_curve.csv";
    auto out = open_output(path);
    write_curve_csv(out, c.generated_curve);
    written.push_back(path);
  }
  {
    auto path = dir / "cgf_curves.csv";
    auto out = open_output(path);
    out << "trial,index,state_pct,site_pct\n";
    for (std::size_t t = 0; t < c.cgf_trials.size(); ++t) {
      for (const auto& p : c.cgf_trials[t].curve) {
        out << t << ',' << p.index << ',' << format_pct(p.state_pct) << ','
            << format_pct(p.site_pct) << '\n';
      }
    }
    written.push_back(path);
  }
  if (c.cgf_trials.size() > 1) {
    auto path = dir / "cgf_mean_curve.csv";
    auto out = open_output(path);
    std::vector<CurvePoint> mean;
    for (std::size_t i = 0; i < c.cgf_budget; ++i) {
      CurvePoint p{i + 1, 0.0, 0.0};
      for (const auto& trial : c.cgf_trials) {
        p.state_pct += trial.curve[i].state_pct;
        p.site_pct += trial.curve[i].site_pct;
      }
      p.state_pct /= static_cast<double>(c.cgf_trials.size());
      p.site_pct /= static_cast<double>(c.cgf_trials.size());
      mean.push_back(p);
    }
    write_curve_csv(out, mean);
    written.push_back(path);
  }
  {
    auto path = dir / "compare_summary.csv";
    auto out = open_output(path);
    write_comparison_summary(out, c);
    written.push_back(path);
  }
  return written;
}

}  // namespace satfuzz
