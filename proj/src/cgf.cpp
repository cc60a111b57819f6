#include "satfuzz/cgf.hpp"

#include <algorithm>
#include <numeric>

#include "satfuzz/error.hpp"
#include "satfuzz/rng.hpp"
#include "satfuzz/simulator.hpp"

namespace satfuzz {

namespace {

InputPattern random_pattern(Rng& rng, std::size_t width) {
  InputPattern p(width);
  for (std::size_t i = 0; i < width; ++i) p.set(i, rng.next() & 1U);
  return p;
}

// Flips `weight` distinct positions chosen uniformly.
void flip_distinct(Rng& rng, InputPattern& p, std::size_t weight) {
  std::vector<std::size_t> positions(p.size());
  std::iota(positions.begin(), positions.end(), std::size_t{0});
  for (std::size_t i = 0; i < weight; ++i) {
    std::size_t j = i + rng.below(positions.size() - i);
    std::swap(positions[i], positions[j]);
    p.flip(positions[i]);
  }
}

InputPattern mutate(Rng& rng, const InputPattern& seed) {
  const std::size_t width = seed.size();
  if (width == 0) return seed;
  if (rng.chance(kRandomReplaceProbability)) return random_pattern(rng, width);
  InputPattern child = seed;
  if (width == 1 || rng.chance(0.5)) {
    child.flip(rng.below(width));
  } else {
    std::size_t weight = std::min(width, 2 + rng.geometric(0.5, width));
    flip_distinct(rng, child, weight);
  }
  return child;
}

}  // namespace

CgfResult run_cgf(const CircuitGraph& graph, const TargetSpec& spec, std::size_t budget,
                  std::uint64_t rng_seed) {
  if (budget == 0) throw ConfigError("CGF budget must be at least 1");
  Rng rng(rng_seed);
  CoverageTracker tracker(graph, spec);
  CgfResult result;
  result.corpus.rng_seed = rng_seed;
  result.executed.reserve(budget);
  result.curve.reserve(budget);

  auto execute = [&](InputPattern pattern) {
    std::size_t fresh = tracker.observe(simulate(graph, pattern));
    result.curve.push_back({tracker.patterns_applied(), tracker.state_pct(), tracker.site_pct()});
    result.executed.push_back(pattern);
    return std::pair{std::move(pattern), fresh};
  };

  // The initial seed is admitted unconditionally.
  auto [first, first_fresh] = execute(random_pattern(rng, graph.input_count()));
  result.corpus.seeds.push_back({std::move(first), first_fresh});

  while (result.executed.size() < budget) {
    const auto& parent = result.corpus.seeds[rng.below(result.corpus.seeds.size())].pattern;
    auto [child, fresh] = execute(mutate(rng, parent));
    if (fresh > 0) result.corpus.seeds.push_back({std::move(child), fresh});
  }
  result.coverage = tracker.report();
  return result;
}

}  // namespace satfuzz
