#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "satfuzz/circuit_graph.hpp"
#include "satfuzz/coverage.hpp"
#include "satfuzz/pattern.hpp"
#include "satfuzz/targets.hpp"

namespace satfuzz {

struct CorpusEntry {
  InputPattern pattern;
  // (target node, value) pairs this seed contributed when admitted.
  std::size_t fitness = 0;
};

struct Corpus {
  std::vector<CorpusEntry> seeds;
  std::uint64_t rng_seed = 0;
};

struct CgfResult {
  std::vector<InputPattern> executed;
  CoverageReport coverage;
  std::vector<CurvePoint> curve;
  Corpus corpus;
};

inline constexpr double kRandomReplaceProbability = 0.1;

// Coverage-guided greybox fuzzing over the target nodes: pick a corpus seed,
// mutate, simulate, keep it if it covers a new (node, value) pair. Executes
// exactly `budget` patterns. Throws ConfigError for budget 0.
CgfResult run_cgf(const CircuitGraph& graph, const TargetSpec& spec, std::size_t budget,
                  std::uint64_t rng_seed);

}  // namespace satfuzz
