#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "satfuzz/circuit_graph.hpp"
#include "satfuzz/pattern.hpp"

namespace satfuzz {

// One consistent value per node, indexed by NodeId.
class Valuation {
 public:
  explicit Valuation(std::vector<std::uint8_t> values) : values_(std::move(values)) {}

  bool operator[](NodeId node) const { return values_[index(node)] != 0; }
  std::size_t size() const { return values_.size(); }
  std::span<const std::uint8_t> values() const { return values_; }

  bool operator==(const Valuation&) const = default;

 private:
  std::vector<std::uint8_t> values_;
};

inline constexpr std::size_t kBatchWidth = 64;

// Up to kBatchWidth patterns simulated at once; lane j of every node word is
// the value under pattern j.
struct SimBatch {
  std::size_t lanes = 0;
  std::vector<std::uint64_t> words;  // indexed by NodeId

  bool empty() const { return lanes == 0; }
  std::uint64_t word(NodeId node) const { return words[index(node)]; }
  bool value(NodeId node, std::size_t lane) const { return (word(node) >> lane) & 1U; }
  std::uint64_t lane_mask() const {
    return lanes == kBatchWidth ? ~std::uint64_t{0} : (std::uint64_t{1} << lanes) - 1;
  }
};

// Throws ConfigError if the pattern width differs from the input count.
Valuation simulate(const CircuitGraph& graph, const InputPattern& pattern);

// Throws ConfigError for more than kBatchWidth patterns or a width mismatch.
SimBatch simulate_batch(const CircuitGraph& graph, std::span<const InputPattern> patterns);

// `name=value` per node, one block per pattern.
void write_value_dump(std::ostream& out, const CircuitGraph& graph,
                      std::span<const InputPattern> patterns);

}  // namespace satfuzz
