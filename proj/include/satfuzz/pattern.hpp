#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace satfuzz {

class CircuitGraph;

// Total assignment to the primary inputs, in the graph's primary-input order.
class InputPattern {
 public:
  InputPattern() = default;
  explicit InputPattern(std::size_t width) : bits_(width, 0) {}
  explicit InputPattern(std::vector<std::uint8_t> bits);

  // "1011": first character is the first primary input.
  static InputPattern from_string(std::string_view bits);

  std::size_t size() const { return bits_.size(); }
  bool operator[](std::size_t i) const { return bits_[i] != 0; }
  void set(std::size_t i, bool value) { bits_[i] = value ? 1 : 0; }
  void flip(std::size_t i) { bits_[i] ^= 1; }

  std::string to_string() const;

  bool operator==(const InputPattern&) const = default;
  auto operator<=>(const InputPattern&) const = default;

 private:
  std::vector<std::uint8_t> bits_;
};

std::size_t hamming_distance(const InputPattern& a, const InputPattern& b);

// Header `# <input names>` followed by one bit string per line.
void write_patterns(std::ostream& out, std::span<const InputPattern> patterns,
                    const CircuitGraph& graph);

// Reads the format written by write_patterns. The header is optional; when
// present it must match the graph's primary inputs.
std::vector<InputPattern> read_patterns(std::string_view text, const CircuitGraph& graph);

}  // namespace satfuzz
