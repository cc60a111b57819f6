#include "satfuzz/pattern.hpp"

#include <ostream>
#include <sstream>

#include "satfuzz/circuit_graph.hpp"
#include "satfuzz/error.hpp"

namespace satfuzz {

InputPattern::InputPattern(std::vector<std::uint8_t> bits) : bits_(std::move(bits)) {
  for (auto& b : bits_) b = b ? 1 : 0;
}

InputPattern InputPattern::from_string(std::string_view bits) {
  std::vector<std::uint8_t> out;
  out.reserve(bits.size());
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] != '0' && bits[i] != '1') {
      throw ParseError(std::string("pattern bit must be 0 or 1, got '") + bits[i] + "'", 0,
                       i + 1);
    }
    out.push_back(bits[i] == '1' ? 1 : 0);
  }
  return InputPattern(std::move(out));
}

std::string InputPattern::to_string() const {
  std::string s;
  s.reserve(bits_.size());
  for (auto b : bits_) s.push_back(b ? '1' : '0');
  return s;
}

std::size_t hamming_distance(const InputPattern& a, const InputPattern& b) {
  std::size_t d = 0;
  for (std::size_t i = 0; i < a.size(); ++i) d += a[i] != b[i] ? 1 : 0;
  return d;
}

void write_patterns(std::ostream& out, std::span<const InputPattern> patterns,
                    const CircuitGraph& graph) {
  out << '#';
  for (NodeId pi : graph.primary_inputs()) out << ' ' << graph.node(pi).name;
  out << '\n';
  for (const auto& p : patterns) out << p.to_string() << '\n';
}

std::vector<InputPattern> read_patterns(std::string_view text, const CircuitGraph& graph) {
  std::vector<InputPattern> patterns;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      if (line_no != 1) continue;
      std::istringstream names(line.substr(1));
      std::size_t i = 0;
      for (std::string name; names >> name; ++i) {
        if (i >= graph.input_count() || graph.node(graph.primary_inputs()[i]).name != name) {
          throw ParseError("pattern header does not match the primary inputs", line_no);
        }
      }
      if (i != graph.input_count()) {
        throw ParseError("pattern header does not match the primary inputs", line_no);
      }
      continue;
    }
    if (line.size() != graph.input_count()) {
      throw ParseError("pattern has " + std::to_string(line.size()) + " bits, expected " +
                           std::to_string(graph.input_count()),
                       line_no);
    }
    try {
      patterns.push_back(InputPattern::from_string(line));
    } catch (const ParseError& e) {
      throw ParseError(e.what(), line_no);
    }
  }
  return patterns;
}

}  // namespace satfuzz
