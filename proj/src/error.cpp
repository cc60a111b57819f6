#include "satfuzz/error.hpp"

namespace satfuzz {

namespace {

std::string with_location(const std::string& message, std::size_t line, std::size_t column) {
  if (line == 0) return message;
  std::string out = "line " + std::to_string(line);
  if (column != 0) out += ", column " + std::to_string(column);
  return out + ": " + message;
}

std::string describe_cycle(const std::vector<std::string>& cycle) {
  std::string out = "combinational cycle:";
  for (const auto& name : cycle) out += " " + name + " ->";
  if (!cycle.empty()) out += " " + cycle.front();
  return out;
}

}  // namespace

ParseError::ParseError(const std::string& message, std::size_t line, std::size_t column)
    : Error(with_location(message, line, column)), line_(line), column_(column) {}

CycleError::CycleError(std::vector<std::string> cycle)
    : NetlistError(describe_cycle(cycle)), cycle_(std::move(cycle)) {}

}  // namespace satfuzz
