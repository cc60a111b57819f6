#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace satfuzz {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed netlist, target or pattern text. line/column are 1-based; 0 means unknown.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t line = 0, std::size_t column = 0);

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

// Structurally invalid netlist (undefined signal, cycle, arity).
class NetlistError : public Error {
 public:
  using Error::Error;
};

class CycleError : public NetlistError {
 public:
  explicit CycleError(std::vector<std::string> cycle);

  const std::vector<std::string>& cycle() const { return cycle_; }

 private:
  std::vector<std::string> cycle_;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

// Raised when a solve call exceeds its conflict budget.
class BudgetExhausted : public Error {
 public:
  using Error::Error;
};

}  // namespace satfuzz
