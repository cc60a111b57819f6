#include "satfuzz/gate_kind.hpp"

#include <algorithm>
#include <cctype>
#include <string>

namespace satfuzz {

std::string_view gate_kind_name(GateKind kind) {
  switch (kind) {
    case GateKind::Input: return "INPUT";
    case GateKind::Const0: return "CONST0";
    case GateKind::Const1: return "CONST1";
    case GateKind::Buf: return "BUF";
    case GateKind::Not: return "NOT";
    case GateKind::And: return "AND";
    case GateKind::Nand: return "NAND";
    case GateKind::Or: return "OR";
    case GateKind::Nor: return "NOR";
    case GateKind::Xor: return "XOR";
    case GateKind::Xnor: return "XNOR";
    case GateKind::Dff: return "DFF";
  }
  return "?";
}

std::optional<GateKind> parse_gate_kind(std::string_view keyword) {
  std::string upper(keyword);
  std::transform(upper.begin(), upper.end(), upper.begin(),
                 [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
  if (upper == "AND") return GateKind::And;
  if (upper == "NAND") return GateKind::Nand;
  if (upper == "OR") return GateKind::Or;
  if (upper == "NOR") return GateKind::Nor;
  if (upper == "XOR") return GateKind::Xor;
  if (upper == "XNOR") return GateKind::Xnor;
  if (upper == "NOT") return GateKind::Not;
  if (upper == "BUF" || upper == "BUFF") return GateKind::Buf;
  if (upper == "DFF") return GateKind::Dff;
  if (upper == "CONST0") return GateKind::Const0;
  if (upper == "CONST1") return GateKind::Const1;
  return std::nullopt;
}

bool arity_ok(GateKind kind, std::size_t input_count) {
  switch (kind) {
    case GateKind::Input: return false;
    case GateKind::Const0:
    case GateKind::Const1: return input_count == 0;
    case GateKind::Buf:
    case GateKind::Not:
    case GateKind::Dff: return input_count == 1;
    default: return input_count >= 2;
  }
}

bool evaluate_symmetric(GateKind kind, std::size_t count, std::size_t ones) {
  switch (kind) {
    case GateKind::Const0: return false;
    case GateKind::Const1: return true;
    case GateKind::Buf:
    case GateKind::Dff:
    case GateKind::Input: return ones != 0;
    case GateKind::Not: return ones == 0;
    case GateKind::And: return ones == count;
    case GateKind::Nand: return ones != count;
    case GateKind::Or: return ones != 0;
    case GateKind::Nor: return ones == 0;
    case GateKind::Xor: return (ones & 1U) != 0;
    case GateKind::Xnor: return (ones & 1U) == 0;
  }
  return false;
}

}  // namespace satfuzz
