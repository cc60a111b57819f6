#pragma once

#include <cstddef>
#include <optional>
#include <string_view>

namespace satfuzz {

enum class GateKind {
  Input,
  Const0,
  Const1,
  Buf,
  Not,
  And,
  Nand,
  Or,
  Nor,
  Xor,
  Xnor,
  Dff,
};

std::string_view gate_kind_name(GateKind kind);

// Accepts the .bench keywords (any case), including the BUFF alias.
std::optional<GateKind> parse_gate_kind(std::string_view keyword);

// Arity check for gate-producing kinds. Input is never a valid gate kind.
bool arity_ok(GateKind kind, std::size_t input_count);

// Truth value of a gate over `count` inputs of which `ones` are 1.
// Every supported kind is symmetric in its inputs, so the count of ones is enough.
bool evaluate_symmetric(GateKind kind, std::size_t count, std::size_t ones);

}  // namespace satfuzz
