#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "satfuzz/gate_kind.hpp"

namespace satfuzz {

struct RawGate {
  std::string output;
  GateKind kind = GateKind::Buf;
  std::vector<std::string> inputs;

  bool operator==(const RawGate&) const = default;
};

struct Netlist {
  std::string name;
  std::vector<std::string> primary_inputs;
  std::vector<std::string> primary_outputs;
  std::vector<RawGate> gates;
  bool scan_converted = false;
  // Non-fatal notes from the reader, e.g. ignored latch init values.
  std::vector<std::string> warnings;

  // Warnings are excluded: two netlists are equal when their structure is.
  bool operator==(const Netlist& other) const;
};

// Throws NetlistError if arity, uniqueness or referential integrity is violated.
void validate(const Netlist& netlist);

// ISCAS .bench reader. Identifiers are case-sensitive, keywords are not.
// Besides the standard gate keywords, `y = CONST0()` and `y = CONST1()` are accepted.
Netlist parse_bench(std::string_view text, std::string name = {});

// BLIF subset: .model .inputs .outputs .names .latch .end
// Each .names cover must compute one of the supported gate functions.
Netlist parse_blif(std::string_view text);

// Chooses the reader from the file extension (.blif, otherwise .bench).
Netlist parse_netlist(std::string_view text, const std::filesystem::path& path);

// Full scan: each DFF's Q becomes a pseudo primary input and its D a pseudo
// primary output. Already converted netlists are returned unchanged.
Netlist scan_convert(Netlist netlist);

void write_bench(std::ostream& out, const Netlist& netlist);

}  // namespace satfuzz
