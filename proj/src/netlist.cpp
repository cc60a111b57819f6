#include "satfuzz/netlist.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <cstdint>
#include <ostream>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "satfuzz/error.hpp"

namespace satfuzz {

bool Netlist::operator==(const Netlist& other) const {
  return name == other.name && primary_inputs == other.primary_inputs &&
         primary_outputs == other.primary_outputs && gates == other.gates &&
         scan_converted == other.scan_converted;
}

void validate(const Netlist& netlist) {
  std::unordered_set<std::string> defined;
  for (const auto& pi : netlist.primary_inputs) {
    if (pi.empty()) throw NetlistError("empty primary input name");
    if (!defined.insert(pi).second) throw NetlistError("duplicate definition of '" + pi + "'");
  }
  for (const auto& gate : netlist.gates) {
    if (gate.output.empty()) throw NetlistError("gate with empty output name");
    if (gate.kind == GateKind::Input) {
      throw NetlistError("'" + gate.output + "' uses INPUT as a gate kind");
    }
    if (!arity_ok(gate.kind, gate.inputs.size())) {
      throw NetlistError("'" + gate.output + "': " + std::string(gate_kind_name(gate.kind)) +
                         " cannot take " + std::to_string(gate.inputs.size()) + " inputs");
    }
    if (!defined.insert(gate.output).second) {
      throw NetlistError("duplicate definition of '" + gate.output + "'");
    }
  }
  for (const auto& gate : netlist.gates) {
    for (const auto& in : gate.inputs) {
      if (!defined.contains(in)) {
        throw NetlistError("'" + gate.output + "' reads undefined signal '" + in + "'");
      }
    }
  }
  for (const auto& po : netlist.primary_outputs) {
    if (!defined.contains(po)) throw NetlistError("undefined primary output '" + po + "'");
  }
  if (netlist.scan_converted) {
    for (const auto& gate : netlist.gates) {
      if (gate.kind == GateKind::Dff) {
        throw NetlistError("scan-converted netlist still contains DFF '" + gate.output + "'");
      }
    }
  }
}

// ---------------------------------------------------------------------------
// .bench

namespace {

bool is_ident_char(char c) {
  return !std::isspace(static_cast<unsigned char>(c)) && c != '(' && c != ')' && c != ',' &&
         c != '=' && c != '#';
}

bool iequals(std::string_view a, std::string_view b) {
  return a.size() == b.size() &&
         std::equal(a.begin(), a.end(), b.begin(), [](char x, char y) {
           return std::toupper(static_cast<unsigned char>(x)) ==
                  std::toupper(static_cast<unsigned char>(y));
         });
}

class BenchLineScanner {
 public:
  BenchLineScanner(std::string_view line, std::size_t line_no) : line_(line), line_no_(line_no) {}

  void skip_space() {
    while (pos_ < line_.size() && std::isspace(static_cast<unsigned char>(line_[pos_]))) ++pos_;
  }

  bool at_end() {
    skip_space();
    return pos_ >= line_.size();
  }

  std::size_t column() const { return pos_ + 1; }

  bool peek(char c) {
    skip_space();
    return pos_ < line_.size() && line_[pos_] == c;
  }

  void expect(char c) {
    if (!peek(c)) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  std::string identifier(const char* what) {
    skip_space();
    std::size_t start = pos_;
    while (pos_ < line_.size() && is_ident_char(line_[pos_])) ++pos_;
    if (start == pos_) fail(std::string("expected ") + what);
    return std::string(line_.substr(start, pos_ - start));
  }

  [[noreturn]] void fail(const std::string& message) const {
    throw ParseError(message, line_no_, pos_ + 1);
  }

 private:
  std::string_view line_;
  std::size_t line_no_;
  std::size_t pos_ = 0;
};

struct Location {
  std::size_t line;
  std::size_t column;
};

}  // namespace

Netlist parse_bench(std::string_view text, std::string name) {
  Netlist netlist;
  netlist.name = std::move(name);

  std::unordered_map<std::string, Location> definitions;
  std::unordered_map<std::string, Location> first_use;
  std::unordered_set<std::string> declared_outputs;

  auto define = [&](const std::string& id, Location at) {
    if (!definitions.emplace(id, at).second) {
      throw ParseError("duplicate definition of '" + id + "' (first defined on line " +
                           std::to_string(definitions.at(id).line) + ")",
                       at.line, at.column);
    }
  };

  std::size_t line_no = 0;
  std::size_t begin = 0;
  while (begin < text.size()) {
    std::size_t end = text.find('\n', begin);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(begin, end - begin);
    begin = end + 1;
    ++line_no;

    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    BenchLineScanner scan(line, line_no);
    if (scan.at_end()) continue;

    Location head{line_no, scan.column()};
    std::string first = scan.identifier("identifier");
    if (scan.peek('(')) {
      bool is_input = iequals(first, "INPUT");
      if (!is_input && !iequals(first, "OUTPUT")) {
        throw ParseError("expected INPUT(...), OUTPUT(...) or an assignment", head.line,
                         head.column);
      }
      scan.expect('(');
      scan.skip_space();
      Location at{line_no, scan.column()};
      std::string id = scan.identifier("signal name");
      scan.expect(')');
      if (!scan.at_end()) scan.fail("unexpected text after declaration");
      if (is_input) {
        define(id, at);
        netlist.primary_inputs.push_back(id);
      } else {
        if (!declared_outputs.insert(id).second) {
          throw ParseError("duplicate OUTPUT declaration of '" + id + "'", at.line, at.column);
        }
        first_use.emplace(id, at);
        netlist.primary_outputs.push_back(id);
      }
    } else {
      scan.expect('=');
      scan.skip_space();
      Location kind_at{line_no, scan.column()};
      std::string keyword = scan.identifier("gate keyword");
      auto kind = parse_gate_kind(keyword);
      if (!kind) {
        throw ParseError("unsupported gate keyword '" + keyword + "'", kind_at.line,
                         kind_at.column);
      }
      RawGate gate{first, *kind, {}};
      scan.expect('(');
      if (!scan.peek(')')) {
        while (true) {
          scan.skip_space();
          Location at{line_no, scan.column()};
          std::string in = scan.identifier("signal name");
          first_use.emplace(in, at);
          gate.inputs.push_back(std::move(in));
          if (scan.peek(',')) {
            scan.expect(',');
            continue;
          }
          break;
        }
      }
      scan.expect(')');
      if (!scan.at_end()) scan.fail("unexpected text after gate");
      if (!arity_ok(gate.kind, gate.inputs.size())) {
        std::string need = gate.kind == GateKind::Const0 || gate.kind == GateKind::Const1
                               ? "no inputs"
                           : gate.kind == GateKind::Not || gate.kind == GateKind::Buf ||
                                   gate.kind == GateKind::Dff
                               ? "exactly 1 input"
                               : ">= 2 inputs";
        throw ParseError(std::string(gate_kind_name(gate.kind)) + " requires " + need +
                             ", got " + std::to_string(gate.inputs.size()),
                         kind_at.line, kind_at.column);
      }
      define(gate.output, head);
      netlist.gates.push_back(std::move(gate));
    }
  }

  // Report the first undefined reference in file order.
  const std::pair<const std::string, Location>* undefined = nullptr;
  for (const auto& use : first_use) {
    if (definitions.contains(use.first)) continue;
    if (!undefined || use.second.line < undefined->second.line ||
        (use.second.line == undefined->second.line &&
         use.second.column < undefined->second.column)) {
      undefined = &use;
    }
  }
  if (undefined) {
    throw ParseError("undefined signal '" + undefined->first + "'", undefined->second.line,
                     undefined->second.column);
  }
  validate(netlist);
  return netlist;
}

// ---------------------------------------------------------------------------
// BLIF

namespace {

struct BlifLine {
  std::size_t line_no;
  std::vector<std::string> tokens;
};

std::vector<BlifLine> blif_lines(std::string_view text) {
  std::vector<BlifLine> lines;
  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t line_no = 0;
  std::string pending;
  std::size_t pending_start = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.resize(hash);
    while (!raw.empty() && std::isspace(static_cast<unsigned char>(raw.back()))) raw.pop_back();
    bool continued = !raw.empty() && raw.back() == '\\';
    if (continued) raw.pop_back();
    if (pending.empty()) pending_start = line_no;
    pending += raw;
    pending += ' ';
    if (continued) continue;
    std::istringstream tokens(pending);
    BlifLine line{pending_start, {}};
    for (std::string tok; tokens >> tok;) line.tokens.push_back(tok);
    if (!line.tokens.empty()) lines.push_back(std::move(line));
    pending.clear();
  }
  if (!pending.empty()) throw ParseError("line continuation at end of file", pending_start);
  return lines;
}

struct Cover {
  std::size_t line_no = 0;
  std::vector<std::string> inputs;
  std::string output;
  std::vector<std::pair<std::string, char>> rows;
};

std::string describe_rows(const Cover& cover) {
  std::string out;
  for (const auto& [plane, value] : cover.rows) {
    out += "\n  ";
    out += plane.empty() ? std::string(1, value) : plane + " " + value;
  }
  return out.empty() ? " (no rows)" : out;
}

RawGate cover_to_gate(const Cover& cover) {
  const std::size_t n = cover.inputs.size();
  constexpr std::size_t kMaxCoverInputs = 16;
  if (n > kMaxCoverInputs) {
    throw ParseError(".names for '" + cover.output + "' has more than 16 inputs", cover.line_no);
  }
  bool any_on = false;
  bool any_off = false;
  for (const auto& row : cover.rows) (row.second == '1' ? any_on : any_off) = true;
  if (any_on && any_off) {
    throw ParseError("cover for '" + cover.output + "' mixes on-set and off-set rows" +
                         describe_rows(cover),
                     cover.line_no);
  }

  const std::size_t minterms = std::size_t{1} << n;
  std::vector<std::uint8_t> table(minterms, 0);
  for (const auto& [plane, value] : cover.rows) {
    for (std::size_t m = 0; m < minterms; ++m) {
      bool match = true;
      for (std::size_t i = 0; i < n && match; ++i) {
        bool bit = (m >> i) & 1U;
        char c = plane[i];
        match = c == '-' || (c == '1') == bit;
      }
      if (match) table[m] = 1;
    }
  }
  if (any_off) {
    for (auto& v : table) v ^= 1;
  }

  auto matches = [&](GateKind kind) {
    for (std::size_t m = 0; m < minterms; ++m) {
      auto ones = static_cast<std::size_t>(std::popcount(m));
      if (evaluate_symmetric(kind, n, ones) != (table[m] != 0)) return false;
    }
    return true;
  };

  std::vector<GateKind> candidates;
  if (n == 0) {
    candidates = {GateKind::Const0, GateKind::Const1};
  } else if (n == 1) {
    candidates = {GateKind::Buf, GateKind::Not};
  } else {
    candidates = {GateKind::And, GateKind::Nand, GateKind::Or,
                  GateKind::Nor, GateKind::Xor,  GateKind::Xnor};
  }
  for (GateKind kind : candidates) {
    if (matches(kind)) return RawGate{cover.output, kind, cover.inputs};
  }
  throw ParseError("cover for '" + cover.output + "' is not expressible as a supported gate:" +
                       describe_rows(cover),
                   cover.line_no);
}

}  // namespace

Netlist parse_blif(std::string_view text) {
  Netlist netlist;
  bool have_model = false;
  bool ended = false;
  std::optional<Cover> cover;

  auto flush = [&]() {
    if (cover) {
      netlist.gates.push_back(cover_to_gate(*cover));
      cover.reset();
    }
  };

  for (const auto& line : blif_lines(text)) {
    const auto& tok = line.tokens;
    if (ended) throw ParseError("content after .end", line.line_no);
    if (tok[0][0] != '.') {
      if (!cover) throw ParseError("cover row outside of .names", line.line_no);
      std::string plane;
      std::string value;
      if (cover->inputs.empty()) {
        if (tok.size() != 1) throw ParseError("expected a single output value", line.line_no);
        value = tok[0];
      } else {
        if (tok.size() != 2) throw ParseError("expected '<input plane> <output>'", line.line_no);
        plane = tok[0];
        value = tok[1];
      }
      if (plane.size() != cover->inputs.size()) {
        throw ParseError("input plane width " + std::to_string(plane.size()) + " does not match " +
                             std::to_string(cover->inputs.size()) + " inputs",
                         line.line_no);
      }
      if (plane.find_first_not_of("01-") != std::string::npos) {
        throw ParseError("input plane may only contain 0, 1 and -", line.line_no);
      }
      if (value != "0" && value != "1") {
        throw ParseError("output value must be 0 or 1", line.line_no);
      }
      cover->rows.emplace_back(plane, value[0]);
      continue;
    }

    flush();
    const std::string& directive = tok[0];
    if (directive == ".model") {
      if (have_model) throw ParseError("multiple .model blocks are not supported", line.line_no);
      have_model = true;
      if (tok.size() > 1) netlist.name = tok[1];
    } else if (directive == ".inputs") {
      netlist.primary_inputs.insert(netlist.primary_inputs.end(), tok.begin() + 1, tok.end());
    } else if (directive == ".outputs") {
      netlist.primary_outputs.insert(netlist.primary_outputs.end(), tok.begin() + 1, tok.end());
    } else if (directive == ".names") {
      if (tok.size() < 2) throw ParseError(".names needs an output signal", line.line_no);
      cover = Cover{line.line_no, {tok.begin() + 1, tok.end() - 1}, tok.back(), {}};
    } else if (directive == ".latch") {
      if (tok.size() < 3 || tok.size() > 6) {
        throw ParseError(".latch expects <input> <output> [<type> <control>] [<init>]",
                         line.line_no);
      }
      netlist.gates.push_back(RawGate{tok[2], GateKind::Dff, {tok[1]}});
      if (tok.size() == 4 || tok.size() == 6) {
        netlist.warnings.push_back("line " + std::to_string(line.line_no) + ": initial value " +
                                   tok.back() + " of latch '" + tok[2] + "' ignored");
      }
    } else if (directive == ".end") {
      ended = true;
    } else {
      throw ParseError("unsupported BLIF directive '" + directive + "'", line.line_no);
    }
  }
  flush();

  try {
    validate(netlist);
  } catch (const NetlistError& e) {
    throw ParseError(e.what());
  }
  return netlist;
}

Netlist parse_netlist(std::string_view text, const std::filesystem::path& path) {
  if (path.extension() == ".blif") return parse_blif(text);
  try {
    return parse_bench(text, path.stem().string());
  } catch (const NetlistError& e) {
    throw ParseError(e.what());
  }
}

Netlist scan_convert(Netlist netlist) {
  if (netlist.scan_converted) return netlist;
  std::vector<RawGate> kept;
  std::unordered_set<std::string> outputs(netlist.primary_outputs.begin(),
                                          netlist.primary_outputs.end());
  for (auto& gate : netlist.gates) {
    if (gate.kind != GateKind::Dff) {
      kept.push_back(std::move(gate));
      continue;
    }
    netlist.primary_inputs.push_back(gate.output);
    // A D signal that already is a primary output stays observable once.
    if (outputs.insert(gate.inputs.front()).second) {
      netlist.primary_outputs.push_back(gate.inputs.front());
    }
  }
  netlist.gates = std::move(kept);
  netlist.scan_converted = true;
  return netlist;
}

void write_bench(std::ostream& out, const Netlist& netlist) {
  if (!netlist.name.empty()) out << "# " << netlist.name << '\n';
  for (const auto& pi : netlist.primary_inputs) out << "INPUT(" << pi << ")\n";
  for (const auto& po : netlist.primary_outputs) out << "OUTPUT(" << po << ")\n";
  for (const auto& gate : netlist.gates) {
    out << gate.output << " = " << gate_kind_name(gate.kind) << '(';
    for (std::size_t i = 0; i < gate.inputs.size(); ++i) {
      if (i) out << ", ";
      out << gate.inputs[i];
    }
    out << ")\n";
  }
}

}  // namespace satfuzz
