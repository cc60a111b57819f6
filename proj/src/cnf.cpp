#include "satfuzz/cnf.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <ostream>

#include "satfuzz/error.hpp"

namespace satfuzz {

Literal Literal::from_dimacs(int value) {
  if (value == 0) throw Error("DIMACS literal 0 is a clause terminator, not a literal");
  return value > 0 ? Literal(static_cast<Var>(value))
                   : Literal(static_cast<Var>(-static_cast<long long>(value)), true);
}

void CnfFormula::add_clause(Clause clause) {
  if (clause.empty()) throw Error("empty clause");
  for (const Literal& lit : clause) {
    if (lit.var() == 0) throw Error("variable 0 in clause");
    var_count_ = std::max(var_count_, lit.var());
  }
  clauses_.push_back(std::move(clause));
}

std::optional<NodeId> CnfFormula::var_node(Var var) const {
  if (var == 0 || var > var_to_node_.size()) return std::nullopt;
  return var_to_node_[var - 1];
}

namespace {

class GateEncoder {
 public:
  explicit GateEncoder(CnfFormula& formula) : formula_(formula) {}

  void encode(GateKind kind, Var out, const std::vector<Var>& in) {
    switch (kind) {
      case GateKind::Input: break;
      case GateKind::Const0: formula_.add_clause({Literal(out, true)}); break;
      case GateKind::Const1: formula_.add_clause({Literal(out)}); break;
      case GateKind::Buf: equality(out, in[0], false); break;
      case GateKind::Not: equality(out, in[0], true); break;
      case GateKind::And: conjunction(Literal(out), in, false); break;
      case GateKind::Nand: conjunction(Literal(out, true), in, false); break;
      case GateKind::Or: conjunction(Literal(out, true), in, true); break;
      case GateKind::Nor: conjunction(Literal(out), in, true); break;
      case GateKind::Xor: parity_chain(out, in, false); break;
      case GateKind::Xnor: parity_chain(out, in, true); break;
      case GateKind::Dff: throw Error("DFF reached the CNF encoder; scan convert first");
    }
  }

 private:
  void equality(Var out, Var in, bool inverted) {
    if (inverted) {
      formula_.add_clause({Literal(out), Literal(in)});
      formula_.add_clause({Literal(out, true), Literal(in, true)});
    } else {
      formula_.add_clause({Literal(out, true), Literal(in)});
      formula_.add_clause({Literal(out), Literal(in, true)});
    }
  }

  // out <-> AND(in_i ^ negate_inputs). OR/NOR are the De Morgan duals.
  void conjunction(Literal out, const std::vector<Var>& in, bool negate_inputs) {
    Clause big{out};
    for (Var v : in) {
      Literal lit(v, negate_inputs);
      formula_.add_clause({~out, lit});
      big.push_back(~lit);
    }
    formula_.add_clause(std::move(big));
  }

  // out <-> a ^ b ^ inverted
  void xor2(Var out, Var a, Var b, bool inverted) {
    Literal y(out, inverted);
    formula_.add_clause({~y, Literal(a), Literal(b)});
    formula_.add_clause({~y, Literal(a, true), Literal(b, true)});
    formula_.add_clause({y, Literal(a, true), Literal(b)});
    formula_.add_clause({y, Literal(a), Literal(b, true)});
  }

  void parity_chain(Var out, const std::vector<Var>& in, bool inverted) {
    Var acc = in[0];
    for (std::size_t i = 1; i < in.size(); ++i) {
      bool last = i + 1 == in.size();
      Var next = last ? out : formula_.new_var();
      xor2(next, acc, in[i], last && inverted);
      acc = next;
    }
  }

  CnfFormula& formula_;
};

}  // namespace

CnfFormula encode(const CircuitGraph& graph) {
  CnfFormula formula;
  const std::size_t n = graph.node_count();
  formula.node_to_var_.assign(n, 0);
  formula.node_names_.reserve(n);
  for (const Node& node : graph.nodes()) formula.node_names_.push_back(node.name);
  for (NodeId id : graph.topo_order()) {
    Var v = formula.new_var();
    formula.node_to_var_[index(id)] = v;
    formula.var_to_node_.push_back(id);
  }
  for (NodeId pi : graph.primary_inputs()) formula.input_vars_.push_back(formula.node_var(pi));

  GateEncoder encoder(formula);
  std::vector<Var> fanin_vars;
  for (NodeId id : graph.topo_order()) {
    const Node& node = graph.node(id);
    fanin_vars.clear();
    for (NodeId f : node.fanin) fanin_vars.push_back(formula.node_var(f));
    encoder.encode(node.kind, formula.node_var(id), fanin_vars);
  }
  return formula;
}

void write_dimacs(std::ostream& out, const CnfFormula& formula,
                  std::span<const Literal> assumptions) {
  Var vars = formula.var_count();
  for (const Literal& a : assumptions) vars = std::max(vars, a.var());
  for (std::size_t i = 0; i < formula.node_count(); ++i) {
    NodeId id = node_id(i);
    out << "c node " << formula.node_name(id) << " = var " << formula.node_var(id) << '\n';
  }
  out << "p cnf " << vars << ' ' << formula.clause_count() + assumptions.size() << '\n';
  for (const Clause& clause : formula.clauses()) {
    for (const Literal& lit : clause) out << lit.dimacs() << ' ';
    out << "0\n";
  }
  for (const Literal& a : assumptions) out << a.dimacs() << " 0\n";
}

CnfFormula read_dimacs(std::string_view text) {
  CnfFormula formula;
  bool have_header = false;
  long long declared_vars = 0;
  long long declared_clauses = 0;
  Clause current;
  std::size_t line_no = 0;
  std::size_t begin = 0;
  while (begin < text.size()) {
    std::size_t end = text.find('\n', begin);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(begin, end - begin);
    begin = end + 1;
    ++line_no;

    std::size_t first = line.find_first_not_of(" \t\r");
    if (first == std::string_view::npos || line[first] == 'c') continue;
    if (line[first] == '%') break;  // SATLIB trailer
    if (line[first] == 'p') {
      if (have_header) throw ParseError("duplicate problem line", line_no);
      char fmt[8] = {};
      if (std::sscanf(std::string(line.substr(first)).c_str(), "p %7s %lld %lld", fmt,
                      &declared_vars, &declared_clauses) != 3 ||
          std::string_view(fmt) != "cnf" || declared_vars < 0 || declared_clauses < 0) {
        throw ParseError("malformed problem line", line_no, first + 1);
      }
      have_header = true;
      continue;
    }
    if (!have_header) throw ParseError("clause before problem line", line_no, first + 1);
    std::size_t pos = first;
    while (pos < line.size()) {
      while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t' || line[pos] == '\r')) {
        ++pos;
      }
      if (pos >= line.size()) break;
      int value = 0;
      auto [ptr, ec] = std::from_chars(line.data() + pos, line.data() + line.size(), value);
      if (ec != std::errc()) throw ParseError("expected an integer literal", line_no, pos + 1);
      if (value == 0) {
        if (current.empty()) throw ParseError("empty clause", line_no, pos + 1);
        formula.add_clause(std::move(current));
        current.clear();
      } else {
        if (std::abs(static_cast<long long>(value)) > declared_vars) {
          throw ParseError("literal exceeds declared variable count", line_no, pos + 1);
        }
        current.push_back(Literal::from_dimacs(value));
      }
      pos = static_cast<std::size_t>(ptr - line.data());
    }
  }
  if (!current.empty()) throw ParseError("last clause is not terminated by 0", line_no);
  if (!have_header) throw ParseError("missing problem line");
  while (formula.var_count() < static_cast<Var>(declared_vars)) formula.new_var();
  return formula;
}

}  // namespace satfuzz
