#include "satfuzz/sat.hpp"

#include <algorithm>
#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <unistd.h>

#include "cdcl_solver.hpp"
#include "satfuzz/error.hpp"

namespace satfuzz {

std::unique_ptr<SatBackend> make_cdcl_backend(const SolverOptions& options) {
  return std::make_unique<detail::CdclSolver>(options);
}

// ---------------------------------------------------------------------------
// External solver over DIMACS files

namespace {

class ExternalSolver final : public SatBackend {
 public:
  explicit ExternalSolver(std::string command) : command_(std::move(command)) {}

  Var new_var() override { return formula_.new_var(); }
  Var var_count() const override { return formula_.var_count(); }
  void add_clause(std::span<const Literal> clause) override {
    formula_.add_clause(Clause(clause.begin(), clause.end()));
  }

  SatResult solve(std::span<const Literal> assumptions) override {
    auto path = std::filesystem::temp_directory_path() / "satfuzz-XXXXXX.cnf";
    std::string name = path.string();
    int fd = ::mkstemps(name.data(), 4);
    if (fd < 0) throw Error("cannot create temporary DIMACS file");
    ::close(fd);
    {
      std::ofstream out(name);
      write_dimacs(out, formula_, assumptions);
    }
    std::string output;
    std::string command = command_ + " '" + name + "'";
    FILE* pipe = ::popen(command.c_str(), "r");
    if (!pipe) {
      std::filesystem::remove(name);
      throw Error("cannot run external solver: " + command_);
    }
    std::array<char, 4096> buffer{};
    while (std::size_t got = std::fread(buffer.data(), 1, buffer.size(), pipe)) {
      output.append(buffer.data(), got);
    }
    ::pclose(pipe);
    std::filesystem::remove(name);

    Var vars = formula_.var_count();
    for (const Literal& a : assumptions) vars = std::max(vars, a.var());
    std::istringstream in(output);
    return parse_solver_output(in, vars);
  }

 private:
  std::string command_;
  CnfFormula formula_;
};

}  // namespace

std::unique_ptr<SatBackend> make_external_backend(std::string command) {
  return std::make_unique<ExternalSolver>(std::move(command));
}

SatResult parse_solver_output(std::istream& in, Var var_count) {
  std::optional<SatStatus> status;
  std::vector<std::uint8_t> model(var_count, 0);
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream words(line);
    std::string head;
    if (!(words >> head)) continue;
    std::string answer;
    if (head == "s") {
      words >> answer;
    } else if (head == "SAT" || head == "UNSAT" || head == "SATISFIABLE" ||
               head == "UNSATISFIABLE" || head == "INDET" || head == "UNKNOWN") {
      answer = head;
    } else if (head == "v") {
      for (long long value; words >> value;) {
        if (value == 0) break;
        auto var = static_cast<Var>(value < 0 ? -value : value);
        if (var > var_count) throw Error("solver assigned unknown variable " + std::to_string(var));
        model[var - 1] = value > 0 ? 1 : 0;
      }
      continue;
    } else {
      continue;
    }
    if (answer == "SATISFIABLE" || answer == "SAT") {
      status = SatStatus::Sat;
    } else if (answer == "UNSATISFIABLE" || answer == "UNSAT") {
      status = SatStatus::Unsat;
    } else {
      throw BudgetExhausted("external solver answered " + answer);
    }
  }
  if (!status) throw Error("external solver produced no answer");
  SatResult result;
  result.status = *status;
  if (*status == SatStatus::Sat) result.model = std::move(model);
  return result;
}

void write_solver_output(std::ostream& out, const SatResult& result) {
  if (!result.sat()) {
    out << "s UNSATISFIABLE\n";
    return;
  }
  out << "s SATISFIABLE\n";
  const auto& model = *result.model;
  constexpr std::size_t kPerLine = 16;
  for (std::size_t i = 0; i < model.size(); i += kPerLine) {
    out << 'v';
    for (std::size_t k = i; k < std::min(i + kPerLine, model.size()); ++k) {
      out << ' ' << (model[k] ? "" : "-") << k + 1;
    }
    out << '\n';
  }
  out << "v 0\n";
}

// ---------------------------------------------------------------------------
// SolverSession

SolverSession::SolverSession(const CnfFormula& formula, SolverOptions options)
    : SolverSession(formula, make_cdcl_backend(options), options) {}

SolverSession::SolverSession(const CnfFormula& formula, std::unique_ptr<SatBackend> backend,
                             SolverOptions options)
    : backend_(std::move(backend)), options_(options) {
  ensure_var(formula.var_count());
  for (const Clause& clause : formula.clauses()) add_clause(clause);
}

SolverSession::SolverSession(SolverSession&&) noexcept = default;
SolverSession& SolverSession::operator=(SolverSession&&) noexcept = default;
SolverSession::~SolverSession() = default;

void SolverSession::ensure_var(Var var) {
  while (backend_->var_count() < var) backend_->new_var();
}

Var SolverSession::new_var() { return backend_->new_var(); }

Var SolverSession::var_count() const { return backend_->var_count(); }

void SolverSession::add_clause(std::span<const Literal> clause) {
  if (clause.empty()) throw Error("cannot add an empty clause");
  for (const Literal& lit : clause) {
    if (lit.var() == 0) throw Error("variable 0 in clause");
    ensure_var(lit.var());
  }
  backend_->add_clause(clause);
  if (options_.verify_models) clauses_.emplace_back(clause.begin(), clause.end());
}

void SolverSession::encode_at_least_k(std::span<const Literal> literals, std::size_t k) {
  const std::size_t n = literals.size();
  if (k < 1 || k > n) {
    throw ConfigError("infeasible cardinality constraint: at least " + std::to_string(k) +
                      " of " + std::to_string(n) + " literals");
  }
  if (k == n) {
    for (const Literal& lit : literals) add_clause({lit});
    return;
  }
  if (k == 1) {
    add_clause(literals);
    return;
  }
  // count[i][j - 1] holds "at least j of the first i + 1 literals are true".
  // Only the upward implication is encoded; the final counter is asserted.
  std::vector<std::vector<Var>> count(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t top = std::min(i + 1, k);
    for (std::size_t j = 1; j <= top; ++j) {
      Literal here(new_var());
      count[i].push_back(here.var());
      std::optional<Literal> without;  // at least j among the first i literals
      if (i > 0 && j <= count[i - 1].size()) without = Literal(count[i - 1][j - 1]);

      Clause take_this{~here, literals[i]};
      if (without) take_this.push_back(*without);
      add_clause(take_this);

      if (j >= 2) {
        Clause need_rest{~here, Literal(count[i - 1][j - 2])};
        if (without) need_rest.push_back(*without);
        add_clause(need_rest);
      }
    }
  }
  add_clause({Literal(count[n - 1][k - 1])});
}

SatResult SolverSession::solve(std::span<const Literal> assumptions) {
  for (const Literal& a : assumptions) ensure_var(a.var());
  ++solve_calls_;
  SatResult result = backend_->solve(assumptions);
  if (options_.verify_models && result.sat()) {
    if (result.model->size() < var_count()) throw std::logic_error("model is not total");
    for (const Literal& a : assumptions) {
      if (!result.value(a)) throw std::logic_error("model violates an assumption");
    }
    for (const Clause& clause : clauses_) {
      bool satisfied = false;
      for (const Literal& lit : clause) satisfied = satisfied || result.value(lit);
      if (!satisfied) throw std::logic_error("model violates a clause");
    }
  }
  return result;
}

}  // namespace satfuzz
