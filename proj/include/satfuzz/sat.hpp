#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "satfuzz/cnf.hpp"

namespace satfuzz {

enum class SatStatus { Sat, Unsat };

struct SatResult {
  SatStatus status = SatStatus::Unsat;
  // Total assignment, model[v - 1] for variable v. Present iff status is Sat.
  std::optional<std::vector<std::uint8_t>> model;

  bool sat() const { return status == SatStatus::Sat; }
  bool value(Var var) const { return (*model)[var - 1] != 0; }
  bool value(Literal lit) const { return value(lit.var()) != lit.negated(); }
};

struct SolverOptions {
  std::uint64_t seed = 0;
  // Conflicts allowed per solve call; 0 means unlimited.
  std::uint64_t conflict_budget = 0;
  // Check every returned model against every clause and assumption.
  bool verify_models = false;
};

// Anything that can decide CNF incrementally. Callers of SolverSession never
// see which backend is underneath.
class SatBackend {
 public:
  virtual ~SatBackend() = default;

  virtual Var new_var() = 0;
  virtual Var var_count() const = 0;
  virtual void add_clause(std::span<const Literal> clause) = 0;
  virtual SatResult solve(std::span<const Literal> assumptions) = 0;
};

std::unique_ptr<SatBackend> make_cdcl_backend(const SolverOptions& options);

// Runs `command <file.cnf>` for each solve and reads the competition-style
// answer (`s SATISFIABLE` / `s UNSATISFIABLE` plus `v` lines) from its stdout.
std::unique_ptr<SatBackend> make_external_backend(std::string command);

// Parses solver output. Unassigned variables in the v-lines default to false.
SatResult parse_solver_output(std::istream& in, Var var_count);

// Prints a result the way parse_solver_output reads it.
void write_solver_output(std::ostream& out, const SatResult& result);

// A growing formula plus the solver deciding it. Clauses are never removed.
// Single-threaded: one session per thread.
class SolverSession {
 public:
  explicit SolverSession(const CnfFormula& formula, SolverOptions options = {});
  SolverSession(const CnfFormula& formula, std::unique_ptr<SatBackend> backend,
                SolverOptions options = {});

  SolverSession(SolverSession&&) noexcept;
  SolverSession& operator=(SolverSession&&) noexcept;
  ~SolverSession();

  SatResult solve(std::span<const Literal> assumptions = {});

  // Variables above var_count() are created on demand.
  void add_clause(std::span<const Literal> clause);
  void add_clause(std::initializer_list<Literal> clause) {
    add_clause(std::span<const Literal>(clause.begin(), clause.size()));
  }

  // At least k of `literals` must hold (sequential counter, O(n*k) helpers).
  // Throws ConfigError if k is outside [1, literals.size()].
  void encode_at_least_k(std::span<const Literal> literals, std::size_t k);

  Var new_var();
  Var var_count() const;
  std::size_t solve_calls() const { return solve_calls_; }

 private:
  void ensure_var(Var var);

  std::unique_ptr<SatBackend> backend_;
  SolverOptions options_;
  std::vector<Clause> clauses_;  // kept only when verify_models is set
  std::size_t solve_calls_ = 0;
};

}  // namespace satfuzz
