#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "satfuzz/rng.hpp"
#include "satfuzz/sat.hpp"

namespace satfuzz::detail {

struct CdclStats {
  std::uint64_t decisions = 0;
  std::uint64_t propagations = 0;
  std::uint64_t conflicts = 0;
  std::uint64_t restarts = 0;
  std::uint64_t learnt_removed = 0;
};

// Conflict-driven clause learning: two watched literals, first-UIP learning
// with local minimization, VSIDS, phase saving (initial phase false), Luby
// restarts and activity-based learnt clause deletion.
class CdclSolver final : public SatBackend {
 public:
  explicit CdclSolver(const SolverOptions& options);

  Var new_var() override;
  Var var_count() const override { return static_cast<Var>(assigns_.size()); }
  void add_clause(std::span<const Literal> clause) override;
  SatResult solve(std::span<const Literal> assumptions) override;

  const CdclStats& stats() const { return stats_; }

 private:
  // Internal literal: 2 * (var - 1) + negated.
  using Lit = std::uint32_t;
  using ClauseRef = std::uint32_t;
  static constexpr ClauseRef kNoReason = ~ClauseRef{0};
  static constexpr std::uint8_t kFalse = 0;
  static constexpr std::uint8_t kTrue = 1;
  static constexpr std::uint8_t kUndef = 2;

  struct ClauseData {
    std::vector<Lit> lits;
    double activity = 0.0;
    bool learnt = false;
    bool removed = false;
  };

  struct Watcher {
    ClauseRef cref;
    Lit blocker;
  };

  static Lit to_lit(Literal l) { return 2 * (l.var() - 1) + (l.negated() ? 1 : 0); }
  static std::uint32_t var_of(Lit l) { return l >> 1; }
  static bool sign_of(Lit l) { return (l & 1U) != 0; }
  static Lit negate(Lit l) { return l ^ 1U; }

  std::uint8_t value(Lit l) const {
    std::uint8_t a = assigns_[var_of(l)];
    return a == kUndef ? kUndef : static_cast<std::uint8_t>(a ^ (sign_of(l) ? 1 : 0));
  }
  int decision_level() const { return static_cast<int>(trail_lim_.size()); }

  void enqueue(Lit l, ClauseRef reason);
  ClauseRef propagate();
  void analyze(ClauseRef conflict, std::vector<Lit>& learnt, int& backtrack_level);
  bool redundant(Lit l) const;
  void cancel_until(int level);
  ClauseRef attach(std::vector<Lit> lits, bool learnt);
  bool locked(ClauseRef cref) const;
  void reduce_learnts();

  void bump_var(std::uint32_t v);
  void bump_clause(ClauseRef cref);
  void decay_activities();

  // Binary max-heap of unassigned variables keyed by activity.
  bool heap_less(std::uint32_t a, std::uint32_t b) const;
  void heap_insert(std::uint32_t v);
  void heap_up(std::size_t i);
  void heap_down(std::size_t i);
  std::uint32_t heap_pop();
  bool heap_contains(std::uint32_t v) const { return heap_index_[v] >= 0; }

  SolverOptions options_;
  Rng rng_;
  CdclStats stats_;
  bool ok_ = true;

  std::vector<ClauseData> clauses_;
  std::vector<ClauseRef> learnts_;
  std::vector<std::vector<Watcher>> watches_;  // indexed by Lit

  std::vector<std::uint8_t> assigns_;
  std::vector<std::uint8_t> saved_phase_;
  std::vector<int> level_;
  std::vector<ClauseRef> reason_;
  std::vector<Lit> trail_;
  std::vector<std::size_t> trail_lim_;
  std::size_t qhead_ = 0;

  std::vector<double> activity_;
  double var_inc_ = 1.0;
  double clause_inc_ = 1.0;
  std::vector<std::uint32_t> heap_;
  std::vector<int> heap_index_;

  std::vector<std::uint8_t> seen_;
  double max_learnts_ = 0.0;
};

}  // namespace satfuzz::detail
