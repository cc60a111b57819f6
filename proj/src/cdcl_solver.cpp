#include "cdcl_solver.hpp"

#include <algorithm>
#include <cassert>

#include "satfuzz/error.hpp"

namespace satfuzz::detail {

namespace {

constexpr double kVarDecay = 0.95;
constexpr double kClauseDecay = 0.999;
constexpr std::uint64_t kRestartUnit = 100;

// Luby sequence 1 1 2 1 1 2 4 ...; x is 0-based.
double luby(double y, std::uint64_t x) {
  std::uint64_t size = 1;
  int seq = 0;
  while (size < x + 1) {
    ++seq;
    size = 2 * size + 1;
  }
  while (size - 1 != x) {
    size = (size - 1) >> 1;
    --seq;
    x = x % size;
  }
  double result = 1.0;
  for (int i = 0; i < seq; ++i) result *= y;
  return result;
}

}  // namespace

CdclSolver::CdclSolver(const SolverOptions& options) : options_(options), rng_(options.seed) {}

Var CdclSolver::new_var() {
  auto v = static_cast<std::uint32_t>(assigns_.size());
  assigns_.push_back(kUndef);
  saved_phase_.push_back(kFalse);
  level_.push_back(0);
  reason_.push_back(kNoReason);
  // Seeded tie-breaking: a tiny initial activity orders otherwise equal variables.
  activity_.push_back(static_cast<double>(rng_.next() >> 11) * 0x1.0p-53 * 1e-5);
  heap_index_.push_back(-1);
  seen_.push_back(0);
  watches_.emplace_back();
  watches_.emplace_back();
  heap_insert(v);
  return v + 1;
}

void CdclSolver::add_clause(std::span<const Literal> clause) {
  if (!ok_) return;
  assert(decision_level() == 0);
  std::vector<Lit> lits;
  lits.reserve(clause.size());
  for (const Literal& l : clause) {
    while (l.var() > var_count()) new_var();
    lits.push_back(to_lit(l));
  }
  std::sort(lits.begin(), lits.end());
  lits.erase(std::unique(lits.begin(), lits.end()), lits.end());
  std::size_t j = 0;
  for (std::size_t i = 0; i < lits.size(); ++i) {
    if (i + 1 < lits.size() && lits[i + 1] == negate(lits[i])) return;  // tautology
    std::uint8_t val = value(lits[i]);
    if (val == kTrue) return;
    if (val == kFalse) continue;
    lits[j++] = lits[i];
  }
  lits.resize(j);
  if (lits.empty()) {
    ok_ = false;
  } else if (lits.size() == 1) {
    enqueue(lits[0], kNoReason);
    if (propagate() != kNoReason) ok_ = false;
  } else {
    attach(std::move(lits), false);
  }
}

CdclSolver::ClauseRef CdclSolver::attach(std::vector<Lit> lits, bool learnt) {
  auto cref = static_cast<ClauseRef>(clauses_.size());
  watches_[lits[0]].push_back({cref, lits[1]});
  watches_[lits[1]].push_back({cref, lits[0]});
  clauses_.push_back(ClauseData{std::move(lits), 0.0, learnt, false});
  if (learnt) learnts_.push_back(cref);
  return cref;
}

void CdclSolver::enqueue(Lit l, ClauseRef reason) {
  std::uint32_t v = var_of(l);
  assigns_[v] = sign_of(l) ? kFalse : kTrue;
  level_[v] = decision_level();
  reason_[v] = reason;
  trail_.push_back(l);
}

// Watch lists are keyed by the watched literal and visited when it turns false.
CdclSolver::ClauseRef CdclSolver::propagate() {
  ClauseRef conflict = kNoReason;
  while (qhead_ < trail_.size()) {
    Lit false_lit = negate(trail_[qhead_++]);
    auto& ws = watches_[false_lit];
    ++stats_.propagations;
    std::size_t i = 0;
    std::size_t j = 0;
    while (i < ws.size()) {
      Watcher w = ws[i];
      if (value(w.blocker) == kTrue) {
        ws[j++] = ws[i++];
        continue;
      }
      ClauseData& c = clauses_[w.cref];
      if (c.removed) {
        ++i;
        continue;
      }
      auto& lits = c.lits;
      if (lits[0] == false_lit) std::swap(lits[0], lits[1]);
      ++i;
      Lit first = lits[0];
      Watcher updated{w.cref, first};
      if (first != w.blocker && value(first) == kTrue) {
        ws[j++] = updated;
        continue;
      }
      bool moved = false;
      for (std::size_t k = 2; k < lits.size(); ++k) {
        if (value(lits[k]) != kFalse) {
          std::swap(lits[1], lits[k]);
          watches_[lits[1]].push_back(updated);
          moved = true;
          break;
        }
      }
      if (moved) continue;
      ws[j++] = updated;
      if (value(first) == kFalse) {
        conflict = w.cref;
        qhead_ = trail_.size();
        while (i < ws.size()) ws[j++] = ws[i++];
      } else {
        enqueue(first, w.cref);
      }
    }
    ws.resize(j);
    if (conflict != kNoReason) break;
  }
  return conflict;
}

void CdclSolver::analyze(ClauseRef conflict, std::vector<Lit>& learnt, int& backtrack_level) {
  learnt.clear();
  learnt.push_back(0);  // slot for the asserting literal
  int path_count = 0;
  Lit p = 0;
  bool have_p = false;
  std::size_t idx = trail_.size();

  do {
    assert(conflict != kNoReason);
    ClauseData& c = clauses_[conflict];
    if (c.learnt) bump_clause(conflict);
    for (std::size_t k = have_p ? 1 : 0; k < c.lits.size(); ++k) {
      Lit q = c.lits[k];
      std::uint32_t v = var_of(q);
      if (seen_[v] || level_[v] == 0) continue;
      bump_var(v);
      seen_[v] = 1;
      if (level_[v] >= decision_level()) {
        ++path_count;
      } else {
        learnt.push_back(q);
      }
    }
    do {
      --idx;
    } while (!seen_[var_of(trail_[idx])]);
    p = trail_[idx];
    have_p = true;
    conflict = reason_[var_of(p)];
    seen_[var_of(p)] = 0;
    --path_count;
  } while (path_count > 0);
  learnt[0] = negate(p);

  // Local minimization: drop literals implied by other literals of the clause.
  std::vector<Lit> marked(learnt.begin() + 1, learnt.end());
  std::size_t keep = 1;
  for (std::size_t k = 1; k < learnt.size(); ++k) {
    if (!redundant(learnt[k])) learnt[keep++] = learnt[k];
  }
  learnt.resize(keep);
  for (Lit l : marked) seen_[var_of(l)] = 0;

  backtrack_level = 0;
  if (learnt.size() > 1) {
    std::size_t max_i = 1;
    for (std::size_t k = 2; k < learnt.size(); ++k) {
      if (level_[var_of(learnt[k])] > level_[var_of(learnt[max_i])]) max_i = k;
    }
    std::swap(learnt[1], learnt[max_i]);
    backtrack_level = level_[var_of(learnt[1])];
  }
}

bool CdclSolver::redundant(Lit l) const {
  ClauseRef r = reason_[var_of(l)];
  if (r == kNoReason) return false;
  const auto& lits = clauses_[r].lits;
  for (std::size_t k = 1; k < lits.size(); ++k) {
    std::uint32_t v = var_of(lits[k]);
    if (!seen_[v] && level_[v] > 0) return false;
  }
  return true;
}

void CdclSolver::cancel_until(int level) {
  if (decision_level() <= level) return;
  for (std::size_t k = trail_.size(); k > trail_lim_[level]; --k) {
    std::uint32_t v = var_of(trail_[k - 1]);
    saved_phase_[v] = assigns_[v];
    assigns_[v] = kUndef;
    reason_[v] = kNoReason;
    if (!heap_contains(v)) heap_insert(v);
  }
  trail_.resize(trail_lim_[level]);
  trail_lim_.resize(level);
  qhead_ = trail_.size();
}

bool CdclSolver::locked(ClauseRef cref) const {
  const auto& lits = clauses_[cref].lits;
  return reason_[var_of(lits[0])] == cref && value(lits[0]) == kTrue;
}

void CdclSolver::reduce_learnts() {
  std::vector<ClauseRef> live;
  for (ClauseRef c : learnts_) {
    if (!clauses_[c].removed) live.push_back(c);
  }
  std::sort(live.begin(), live.end(), [&](ClauseRef a, ClauseRef b) {
    const auto& ca = clauses_[a];
    const auto& cb = clauses_[b];
    if ((ca.lits.size() > 2) != (cb.lits.size() > 2)) return ca.lits.size() > 2;
    if (ca.activity != cb.activity) return ca.activity < cb.activity;
    return a < b;
  });
  double extra = clause_inc_ / static_cast<double>(std::max<std::size_t>(live.size(), 1));
  std::vector<ClauseRef> kept;
  for (std::size_t k = 0; k < live.size(); ++k) {
    ClauseData& c = clauses_[live[k]];
    bool removable = c.lits.size() > 2 && !locked(live[k]) &&
                     (k < live.size() / 2 || c.activity < extra);
    if (removable) {
      c.removed = true;
      c.lits.clear();
      c.lits.shrink_to_fit();
      ++stats_.learnt_removed;
    } else {
      kept.push_back(live[k]);
    }
  }
  learnts_ = std::move(kept);
}

void CdclSolver::bump_var(std::uint32_t v) {
  activity_[v] += var_inc_;
  if (activity_[v] > 1e100) {
    for (auto& a : activity_) a *= 1e-100;
    var_inc_ *= 1e-100;
  }
  if (heap_contains(v)) heap_up(static_cast<std::size_t>(heap_index_[v]));
}

void CdclSolver::bump_clause(ClauseRef cref) {
  clauses_[cref].activity += clause_inc_;
  if (clauses_[cref].activity > 1e20) {
    for (ClauseRef c : learnts_) clauses_[c].activity *= 1e-20;
    clause_inc_ *= 1e-20;
  }
}

void CdclSolver::decay_activities() {
  var_inc_ /= kVarDecay;
  clause_inc_ /= kClauseDecay;
}

bool CdclSolver::heap_less(std::uint32_t a, std::uint32_t b) const {
  // "a sits above b" in the max-heap
  if (activity_[a] != activity_[b]) return activity_[a] > activity_[b];
  return a < b;
}

void CdclSolver::heap_insert(std::uint32_t v) {
  heap_index_[v] = static_cast<int>(heap_.size());
  heap_.push_back(v);
  heap_up(heap_.size() - 1);
}

void CdclSolver::heap_up(std::size_t i) {
  std::uint32_t v = heap_[i];
  while (i > 0) {
    std::size_t parent = (i - 1) / 2;
    if (!heap_less(v, heap_[parent])) break;
    heap_[i] = heap_[parent];
    heap_index_[heap_[i]] = static_cast<int>(i);
    i = parent;
  }
  heap_[i] = v;
  heap_index_[v] = static_cast<int>(i);
}

void CdclSolver::heap_down(std::size_t i) {
  std::uint32_t v = heap_[i];
  while (true) {
    std::size_t child = 2 * i + 1;
    if (child >= heap_.size()) break;
    if (child + 1 < heap_.size() && heap_less(heap_[child + 1], heap_[child])) ++child;
    if (!heap_less(heap_[child], v)) break;
    heap_[i] = heap_[child];
    heap_index_[heap_[i]] = static_cast<int>(i);
    i = child;
  }
  heap_[i] = v;
  heap_index_[v] = static_cast<int>(i);
}

std::uint32_t CdclSolver::heap_pop() {
  std::uint32_t top = heap_.front();
  heap_index_[top] = -1;
  heap_.front() = heap_.back();
  heap_.pop_back();
  if (!heap_.empty()) {
    heap_index_[heap_.front()] = 0;
    heap_down(0);
  }
  return top;
}

SatResult CdclSolver::solve(std::span<const Literal> assumptions) {
  SatResult result;
  if (!ok_) return result;
  for (const Literal& a : assumptions) {
    while (a.var() > var_count()) new_var();
  }
  std::vector<Lit> assumed;
  assumed.reserve(assumptions.size());
  for (const Literal& a : assumptions) assumed.push_back(to_lit(a));

  if (max_learnts_ == 0.0) max_learnts_ = std::max(clauses_.size() / 3.0, 1000.0);
  std::uint64_t conflicts_this_call = 0;
  std::uint64_t restart_index = 0;
  std::uint64_t restart_limit = kRestartUnit;
  std::uint64_t conflicts_since_restart = 0;
  std::vector<Lit> learnt;

  while (true) {
    ClauseRef conflict = propagate();
    if (conflict != kNoReason) {
      ++stats_.conflicts;
      ++conflicts_this_call;
      ++conflicts_since_restart;
      if (decision_level() == 0) {
        ok_ = false;
        return result;
      }
      int backtrack_level = 0;
      analyze(conflict, learnt, backtrack_level);
      cancel_until(backtrack_level);
      if (learnt.size() == 1) {
        enqueue(learnt[0], kNoReason);
      } else {
        ClauseRef cref = attach(learnt, true);
        bump_clause(cref);
        enqueue(learnt[0], cref);
      }
      decay_activities();
      if (options_.conflict_budget != 0 && conflicts_this_call >= options_.conflict_budget) {
        cancel_until(0);
        throw BudgetExhausted("conflict budget of " + std::to_string(options_.conflict_budget) +
                              " exhausted");
      }
      continue;
    }

    if (conflicts_since_restart >= restart_limit) {
      ++stats_.restarts;
      cancel_until(0);
      conflicts_since_restart = 0;
      restart_limit = static_cast<std::uint64_t>(luby(2.0, ++restart_index) * kRestartUnit);
      max_learnts_ *= 1.1;
      continue;
    }
    if (static_cast<double>(learnts_.size()) - static_cast<double>(trail_.size()) >= max_learnts_) {
      reduce_learnts();
    }

    Lit next = 0;
    bool have_next = false;
    while (decision_level() < static_cast<int>(assumed.size())) {
      Lit a = assumed[static_cast<std::size_t>(decision_level())];
      std::uint8_t val = value(a);
      if (val == kTrue) {
        trail_lim_.push_back(trail_.size());  // dummy level keeps indices aligned
      } else if (val == kFalse) {
        cancel_until(0);
        return result;  // unsatisfiable under the assumptions
      } else {
        next = a;
        have_next = true;
        break;
      }
    }
    if (!have_next) {
      while (!heap_.empty()) {
        std::uint32_t v = heap_pop();
        if (assigns_[v] == kUndef) {
          next = 2 * v + (saved_phase_[v] == kTrue ? 0 : 1);
          have_next = true;
          break;
        }
      }
    }
    if (!have_next) {
      result.status = SatStatus::Sat;
      result.model = assigns_;
      cancel_until(0);
      return result;
    }
    ++stats_.decisions;
    trail_lim_.push_back(trail_.size());
    enqueue(next, kNoReason);
  }
}

}  // namespace satfuzz::detail
