#include "sel/detail/sat.hpp"

#include <algorithm>

namespace sel::detail {

std::uint32_t SatSolver::new_var() {
  const auto v = static_cast<std::uint32_t>(assigns_.size());
  assigns_.push_back(-1);
  phase_.push_back(false);
  level_.push_back(0);
  reason_.push_back(-1);
  activity_.push_back(0.0);
  seen_.push_back(false);
  watches_.emplace_back();
  watches_.emplace_back();
  heap_.emplace_back(0.0, v);
  std::push_heap(heap_.begin(), heap_.end());
  return v;
}

void SatSolver::add_clause(std::vector<Lit> lits) {
  std::sort(lits.begin(), lits.end());
  lits.erase(std::unique(lits.begin(), lits.end()), lits.end());
  for (std::size_t i = 0; i + 1 < lits.size(); ++i)
    if (lits[i + 1] == neg(lits[i]) && (lits[i] & 1u) == 0) return;  // tautology
  if (lits.empty()) {
    inconsistent_ = true;
    return;
  }
  if (lits.size() == 1) {
    pending_units_.push_back(lits[0]);
    return;
  }
  clauses_.push_back(std::move(lits));
  attach(static_cast<std::int32_t>(clauses_.size() - 1));
}

void SatSolver::attach(std::int32_t ci) {
  const auto& c = clauses_[ci];
  watches_[c[0]].push_back(ci);
  watches_[c[1]].push_back(ci);
}

void SatSolver::enqueue(Lit l, std::int32_t reason) {
  const std::uint32_t v = var_of(l);
  assigns_[v] = static_cast<std::int8_t>(l & 1u ? 0 : 1);
  level_[v] = static_cast<std::uint32_t>(trail_lim_.size());
  reason_[v] = reason;
  trail_.push_back(l);
}

// Watches of a literal are visited when that literal becomes false.
std::int32_t SatSolver::propagate() {
  while (qhead_ < trail_.size()) {
    const Lit false_lit = neg(trail_[qhead_++]);
    auto& ws = watches_[false_lit];
    std::size_t i = 0, j = 0;
    std::int32_t conflict = -1;
    while (i < ws.size()) {
      const std::int32_t ci = ws[i++];
      auto& c = clauses_[ci];
      if (c[0] == false_lit) std::swap(c[0], c[1]);
      if (value(c[0]) == 1) {
        ws[j++] = ci;
        continue;
      }
      bool moved = false;
      for (std::size_t k = 2; k < c.size(); ++k) {
        if (value(c[k]) != 0) {
          std::swap(c[1], c[k]);
          watches_[c[1]].push_back(ci);
          moved = true;
          break;
        }
      }
      if (moved) continue;
      ws[j++] = ci;
      if (value(c[0]) == 0) {
        conflict = ci;
        while (i < ws.size()) ws[j++] = ws[i++];
      } else {
        enqueue(c[0], ci);
      }
    }
    ws.resize(j);
    if (conflict >= 0) return conflict;
  }
  return -1;
}

void SatSolver::bump(std::uint32_t v) {
  activity_[v] += var_inc_;
  if (activity_[v] > 1e100) {
    for (auto& a : activity_) a *= 1e-100;
    var_inc_ *= 1e-100;
    heap_.clear();
    for (std::uint32_t u = 0; u < activity_.size(); ++u) heap_.emplace_back(activity_[u], u);
    std::make_heap(heap_.begin(), heap_.end());
    return;
  }
  heap_.emplace_back(activity_[v], v);
  std::push_heap(heap_.begin(), heap_.end());
}

void SatSolver::analyze(std::int32_t conflict, std::vector<Lit>& learnt, std::uint32_t& back_level) {
  const auto current = static_cast<std::uint32_t>(trail_lim_.size());
  learnt.assign(1, 0);
  int path = 0;
  Lit p = 0;
  bool have_p = false;
  std::size_t index = trail_.size();
  std::int32_t reason = conflict;
  do {
    const auto& c = clauses_[reason];
    for (std::size_t k = have_p ? 1 : 0; k < c.size(); ++k) {
      const std::uint32_t v = var_of(c[k]);
      if (seen_[v] || level_[v] == 0) continue;
      seen_[v] = true;
      bump(v);
      if (level_[v] >= current)
        ++path;
      else
        learnt.push_back(c[k]);
    }
    while (!seen_[var_of(trail_[--index])]) {
    }
    p = trail_[index];
    have_p = true;
    reason = reason_[var_of(p)];
    seen_[var_of(p)] = false;
    --path;
  } while (path > 0);
  learnt[0] = neg(p);

  back_level = 0;
  std::size_t max_i = 1;
  for (std::size_t k = 1; k < learnt.size(); ++k) {
    if (level_[var_of(learnt[k])] > back_level) {
      back_level = level_[var_of(learnt[k])];
      max_i = k;
    }
  }
  if (learnt.size() > 1) std::swap(learnt[1], learnt[max_i]);
  for (Lit l : learnt) seen_[var_of(l)] = false;
  var_inc_ /= 0.95;
}

void SatSolver::backtrack(std::uint32_t level) {
  if (trail_lim_.size() <= level) return;
  for (std::size_t i = trail_.size(); i > trail_lim_[level]; --i) {
    const std::uint32_t v = var_of(trail_[i - 1]);
    phase_[v] = assigns_[v] == 1;
    assigns_[v] = -1;
    reason_[v] = -1;
    heap_.emplace_back(activity_[v], v);
    std::push_heap(heap_.begin(), heap_.end());
  }
  trail_.resize(trail_lim_[level]);
  trail_lim_.resize(level);
  qhead_ = trail_.size();
}

std::int64_t SatSolver::pick_branch() {
  while (!heap_.empty()) {
    std::pop_heap(heap_.begin(), heap_.end());
    const std::uint32_t v = heap_.back().second;
    heap_.pop_back();
    if (assigns_[v] < 0) return v;
  }
  return -1;
}

SatSolver::Result SatSolver::solve(std::uint64_t conflict_limit) {
  if (inconsistent_) return Result::Unsat;
  for (Lit l : pending_units_) {
    if (value(l) == 0) return Result::Unsat;
    if (value(l) < 0) enqueue(l, -1);
  }
  pending_units_.clear();
  std::uint64_t conflicts = 0;
  std::uint64_t restart_at = 100;
  std::vector<Lit> learnt;
  for (;;) {
    const std::int32_t conflict = propagate();
    if (conflict >= 0) {
      ++conflicts;
      if (trail_lim_.empty()) return inconsistent_ = true, Result::Unsat;
      std::uint32_t back_level = 0;
      analyze(conflict, learnt, back_level);
      backtrack(back_level);
      if (learnt.size() == 1) {
        enqueue(learnt[0], -1);
      } else {
        clauses_.push_back(learnt);
        const auto ci = static_cast<std::int32_t>(clauses_.size() - 1);
        attach(ci);
        enqueue(learnt[0], ci);
      }
      if (conflict_limit && conflicts >= conflict_limit) {
        backtrack(0);
        return Result::Unknown;
      }
      continue;
    }
    if (conflicts >= restart_at) {
      restart_at += restart_at / 2;
      backtrack(0);
    }
    const std::int64_t v = pick_branch();
    if (v < 0) {
      model_.assign(assigns_.size(), false);
      for (std::size_t u = 0; u < assigns_.size(); ++u) model_[u] = assigns_[u] == 1;
      backtrack(0);
      return Result::Sat;
    }
    trail_lim_.push_back(trail_.size());
    enqueue(phase_[v] ? pos(static_cast<std::uint32_t>(v)) : neg(pos(static_cast<std::uint32_t>(v))), -1);
  }
}

}  // namespace sel::detail
