// Small CDCL solver used by the oracle's bounded model search.
#pragma once

#include <cstdint>
#include <vector>

namespace sel::detail {

// Literal 2v is variable v, 2v+1 its negation.
using Lit = std::uint32_t;
inline Lit pos(std::uint32_t v) { return 2 * v; }
inline Lit neg(Lit l) { return l ^ 1u; }
inline std::uint32_t var_of(Lit l) { return l >> 1; }

class SatSolver {
 public:
  enum class Result { Sat, Unsat, Unknown };

  std::uint32_t new_var();
  std::uint32_t var_count() const { return static_cast<std::uint32_t>(assigns_.size()); }
  std::size_t clause_count() const { return clauses_.size(); }
  // All clauses must be added before solve().
  void add_clause(std::vector<Lit> lits);
  // conflict_limit 0 means unlimited.
  Result solve(std::uint64_t conflict_limit = 0);
  bool model_value(std::uint32_t v) const { return model_[v]; }

 private:
  int value(Lit l) const {
    const std::int8_t a = assigns_[var_of(l)];
    return a < 0 ? -1 : (a ^ static_cast<int>(l & 1u));
  }
  void enqueue(Lit l, std::int32_t reason);
  std::int32_t propagate();
  void analyze(std::int32_t conflict, std::vector<Lit>& learnt, std::uint32_t& back_level);
  void backtrack(std::uint32_t level);
  void bump(std::uint32_t v);
  std::int64_t pick_branch();
  void attach(std::int32_t ci);

  std::vector<std::vector<Lit>> clauses_;
  std::vector<std::vector<std::int32_t>> watches_;
  std::vector<std::int8_t> assigns_;
  std::vector<bool> phase_;
  std::vector<std::uint32_t> level_;
  std::vector<std::int32_t> reason_;
  std::vector<double> activity_;
  std::vector<std::pair<double, std::uint32_t>> heap_;
  std::vector<Lit> trail_;
  std::vector<std::size_t> trail_lim_;
  std::vector<bool> seen_;
  std::vector<bool> model_;
  std::size_t qhead_ = 0;
  double var_inc_ = 1.0;
  bool inconsistent_ = false;
  std::vector<Lit> pending_units_;
};

}  // namespace sel::detail
