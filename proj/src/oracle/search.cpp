// Bounded model search. For fixed |Δ| and |Π| the semantics is grounded into
// propositional logic (one variable per membership fact, Tseitin gates for
// compound terms) and handed to the CDCL solver; a satisfying assignment is
// read back as a structure and re-checked with the direct evaluator.
#include <unordered_map>

#include "sel/detail/sat.hpp"
#include "sel/oracle.hpp"
#include "sel/signature.hpp"

namespace sel {
namespace {

using detail::Lit;
using detail::neg;
using detail::pos;

class Grounding {
 public:
  Grounding(const Signature& sig, std::size_t domain, std::size_t precs, const SearchOptions& opt)
      : sig_(sig), n_(domain), p_(precs), opt_(opt) {
    true_ = pos(solver_.new_var());
    solver_.add_clause({true_});
    for (const auto& s : sig.standpoints) {
      auto& row = sigma_[s];
      for (std::size_t i = 0; i < p_; ++i) row.push_back(pos(solver_.new_var()));
      if (s == kUniversal && opt.universal_star) {
        for (Lit l : row) solver_.add_clause({l});
      } else {
        solver_.add_clause(row);
      }
    }
    for (const auto& a : sig.concept_names) {
      auto& grid = concepts_[a];
      for (std::size_t i = 0; i < p_ * n_; ++i) grid.push_back(pos(solver_.new_var()));
    }
    for (const auto& r : sig.roles) {
      auto& grid = roles_[r];
      for (std::size_t i = 0; i < p_ * n_ * n_; ++i) grid.push_back(pos(solver_.new_var()));
    }
    // Individual k may only use elements 0..k: any model can be relabelled so
    // that elements are numbered by first use.
    std::size_t k = 0;
    for (const auto& a : sig.individuals) {
      auto& row = individuals_[a];
      for (std::size_t x = 0; x < n_; ++x) row.push_back(pos(solver_.new_var()));
      solver_.add_clause(row);
      for (std::size_t x = 0; x < n_; ++x)
        for (std::size_t y = x + 1; y < n_; ++y) solver_.add_clause({neg(row[x]), neg(row[y])});
      for (std::size_t x = k + 1; x < n_; ++x) solver_.add_clause({neg(row[x])});
      ++k;
    }
  }

  void require(const Axiom& a, bool positive) {
    const Lit l = axiom(a);
    solver_.add_clause({positive ? l : neg(l)});
    check_budget();
  }

  std::optional<StandpointStructure> solve() {
    const auto r = solver_.solve(opt_.max_conflicts);
    if (r == detail::SatSolver::Result::Unknown) throw SearchBudgetExceeded("conflict budget exhausted");
    if (r == detail::SatSolver::Result::Unsat) return std::nullopt;
    StandpointStructure d;
    d.domain = n_;
    d.precisifications = p_;
    d.universal_star = opt_.universal_star;
    for (const auto& [s, row] : sigma_) d.sigma[s] = read(row);
    d.gamma.resize(p_);
    for (std::size_t pi = 0; pi < p_; ++pi) {
      for (const auto& [a, grid] : concepts_) {
        Bitset ext(n_);
        for (std::size_t x = 0; x < n_; ++x)
          if (value(grid[pi * n_ + x])) ext.set(x);
        d.gamma[pi].concepts[a] = ext;
      }
      for (const auto& [r, grid] : roles_) {
        std::vector<Bitset> succ(n_, Bitset(n_));
        for (std::size_t x = 0; x < n_; ++x)
          for (std::size_t y = 0; y < n_; ++y)
            if (value(grid[(pi * n_ + x) * n_ + y])) succ[x].set(y);
        d.gamma[pi].roles[r] = succ;
      }
    }
    for (const auto& [a, row] : individuals_)
      for (std::size_t x = 0; x < n_; ++x)
        if (value(row[x])) d.individuals[a] = x;
    return d;
  }

 private:
  bool value(Lit l) const { return solver_.model_value(detail::var_of(l)) != bool(l & 1u); }
  Bitset read(const std::vector<Lit>& row) const {
    Bitset b(row.size());
    for (std::size_t i = 0; i < row.size(); ++i)
      if (value(row[i])) b.set(i);
    return b;
  }
  void check_budget() const {
    if (solver_.clause_count() > opt_.max_clauses) throw SearchBudgetExceeded("grounding too large");
  }

  Lit gate_and(const std::vector<Lit>& in) {
    if (in.empty()) return true_;
    if (in.size() == 1) return in[0];
    const Lit g = pos(solver_.new_var());
    std::vector<Lit> back{g};
    for (Lit l : in) {
      solver_.add_clause({neg(g), l});
      back.push_back(neg(l));
    }
    solver_.add_clause(back);
    return g;
  }
  Lit gate_or(const std::vector<Lit>& in) {
    std::vector<Lit> negated;
    for (Lit l : in) negated.push_back(neg(l));
    return neg(gate_and(negated));
  }
  Lit implies(Lit a, Lit b) { return gate_or({neg(a), b}); }

  Lit concept_lit(const ConceptTerm& c, std::size_t pi, std::size_t x) {
    using K = ConceptTerm::Kind;
    if (c.is_modal()) pi = 0;  // modal concepts do not depend on the precisification
    const Key key{c, pi, x};
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    Lit out = true_;
    switch (c.kind()) {
      case K::Top:
        break;
      case K::Bot:
        out = neg(true_);
        break;
      case K::Atom:
        out = concepts_.at(c.name())[pi * n_ + x];
        break;
      case K::And:
        out = gate_and({concept_lit(c.left(), pi, x), concept_lit(c.right(), pi, x)});
        break;
      case K::Exists: {
        std::vector<Lit> alts;
        const auto& grid = roles_.at(c.name());
        for (std::size_t y = 0; y < n_; ++y)
          alts.push_back(gate_and({grid[(pi * n_ + x) * n_ + y], concept_lit(c.filler(), pi, y)}));
        out = gate_or(alts);
        break;
      }
      case K::Box:
      case K::Diamond: {
        std::vector<Lit> parts;
        const auto& row = sigma_.at(c.name());
        for (std::size_t q = 0; q < p_; ++q) {
          const Lit inner = concept_lit(c.inner(), q, x);
          parts.push_back(c.is(K::Box) ? implies(row[q], inner) : gate_and({row[q], inner}));
        }
        out = c.is(K::Box) ? gate_and(parts) : gate_or(parts);
        break;
      }
    }
    memo_.emplace(key, out);
    return out;
  }

  Lit body(const AxiomBody& b, std::size_t pi) {
    std::vector<Lit> parts;
    if (const auto* g = std::get_if<Gci>(&b)) {
      for (std::size_t x = 0; x < n_; ++x) parts.push_back(implies(concept_lit(g->lhs, pi, x), concept_lit(g->rhs, pi, x)));
    } else if (const auto* c = std::get_if<ConceptAssertion>(&b)) {
      const auto& row = individuals_.at(c->individual);
      for (std::size_t x = 0; x < n_; ++x) parts.push_back(implies(row[x], concept_lit(c->term, pi, x)));
    } else {
      const auto& r = std::get<RoleAssertion>(b);
      const auto& sub = individuals_.at(r.subject);
      const auto& obj = individuals_.at(r.object);
      const auto& grid = roles_.at(r.role);
      for (std::size_t x = 0; x < n_; ++x)
        for (std::size_t y = 0; y < n_; ++y)
          parts.push_back(gate_or({neg(sub[x]), neg(obj[y]), grid[(pi * n_ + x) * n_ + y]}));
    }
    return gate_and(parts);
  }

  Lit axiom(const Axiom& a) {
    std::vector<Lit> parts;
    if (const auto* s = std::get_if<Sharpening>(&a)) {
      const auto& lo = sigma_.at(s->lower);
      const auto& up = sigma_.at(s->upper);
      for (std::size_t q = 0; q < p_; ++q) parts.push_back(implies(lo[q], up[q]));
      return gate_and(parts);
    }
    const auto& m = std::get<ModalAxiom>(a);
    const auto& row = sigma_.at(m.standpoint);
    for (std::size_t q = 0; q < p_; ++q) {
      const Lit h = body(m.body, q);
      parts.push_back(m.mode == Mode::Box ? implies(row[q], h) : gate_and({row[q], h}));
    }
    return m.mode == Mode::Box ? gate_and(parts) : gate_or(parts);
  }

  struct Key {
    ConceptTerm c;
    std::size_t pi, x;
    bool operator==(const Key&) const = default;
  };
  struct KeyHash {
    std::size_t operator()(const Key& k) const { return (k.c.hash() * 31 + k.pi) * 31 + k.x; }
  };

  const Signature& sig_;
  std::size_t n_, p_;
  SearchOptions opt_;
  detail::SatSolver solver_;
  Lit true_ = 0;
  std::map<std::string, std::vector<Lit>> sigma_, concepts_, roles_, individuals_;
  std::unordered_map<Key, Lit, KeyHash> memo_;
};

std::optional<StandpointStructure> solve_at(const Signature& sig, const KnowledgeBase& kb,
                                            const Axiom* refuted, std::size_t n, std::size_t p,
                                            const SearchOptions& opt) {
  Grounding g(sig, n, p, opt);
  for (const auto& a : kb.axioms()) g.require(a, true);
  if (refuted) g.require(*refuted, false);
  auto d = g.solve();
  if (d) {
    bool ok = satisfies(*d, kb) && (!refuted || !satisfies(*d, *refuted));
    if (!ok) throw std::logic_error("oracle grounding produced a structure that fails the direct check");
  }
  return d;
}

std::optional<StandpointStructure> search(const KnowledgeBase& kb, const Axiom* refuted, std::size_t max_domain,
                                          std::size_t max_precs, const SearchOptions& opt) {
  if (max_domain == 0 || max_precs == 0) return std::nullopt;
  KnowledgeBase vocab = kb;
  if (refuted) vocab.add(*refuted);
  const Signature sig = signature(vocab);
  // Satisfiability is monotone in both bounds (duplicate an element or a
  // precisification), so the largest grounding decides existence.
  auto top = solve_at(sig, kb, refuted, max_domain, max_precs, opt);
  if (!top || !opt.minimal) return top;
  for (std::size_t n = 1; n <= max_domain; ++n)
    for (std::size_t p = 1; p <= max_precs; ++p) {
      if (n == max_domain && p == max_precs) return top;
      if (auto d = solve_at(sig, kb, refuted, n, p, opt)) return d;
    }
  return top;
}

}  // namespace

std::optional<StandpointStructure> search_model(const KnowledgeBase& kb, std::size_t max_domain,
                                                std::size_t max_precisifications, const SearchOptions& options) {
  return search(kb, nullptr, max_domain, max_precisifications, options);
}

std::optional<StandpointStructure> search_countermodel(const KnowledgeBase& kb, const Axiom& axiom,
                                                       std::size_t max_domain, std::size_t max_precisifications,
                                                       const SearchOptions& options) {
  return search(kb, &axiom, max_domain, max_precisifications, options);
}

}  // namespace sel
