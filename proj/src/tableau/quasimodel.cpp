#include "sel/quasimodel.hpp"

#include <array>
#include <functional>
#include <map>
#include <set>

namespace sel::tableau {
namespace {

bool all_tagged(const Element& el, std::uint32_t a) {
  if (el.vars.empty()) return false;
  for (const auto& v : el.vars)
    if (!v.individuals.test(a)) return false;
  return true;
}

// Depth-first search for runs inside one standpoint-signature class.
class RunSearch {
 public:
  RunSearch(const CompletionGraph& g, Bitset signature, std::size_t node_limit)
      : g_(g), st_(std::move(signature)), assign_(g.elements().size(), kNone), nodes_left_(node_limit) {}

  // Calls `found` for each run; `found` returns false to stop.
  template <typename F>
  bool search(F&& found) {
    return dfs(found);
  }

  bool fix(ElemId e, VarId v) {
    return assign(e, v);
  }

  bool exhausted() const { return nodes_left_ == 0; }

 private:
  bool assign(ElemId e, VarId v) {
    std::vector<std::pair<ElemId, VarId>> queue{{e, v}};
    for (std::size_t i = 0; i < queue.size(); ++i) {
      const auto [x, xv] = queue[i];
      if (assign_[x] != kNone) {
        if (assign_[x] != xv) return false;
        continue;
      }
      const Element& el = g_.element(x);
      const VarConstraints* vc = el.find(xv);
      if (!vc || !(vc->standpoints == st_)) return false;
      assign_[x] = xv;
      trail_.push_back(x);
      for (std::uint32_t qi : el.outgoing[el.local.at(xv)]) {
        const QuasiRole& q = g_.quasi_roles()[qi];
        queue.emplace_back(q.to, q.to_var);
      }
    }
    return true;
  }

  void undo(std::size_t mark) {
    while (trail_.size() > mark) {
      assign_[trail_.back()] = kNone;
      trail_.pop_back();
    }
  }

  template <typename F>
  bool dfs(F& found) {
    if (nodes_left_ == 0) return false;
    --nodes_left_;
    ElemId next = kNone;
    for (ElemId e = 0; e < assign_.size(); ++e) {
      if (assign_[e] == kNone) {
        next = e;
        break;
      }
    }
    if (next == kNone) {
      Run r = assign_;
      if (is_run(g_, r)) return found(r);
      return true;
    }
    for (const auto& v : g_.element(next).vars) {
      if (!(v.standpoints == st_)) continue;
      const std::size_t mark = trail_.size();
      if (assign(next, v.id) && !dfs(found)) {
        undo(mark);
        return false;
      }
      undo(mark);
    }
    return true;
  }

  const CompletionGraph& g_;
  Bitset st_;
  std::vector<VarId> assign_;
  std::vector<ElemId> trail_;
  std::size_t nodes_left_;
};

std::set<Bitset> signatures(const CompletionGraph& g) {
  std::set<Bitset> out;
  for (const auto& el : g.elements())
    for (const auto& v : el.vars) out.insert(v.standpoints);
  return out;
}

constexpr std::size_t kNodeLimit = 1'000'000;

}  // namespace

bool check_coherence(const CompletionGraph& g) {
  const Symbols& sym = g.symbols();
  for (std::uint32_t a = 0; a < sym.individuals.size(); ++a) {
    std::size_t holders = 0;
    for (const auto& el : g.elements()) holders += all_tagged(el, a);
    if (holders != 1) return false;
  }
  std::optional<std::set<Bitset>> first;
  std::map<Bitset, Bitset> formulas;
  for (const auto& el : g.elements()) {
    std::set<Bitset> mine;
    for (const auto& v : el.vars) {
      mine.insert(v.standpoints);
      auto [it, fresh] = formulas.emplace(v.standpoints, v.formulas);
      if (!fresh && !(it->second == v.formulas)) return false;
    }
    if (!first)
      first = std::move(mine);
    else if (*first != mine)
      return false;
  }
  return true;
}

bool is_run(const CompletionGraph& g, const Run& r) {
  const auto& elems = g.elements();
  if (r.size() != elems.size() || elems.empty()) return false;
  std::vector<const VarConstraints*> chosen;
  for (ElemId e = 0; e < elems.size(); ++e) {
    const VarConstraints* v = elems[e].find(r[e]);
    if (!v) return false;
    chosen.push_back(v);
  }
  // C1
  for (const auto* v : chosen)
    if (!(v->standpoints == chosen[0]->standpoints)) return false;
  // C2
  for (const QuasiRole& q : g.quasi_roles())
    if (r[q.from] == q.from_var && r[q.to] != q.to_var) return false;
  // C3
  const Symbols& sym = g.symbols();
  for (ElemId e = 0; e < elems.size(); ++e) {
    bool ok = true;
    chosen[e]->concepts.for_each([&](std::size_t c) {
      const auto& info = sym.concepts[c];
      if (!ok || !info.term.is(ConceptTerm::Kind::Exists)) return;
      bool witnessed = false;
      for (std::uint32_t qi : elems[e].outgoing[elems[e].local.at(r[e])]) {
        const QuasiRole& q = g.quasi_roles()[qi];
        if (q.role == info.name && r[q.to] == q.to_var && chosen[q.to]->concepts.test(info.left)) {
          witnessed = true;
          break;
        }
      }
      ok = witnessed;
    });
    if (!ok) return false;
  }
  return true;
}

RunSet enumerate_runs(const CompletionGraph& g, std::size_t cap) {
  RunSet out;
  for (const Bitset& st : signatures(g)) {
    RunSearch search(g, st, kNodeLimit);
    const bool complete = search.search([&](const Run& r) {
      if (out.runs.size() >= cap) {
        out.capped = true;
        return false;
      }
      out.runs.push_back(r);
      return true;
    });
    if (!complete || search.exhausted()) {
      out.capped = true;
      break;
    }
  }
  return out;
}

RunSet covering_runs(const CompletionGraph& g, std::size_t cap) {
  RunSet out;
  std::set<Run> seen;
  const auto& elems = g.elements();
  for (ElemId e = 0; e < elems.size(); ++e) {
    for (const auto& v : elems[e].vars) {
      bool covered = false;
      for (const Run& r : out.runs) covered = covered || r[e] == v.id;
      if (covered) continue;
      RunSearch search(g, v.standpoints, kNodeLimit);
      std::optional<Run> hit;
      if (search.fix(e, v.id)) {
        search.search([&](const Run& r) {
          hit = r;
          return false;
        });
      }
      if (!hit || out.runs.size() >= cap) {
        out.capped = true;
        return out;
      }
      if (seen.insert(*hit).second) out.runs.push_back(*hit);
    }
  }
  return out;
}


namespace {

// Assignments of one variable of type `st` to every individual's element,
// closed under the quasi-roles between individuals; the returned set puts
// every such variable of every individual on some assignment. nullopt if
// some variable has no consistent assignment.
std::optional<std::vector<Run>> individual_assignments(const CompletionGraph& g, const Bitset& st,
                                                       const std::vector<ElemId>& individuals,
                                                       const std::vector<char>& is_individual) {
  std::vector<Run> out;
  Run assign(g.elements().size(), kNone);
  std::vector<ElemId> trail;

  auto place = [&](ElemId e, VarId v) {
    std::vector<std::pair<ElemId, VarId>> queue{{e, v}};
    for (std::size_t i = 0; i < queue.size(); ++i) {
      const auto [x, xv] = queue[i];
      if (assign[x] != kNone) {
        if (assign[x] != xv) return false;
        continue;
      }
      const Element& el = g.element(x);
      const VarConstraints* vc = el.find(xv);
      if (!vc || !(vc->standpoints == st)) return false;
      assign[x] = xv;
      trail.push_back(x);
      for (std::uint32_t qi : el.outgoing[el.local.at(xv)]) {
        const QuasiRole& q = g.quasi_roles()[qi];
        if (is_individual[q.to]) queue.emplace_back(q.to, q.to_var);
      }
    }
    return true;
  };
  auto undo = [&](std::size_t mark) {
    while (trail.size() > mark) {
      assign[trail.back()] = kNone;
      trail.pop_back();
    }
  };
  std::function<bool(std::size_t)> complete = [&](std::size_t i) {
    if (i == individuals.size()) return true;
    const ElemId e = individuals[i];
    if (assign[e] != kNone) return complete(i + 1);
    for (const auto& v : g.element(e).vars) {
      const std::size_t mark = trail.size();
      if (place(e, v.id) && complete(i + 1)) return true;
      undo(mark);
    }
    return false;
  };

  for (ElemId e : individuals) {
    for (const auto& v : g.element(e).vars) {
      if (!(v.standpoints == st)) continue;
      bool covered = false;
      for (const Run& r : out) covered = covered || r[e] == v.id;
      if (covered) continue;
      undo(0);
      if (!place(e, v.id) || !complete(0)) return std::nullopt;
      out.push_back(assign);
    }
  }
  if (out.empty()) out.push_back(assign);
  return out;
}

}  // namespace

Extraction extract_model(const CompletionGraph& g, std::size_t cap, const Signature* vocabulary) {
  Extraction out;
  const Symbols& sym = g.symbols();
  const auto& elems = g.elements();

  std::vector<char> is_individual(elems.size(), 0);
  std::vector<ElemId> individuals;
  for (std::uint32_t a = 0; a < sym.individuals.size(); ++a) {
    const ElemId e = g.individual_element(a);
    if (!is_individual[e]) individuals.push_back(e);
    is_individual[e] = 1;
  }

  // Domain: individuals once; copy j of any other element ε stands for its
  // j-th variable.
  std::vector<std::size_t> base(elems.size());
  std::size_t n = 0;
  for (ElemId e = 0; e < elems.size(); ++e) {
    base[e] = n;
    n += is_individual[e] ? 1 : elems[e].vars.size();
  }

  // Precisification (t, i, α): copy j of ε takes the ((i + j) mod m)-th of
  // ε's m variables of type t, the individuals follow α.
  struct Precisification {
    Bitset type;
    Run vars_of_copy;  // indexed by domain element
  };
  std::vector<Precisification> pis;
  for (const Bitset& t : signatures(g)) {
    std::vector<std::vector<VarId>> typed(elems.size());
    std::size_t rounds = 1;
    for (ElemId e = 0; e < elems.size(); ++e) {
      for (const auto& v : elems[e].vars)
        if (v.standpoints == t) typed[e].push_back(v.id);
      if (typed[e].empty()) return out;  // incoherent graph
      if (!is_individual[e]) rounds = std::max(rounds, typed[e].size());
    }
    const auto alphas = individual_assignments(g, t, individuals, is_individual);
    if (!alphas) return out;
    rounds = std::max(rounds, alphas->size());
    for (std::size_t i = 0; i < rounds; ++i) {
      if (pis.size() >= cap) {
        out.capped = true;
        return out;
      }
      Precisification p{t, Run(n, kNone)};
      const Run& alpha = (*alphas)[i % alphas->size()];
      for (ElemId e = 0; e < elems.size(); ++e) {
        if (is_individual[e]) {
          p.vars_of_copy[base[e]] = alpha[e];
          continue;
        }
        for (std::size_t j = 0; j < elems[e].vars.size(); ++j)
          p.vars_of_copy[base[e] + j] = typed[e][(i + j) % typed[e].size()];
      }
      pis.push_back(std::move(p));
    }
  }

  StandpointStructure d;
  d.domain = n;
  d.precisifications = pis.size();
  d.gamma.resize(pis.size());
  for (std::uint32_t s = 0; s < sym.standpoints.size(); ++s) {
    Bitset members(d.precisifications);
    for (std::size_t pi = 0; pi < pis.size(); ++pi)
      if (pis[pi].type.test(s)) members.set(pi);
    d.sigma[sym.standpoints[s]] = members;
  }

  std::vector<ElemId> owner(n);
  for (ElemId e = 0; e < elems.size(); ++e)
    for (std::size_t j = 0; j < (is_individual[e] ? 1 : elems[e].vars.size()); ++j) owner[base[e] + j] = e;

  for (std::size_t pi = 0; pi < pis.size(); ++pi) {
    const Run& h = pis[pi].vars_of_copy;
    Interpretation& in = d.gamma[pi];
    for (std::uint32_t c = 0; c < sym.concepts.size(); ++c) {
      if (!sym.concepts[c].term.is(ConceptTerm::Kind::Atom)) continue;
      Bitset ext(n);
      for (std::size_t x = 0; x < n; ++x)
        if (elems[owner[x]].find(h[x])->concepts.test(c)) ext.set(x);
      in.concepts[sym.concepts[c].term.name()] = ext;
    }
    for (const auto& r : sym.roles) in.roles[r] = std::vector<Bitset>(n, Bitset(n));
    // An edge wherever a quasi-role joins the variables two domain elements take.
    std::vector<std::vector<std::size_t>> in_state(g.variables().size());
    for (std::size_t x = 0; x < n; ++x) in_state[h[x]].push_back(x);
    for (const QuasiRole& q : g.quasi_roles()) {
      for (std::size_t x : in_state[q.from_var]) {
        if (owner[x] != q.from) continue;
        for (std::size_t y : in_state[q.to_var])
          if (owner[y] == q.to) in.roles[sym.roles[q.role]][x].set(y);
      }
    }
  }
  for (std::uint32_t a = 0; a < sym.individuals.size(); ++a)
    d.individuals[sym.individuals[a]] = base[g.individual_element(a)];

  if (vocabulary) {
    for (const auto& s : vocabulary->standpoints) {
      if (d.sigma.count(s)) continue;
      Bitset all(d.precisifications);
      all.set_all();
      d.sigma[s] = all;
    }
    for (auto& in : d.gamma) {
      for (const auto& c : vocabulary->concept_names) in.concepts.emplace(c, Bitset(d.domain));
      for (const auto& r : vocabulary->roles) in.roles.emplace(r, std::vector<Bitset>(d.domain, Bitset(d.domain)));
    }
    for (const auto& a : vocabulary->individuals) d.individuals.emplace(a, 0);
  }
  out.model = std::move(d);
  return out;
}

}  // namespace sel::tableau
