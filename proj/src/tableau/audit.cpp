// Brute-force rule applicability, written directly against the rule
// conditions without the engine's worklists or indexes.
#include "sel/tableau.hpp"

namespace sel::tableau {
namespace {

using FK = Symbols::FormulaInfo::Kind;
using K = ConceptTerm::Kind;

bool has_tag(const VarConstraints& v, const Tag& t) {
  switch (t.kind) {
    case Tag::Kind::Concept:
      return v.concepts.test(t.index);
    case Tag::Kind::Individual:
      return v.individuals.test(t.index);
    case Tag::Kind::Formula:
      return v.formulas.test(t.index);
    case Tag::Kind::Standpoint:
      return v.standpoints.test(t.index);
  }
  return false;
}

bool some_var_has(const Element& el, const Tag& t) {
  for (const auto& v : el.vars)
    if (has_tag(v, t)) return true;
  return false;
}

std::optional<Rule> scan_ll(const CompletionGraph& g) {
  const Symbols& sym = g.symbols();
  for (const Element& el : g.elements()) {
    for (std::uint32_t f = 0; f < sym.formulas.size(); ++f) {
      const auto& info = sym.formulas[f];
      if (info.kind != FK::Sharpening || !some_var_has(el, {Tag::Kind::Formula, f})) continue;
      for (const auto& v : el.vars)
        if (v.standpoints.test(info.a) && !v.standpoints.test(info.b)) return Rule::Sharpen;
    }
  }
  return std::nullopt;
}

std::optional<Rule> scan_lc(const CompletionGraph& g) {
  const Symbols& sym = g.symbols();
  for (const Element& el : g.elements()) {
    for (const auto& v : el.vars) {
      for (std::uint32_t c = 0; c < sym.concepts.size(); ++c) {
        const auto& info = sym.concepts[c];
        if (info.term.is(K::And) && v.concepts.test(info.left) && v.concepts.test(info.right) &&
            !v.concepts.test(c))
          return Rule::Conjoin;
        if (!v.concepts.test(c)) continue;
        if (info.term.is(K::Box)) {
          for (const auto& w : el.vars)
            if (w.standpoints.test(info.name) && !w.concepts.test(info.left)) return Rule::Box;
        }
        if (info.term.is(K::Diamond)) {
          bool witnessed = false;
          for (const auto& w : el.vars)
            witnessed = witnessed || (w.standpoints.test(info.name) && w.concepts.test(info.left));
          if (!witnessed) return Rule::Diamond;
        }
      }
      for (std::uint32_t f = 0; f < sym.formulas.size(); ++f) {
        if (!v.formulas.test(f)) continue;
        const auto& info = sym.formulas[f];
        switch (info.kind) {
          case FK::Gci:
            if (v.concepts.test(info.a) && !v.concepts.test(info.b)) return Rule::Subsume;
            break;
          case FK::ConceptAssertion:
            if (v.individuals.test(info.b) && !v.concepts.test(info.a)) return Rule::Assert;
            break;
          case FK::Box:
            for (const auto& w : el.vars)
              if (w.standpoints.test(info.a) && !w.formulas.test(info.b)) return Rule::Box;
            [[fallthrough]];
          case FK::Sharpening:
            for (const auto& w : el.vars)
              if (!w.formulas.test(f)) return Rule::Global;
            break;
          default:
            break;
        }
      }
      for (std::uint32_t a = 0; a < sym.individuals.size(); ++a) {
        if (!v.individuals.test(a)) continue;
        for (const auto& w : el.vars)
          if (!w.individuals.test(a)) return Rule::Global;
      }
    }
  }
  return std::nullopt;
}

bool has_quasi_role(const CompletionGraph& g, const QuasiRole& q) {
  for (const auto& r : g.quasi_roles())
    if (r == q) return true;
  return false;
}

// Elements carrying some variable tagged with individual a.
std::vector<ElemId> holders(const CompletionGraph& g, std::uint32_t a) {
  std::vector<ElemId> out;
  for (ElemId e = 0; e < g.elements().size(); ++e)
    if (some_var_has(g.element(e), {Tag::Kind::Individual, a})) out.push_back(e);
  return out;
}

// (target element, target variable) pairs labelled (C, st) and allowed by the
// side condition for source (e, x).
std::vector<std::pair<ElemId, VarId>> candidates(const CompletionGraph& g, ElemId e, VarId x,
                                                 std::uint32_t c, const Bitset& st) {
  std::vector<std::pair<ElemId, VarId>> out;
  for (ElemId t = 0; t < g.elements().size(); ++t)
    for (const Label& l : g.element(t).labels)
      if (l.term == c && l.standpoints == st && (t != e || l.var == x)) out.emplace_back(t, l.var);
  return out;
}

std::optional<Rule> scan_global(const CompletionGraph& g, bool generating) {
  const Symbols& sym = g.symbols();
  if (!generating) {
    for (const QuasiRole& q : g.quasi_roles()) {
      const auto* src = g.element(q.from).find(q.from_var);
      const auto* dst = g.element(q.to).find(q.to_var);
      for (std::uint32_t c = 0; c < sym.concepts.size(); ++c) {
        const auto& info = sym.concepts[c];
        if (info.term.is(K::Exists) && info.name == q.role && dst->concepts.test(info.left) &&
            !src->concepts.test(c))
          return Rule::Down;
      }
    }
  }
  for (ElemId e = 0; e < g.elements().size(); ++e) {
    for (const auto& v : g.element(e).vars) {
      if (!generating) {
        for (std::uint32_t f = 0; f < sym.formulas.size(); ++f) {
          const auto& info = sym.formulas[f];
          if (info.kind != FK::RoleAssertion || !v.formulas.test(f)) continue;
          if (v.individuals.test(info.b))
            for (ElemId t : holders(g, info.c))
              if (!has_quasi_role(g, {e, v.id, t, v.id, info.a})) return Rule::RoleForward;
          if (v.individuals.test(info.c))
            for (ElemId t : holders(g, info.b))
              if (!has_quasi_role(g, {t, v.id, e, v.id, info.a})) return Rule::RoleBackward;
        }
      }
      for (std::uint32_t c = 0; c < sym.concepts.size(); ++c) {
        const auto& info = sym.concepts[c];
        if (!info.term.is(K::Exists) || !v.concepts.test(c)) continue;
        const auto cands = candidates(g, e, v.id, info.left, v.standpoints);
        bool linked = false;
        for (const auto& [t, tv] : cands) linked = linked || has_quasi_role(g, {e, v.id, t, tv, info.name});
        if (linked) continue;
        if (!generating && !cands.empty()) return Rule::ExistsReuse;
        if (generating && cands.empty()) return Rule::ExistsGen;
      }
    }
  }
  return std::nullopt;
}

}  // namespace

std::optional<Rule> find_applicable(const CompletionGraph& g, RuleClass up_to) {
  if (auto r = scan_ll(g)) return r;
  if (up_to == RuleClass::LL) return std::nullopt;
  if (auto r = scan_lc(g)) return r;
  if (up_to == RuleClass::LC) return std::nullopt;
  if (auto r = scan_global(g, false)) return r;
  if (up_to == RuleClass::GN) return std::nullopt;
  return scan_global(g, true);
}

}  // namespace sel::tableau
