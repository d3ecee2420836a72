#include "sel/normalizer.hpp"

#include <deque>
#include <stdexcept>

namespace sel {
namespace {

using K = ConceptTerm::Kind;
using Axioms = std::vector<Axiom>;

bool basic(const ConceptTerm& c) { return c.is_basic(); }
bool name_or_bot(const ConceptTerm& c) { return c.is(K::Atom) || c.is(K::Bot); }

std::size_t lhs_cost(const ConceptTerm& c) {
  switch (c.kind()) {
    case K::Atom:
    case K::Top:
      return 0;
    case K::Bot:
      return 1;
    case K::Exists:
      return basic(c.filler()) ? 0 : 1 + lhs_cost(c.filler());
    case K::And:
      return !basic(c.left()) + !basic(c.right()) + lhs_cost(c.left()) + lhs_cost(c.right());
    case K::Diamond:
      return 1 + lhs_cost(c.inner());
    case K::Box:
      return 5 + lhs_cost(c.inner());
  }
  return 0;
}

std::size_t rhs_cost(const ConceptTerm& c) {
  switch (c.kind()) {
    case K::Atom:
    case K::Bot:
      return 0;
    case K::Top:
      return 1;
    case K::Exists:
    case K::Box:
    case K::Diamond:
      return name_or_bot(c.inner()) ? 0 : 1 + rhs_cost(c.inner());
    case K::And:
      return 1 + rhs_cost(c.left()) + rhs_cost(c.right());
  }
  return 0;
}

std::size_t body_cost(const AxiomBody& b) {
  if (const auto* g = std::get_if<Gci>(&b)) return lhs_cost(g->lhs) + rhs_cost(g->rhs);
  if (const auto* c = std::get_if<ConceptAssertion>(&b))
    return c->term.is(K::Atom) ? 0 : 1 + rhs_cost(c->term);
  return 0;
}

ConceptTerm fresh_atom(FreshNames& fresh) { return ConceptTerm::atom(fresh.concept_name()); }

const Gci* box_gci(const Axiom& a, const ModalAxiom*& m) {
  m = std::get_if<ModalAxiom>(&a);
  if (!m || m->mode != Mode::Box) return nullptr;
  return std::get_if<Gci>(&m->body);
}

}  // namespace

std::size_t normalization_measure(const Axiom& axiom) {
  const auto* m = std::get_if<ModalAxiom>(&axiom);
  if (!m) return 0;
  return (m->mode == Mode::Diamond ? 1 : 0) + body_cost(m->body);
}

std::size_t normalization_measure(const KnowledgeBase& kb) {
  std::size_t n = 0;
  for (const auto& a : kb.axioms()) n += normalization_measure(a);
  return n;
}

std::optional<Axioms> apply_rule(int rule, const Axiom& axiom, FreshNames& fresh) {
  const ModalAxiom* m = nullptr;
  if (rule >= 11 && rule <= 13) {
    m = std::get_if<ModalAxiom>(&axiom);
    if (!m || m->mode != Mode::Diamond) return std::nullopt;
    const bool match = (rule == 11 && m->is_concept_assertion()) || (rule == 12 && m->is_role_assertion()) ||
                       (rule == 13 && m->is_gci());
    if (!match) return std::nullopt;
    const std::string v = fresh.standpoint();
    return Axioms{Sharpening{v, m->standpoint}, box(v, m->body)};
  }
  if (rule == 14) {
    m = std::get_if<ModalAxiom>(&axiom);
    if (!m || m->mode != Mode::Box || !m->is_concept_assertion()) return std::nullopt;
    const auto& ca = std::get<ConceptAssertion>(m->body);
    if (ca.term.is(K::Atom)) return std::nullopt;
    const ConceptTerm a = fresh_atom(fresh);
    return Axioms{box(m->standpoint, ConceptAssertion{a, ca.individual}), box(m->standpoint, Gci{a, ca.term})};
  }

  const Gci* g = box_gci(axiom, m);
  if (!g) return std::nullopt;
  const std::string& s = m->standpoint;
  const ConceptTerm& lhs = g->lhs;
  const ConceptTerm& rhs = g->rhs;
  switch (rule) {
    case 15: {
      if (!rhs.is(K::Exists) || name_or_bot(rhs.filler())) return std::nullopt;
      const ConceptTerm a = fresh_atom(fresh);
      return Axioms{box(s, Gci{lhs, ConceptTerm::exists(rhs.name(), a)}), box(s, Gci{a, rhs.filler()})};
    }
    case 16: {
      if (!rhs.is(K::And)) return std::nullopt;
      const ConceptTerm a = fresh_atom(fresh);
      return Axioms{box(s, Gci{lhs, a}), box(s, Gci{a, rhs.left()}), box(s, Gci{a, rhs.right()})};
    }
    case 17: {
      if (!rhs.is_modal() || name_or_bot(rhs.inner())) return std::nullopt;
      const ConceptTerm a = fresh_atom(fresh);
      const Mode mode = rhs.is(K::Box) ? Mode::Box : Mode::Diamond;
      // A is read at u-precisifications, so its definition lives under u.
      return Axioms{box(s, Gci{lhs, ConceptTerm::modal(mode, rhs.name(), a)}), box(rhs.name(), Gci{a, rhs.inner()})};
    }
    case 18:
      if (rhs.is(K::Top) || lhs.is(K::Bot)) return Axioms{};
      return std::nullopt;
    case 19: {
      if (!lhs.is(K::Exists) || basic(lhs.filler())) return std::nullopt;
      const ConceptTerm a = fresh_atom(fresh);
      return Axioms{box(s, Gci{lhs.filler(), a}), box(s, Gci{ConceptTerm::exists(lhs.name(), a), rhs})};
    }
    case 20: {
      if (!lhs.is(K::And)) return std::nullopt;
      const bool left = !basic(lhs.left());
      if (!left && basic(lhs.right())) return std::nullopt;
      const ConceptTerm& complex = left ? lhs.left() : lhs.right();
      const ConceptTerm& other = left ? lhs.right() : lhs.left();
      const ConceptTerm a = fresh_atom(fresh);
      const ConceptTerm rest = left ? ConceptTerm::conj(a, other) : ConceptTerm::conj(other, a);
      return Axioms{box(s, Gci{complex, a}), box(s, Gci{rest, rhs})};
    }
    case 21: {
      if (!lhs.is(K::Diamond)) return std::nullopt;
      const ConceptTerm a = fresh_atom(fresh);
      return Axioms{box(lhs.name(), Gci{lhs.inner(), ConceptTerm::box(kUniversal, a)}), box(s, Gci{a, rhs})};
    }
    case 22: {
      if (!lhs.is(K::Box)) return std::nullopt;
      const std::string& u = lhs.name();
      const std::string v0 = fresh.standpoint();
      const std::string v1 = fresh.standpoint();
      const ConceptTerm a = fresh_atom(fresh);
      return Axioms{Sharpening{v0, u}, Sharpening{v1, u}, box(u, Gci{lhs.inner(), a}),
                    box(s, Gci{ConceptTerm::conj(ConceptTerm::diamond(v0, a), ConceptTerm::diamond(v1, a)), rhs})};
    }
    default:
      return std::nullopt;
  }
}

NormalizationResult normalize(const KnowledgeBase& kb) {
  FreshNames fresh(signature(kb).all_names());
  return normalize(kb, fresh);
}

NormalizationResult normalize(const KnowledgeBase& kb, FreshNames& fresh) {
  NormalizationResult out;
  std::deque<Axiom> work;
  for (const auto& a : kb.axioms()) work.push_back(a);
  while (!work.empty()) {
    Axiom a = std::move(work.front());
    work.pop_front();
    if (is_normal_form(a)) {
      out.kb.add(a);
      continue;
    }
    std::optional<Axioms> replacement;
    int rule = kFirstNormalizationRule;
    for (; rule <= kLastNormalizationRule && !replacement; ++rule) replacement = apply_rule(rule, a, fresh);
    if (!replacement) throw std::logic_error("no normalization rule matches a non-normal axiom");
    --rule;
    std::size_t after = 0;
    for (const auto& r : *replacement) after += normalization_measure(r);
    if (after >= normalization_measure(a)) throw std::logic_error("normalization measure did not decrease");

    const auto before = signature(KnowledgeBase{a});
    for (const auto& r : *replacement) {
      const auto sig = signature(KnowledgeBase{r});
      for (const auto& c : sig.concept_names)
        if (!before.concept_names.count(c) && c.starts_with(kReservedPrefix)) out.introduced_concepts.insert(c);
      for (const auto& st : sig.standpoints)
        if (!before.standpoints.count(st) && st.starts_with(kReservedPrefix)) out.introduced_standpoints.insert(st);
      work.push_back(r);
    }
    out.trace.push_back({rule, std::move(a), std::move(*replacement)});
  }
  return out;
}

}  // namespace sel
