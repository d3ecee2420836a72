#include "sel/tableau.hpp"

namespace sel::tableau {

Symbols::Symbols(const KnowledgeBase& kb) {
  const Signature sig = signature(kb);
  kb_size = sig.size;
  for (const auto& s : sig.standpoints) intern_standpoint(s);
  universal = *standpoint_index(kUniversal);
  for (const auto& a : sig.individuals) intern_individual(a);
  for (const auto& r : sig.roles) intern_role(r);
  top = intern(ConceptTerm::top());
  bot = intern(ConceptTerm::bot());
  for (const auto& c : sig.concept_closure) intern(c);
  for (const auto& f : sig.subformulas) intern(f);
  for (const auto& a : kb.axioms()) {
    std::visit([&](const auto& x) { kb_formulas.push_back(*formula_index(Formula{x})); }, a);
  }

  conj_partners.resize(concepts.size());
  gci_by_lhs.resize(concepts.size());
  exists_by_role.resize(roles.size());
  sharpen_up.resize(standpoints.size());
  assertions_by_ind.resize(individuals.size());
  role_assertions_by_ind.resize(individuals.size());

  for (std::uint32_t c = 0; c < concepts.size(); ++c) {
    const auto& info = concepts[c];
    if (info.term.is(ConceptTerm::Kind::And)) {
      conj_partners[info.left].emplace_back(info.right, c);
      if (info.left != info.right) conj_partners[info.right].emplace_back(info.left, c);
    } else if (info.term.is(ConceptTerm::Kind::Exists)) {
      exists_by_role[info.name].emplace_back(info.left, c);
    }
  }
  for (std::uint32_t f = 0; f < formulas.size(); ++f) {
    const auto& info = formulas[f];
    switch (info.kind) {
      case FormulaInfo::Kind::Sharpening:
        sharpen_up[info.a].emplace_back(info.b, f);
        break;
      case FormulaInfo::Kind::Gci:
        gci_by_lhs[info.a].emplace_back(f, info.b);
        break;
      case FormulaInfo::Kind::ConceptAssertion:
        assertions_by_ind[info.b].emplace_back(f, info.a);
        break;
      case FormulaInfo::Kind::RoleAssertion:
        role_assertions_by_ind[info.b].emplace_back(f, true);
        role_assertions_by_ind[info.c].emplace_back(f, false);
        break;
      case FormulaInfo::Kind::Box:
        break;
    }
  }
}

std::uint32_t Symbols::intern_standpoint(const std::string& s) {
  auto [it, fresh] = standpoint_ids_.emplace(s, standpoints.size());
  if (fresh) standpoints.push_back(s);
  return it->second;
}

std::uint32_t Symbols::intern_individual(const std::string& a) {
  auto [it, fresh] = individual_ids_.emplace(a, individuals.size());
  if (fresh) individuals.push_back(a);
  return it->second;
}

std::uint32_t Symbols::intern_role(const std::string& r) {
  auto [it, fresh] = role_ids_.emplace(r, roles.size());
  if (fresh) roles.push_back(r);
  return it->second;
}

std::uint32_t Symbols::intern(const ConceptTerm& c) {
  if (auto it = concept_ids_.find(c); it != concept_ids_.end()) return it->second;
  ConceptInfo info{c};
  using K = ConceptTerm::Kind;
  switch (c.kind()) {
    case K::And:
      info.left = intern(c.left());
      info.right = intern(c.right());
      break;
    case K::Exists:
      info.left = intern(c.filler());
      info.name = intern_role(c.name());
      break;
    case K::Box:
    case K::Diamond:
      info.left = intern(c.inner());
      info.name = intern_standpoint(c.name());
      break;
    default:
      break;
  }
  const auto id = static_cast<std::uint32_t>(concepts.size());
  concepts.push_back(std::move(info));
  concept_ids_.emplace(c, id);
  if (c.is(K::Exists))
    exists_ids_.emplace(std::uint64_t{concepts[id].name} << 32 | concepts[id].left, id);
  return id;
}

std::uint32_t Symbols::intern(const Formula& f) {
  if (auto it = formula_ids_.find(f); it != formula_ids_.end()) return it->second;
  using FK = FormulaInfo::Kind;
  FormulaInfo info{FK::Sharpening, f};
  if (const auto* s = std::get_if<Sharpening>(&f)) {
    info.a = intern_standpoint(s->lower);
    info.b = intern_standpoint(s->upper);
  } else if (const auto* m = std::get_if<ModalAxiom>(&f)) {
    info.kind = FK::Box;
    info.a = intern_standpoint(m->standpoint);
    info.b = std::visit([&](const auto& x) { return intern(Formula{x}); }, m->body);
  } else if (const auto* g = std::get_if<Gci>(&f)) {
    info.kind = FK::Gci;
    info.a = intern(g->lhs);
    info.b = intern(g->rhs);
  } else if (const auto* ca = std::get_if<ConceptAssertion>(&f)) {
    info.kind = FK::ConceptAssertion;
    info.a = intern(ca->term);
    info.b = intern_individual(ca->individual);
  } else {
    const auto& ra = std::get<RoleAssertion>(f);
    info.kind = FK::RoleAssertion;
    info.a = intern_role(ra.role);
    info.b = intern_individual(ra.subject);
    info.c = intern_individual(ra.object);
  }
  const auto id = static_cast<std::uint32_t>(formulas.size());
  formulas.push_back(std::move(info));
  formula_ids_.emplace(f, id);
  return id;
}

std::optional<std::uint32_t> Symbols::concept_index(const ConceptTerm& c) const {
  auto it = concept_ids_.find(c);
  if (it == concept_ids_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::uint32_t> Symbols::formula_index(const Formula& f) const {
  auto it = formula_ids_.find(f);
  if (it == formula_ids_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::uint32_t> Symbols::standpoint_index(const std::string& s) const {
  auto it = standpoint_ids_.find(s);
  if (it == standpoint_ids_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::uint32_t> Symbols::individual_index(const std::string& a) const {
  auto it = individual_ids_.find(a);
  if (it == individual_ids_.end()) return std::nullopt;
  return it->second;
}

std::uint32_t Symbols::exists_index(std::uint32_t role, std::uint32_t filler) const {
  auto it = exists_ids_.find(std::uint64_t{role} << 32 | filler);
  return it == exists_ids_.end() ? kNone : it->second;
}

bool Symbols::is_global_formula(std::uint32_t f) const {
  const auto k = formulas[f].kind;
  return k == FormulaInfo::Kind::Sharpening || k == FormulaInfo::Kind::Box;
}

}  // namespace sel::tableau
