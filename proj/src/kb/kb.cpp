#include "sel/kb.hpp"

namespace sel {

ModalAxiom box(std::string standpoint, AxiomBody body) {
  return ModalAxiom{Mode::Box, std::move(standpoint), std::move(body)};
}

ModalAxiom diamond(std::string standpoint, AxiomBody body) {
  return ModalAxiom{Mode::Diamond, std::move(standpoint), std::move(body)};
}

ModalAxiom global(AxiomBody body) { return box(kUniversal, std::move(body)); }

KnowledgeBase::KnowledgeBase(std::initializer_list<Axiom> axioms) {
  for (const Axiom& a : axioms) add(a);
}

void KnowledgeBase::add(const Axiom& axiom) {
  if (const auto* s = std::get_if<Sharpening>(&axiom)) {
    sbox_.insert(*s);
    return;
  }
  const auto& m = std::get<ModalAxiom>(axiom);
  (m.is_gci() ? tbox_ : abox_).insert(m);
}

void KnowledgeBase::add(const KnowledgeBase& other) {
  sbox_.insert(other.sbox_.begin(), other.sbox_.end());
  tbox_.insert(other.tbox_.begin(), other.tbox_.end());
  abox_.insert(other.abox_.begin(), other.abox_.end());
}

std::vector<Axiom> KnowledgeBase::axioms() const {
  std::vector<Axiom> out;
  out.reserve(axiom_count());
  for (const auto& s : sbox_) out.emplace_back(s);
  for (const auto& t : tbox_) out.emplace_back(t);
  for (const auto& a : abox_) out.emplace_back(a);
  return out;
}

bool KnowledgeBase::contains(const Axiom& axiom) const {
  if (const auto* s = std::get_if<Sharpening>(&axiom)) return sbox_.count(*s) > 0;
  const auto& m = std::get<ModalAxiom>(axiom);
  return (m.is_gci() ? tbox_ : abox_).count(m) > 0;
}

std::size_t token_size(const ConceptTerm& c) {
  using K = ConceptTerm::Kind;
  switch (c.kind()) {
    case K::Top:
    case K::Bot:
    case K::Atom:
      return 1;
    case K::And:
      return 1 + token_size(c.left()) + token_size(c.right());
    case K::Exists:
    case K::Box:
    case K::Diamond:
      return 2 + token_size(c.inner());
  }
  return 1;
}

namespace {

std::size_t body_size(const AxiomBody& body) {
  if (const auto* g = std::get_if<Gci>(&body)) return token_size(g->lhs) + 1 + token_size(g->rhs);
  if (const auto* c = std::get_if<ConceptAssertion>(&body)) return token_size(c->term) + 1;
  return 3;
}

}  // namespace

std::size_t token_size(const Axiom& a) {
  if (std::holds_alternative<Sharpening>(a)) return 4;
  return 3 + body_size(std::get<ModalAxiom>(a).body);
}

std::size_t token_size(const KnowledgeBase& kb) {
  std::size_t n = 1;
  for (const auto& a : kb.axioms()) n += token_size(a);
  return n;
}

}  // namespace sel
