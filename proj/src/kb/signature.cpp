#include "sel/signature.hpp"

namespace sel {
namespace {

class Collector {
 public:
  explicit Collector(Signature& sig) : sig_(sig) {}

  void collect_concept(const ConceptTerm& c) {
    sig_.concept_closure.insert(c);
    using K = ConceptTerm::Kind;
    switch (c.kind()) {
      case K::Top:
        sig_.basic_concepts.insert(c);
        break;
      case K::Bot:
        break;
      case K::Atom:
        sig_.concept_names.insert(c.name());
        sig_.basic_concepts.insert(c);
        break;
      case K::And:
        collect_concept(c.left());
        collect_concept(c.right());
        break;
      case K::Exists:
        sig_.roles.insert(c.name());
        collect_concept(c.filler());
        break;
      case K::Box:
      case K::Diamond:
        sig_.standpoints.insert(c.name());
        collect_concept(c.inner());
        break;
    }
  }

  void body(const AxiomBody& b) {
    if (const auto* g = std::get_if<Gci>(&b)) {
      collect_concept(g->lhs);
      collect_concept(g->rhs);
      sig_.subformulas.insert(*g);
    } else if (const auto* c = std::get_if<ConceptAssertion>(&b)) {
      collect_concept(c->term);
      sig_.individuals.insert(c->individual);
      sig_.subformulas.insert(*c);
    } else {
      const auto& r = std::get<RoleAssertion>(b);
      sig_.roles.insert(r.role);
      sig_.individuals.insert(r.subject);
      sig_.individuals.insert(r.object);
      sig_.subformulas.insert(r);
    }
  }

  void axiom(const Axiom& a) {
    if (const auto* s = std::get_if<Sharpening>(&a)) {
      sig_.standpoints.insert(s->lower);
      sig_.standpoints.insert(s->upper);
      sig_.subformulas.insert(*s);
      return;
    }
    const auto& m = std::get<ModalAxiom>(a);
    sig_.standpoints.insert(m.standpoint);
    sig_.subformulas.insert(m);
    body(m.body);
  }

 private:
  Signature& sig_;
};

void seed(Signature& sig) {
  sig.standpoints.insert(kUniversal);
  sig.basic_concepts.insert(ConceptTerm::top());
  sig.concept_closure.insert(ConceptTerm::top());
}

}  // namespace

std::set<std::string> Signature::all_names() const {
  std::set<std::string> out;
  out.insert(standpoints.begin(), standpoints.end());
  out.insert(individuals.begin(), individuals.end());
  out.insert(concept_names.begin(), concept_names.end());
  out.insert(roles.begin(), roles.end());
  return out;
}

Signature signature(const KnowledgeBase& kb) {
  Signature sig;
  seed(sig);
  Collector collect(sig);
  for (const auto& a : kb.axioms()) collect.axiom(a);
  sig.size = token_size(kb);
  return sig;
}

Signature signature(const AnnotatedKb& kb) {
  Signature sig = signature(kb.kb);
  Collector collect(sig);
  for (const auto& block : kb.blocks) {
    sig.standpoints.insert(block.standpoint);
    for (const auto& b : block.body) {
      collect.axiom(ModalAxiom{block.mode, block.standpoint, b});
      sig.size += token_size(Axiom{ModalAxiom{Mode::Box, kUniversal, b}}) - 2;
    }
    sig.size += 4;  // modality, standpoint, braces
  }
  return sig;
}

namespace {

bool basic_or_top(const ConceptTerm& c) { return c.is_basic(); }
bool name_or_bot(const ConceptTerm& c) {
  return c.is(ConceptTerm::Kind::Atom) || c.is(ConceptTerm::Kind::Bot);
}

bool normal_lhs(const ConceptTerm& c) {
  using K = ConceptTerm::Kind;
  switch (c.kind()) {
    case K::Atom:
    case K::Top:
      return true;
    case K::Exists:
      return basic_or_top(c.filler());
    case K::And:
      return basic_or_top(c.left()) && basic_or_top(c.right());
    default:
      return false;
  }
}

bool normal_rhs(const ConceptTerm& c) {
  using K = ConceptTerm::Kind;
  switch (c.kind()) {
    case K::Atom:
    case K::Bot:
      return true;
    case K::Exists:
    case K::Box:
    case K::Diamond:
      return name_or_bot(c.inner());
    default:
      return false;
  }
}

}  // namespace

bool is_normal_form(const Axiom& axiom) {
  if (std::holds_alternative<Sharpening>(axiom)) return true;
  const auto& m = std::get<ModalAxiom>(axiom);
  if (m.mode != Mode::Box) return false;
  if (const auto* g = std::get_if<Gci>(&m.body)) return normal_lhs(g->lhs) && normal_rhs(g->rhs);
  if (const auto* c = std::get_if<ConceptAssertion>(&m.body))
    return c->term.is(ConceptTerm::Kind::Atom);
  return true;
}

bool is_normal_form(const KnowledgeBase& kb) {
  for (const auto& t : kb.tbox())
    if (!is_normal_form(Axiom{t})) return false;
  for (const auto& a : kb.abox())
    if (!is_normal_form(Axiom{a})) return false;
  return true;
}

std::string FreshNames::next(char kind) {
  for (;;) {
    std::string name = std::string(kReservedPrefix) + kind + std::to_string(counter_++);
    if (used_.insert(name).second) return name;
  }
}

KnowledgeBase desugar_blocks(const AnnotatedKb& kb, FreshNames& fresh) {
  KnowledgeBase out = kb.kb;
  for (const auto& block : kb.blocks) {
    std::string target = block.standpoint;
    if (block.mode == Mode::Diamond) {
      target = fresh.standpoint();
      out.add(Sharpening{target, block.standpoint});
    }
    for (const auto& b : block.body) out.add(box(target, b));
  }
  return out;
}

KnowledgeBase desugar_blocks(const AnnotatedKb& kb) {
  FreshNames fresh(signature(kb).all_names());
  return desugar_blocks(kb, fresh);
}

}  // namespace sel
