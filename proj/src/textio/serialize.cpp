#include <algorithm>

#include "sel/textio.hpp"

namespace sel {
namespace {

// True if the rendering ends in an unparenthesised "ex R." whose filler would
// swallow a following "&".
bool ends_open(const ConceptTerm& c) {
  if (c.is(ConceptTerm::Kind::Exists)) return true;
  if (c.is(ConceptTerm::Kind::And)) return ends_open(c.right());
  return false;
}

std::string modality(Mode mode, const std::string& sp) {
  return std::string(mode == Mode::Box ? "B(" : "D(") + sp + ")";
}

int kind_rank(const Axiom& a) {
  if (std::holds_alternative<Sharpening>(a)) return 0;
  const auto& m = std::get<ModalAxiom>(a);
  if (m.is_gci()) return 1;
  if (m.is_concept_assertion()) return 2;
  return 3;
}

}  // namespace

std::string to_string(const ConceptTerm& c) {
  using K = ConceptTerm::Kind;
  switch (c.kind()) {
    case K::Top:
      return "Top";
    case K::Bot:
      return "Bot";
    case K::Atom:
      return c.name();
    case K::And: {
      std::string l = to_string(c.left());
      if (ends_open(c.left())) l = "(" + l + ")";
      std::string r = to_string(c.right());
      if (c.right().is(K::And)) r = "(" + r + ")";
      return l + " & " + r;
    }
    case K::Exists:
      return "ex " + c.name() + "." + to_string(c.filler());
    case K::Box:
      return modality(Mode::Box, c.name()) + "[" + to_string(c.inner()) + "]";
    case K::Diamond:
      return modality(Mode::Diamond, c.name()) + "[" + to_string(c.inner()) + "]";
  }
  return "?";
}

std::string to_string(const AxiomBody& b) {
  if (const auto* g = std::get_if<Gci>(&b)) return to_string(g->lhs) + " <: " + to_string(g->rhs);
  if (const auto* c = std::get_if<ConceptAssertion>(&b)) {
    std::string s = to_string(c->term);
    if (!c->term.is(ConceptTerm::Kind::Atom)) s = "(" + s + ")";
    return s + "(" + c->individual + ")";
  }
  const auto& r = std::get<RoleAssertion>(b);
  return r.role + "(" + r.subject + "," + r.object + ")";
}

std::string to_string(const Axiom& a) {
  if (const auto* s = std::get_if<Sharpening>(&a)) return s->lower + " <= " + s->upper;
  const auto& m = std::get<ModalAxiom>(a);
  if (m.mode == Mode::Box && m.standpoint == kUniversal) return to_string(m.body);
  return modality(m.mode, m.standpoint) + "[" + to_string(m.body) + "]";
}

std::string to_string(const Formula& f) {
  return std::visit(
      [](const auto& x) -> std::string {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, Sharpening> || std::is_same_v<T, ModalAxiom>)
          return to_string(Axiom{x});
        else
          return to_string(AxiomBody{x});
      },
      f);
}

std::string to_string(const Block& b) {
  std::vector<std::string> items;
  for (const auto& body : b.body) items.push_back(to_string(body));
  std::string s = modality(b.mode, b.standpoint) + "{";
  for (std::size_t i = 0; i < items.size(); ++i) s += (i ? " " : "") + items[i] + ";";
  return s + "}";
}

std::string serialize(const KnowledgeBase& kb) {
  std::vector<std::pair<int, std::string>> lines;
  for (const auto& a : kb.axioms()) lines.emplace_back(kind_rank(a), to_string(a));
  std::sort(lines.begin(), lines.end());
  std::string out;
  for (const auto& [rank, text] : lines) out += text + ";\n";
  return out;
}

std::string serialize(const AnnotatedKb& kb) {
  std::string out = serialize(kb.kb);
  std::vector<std::string> blocks;
  for (const auto& b : kb.blocks) blocks.push_back(to_string(b));
  std::sort(blocks.begin(), blocks.end());
  for (const auto& b : blocks) out += b + ";\n";
  return out;
}

}  // namespace sel
