#include <json.hpp>

#include "sel/oracle.hpp"

namespace sel {
namespace {

Bitset sigma_of(const StandpointStructure& d, const std::string& s) {
  if (auto it = d.sigma.find(s); it != d.sigma.end()) return it->second;
  if (s == kUniversal) {
    Bitset all(d.precisifications);
    all.set_all();
    return all;
  }
  throw OracleError("unknown standpoint " + s);
}

std::size_t individual_of(const StandpointStructure& d, const std::string& a) {
  auto it = d.individuals.find(a);
  if (it == d.individuals.end()) throw OracleError("unknown individual " + a);
  return it->second;
}

const std::vector<Bitset>& role_of(const StandpointStructure& d, std::size_t pi, const std::string& r) {
  const auto& roles = d.gamma.at(pi).roles;
  auto it = roles.find(r);
  if (it == roles.end()) throw OracleError("unknown role " + r);
  return it->second;
}

bool holds_at(const StandpointStructure& d, std::size_t pi, const AxiomBody& body) {
  if (const auto* g = std::get_if<Gci>(&body))
    return eval_concept(d, pi, g->lhs).is_subset_of(eval_concept(d, pi, g->rhs));
  if (const auto* c = std::get_if<ConceptAssertion>(&body))
    return eval_concept(d, pi, c->term).test(individual_of(d, c->individual));
  const auto& r = std::get<RoleAssertion>(body);
  return role_of(d, pi, r.role)[individual_of(d, r.subject)].test(individual_of(d, r.object));
}

}  // namespace

Bitset eval_concept(const StandpointStructure& d, std::size_t pi, const ConceptTerm& c) {
  using K = ConceptTerm::Kind;
  Bitset out(d.domain);
  switch (c.kind()) {
    case K::Top:
      out.set_all();
      break;
    case K::Bot:
      break;
    case K::Atom: {
      const auto& concepts = d.gamma.at(pi).concepts;
      auto it = concepts.find(c.name());
      if (it == concepts.end()) throw OracleError("unknown concept " + c.name());
      out = it->second;
      break;
    }
    case K::And:
      out = eval_concept(d, pi, c.left()) & eval_concept(d, pi, c.right());
      break;
    case K::Exists: {
      const Bitset filler = eval_concept(d, pi, c.filler());
      const auto& succ = role_of(d, pi, c.name());
      for (std::size_t x = 0; x < d.domain; ++x)
        if (succ[x].intersects(filler)) out.set(x);
      break;
    }
    case K::Box:
    case K::Diamond: {
      const bool box = c.is(K::Box);
      if (box) out.set_all();
      sigma_of(d, c.name()).for_each([&](std::size_t p) {
        const Bitset inner = eval_concept(d, p, c.inner());
        if (box)
          out &= inner;
        else
          out |= inner;
      });
      break;
    }
  }
  return out;
}

bool satisfies(const StandpointStructure& d, const Axiom& axiom) {
  if (const auto* s = std::get_if<Sharpening>(&axiom))
    return sigma_of(d, s->lower).is_subset_of(sigma_of(d, s->upper));
  const auto& m = std::get<ModalAxiom>(axiom);
  bool all = true, any = false;
  sigma_of(d, m.standpoint).for_each([&](std::size_t p) {
    const bool h = holds_at(d, p, m.body);
    all = all && h;
    any = any || h;
  });
  return m.mode == Mode::Box ? all : any;
}

bool satisfies(const StandpointStructure& d, const KnowledgeBase& kb) {
  if (!well_formed(d)) return false;
  for (const auto& a : kb.axioms())
    if (!satisfies(d, a)) return false;
  return true;
}

bool well_formed(const StandpointStructure& d) {
  if (d.domain == 0 || d.precisifications == 0 || d.gamma.size() != d.precisifications) return false;
  for (const auto& [s, set] : d.sigma) {
    if (set.size() != d.precisifications || set.none()) return false;
    if (s == kUniversal && d.universal_star && set.count() != d.precisifications) return false;
  }
  for (const auto& [a, x] : d.individuals)
    if (x >= d.domain) return false;
  for (const auto& i : d.gamma) {
    for (const auto& [n, ext] : i.concepts)
      if (ext.size() != d.domain) return false;
    for (const auto& [n, succ] : i.roles) {
      if (succ.size() != d.domain) return false;
      for (const auto& s : succ)
        if (s.size() != d.domain) return false;
    }
  }
  return true;
}

std::string structure_to_json(const StandpointStructure& d) {
  using nlohmann::ordered_json;
  auto members = [](const Bitset& b) {
    ordered_json arr = ordered_json::array();
    b.for_each([&](std::size_t i) { arr.push_back(i); });
    return arr;
  };
  ordered_json j;
  j["domain"] = d.domain;
  j["precisifications"] = d.precisifications;
  j["sigma"] = ordered_json::object();
  for (const auto& [s, set] : d.sigma) j["sigma"][s] = members(set);
  j["individuals"] = ordered_json::object();
  for (const auto& [a, x] : d.individuals) j["individuals"][a] = x;
  j["interpretations"] = ordered_json::array();
  for (const auto& i : d.gamma) {
    ordered_json ij;
    ij["concepts"] = ordered_json::object();
    for (const auto& [n, ext] : i.concepts) ij["concepts"][n] = members(ext);
    ij["roles"] = ordered_json::object();
    for (const auto& [n, succ] : i.roles) {
      ordered_json pairs = ordered_json::array();
      for (std::size_t x = 0; x < succ.size(); ++x)
        succ[x].for_each([&](std::size_t y) { pairs.push_back({x, y}); });
      ij["roles"][n] = pairs;
    }
    j["interpretations"].push_back(ij);
  }
  return j.dump();
}

}  // namespace sel
