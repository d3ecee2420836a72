#include <cmath>
#include <sstream>

#include "sel/tableau.hpp"
#include "sel/textio.hpp"

namespace sel::tableau {

using FK = Symbols::FormulaInfo::Kind;

RuleClass rule_class(Rule r) {
  switch (r) {
    case Rule::Sharpen:
      return RuleClass::LL;
    case Rule::Down:
    case Rule::RoleForward:
    case Rule::RoleBackward:
    case Rule::ExistsReuse:
      return RuleClass::GN;
    case Rule::ExistsGen:
      return RuleClass::GG;
    default:
      return RuleClass::LC;
  }
}

const char* rule_name(Rule r) {
  static constexpr const char* kNames[kRuleCount] = {
      "sharpen", "conjoin", "subsume", "box", "global", "assert",
      "diamond", "down", "role", "role-inverse", "exists-reuse", "exists-gen"};
  return kNames[static_cast<std::size_t>(r)];
}

std::uint64_t RuleCounters::total() const {
  std::uint64_t t = 0;
  for (auto n : applications) t += n;
  return t;
}

RuleCounters& RuleCounters::operator+=(const RuleCounters& o) {
  for (std::size_t i = 0; i < kRuleCount; ++i) applications[i] += o.applications[i];
  return *this;
}

Bounds counting_bounds(std::size_t kb_size) {
  const double k = static_cast<double>(kb_size);
  return {27 * std::pow(k, 6), 3 * k * k, 2 * k * k, 2 * k * k * k};
}

// ---------------------------------------------------------------------------
// CompletionGraph

CompletionGraph::CompletionGraph(std::shared_ptr<const Symbols> symbols)
    : symbols_(std::move(symbols)) {}

bool CompletionGraph::has(ElemId e, const Constraint& c) const {
  const VarConstraints* v = elements_[e].find(c.var);
  if (!v) return false;
  switch (c.tag.kind) {
    case Tag::Kind::Concept:
      return v->concepts.test(c.tag.index);
    case Tag::Kind::Individual:
      return v->individuals.test(c.tag.index);
    case Tag::Kind::Formula:
      return v->formulas.test(c.tag.index);
    case Tag::Kind::Standpoint:
      return v->standpoints.test(c.tag.index);
  }
  return false;
}

std::size_t CompletionGraph::constraint_count() const {
  std::size_t n = 0;
  for (const auto& e : elements_) n += e.constraint_count;
  return n;
}

Bitset CompletionGraph::standpoint_signature(ElemId e, VarId v) const {
  const VarConstraints* x = elements_[e].find(v);
  return x ? x->standpoints : Bitset(symbols_->standpoints.size());
}

std::string CompletionGraph::describe(const Tag& t) const {
  const Symbols& sym = *symbols_;
  switch (t.kind) {
    case Tag::Kind::Concept:
      return to_string(sym.concepts[t.index].term);
    case Tag::Kind::Individual:
      return sym.individuals[t.index];
    case Tag::Kind::Formula:
      return to_string(sym.formulas[t.index].formula);
    case Tag::Kind::Standpoint:
      return sym.standpoints[t.index];
  }
  return {};
}

std::string CompletionGraph::describe(ElemId e, const Constraint& c) const {
  return elements_[e].name + " " + variables_[c.var].name + " : " + describe(c.tag);
}

// ---------------------------------------------------------------------------
// Engine

Engine::Engine(const KnowledgeBase& normal_kb, Options options)
    : options_(std::move(options)),
      symbols_(std::make_shared<const Symbols>(normal_kb)),
      graph_(symbols_),
      bounds_(counting_bounds(symbols_->kb_size)) {
  if (!is_normal_form(normal_kb)) throw std::invalid_argument("knowledge base is not in normal form");
  init();
}

VarId Engine::fresh_var(VarOrigin origin) {
  const auto id = static_cast<VarId>(graph_.variables_.size());
  const char* prefix = origin == VarOrigin::DiamondWitness ? "w" : "y";
  graph_.variables_.push_back({origin, kNone, prefix + std::to_string(id)});
  return id;
}

ElemId Engine::new_element(std::string name) {
  const Symbols& sym = *symbols_;
  const auto id = static_cast<ElemId>(graph_.elements_.size());
  Element e;
  e.name = std::move(name);
  e.global_formulas = Bitset(sym.formulas.size());
  e.global_individuals = Bitset(sym.individuals.size());
  e.boxed.resize(sym.standpoints.size());
  graph_.elements_.push_back(std::move(e));
  return id;
}

void Engine::init() {
  const Symbols& sym = *symbols_;
  for (std::uint32_t s = 0; s < sym.standpoints.size(); ++s) {
    graph_.initial_vars_.push_back(static_cast<VarId>(graph_.variables_.size()));
    graph_.variables_.push_back({VarOrigin::Initial, s, "x_" + sym.standpoints[s]});
  }
  graph_.individual_elems_.assign(sym.individuals.size(), kNone);

  seed_initial_system(new_element("top"));
  for (std::uint32_t a = 0; a < sym.individuals.size(); ++a) {
    const ElemId e = new_element("@" + sym.individuals[a]);
    graph_.individual_elems_[a] = e;
    seed_initial_system(e);
    for (std::uint32_t lv = 0; lv < graph_.elements_[e].vars.size(); ++lv) add_individual(e, lv, a);
  }
}

void Engine::seed_initial_system(ElemId e) {
  const Symbols& sym = *symbols_;
  for (std::uint32_t s = 0; s < sym.standpoints.size(); ++s) {
    const std::uint32_t lv = add_var(e, graph_.initial_vars_[s]);
    add_standpoint(e, lv, sym.universal);
    add_concept(e, lv, sym.top);
    for (std::uint32_t f : sym.kb_formulas) add_formula(e, lv, f);
    add_standpoint(e, lv, s);
  }
}

std::uint32_t Engine::add_var(ElemId e, VarId v) {
  Element& el = graph_.elements_[e];
  auto [it, fresh] = el.local.emplace(v, static_cast<std::uint32_t>(el.vars.size()));
  if (!fresh) return it->second;
  const Symbols& sym = *symbols_;
  el.vars.push_back({v, Bitset(sym.concepts.size()), Bitset(sym.formulas.size()),
                     Bitset(sym.standpoints.size()), Bitset(sym.individuals.size())});
  el.outgoing.emplace_back();
  el.incoming.emplace_back();
  if (static_cast<double>(el.vars.size()) > bounds_.variables_per_system)
    throw BoundExceeded("variables in " + el.name + " exceed 2|K|^2");
  push(RuleClass::LC, {TaskKind::GlobalsToVar, e, it->second, 0});
  return it->second;
}

bool Engine::add_tag(ElemId e, std::uint32_t lv, Tag t) {
  switch (t.kind) {
    case Tag::Kind::Concept:
      return add_concept(e, lv, t.index);
    case Tag::Kind::Individual:
      return add_individual(e, lv, t.index);
    case Tag::Kind::Formula:
      return add_formula(e, lv, t.index);
    case Tag::Kind::Standpoint:
      return add_standpoint(e, lv, t.index);
  }
  return false;
}

bool Engine::has_tag(ElemId e, std::uint32_t lv, Tag t) const {
  const VarConstraints& v = graph_.elements_[e].vars[lv];
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

bool Engine::add_concept(ElemId e, std::uint32_t lv, std::uint32_t c) {
  Element& el = graph_.elements_[e];
  if (!el.vars[lv].concepts.set(c)) return false;
  ++el.constraint_count;
  const Symbols& sym = *symbols_;
  if (c == sym.bot && !clash_) clash_ = Clash{e, el.vars[lv].id};
  push(RuleClass::LC, {TaskKind::ConceptLocal, e, lv, c});
  const auto& info = sym.concepts[c];
  switch (info.term.kind()) {
    case ConceptTerm::Kind::Box:
      register_boxed(e, info.name, {Tag::Kind::Concept, info.left});
      break;
    case ConceptTerm::Kind::Exists:
      push(RuleClass::GN, {TaskKind::Exists, e, lv, c});
      break;
    default:
      break;
  }
  if (!graph_.elements_[e].incoming[lv].empty()) push(RuleClass::GN, {TaskKind::DownConcept, e, lv, c});
  return true;
}

bool Engine::add_formula(ElemId e, std::uint32_t lv, std::uint32_t f) {
  Element& el = graph_.elements_[e];
  if (!el.vars[lv].formulas.set(f)) return false;
  ++el.constraint_count;
  const auto& info = symbols_->formulas[f];
  switch (info.kind) {
    case FK::Sharpening:
      register_global(e, {Tag::Kind::Formula, f});
      break;
    case FK::Box:
      register_global(e, {Tag::Kind::Formula, f});
      register_boxed(e, info.a, {Tag::Kind::Formula, info.b});
      break;
    case FK::Gci:
    case FK::ConceptAssertion:
      push(RuleClass::LC, {TaskKind::FormulaLocal, e, lv, f});
      break;
    case FK::RoleAssertion:
      push(RuleClass::GN, {TaskKind::RoleFormula, e, lv, f});
      break;
  }
  return true;
}

bool Engine::add_standpoint(ElemId e, std::uint32_t lv, std::uint32_t s) {
  Element& el = graph_.elements_[e];
  if (!el.vars[lv].standpoints.set(s)) return false;
  ++el.constraint_count;
  if (!symbols_->sharpen_up[s].empty()) push(RuleClass::LL, {TaskKind::SharpenUp, e, lv, s});
  if (!el.boxed[s].empty()) push(RuleClass::LC, {TaskKind::BoxToVar, e, lv, s});
  return true;
}

bool Engine::add_individual(ElemId e, std::uint32_t lv, std::uint32_t a) {
  Element& el = graph_.elements_[e];
  if (!el.vars[lv].individuals.set(a)) return false;
  ++el.constraint_count;
  register_global(e, {Tag::Kind::Individual, a});
  const Symbols& sym = *symbols_;
  if (!sym.assertions_by_ind[a].empty()) push(RuleClass::LC, {TaskKind::IndividualLocal, e, lv, a});
  if (!sym.role_assertions_by_ind[a].empty()) push(RuleClass::GN, {TaskKind::RoleIndividual, e, lv, a});
  return true;
}

void Engine::register_global(ElemId e, Tag t) {
  Element& el = graph_.elements_[e];
  Bitset& seen = t.kind == Tag::Kind::Individual ? el.global_individuals : el.global_formulas;
  if (!seen.set(t.index)) return;
  el.globals.push_back(t);
  push(RuleClass::LC, {TaskKind::GlobalToVars, e, kNone, static_cast<std::uint32_t>(el.globals.size() - 1)});
  if (t.kind == Tag::Kind::Formula && symbols_->formulas[t.index].kind == FK::Sharpening)
    push(RuleClass::LL, {TaskKind::SharpenVars, e, kNone, t.index});
}

void Engine::register_boxed(ElemId e, std::uint32_t s, Tag t) {
  Element& el = graph_.elements_[e];
  const std::uint64_t key = std::uint64_t{s} << 33 | std::uint64_t{t.kind == Tag::Kind::Formula} << 32 | t.index;
  if (!el.boxed_seen.insert(key).second) return;
  el.boxed[s].push_back(t);
  push(RuleClass::LC, {TaskKind::BoxToVars, e, s, static_cast<std::uint32_t>(el.boxed[s].size() - 1)});
}

bool Engine::has_quasi_role(const QuasiRole& q) const { return quasi_role_seen_.count(q) != 0; }

bool Engine::add_quasi_role(const QuasiRole& q) {
  if (!quasi_role_seen_.insert(q).second) return false;
  const auto idx = static_cast<std::uint32_t>(graph_.quasi_roles_.size());
  graph_.quasi_roles_.push_back(q);
  Element& from = graph_.elements_[q.from];
  from.outgoing[from.local.at(q.from_var)].push_back(idx);
  Element& to = graph_.elements_[q.to];
  to.incoming[to.local.at(q.to_var)].push_back(idx);
  push(RuleClass::GN, {TaskKind::DownRole, q.to, kNone, idx});
  return true;
}

void Engine::push(RuleClass cls, Task t) { queues_[static_cast<std::size_t>(cls)].push_back(t); }

void Engine::applied(Rule r, ElemId e, VarId v, Tag t) {
  ++counters_.applications[static_cast<std::size_t>(r)];
  if (options_.trace) options_.trace({r, graph_.elements_[e].name, graph_.variables_[v].name, graph_.describe(t)});
  check_bounds(e);
  if (options_.check_invariants) check_invariants(r);
}

void Engine::check_bounds(ElemId touched) const {
  const auto total = static_cast<double>(counters_.total());
  if (total > bounds_.rule_applications) throw BoundExceeded("rule applications exceed 27|K|^6");
  if (options_.max_steps && counters_.total() > options_.max_steps)
    throw BoundExceeded("rule applications exceed the configured step limit");
  if (static_cast<double>(graph_.elements_.size()) > bounds_.elements)
    throw BoundExceeded("elements exceed 3|K|^2");
  const Element& el = graph_.elements_[touched];
  if (static_cast<double>(el.constraint_count) > bounds_.constraints_per_system)
    throw BoundExceeded("constraints in " + el.name + " exceed 2|K|^3");
}

// ---------------------------------------------------------------------------
// Rule application

StepResult Engine::step() {
  if (clash_ || saturated_) return {};
  for (std::size_t cls = 0; cls < queues_.size(); ++cls) {
    auto& q = queues_[cls];
    if (!q.empty() && cls > 0 && options_.check_invariants) {
      if (auto r = find_applicable(graph_, static_cast<RuleClass>(cls - 1)))
        throw std::logic_error(std::string("priority violated: ") + rule_name(*r) + " still applicable");
    }
    while (!q.empty()) {
      bool done = false;
      const bool fired = advance(q.front(), done);
      if (done) q.pop_front();
      if (fired) return {true, current_rule_};
    }
  }
  saturated_ = true;
  if (options_.check_invariants) {
    if (auto r = find_applicable(graph_))
      throw std::logic_error(std::string("saturated with ") + rule_name(*r) + " still applicable");
  }
  return {};
}

void Engine::run() {
  while (step().applied && !clash_) {
  }
}

bool Engine::advance(Task& t, bool& done) {
  const Symbols& sym = *symbols_;
  Element* el = &graph_.elements_[t.elem];
  auto fire = [&](Rule r, std::uint32_t lv, Tag tag) {
    current_rule_ = r;
    const VarId v = graph_.elements_[t.elem].vars[lv].id;
    add_tag(t.elem, lv, tag);
    applied(r, t.elem, v, tag);
    return true;
  };

  switch (t.kind) {
    case TaskKind::SharpenUp: {
      const auto& ups = sym.sharpen_up[t.payload];
      while (t.cursor < ups.size()) {
        const auto [upper, f] = ups[t.cursor++];
        if (el->global_formulas.test(f) && !el->vars[t.var].standpoints.test(upper))
          return fire(Rule::Sharpen, t.var, {Tag::Kind::Standpoint, upper});
      }
      break;
    }
    case TaskKind::SharpenVars: {
      const auto& info = sym.formulas[t.payload];
      while (t.cursor < el->vars.size()) {
        const std::uint32_t lv = t.cursor++;
        if (el->vars[lv].standpoints.test(info.a) && !el->vars[lv].standpoints.test(info.b))
          return fire(Rule::Sharpen, lv, {Tag::Kind::Standpoint, info.b});
      }
      break;
    }
    case TaskKind::BoxToVar: {
      const auto& contents = el->boxed[t.payload];
      while (t.cursor < contents.size()) {
        const Tag tag = contents[t.cursor++];
        if (!has_tag(t.elem, t.var, tag)) return fire(Rule::Box, t.var, tag);
      }
      break;
    }
    case TaskKind::BoxToVars: {
      const std::uint32_t s = t.var;
      const Tag tag = el->boxed[s][t.payload];
      while (t.cursor < el->vars.size()) {
        const std::uint32_t lv = t.cursor++;
        if (el->vars[lv].standpoints.test(s) && !has_tag(t.elem, lv, tag)) return fire(Rule::Box, lv, tag);
      }
      break;
    }
    case TaskKind::GlobalToVars: {
      const Tag tag = el->globals[t.payload];
      while (t.cursor < el->vars.size()) {
        const std::uint32_t lv = t.cursor++;
        if (!has_tag(t.elem, lv, tag)) return fire(Rule::Global, lv, tag);
      }
      break;
    }
    case TaskKind::GlobalsToVar: {
      while (t.cursor < el->globals.size()) {
        const Tag tag = el->globals[t.cursor++];
        if (!has_tag(t.elem, t.var, tag)) return fire(Rule::Global, t.var, tag);
      }
      break;
    }
    case TaskKind::ConceptLocal: {
      const std::uint32_t c = t.payload;
      const auto& partners = sym.conj_partners[c];
      const auto& gcis = sym.gci_by_lhs[c];
      const VarConstraints* v = &el->vars[t.var];
      while (t.cursor < partners.size()) {
        const auto [d, cd] = partners[t.cursor++];
        if (v->concepts.test(d) && !v->concepts.test(cd))
          return fire(Rule::Conjoin, t.var, {Tag::Kind::Concept, cd});
      }
      while (t.cursor < partners.size() + gcis.size()) {
        const auto [f, rhs] = gcis[t.cursor++ - partners.size()];
        if (v->formulas.test(f) && !v->concepts.test(rhs))
          return fire(Rule::Subsume, t.var, {Tag::Kind::Concept, rhs});
      }
      const auto& info = sym.concepts[c];
      if (t.cursor == partners.size() + gcis.size() && info.term.is(ConceptTerm::Kind::Diamond)) {
        ++t.cursor;
        bool witnessed = false;
        for (const auto& x : el->vars) {
          if (x.standpoints.test(info.name) && x.concepts.test(info.left)) {
            witnessed = true;
            break;
          }
        }
        if (!witnessed) {
          current_rule_ = Rule::Diamond;
          const VarId w = fresh_var(VarOrigin::DiamondWitness);
          const std::uint32_t lw = add_var(t.elem, w);
          add_concept(t.elem, lw, info.left);
          add_standpoint(t.elem, lw, info.name);
          add_standpoint(t.elem, lw, sym.universal);
          add_concept(t.elem, lw, sym.top);
          applied(Rule::Diamond, t.elem, w, {Tag::Kind::Concept, info.left});
          done = true;
          return true;
        }
      }
      break;
    }
    case TaskKind::FormulaLocal: {
      if (t.cursor++ > 0) break;
      const auto& info = sym.formulas[t.payload];
      const VarConstraints& v = el->vars[t.var];
      if (info.kind == FK::Gci) {
        if (v.concepts.test(info.a) && !v.concepts.test(info.b)) {
          done = true;
          return fire(Rule::Subsume, t.var, {Tag::Kind::Concept, info.b});
        }
      } else if (v.individuals.test(info.b) && !v.concepts.test(info.a)) {
        done = true;
        return fire(Rule::Assert, t.var, {Tag::Kind::Concept, info.a});
      }
      break;
    }
    case TaskKind::IndividualLocal: {
      const auto& list = sym.assertions_by_ind[t.payload];
      while (t.cursor < list.size()) {
        const auto [f, c] = list[t.cursor++];
        const VarConstraints& v = el->vars[t.var];
        if (v.formulas.test(f) && !v.concepts.test(c)) return fire(Rule::Assert, t.var, {Tag::Kind::Concept, c});
      }
      break;
    }
    case TaskKind::DownConcept: {
      const std::uint32_t c = t.payload;
      while (t.cursor < el->incoming[t.var].size()) {
        const QuasiRole q = graph_.quasi_roles_[el->incoming[t.var][t.cursor++]];
        const std::uint32_t ex = sym.exists_index(q.role, c);
        if (ex == kNone) continue;
        const Element& src = graph_.elements_[q.from];
        const std::uint32_t ls = src.local.at(q.from_var);
        if (!src.vars[ls].concepts.test(ex)) {
          current_rule_ = Rule::Down;
          add_concept(q.from, ls, ex);
          applied(Rule::Down, q.from, q.from_var, {Tag::Kind::Concept, ex});
          return true;
        }
      }
      break;
    }
    case TaskKind::DownRole: {
      const QuasiRole q = graph_.quasi_roles_[t.payload];
      const auto& list = sym.exists_by_role[q.role];
      const Element& dst = graph_.elements_[q.to];
      const std::uint32_t ld = dst.local.at(q.to_var);
      const Element& src = graph_.elements_[q.from];
      const std::uint32_t ls = src.local.at(q.from_var);
      while (t.cursor < list.size()) {
        const auto [filler, ex] = list[t.cursor++];
        if (dst.vars[ld].concepts.test(filler) && !src.vars[ls].concepts.test(ex)) {
          current_rule_ = Rule::Down;
          add_concept(q.from, ls, ex);
          applied(Rule::Down, q.from, q.from_var, {Tag::Kind::Concept, ex});
          return true;
        }
      }
      break;
    }
    case TaskKind::RoleFormula: {
      const auto& info = sym.formulas[t.payload];
      while (t.cursor < 2) {
        const bool forward = t.cursor++ == 0;
        const std::uint32_t ind = forward ? info.b : info.c;
        if (graph_.elements_[t.elem].vars[t.var].individuals.test(ind) && role_link(t.elem, t.var, t.payload, forward))
          return true;
      }
      break;
    }
    case TaskKind::RoleIndividual: {
      const auto& list = sym.role_assertions_by_ind[t.payload];
      while (t.cursor < list.size()) {
        const auto [f, forward] = list[t.cursor++];
        if (graph_.elements_[t.elem].vars[t.var].formulas.test(f) && role_link(t.elem, t.var, f, forward))
          return true;
      }
      break;
    }
    case TaskKind::Exists: {
      done = true;
      if (exists_satisfied(t.elem, t.var, t.payload)) return false;
      if (exists_reuse(t.elem, t.var, t.payload)) return true;
      Task gen{TaskKind::ExistsGen, t.elem, t.var, t.payload};
      const auto& info = sym.concepts[t.payload];
      pending_[{info.left, el->vars[t.var].standpoints}].push_back(gen);
      push(RuleClass::GG, gen);
      return false;
    }
    case TaskKind::ExistsGen: {
      done = true;
      if (exists_satisfied(t.elem, t.var, t.payload)) return false;
      if (exists_reuse(t.elem, t.var, t.payload)) return true;
      exists_generate(t.elem, t.var, t.payload);
      return true;
    }
  }
  done = true;
  return false;
}

bool Engine::exists_satisfied(ElemId e, std::uint32_t lv, std::uint32_t c) const {
  const Symbols& sym = *symbols_;
  const auto& info = sym.concepts[c];
  const Element& el = graph_.elements_[e];
  const VarConstraints& v = el.vars[lv];
  for (std::uint32_t qi : el.outgoing[lv]) {
    const QuasiRole& q = graph_.quasi_roles_[qi];
    if (q.role != info.name) continue;
    if (q.to == e && q.to_var != v.id) continue;
    for (const Label& l : graph_.elements_[q.to].labels)
      if (l.var == q.to_var && l.term == info.left && l.standpoints == v.standpoints) return true;
  }
  return false;
}

bool Engine::exists_reuse(ElemId e, std::uint32_t lv, std::uint32_t c) {
  const auto& info = symbols_->concepts[c];
  const VarConstraints& v = graph_.elements_[e].vars[lv];
  auto it = label_index_.find({info.left, v.standpoints});
  if (it == label_index_.end()) return false;
  for (const auto& [target, tv] : it->second) {
    if (target == e && tv != v.id) continue;
    current_rule_ = Rule::ExistsReuse;
    const VarId x = v.id;
    add_quasi_role({e, x, target, tv, info.name});
    applied(Rule::ExistsReuse, e, x, {Tag::Kind::Concept, c});
    return true;
  }
  return false;
}

void Engine::exists_generate(ElemId e, std::uint32_t lv, std::uint32_t c) {
  const Symbols& sym = *symbols_;
  const auto& info = sym.concepts[c];
  current_rule_ = Rule::ExistsGen;
  const Bitset st = graph_.elements_[e].vars[lv].standpoints;
  const VarId x = graph_.elements_[e].vars[lv].id;

  const ElemId ne = new_element("e" + std::to_string(++generated_elements_));
  seed_initial_system(ne);
  const VarId y = fresh_var(VarOrigin::ExistsWitness);
  const std::uint32_t ly = add_var(ne, y);
  add_concept(ne, ly, info.left);
  add_concept(ne, ly, sym.top);
  st.for_each([&](std::size_t s) { add_standpoint(ne, ly, static_cast<std::uint32_t>(s)); });
  graph_.elements_[ne].labels.push_back({info.left, st, y});

  LabelKey key{info.left, st};
  label_index_[key].emplace_back(ne, y);
  if (auto it = pending_.find(key); it != pending_.end()) {
    for (Task w : it->second) {
      w.kind = TaskKind::Exists;
      w.cursor = 0;
      push(RuleClass::GN, w);
    }
    pending_.erase(it);
  }
  add_quasi_role({e, x, ne, y, info.name});
  applied(Rule::ExistsGen, e, x, {Tag::Kind::Concept, c});
}

bool Engine::role_link(ElemId e, std::uint32_t lv, std::uint32_t f, bool forward) {
  const Symbols& sym = *symbols_;
  const auto& info = sym.formulas[f];
  const ElemId other = graph_.individual_elems_[forward ? info.c : info.b];
  const VarId x = graph_.elements_[e].vars[lv].id;
  const QuasiRole q = forward ? QuasiRole{e, x, other, x, info.a} : QuasiRole{other, x, e, x, info.a};
  if (has_quasi_role(q)) return false;
  const Rule r = forward ? Rule::RoleForward : Rule::RoleBackward;
  current_rule_ = r;
  const Bitset st = graph_.elements_[e].vars[lv].standpoints;
  const std::uint32_t lo = add_var(other, x);
  add_concept(other, lo, sym.top);
  st.for_each([&](std::size_t s) { add_standpoint(other, lo, static_cast<std::uint32_t>(s)); });
  add_quasi_role(q);
  applied(r, other, x, {Tag::Kind::Formula, f});
  return true;
}

void Engine::check_invariants(Rule) const {
  for (const QuasiRole& q : graph_.quasi_roles_) {
    const auto* a = graph_.elements_[q.from].find(q.from_var);
    const auto* b = graph_.elements_[q.to].find(q.to_var);
    if (!a || !b || !(a->standpoints == b->standpoints))
      throw std::logic_error("quasi-role standpoint agreement violated");
  }
  for (const Element& el : graph_.elements_) {
    for (const Label& l : el.labels) {
      const auto* v = el.find(l.var);
      if (!v || !v->concepts.test(l.term) || !(v->standpoints == l.standpoints))
        throw std::logic_error("label invariant violated in " + el.name);
    }
    for (const auto& v : el.vars) {
      if (!v.standpoints.test(symbols_->universal) || !v.concepts.test(symbols_->top))
        throw std::logic_error("variable without * or Top in " + el.name);
    }
  }
}

// ---------------------------------------------------------------------------

CompletionGraph init_graph(const KnowledgeBase& normal_kb) {
  Engine engine(normal_kb);
  return engine.graph();
}

Verdict saturate(const KnowledgeBase& normal_kb, Options options) {
  Engine engine(normal_kb, std::move(options));
  engine.run();
  return {!engine.clash().has_value(), engine.graph(), engine.clash(), engine.counters()};
}

}  // namespace sel::tableau
