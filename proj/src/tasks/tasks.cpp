#include "sel/tasks.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>

namespace sel {
namespace {

Answer run(const KnowledgeBase& normal, const TaskOptions& options) {
  tableau::Verdict v = tableau::saturate(normal, options.tableau);
  Answer out;
  out.value = v.satisfiable;
  out.counters = v.counters;
  out.elements = v.graph.elements().size();
  if (v.clash)
    out.clash = Answer::Clash{v.graph.element(v.clash->element).name, v.graph.variables()[v.clash->variable].name};
  return out;
}

FreshNames supply_for(const KnowledgeBase& kb, const Axiom* extra) {
  KnowledgeBase vocab = kb;
  if (extra) vocab.add(*extra);
  return FreshNames(signature(vocab).all_names());
}

// Normalized kb ∪ normalized K¬φ; K¬φ is normalized on its own.
KnowledgeBase with_negation(const KnowledgeBase& normal_kb, const Axiom& axiom, FreshNames fresh) {
  KnowledgeBase out = normal_kb;
  const KnowledgeBase neg = negated_axiom_kb(axiom, fresh);
  out.add(normalize(neg, fresh).kb);
  return out;
}

}  // namespace

Answer check_satisfiable(const KnowledgeBase& kb, const TaskOptions& options) {
  return run(normalize(kb).kb, options);
}

bool is_satisfiable(const KnowledgeBase& kb, const TaskOptions& options) {
  return check_satisfiable(kb, options).value;
}

KnowledgeBase negated_axiom_kb(const Axiom& axiom, FreshNames& fresh) {
  const ConceptTerm top = ConceptTerm::top();
  const ConceptTerm bot = ConceptTerm::bot();
  if (const auto* s = std::get_if<Sharpening>(&axiom)) {
    const ConceptTerm a = ConceptTerm::atom(fresh.concept_name());
    return KnowledgeBase{diamond(s->lower, Gci{top, a}), box(s->upper, Gci{a, bot})};
  }
  const auto& m = std::get<ModalAxiom>(axiom);
  const Mode dual_mode = dual(m.mode);
  if (const auto* g = std::get_if<Gci>(&m.body)) {
    const ConceptTerm a = ConceptTerm::atom(fresh.concept_name());
    const std::string r = fresh.role();
    return KnowledgeBase{global(Gci{a, g->lhs}), global(Gci{ConceptTerm::conj(a, g->rhs), bot}),
                         ModalAxiom{dual_mode, m.standpoint, Gci{top, ConceptTerm::exists(r, a)}}};
  }
  if (const auto* c = std::get_if<ConceptAssertion>(&m.body)) {
    const ConceptTerm a = ConceptTerm::atom(fresh.concept_name());
    return KnowledgeBase{global(Gci{ConceptTerm::conj(a, c->term), bot}),
                         ModalAxiom{dual_mode, m.standpoint, ConceptAssertion{a, c->individual}}};
  }
  const auto& r = std::get<RoleAssertion>(m.body);
  const ConceptTerm a = ConceptTerm::atom(fresh.concept_name());
  const ConceptTerm b = ConceptTerm::atom(fresh.concept_name());
  return KnowledgeBase{global(ConceptAssertion{b, r.object}),
                       global(Gci{ConceptTerm::conj(a, ConceptTerm::exists(r.role, b)), bot}),
                       ModalAxiom{dual_mode, m.standpoint, ConceptAssertion{a, r.subject}}};
}

Answer check_entails(const KnowledgeBase& kb, const Axiom& axiom, const TaskOptions& options) {
  FreshNames fresh = supply_for(kb, &axiom);
  const KnowledgeBase normal = normalize(kb, fresh).kb;
  Answer a = run(with_negation(normal, axiom, fresh), options);
  a.value = !a.value;
  return a;
}

bool entails(const KnowledgeBase& kb, const Axiom& axiom, const TaskOptions& options) {
  return check_entails(kb, axiom, options).value;
}

bool concept_satisfiable(const KnowledgeBase& kb, const ConceptTerm& query, const TaskOptions& options) {
  return !entails(kb, global(Gci{query, ConceptTerm::bot()}), options);
}

std::vector<std::string> instances(const KnowledgeBase& kb, const ConceptTerm& query, const TaskOptions& options) {
  const Signature sig = signature(kb);
  const std::vector<std::string> individuals(sig.individuals.begin(), sig.individuals.end());
  if (individuals.empty()) return {};

  // One supply covering every query, so K¬φ names never clash with kb's.
  KnowledgeBase vocab = kb;
  vocab.add(global(Gci{query, ConceptTerm::top()}));
  FreshNames fresh(signature(vocab).all_names());
  const KnowledgeBase normal = normalize(kb, fresh).kb;

  std::vector<char> hit(individuals.size(), 0);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (std::size_t i; (i = next++) < individuals.size();) {
      try {
        const Axiom goal = global(ConceptAssertion{query, individuals[i]});
        hit[i] = !tableau::saturate(with_negation(normal, goal, fresh), options.tableau).satisfiable;
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  unsigned threads = options.threads ? options.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, individuals.size()));
  // A trace callback is not synchronised; keep traced runs on one thread.
  if (options.tableau.trace) threads = 1;
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);

  std::vector<std::string> out;
  for (std::size_t i = 0; i < individuals.size(); ++i)
    if (hit[i]) out.push_back(individuals[i]);
  return out;
}

}  // namespace sel
