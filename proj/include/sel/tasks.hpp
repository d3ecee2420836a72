// Reasoning tasks reduced to satisfiability.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sel/kb.hpp"
#include "sel/normalizer.hpp"
#include "sel/signature.hpp"
#include "sel/tableau.hpp"

namespace sel {

struct TaskOptions {
  tableau::Options tableau;
  // Worker threads for instance retrieval; 0 uses the hardware concurrency.
  unsigned threads = 0;
};

struct Answer {
  bool value = false;
  tableau::RuleCounters counters;
  std::size_t elements = 0;
  struct Clash {
    std::string element;
    std::string variable;
  };
  std::optional<Clash> clash;
};

// Satisfiability of the desugared, normalized knowledge base.
Answer check_satisfiable(const KnowledgeBase& kb, const TaskOptions& options = {});
bool is_satisfiable(const KnowledgeBase& kb, const TaskOptions& options = {});

// K¬φ: satisfiable together with K exactly when K does not entail φ. Fresh
// names come from `fresh`.
KnowledgeBase negated_axiom_kb(const Axiom& axiom, FreshNames& fresh);

Answer check_entails(const KnowledgeBase& kb, const Axiom& axiom, const TaskOptions& options = {});
bool entails(const KnowledgeBase& kb, const Axiom& axiom, const TaskOptions& options = {});

// C is satisfiable iff K does not entail □_*[C ⊑ ⊥].
bool concept_satisfiable(const KnowledgeBase& kb, const ConceptTerm& query, const TaskOptions& options = {});

// Individuals a of K with K ⊨ □_*[C(a)], sorted.
std::vector<std::string> instances(const KnowledgeBase& kb, const ConceptTerm& query,
                                   const TaskOptions& options = {});

}  // namespace sel
