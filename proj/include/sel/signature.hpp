#pragma once

#include <set>
#include <string>

#include "sel/kb.hpp"

namespace sel {

struct Signature {
  std::set<std::string> standpoints;  // always contains *
  std::set<std::string> individuals;
  std::set<std::string> concept_names;
  std::set<std::string> roles;
  std::set<ConceptTerm> basic_concepts;   // concept names plus ⊤
  std::set<ConceptTerm> concept_closure;  // every concept term, nested ones included
  std::set<Formula> subformulas;          // axioms with and without outer modality
  std::size_t size = 0;                   // token_size of the knowledge base

  // Every name in any namespace; used to keep fresh names from colliding.
  std::set<std::string> all_names() const;
};

Signature signature(const KnowledgeBase& kb);
Signature signature(const AnnotatedKb& kb);

// Normal form: GCIs □_s[C ⊑ D] with C ∈ {A, ∃R.A, A⊓A′} (A, A′ names or ⊤) and
// D ∈ {B, ∃R.B, ◇_{s′}B, □_{s′}B} (B a name or ⊥); assertions □_s[A(a)] and
// □_s[R(a,b)]; sharpenings unrestricted.
bool is_normal_form(const Axiom& axiom);
bool is_normal_form(const KnowledgeBase& kb);

// Generates names "__f<kind><n>" that avoid a given set of used names.
class FreshNames {
 public:
  FreshNames() = default;
  explicit FreshNames(std::set<std::string> used) : used_(std::move(used)) {}

  std::string concept_name() { return next('A'); }
  std::string standpoint() { return next('S'); }
  std::string role() { return next('R'); }

  void reserve(const std::set<std::string>& names) { used_.insert(names.begin(), names.end()); }

 private:
  std::string next(char kind);
  std::set<std::string> used_;
  std::size_t counter_ = 0;
};

// □_s{Φ} becomes {□_s φ | φ ∈ Φ}; ◇_s{Φ} becomes {v ⪯ s} ∪ {□_v φ | φ ∈ Φ}
// for a fresh standpoint v.
KnowledgeBase desugar_blocks(const AnnotatedKb& kb, FreshNames& fresh);
KnowledgeBase desugar_blocks(const AnnotatedKb& kb);

}  // namespace sel
