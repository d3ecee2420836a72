// Rewriting of arbitrary knowledge bases into normal form (rules 11 to 22).
#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "sel/kb.hpp"
#include "sel/signature.hpp"

namespace sel {

inline constexpr int kFirstNormalizationRule = 11;
inline constexpr int kLastNormalizationRule = 22;

struct NormalizationStep {
  int rule;
  Axiom replaced;
  std::vector<Axiom> replacements;
};

struct NormalizationResult {
  KnowledgeBase kb;
  std::set<std::string> introduced_concepts;
  std::set<std::string> introduced_standpoints;
  std::vector<NormalizationStep> trace;
};

// Axioms are taken from a FIFO worklist; each non-normal axiom is replaced by
// the first rule, in numeric order, whose left-hand side it matches.
NormalizationResult normalize(const KnowledgeBase& kb);
// Draws fresh names from `fresh`, which must already avoid kb's names.
NormalizationResult normalize(const KnowledgeBase& kb, FreshNames& fresh);

// The replacement set of one rule, or nullopt if `axiom` does not match it.
std::optional<std::vector<Axiom>> apply_rule(int rule, const Axiom& axiom, FreshNames& fresh);

// Zero exactly on normal-form axioms; every rule application strictly lowers
// the sum over the replaced axiom.
std::size_t normalization_measure(const Axiom& axiom);
std::size_t normalization_measure(const KnowledgeBase& kb);

}  // namespace sel
