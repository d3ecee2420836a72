// Explicit finite standpoint structures, the direct semantics, and bounded
// model search.
#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "sel/bitset.hpp"
#include "sel/kb.hpp"

namespace sel {

struct Interpretation {
  std::map<std::string, Bitset> concepts;             // name -> subset of Δ
  std::map<std::string, std::vector<Bitset>> roles;   // name -> successors of each d
};

// ⟨Δ, Π, σ, γ⟩ with Δ = {0..domain-1} and Π = {0..precisifications-1}.
// Individuals are rigid, so they map to elements once for all precisifications.
struct StandpointStructure {
  std::size_t domain = 1;
  std::size_t precisifications = 1;
  std::map<std::string, Bitset> sigma;  // over Π
  std::vector<Interpretation> gamma;    // one per precisification
  std::map<std::string, std::size_t> individuals;
  // Require σ(*) = Π when checking satisfaction.
  bool universal_star = true;
};

struct OracleError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Extension of a concept at precisification pi; throws OracleError on unknown names.
Bitset eval_concept(const StandpointStructure& d, std::size_t pi, const ConceptTerm& c);

bool satisfies(const StandpointStructure& d, const Axiom& axiom);
bool satisfies(const StandpointStructure& d, const KnowledgeBase& kb);
// Structural validity: non-empty Δ, Π and σ values, σ(*) = Π when required,
// matching vector sizes.
bool well_formed(const StandpointStructure& d);

struct SearchOptions {
  // Only allow σ(*) = Π.
  bool universal_star = true;
  // Return the lexicographically smallest (|Δ|, |Π|) model rather than any
  // model within the bounds.
  bool minimal = true;
  // Clause budget for one grounding; exceeding it throws SearchBudgetExceeded.
  std::size_t max_clauses = 4'000'000;
  std::uint64_t max_conflicts = 2'000'000;
};

struct SearchBudgetExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A structure with |Δ| ≤ max_domain and |Π| ≤ max_precisifications satisfying
// kb, or nullopt if none exists within the bounds.
std::optional<StandpointStructure> search_model(const KnowledgeBase& kb, std::size_t max_domain,
                                                std::size_t max_precisifications,
                                                const SearchOptions& options = {});

// A structure within the bounds satisfying kb but not `axiom`.
std::optional<StandpointStructure> search_countermodel(const KnowledgeBase& kb, const Axiom& axiom,
                                                       std::size_t max_domain,
                                                       std::size_t max_precisifications,
                                                       const SearchOptions& options = {});

// {"domain", "precisifications", "sigma", "individuals", "interpretations"}.
std::string structure_to_json(const StandpointStructure& d);

}  // namespace sel
