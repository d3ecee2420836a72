// Completion-graph tableau for normal-form Standpoint EL knowledge bases.
//
// A completion graph holds quasi-elements, each with a constraint system: a set
// of (variable : tag) facts where variables stand for precisifications. Tags are
// concepts of the closure, individual names, subformulas, or standpoint names.
// Every tag kind is interned, and a variable's tags are stored as bit sets.
#pragma once

#include <array>
#include <cstdint>
#include <deque>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "sel/bitset.hpp"
#include "sel/kb.hpp"
#include "sel/signature.hpp"

namespace sel::tableau {

using VarId = std::uint32_t;
using ElemId = std::uint32_t;
inline constexpr std::uint32_t kNone = 0xffffffffu;

// Interned closure of a normal-form knowledge base plus the rule indexes.
class Symbols {
 public:
  explicit Symbols(const KnowledgeBase& kb);

  struct ConceptInfo {
    ConceptTerm term;
    std::uint32_t left = kNone;   // conjunct, filler, or inner concept
    std::uint32_t right = kNone;  // second conjunct
    std::uint32_t name = kNone;   // role or standpoint index
  };
  struct FormulaInfo {
    enum class Kind { Sharpening, Box, Gci, ConceptAssertion, RoleAssertion } kind;
    Formula formula;
    std::uint32_t a = kNone;  // lower sp | box sp | lhs | concept | role
    std::uint32_t b = kNone;  // upper sp | inner formula | rhs | individual | subject
    std::uint32_t c = kNone;  // object
  };

  std::vector<std::string> standpoints;
  std::vector<std::string> individuals;
  std::vector<std::string> roles;
  std::vector<ConceptInfo> concepts;
  std::vector<FormulaInfo> formulas;
  std::uint32_t universal = 0;
  std::uint32_t top = 0;
  std::uint32_t bot = 0;
  std::size_t kb_size = 1;
  // Formulas of the knowledge base itself (S₀ tags every initial variable with them).
  std::vector<std::uint32_t> kb_formulas;

  // Rule indexes.
  std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> conj_partners;   // C -> (D, C⊓D)
  std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> gci_by_lhs;      // C -> (C⊑D, D)
  std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> exists_by_role;  // R -> (C, ∃R.C)
  std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> sharpen_up;      // s -> (s′, s⪯s′)
  std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> assertions_by_ind;  // a -> (C(a), C)
  std::vector<std::vector<std::pair<std::uint32_t, bool>>> role_assertions_by_ind;    // a -> (R(a,b), a is subject)

  std::optional<std::uint32_t> concept_index(const ConceptTerm& c) const;
  std::optional<std::uint32_t> formula_index(const Formula& f) const;
  std::optional<std::uint32_t> standpoint_index(const std::string& s) const;
  std::optional<std::uint32_t> individual_index(const std::string& a) const;
  std::uint32_t exists_index(std::uint32_t role, std::uint32_t filler) const;  // kNone if absent

  bool is_global_formula(std::uint32_t f) const;  // individual tags aside: s⪯s′ and □_sφ

 private:
  std::uint32_t intern(const ConceptTerm& c);
  std::uint32_t intern(const Formula& f);
  std::uint32_t intern_standpoint(const std::string& s);
  std::uint32_t intern_individual(const std::string& a);
  std::uint32_t intern_role(const std::string& r);

  std::unordered_map<ConceptTerm, std::uint32_t, ConceptTermHash> concept_ids_;
  std::map<Formula, std::uint32_t> formula_ids_;
  std::unordered_map<std::string, std::uint32_t> standpoint_ids_, individual_ids_, role_ids_;
  std::unordered_map<std::uint64_t, std::uint32_t> exists_ids_;
};

struct Tag {
  enum class Kind : std::uint8_t { Concept, Individual, Formula, Standpoint };
  Kind kind;
  std::uint32_t index;
  bool operator==(const Tag&) const = default;
};

struct Constraint {
  VarId var;
  Tag tag;
};

enum class Rule : std::uint8_t {
  Sharpen,      // R_⪯   (LL)
  Conjoin,      // R_⊓   (LC)
  Subsume,      // R_⊑   (LC)
  Box,          // R_□   (LC)
  Global,       // R_g   (LC)
  Assert,       // R_a   (LC)
  Diamond,      // R_◇   (LC)
  Down,         // R_↓   (GN)
  RoleForward,  // R_r   (GN)
  RoleBackward, // R_r′  (GN)
  ExistsReuse,  // R_∃′  (GN)
  ExistsGen,    // R_∃   (GG)
};
inline constexpr std::size_t kRuleCount = 12;
enum class RuleClass : std::uint8_t { LL, LC, GN, GG };

RuleClass rule_class(Rule r);
const char* rule_name(Rule r);

enum class VarOrigin : std::uint8_t { Initial, DiamondWitness, ExistsWitness, };

struct VarInfo {
  VarOrigin origin;
  std::uint32_t standpoint = kNone;  // initial variables only
  std::string name;
};

// One variable's slice of a constraint system.
struct VarConstraints {
  VarId id;
  Bitset concepts;
  Bitset formulas;
  Bitset standpoints;
  Bitset individuals;
};

struct Label {
  std::uint32_t term;
  Bitset standpoints;
  VarId var;
};

struct QuasiRole {
  ElemId from;
  VarId from_var;
  ElemId to;
  VarId to_var;
  std::uint32_t role;
  bool operator==(const QuasiRole&) const = default;
};

struct Element {
  std::string name;
  std::vector<VarConstraints> vars;
  std::unordered_map<VarId, std::uint32_t> local;  // variable -> index into vars
  std::vector<Label> labels;
  std::size_t constraint_count = 0;

  // Bookkeeping for R_g and R_□: tags present somewhere in this system.
  Bitset global_formulas;
  Bitset global_individuals;
  std::vector<Tag> globals;
  // Per standpoint s: the Φ with some (x : □_s Φ) in this system.
  std::vector<std::vector<Tag>> boxed;
  std::unordered_set<std::uint64_t> boxed_seen;
  // Quasi-roles touching each local variable, as indexes into the graph's list.
  std::vector<std::vector<std::uint32_t>> outgoing;
  std::vector<std::vector<std::uint32_t>> incoming;

  const VarConstraints* find(VarId v) const {
    auto it = local.find(v);
    return it == local.end() ? nullptr : &vars[it->second];
  }
};

class CompletionGraph {
 public:
  explicit CompletionGraph(std::shared_ptr<const Symbols> symbols);

  const Symbols& symbols() const { return *symbols_; }
  std::shared_ptr<const Symbols> symbols_ptr() const { return symbols_; }

  const std::vector<Element>& elements() const { return elements_; }
  const Element& element(ElemId e) const { return elements_[e]; }
  const std::vector<QuasiRole>& quasi_roles() const { return quasi_roles_; }
  const std::vector<VarInfo>& variables() const { return variables_; }
  VarId initial_variable(std::uint32_t standpoint) const { return initial_vars_[standpoint]; }
  // ε_a, or kNone if a is not an individual of the knowledge base.
  ElemId individual_element(std::uint32_t individual) const { return individual_elems_[individual]; }
  ElemId top_element() const { return 0; }

  bool has(ElemId e, const Constraint& c) const;
  std::size_t constraint_count() const;
  // st_ε(v); empty bit set if v is not in S(ε).
  Bitset standpoint_signature(ElemId e, VarId v) const;

  std::string describe(const Tag& t) const;
  std::string describe(ElemId e, const Constraint& c) const;

  // Direct write access, for hand-built graphs in tests.
  Element& mutable_element(ElemId e) { return elements_[e]; }

 private:
  friend class Engine;

  std::shared_ptr<const Symbols> symbols_;
  std::vector<Element> elements_;
  std::vector<QuasiRole> quasi_roles_;
  std::vector<VarInfo> variables_;
  std::vector<VarId> initial_vars_;
  std::vector<ElemId> individual_elems_;
};

struct RuleCounters {
  std::array<std::uint64_t, kRuleCount> applications{};
  std::uint64_t total() const;
  std::uint64_t operator[](Rule r) const { return applications[static_cast<std::size_t>(r)]; }
  RuleCounters& operator+=(const RuleCounters& o);
};

struct TraceRecord {
  Rule rule;
  std::string element;
  std::string variable;
  std::string added;
};

// Thrown when a run exceeds the polynomial counting bounds; always a bug.
struct BoundExceeded : std::logic_error {
  using std::logic_error::logic_error;
};

struct Options {
  // Hard cap on rule applications, below the 27‖K‖⁶ bound; 0 means no extra cap.
  std::uint64_t max_steps = 0;
  // Re-verify graph invariants and the priority discipline after every step.
  bool check_invariants = false;
  std::function<void(const TraceRecord&)> trace;
};

struct Bounds {
  double rule_applications;
  double elements;
  double variables_per_system;
  double constraints_per_system;
};
Bounds counting_bounds(std::size_t kb_size);

struct Clash {
  ElemId element;
  VarId variable;
};

struct StepResult {
  bool applied = false;
  Rule rule = Rule::Sharpen;
};

// Saturation engine. Rules are applied one at a time; a rule of a lower
// priority class is applied only when every higher class is exhausted.
class Engine {
 public:
  explicit Engine(const KnowledgeBase& normal_kb, Options options = {});

  // Applies one applicable rule of the highest non-empty class.
  StepResult step();
  // Runs to saturation or the first clash.
  void run();

  const CompletionGraph& graph() const { return graph_; }
  const RuleCounters& counters() const { return counters_; }
  const std::optional<Clash>& clash() const { return clash_; }
  bool saturated() const { return saturated_; }

 private:
  enum class TaskKind : std::uint8_t {
    SharpenUp, SharpenVars, BoxToVar, BoxToVars, GlobalToVars, GlobalsToVar, ConceptLocal,
    FormulaLocal, IndividualLocal, DownConcept, DownRole, RoleFormula, RoleIndividual,
    Exists, ExistsGen,
  };
  struct Task {
    TaskKind kind;
    ElemId elem;
    std::uint32_t var;  // local index, or kNone
    std::uint32_t payload;
    std::uint32_t cursor = 0;
  };

  void init();
  ElemId new_element(std::string name);
  void seed_initial_system(ElemId e);
  std::uint32_t add_var(ElemId e, VarId v);
  VarId fresh_var(VarOrigin origin);

  bool add_tag(ElemId e, std::uint32_t lv, Tag t);
  bool add_concept(ElemId e, std::uint32_t lv, std::uint32_t c);
  bool add_formula(ElemId e, std::uint32_t lv, std::uint32_t f);
  bool add_standpoint(ElemId e, std::uint32_t lv, std::uint32_t s);
  bool add_individual(ElemId e, std::uint32_t lv, std::uint32_t a);
  bool has_tag(ElemId e, std::uint32_t lv, Tag t) const;
  void register_global(ElemId e, Tag t);
  void register_boxed(ElemId e, std::uint32_t s, Tag t);
  bool add_quasi_role(const QuasiRole& q);
  bool has_quasi_role(const QuasiRole& q) const;

  void push(RuleClass cls, Task t);
  // Returns true if the task applied a rule; `done` reports exhaustion.
  bool advance(Task& t, bool& done);
  bool exists_satisfied(ElemId e, std::uint32_t lv, std::uint32_t c) const;
  bool exists_reuse(ElemId e, std::uint32_t lv, std::uint32_t c);
  void exists_generate(ElemId e, std::uint32_t lv, std::uint32_t c);
  bool role_link(ElemId e, std::uint32_t lv, std::uint32_t f, bool forward);

  void applied(Rule r, ElemId e, VarId v, Tag t);
  void check_bounds(ElemId touched) const;
  void check_invariants(Rule r) const;

  Options options_;
  std::shared_ptr<const Symbols> symbols_;
  CompletionGraph graph_;
  RuleCounters counters_;
  std::optional<Clash> clash_;
  bool saturated_ = false;
  Bounds bounds_;
  std::array<std::deque<Task>, 4> queues_;
  struct QuasiRoleHash {
    std::size_t operator()(const QuasiRole& q) const {
      std::size_t h = q.from;
      for (std::uint32_t x : {q.from_var, q.to, q.to_var, q.role}) h = h * 1000003u ^ x;
      return h;
    }
  };
  std::unordered_set<QuasiRole, QuasiRoleHash> quasi_role_seen_;
  struct LabelKey {
    std::uint32_t term;
    Bitset standpoints;
    bool operator==(const LabelKey&) const = default;
  };
  struct LabelKeyHash {
    std::size_t operator()(const LabelKey& k) const { return k.standpoints.hash() * 31 + k.term; }
  };
  std::unordered_map<LabelKey, std::vector<std::pair<ElemId, VarId>>, LabelKeyHash> label_index_;
  // Existentials waiting in GG, by the label key they need; a new label with
  // that key sends them back to GN for reuse.
  std::unordered_map<LabelKey, std::vector<Task>, LabelKeyHash> pending_;
  std::size_t generated_elements_ = 0;
  // Set while applying a rule so that add_* can attribute the constraint.
  Rule current_rule_ = Rule::Sharpen;
};

struct Verdict {
  bool satisfiable = false;
  CompletionGraph graph;
  std::optional<Clash> clash;
  RuleCounters counters;
};

// Initial completion graph: ε_⊤ plus one ε_a per individual, before any rule.
CompletionGraph init_graph(const KnowledgeBase& normal_kb);

// Throws std::invalid_argument if the knowledge base is not in normal form.
Verdict saturate(const KnowledgeBase& normal_kb, Options options = {});

// Brute-force applicability scan over the whole graph, independent of the
// engine's worklists: the first rule of class ≤ `up_to` that can fire.
std::optional<Rule> find_applicable(const CompletionGraph& g, RuleClass up_to = RuleClass::GG);

}  // namespace sel::tableau
