// Abstract syntax of Standpoint EL knowledge bases.
#pragma once

#include <compare>
#include <cstddef>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "sel/concept.hpp"

namespace sel {

// Names with this prefix are reserved for generated symbols.
inline constexpr std::string_view kReservedPrefix = "__f";

struct Gci {
  ConceptTerm lhs;
  ConceptTerm rhs;
  auto operator<=>(const Gci&) const = default;
  bool operator==(const Gci&) const = default;
};

struct ConceptAssertion {
  ConceptTerm term;
  std::string individual;
  auto operator<=>(const ConceptAssertion&) const = default;
  bool operator==(const ConceptAssertion&) const = default;
};

struct RoleAssertion {
  std::string role;
  std::string subject;
  std::string object;
  auto operator<=>(const RoleAssertion&) const = default;
  bool operator==(const RoleAssertion&) const = default;
};

// s ⪯ s′: every precisification of `lower` belongs to `upper`.
struct Sharpening {
  std::string lower;
  std::string upper;
  auto operator<=>(const Sharpening&) const = default;
  bool operator==(const Sharpening&) const = default;
};

// The part of an axiom under its outer modality.
using AxiomBody = std::variant<Gci, ConceptAssertion, RoleAssertion>;

struct ModalAxiom {
  Mode mode = Mode::Box;
  std::string standpoint = kUniversal;
  AxiomBody body;
  auto operator<=>(const ModalAxiom&) const = default;
  bool operator==(const ModalAxiom&) const = default;

  bool is_gci() const { return std::holds_alternative<Gci>(body); }
  bool is_concept_assertion() const { return std::holds_alternative<ConceptAssertion>(body); }
  bool is_role_assertion() const { return std::holds_alternative<RoleAssertion>(body); }
};

using Axiom = std::variant<Sharpening, ModalAxiom>;

// A subformula: any axiom, or an axiom body stripped of its outer modality.
using Formula = std::variant<Sharpening, ModalAxiom, Gci, ConceptAssertion, RoleAssertion>;

ModalAxiom box(std::string standpoint, AxiomBody body);
ModalAxiom diamond(std::string standpoint, AxiomBody body);
ModalAxiom global(AxiomBody body);  // □_*

class KnowledgeBase {
 public:
  KnowledgeBase() = default;
  KnowledgeBase(std::initializer_list<Axiom> axioms);

  void add(const Axiom& axiom);
  void add(const KnowledgeBase& other);

  const std::set<Sharpening>& sbox() const { return sbox_; }
  const std::set<ModalAxiom>& tbox() const { return tbox_; }
  const std::set<ModalAxiom>& abox() const { return abox_; }

  // All axioms, SBox first, then TBox, then ABox.
  std::vector<Axiom> axioms() const;
  std::size_t axiom_count() const { return sbox_.size() + tbox_.size() + abox_.size(); }
  bool empty() const { return axiom_count() == 0; }

  bool contains(const Axiom& axiom) const;

  friend bool operator==(const KnowledgeBase&, const KnowledgeBase&) = default;

 private:
  std::set<Sharpening> sbox_;
  std::set<ModalAxiom> tbox_;
  std::set<ModalAxiom> abox_;
};

// Whole-set annotation □_s{φ₁..φₙ} or ◇_s{φ₁..φₙ}.
struct Block {
  Mode mode = Mode::Box;
  std::string standpoint = kUniversal;
  std::vector<AxiomBody> body;
  auto operator<=>(const Block&) const = default;
  bool operator==(const Block&) const = default;
};

// A knowledge base as written, possibly with block annotations.
struct AnnotatedKb {
  KnowledgeBase kb;
  std::vector<Block> blocks;
  bool operator==(const AnnotatedKb&) const = default;
};

// Token count: every name occurrence, connective, and axiom delimiter, plus
// one for the end of input so that the empty knowledge base has size 1.
std::size_t token_size(const ConceptTerm& c);
std::size_t token_size(const Axiom& a);
std::size_t token_size(const KnowledgeBase& kb);

}  // namespace sel
