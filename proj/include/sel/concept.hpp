#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <string>

namespace sel {

inline constexpr const char* kUniversal = "*";

enum class Mode : std::uint8_t { Box, Diamond };

inline Mode dual(Mode m) { return m == Mode::Box ? Mode::Diamond : Mode::Box; }

// Immutable concept term. Copies share structure; comparison is structural.
class ConceptTerm {
 public:
  enum class Kind : std::uint8_t { Top, Bot, Atom, And, Exists, Box, Diamond };

  static ConceptTerm top();
  static ConceptTerm bot();
  static ConceptTerm atom(std::string name);
  static ConceptTerm conj(ConceptTerm left, ConceptTerm right);
  static ConceptTerm exists(std::string role, ConceptTerm filler);
  static ConceptTerm box(std::string standpoint, ConceptTerm inner);
  static ConceptTerm diamond(std::string standpoint, ConceptTerm inner);
  static ConceptTerm modal(Mode mode, std::string standpoint, ConceptTerm inner);

  // Default-constructed terms are Top.
  ConceptTerm();

  Kind kind() const;
  bool is(Kind k) const { return kind() == k; }
  bool is_modal() const { return is(Kind::Box) || is(Kind::Diamond); }
  // Atom/⊤: the basic concepts.
  bool is_basic() const { return is(Kind::Atom) || is(Kind::Top); }

  // Concept name for Atom, role for Exists, standpoint for Box/Diamond.
  const std::string& name() const;
  // Left conjunct, or the filler/inner term of Exists/Box/Diamond.
  const ConceptTerm& left() const;
  const ConceptTerm& right() const;
  const ConceptTerm& filler() const { return left(); }
  const ConceptTerm& inner() const { return left(); }

  // Number of constructor nodes.
  std::size_t size() const;
  std::size_t hash() const;

  friend bool operator==(const ConceptTerm& a, const ConceptTerm& b);
  friend std::strong_ordering operator<=>(const ConceptTerm& a, const ConceptTerm& b);

 private:
  struct Node;
  explicit ConceptTerm(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

struct ConceptTermHash {
  std::size_t operator()(const ConceptTerm& c) const { return c.hash(); }
};

}  // namespace sel
