#include "sel/concept.hpp"

#include <functional>

namespace sel {

struct ConceptTerm::Node {
  Kind kind;
  std::string name;
  ConceptTerm a;
  ConceptTerm b;
  std::size_t size = 1;
  std::size_t hash = 0;
  bool has_children = false;
};

ConceptTerm ConceptTerm::top() {
  static const ConceptTerm t = [] {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Top;
    n->hash = 0x9e3779b97f4a7c15ull;
    return ConceptTerm(std::move(n));
  }();
  return t;
}

ConceptTerm ConceptTerm::bot() {
  static const ConceptTerm t = [] {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Bot;
    n->hash = 0x7f4a7c159e3779b9ull;
    return ConceptTerm(std::move(n));
  }();
  return t;
}

namespace {

std::size_t mix(std::size_t h, std::size_t v) {
  return h ^ (v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2));
}

}  // namespace

ConceptTerm ConceptTerm::atom(std::string name) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Atom;
  n->hash = mix(static_cast<std::size_t>(Kind::Atom), std::hash<std::string>{}(name));
  n->name = std::move(name);
  return ConceptTerm(std::move(n));
}

ConceptTerm ConceptTerm::conj(ConceptTerm left, ConceptTerm right) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::And;
  n->size = 1 + left.size() + right.size();
  n->hash = mix(mix(static_cast<std::size_t>(Kind::And), left.hash()), right.hash());
  n->a = std::move(left);
  n->b = std::move(right);
  n->has_children = true;
  return ConceptTerm(std::move(n));
}

namespace {

template <typename NodeT>
std::shared_ptr<NodeT> unary(ConceptTerm::Kind kind, std::string name, ConceptTerm sub) {
  auto n = std::make_shared<NodeT>();
  n->kind = kind;
  n->size = 1 + sub.size();
  n->hash = mix(mix(static_cast<std::size_t>(kind), std::hash<std::string>{}(name)), sub.hash());
  n->name = std::move(name);
  n->a = std::move(sub);
  n->has_children = true;
  return n;
}

}  // namespace

ConceptTerm ConceptTerm::exists(std::string role, ConceptTerm filler) {
  return ConceptTerm(unary<Node>(Kind::Exists, std::move(role), std::move(filler)));
}

ConceptTerm ConceptTerm::box(std::string standpoint, ConceptTerm inner) {
  return ConceptTerm(unary<Node>(Kind::Box, std::move(standpoint), std::move(inner)));
}

ConceptTerm ConceptTerm::diamond(std::string standpoint, ConceptTerm inner) {
  return ConceptTerm(unary<Node>(Kind::Diamond, std::move(standpoint), std::move(inner)));
}

ConceptTerm ConceptTerm::modal(Mode mode, std::string standpoint, ConceptTerm inner) {
  return mode == Mode::Box ? box(std::move(standpoint), std::move(inner))
                           : diamond(std::move(standpoint), std::move(inner));
}

// A null node reads as ⊤; it also terminates the child slots of leaf nodes.
ConceptTerm::ConceptTerm() : node_(nullptr) {}

ConceptTerm::Kind ConceptTerm::kind() const { return node_ ? node_->kind : Kind::Top; }

const std::string& ConceptTerm::name() const {
  static const std::string empty;
  return node_ ? node_->name : empty;
}

const ConceptTerm& ConceptTerm::left() const {
  static const ConceptTerm none;
  return node_ && node_->has_children ? node_->a : none;
}

const ConceptTerm& ConceptTerm::right() const {
  static const ConceptTerm none;
  return node_ && node_->has_children ? node_->b : none;
}

std::size_t ConceptTerm::size() const { return node_ ? node_->size : 1; }

std::size_t ConceptTerm::hash() const { return node_ ? node_->hash : 0x9e3779b97f4a7c15ull; }

bool operator==(const ConceptTerm& x, const ConceptTerm& y) {
  if (x.node_ == y.node_) return true;
  if (x.hash() != y.hash() || x.kind() != y.kind()) return false;
  return (x <=> y) == 0;
}

std::strong_ordering operator<=>(const ConceptTerm& x, const ConceptTerm& y) {
  if (x.node_ == y.node_) return std::strong_ordering::equal;
  if (auto c = x.kind() <=> y.kind(); c != 0) return c;
  switch (x.kind()) {
    case ConceptTerm::Kind::Top:
    case ConceptTerm::Kind::Bot:
      return std::strong_ordering::equal;
    case ConceptTerm::Kind::Atom:
      return x.name() <=> y.name();
    case ConceptTerm::Kind::And:
      if (auto c = x.left() <=> y.left(); c != 0) return c;
      return x.right() <=> y.right();
    case ConceptTerm::Kind::Exists:
    case ConceptTerm::Kind::Box:
    case ConceptTerm::Kind::Diamond:
      if (auto c = x.name() <=> y.name(); c != 0) return c;
      return x.inner() <=> y.inner();
  }
  return std::strong_ordering::equal;
}

}  // namespace sel
