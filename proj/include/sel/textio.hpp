// Concrete .sel syntax, canonical serializer, and report emitters.
//
//   kb        := (stmt ";")*
//   stmt      := sharpening | modality "[" axiom "]" | axiom | block
//   sharpening:= SP "<=" SP
//   block     := modality "{" (axiom ";")* "}"
//   modality  := "B(" SP ")" | "D(" SP ")"          SP := IDENT | "*"
//   axiom     := concept "<:" concept | concept "(" IDENT ")"
//              | IDENT "(" IDENT "," IDENT ")"
//   concept   := "Top" | "Bot" | IDENT | concept "&" concept
//              | "ex" IDENT "." concept | modality "[" concept "]" | "(" concept ")"
//
// "&" is left-associative, "ex R." extends as far right as possible, and "#"
// starts a line comment.
#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "sel/kb.hpp"
#include "sel/signature.hpp"

namespace sel {

namespace tableau {
class CompletionGraph;
}

struct ParseDiagnostic {
  enum class Kind { Error, Warning };
  int line = 1;
  int column = 1;
  std::string message;
  Kind kind = Kind::Error;
};

std::string to_string(const ParseDiagnostic& d);

template <typename T>
struct ParseResult {
  std::optional<T> value;
  std::vector<ParseDiagnostic> diagnostics;

  bool ok() const { return value.has_value(); }
};

ParseResult<AnnotatedKb> parse(std::string_view text);
// A single statement without the trailing ";" (one is tolerated).
ParseResult<Axiom> parse_axiom(std::string_view text);
ParseResult<ConceptTerm> parse_concept(std::string_view text);

std::string to_string(const ConceptTerm& c);
std::string to_string(const AxiomBody& b);
std::string to_string(const Axiom& a);
std::string to_string(const Formula& f);
std::string to_string(const Block& b);

// Canonical text: one statement per line, sorted by kind (sharpenings, GCIs,
// concept assertions, role assertions, blocks) and then lexicographically.
std::string serialize(const KnowledgeBase& kb);
std::string serialize(const AnnotatedKb& kb);

struct Report {
  struct Clash {
    std::string element;
    std::string variable;
  };
  std::string task;
  std::variant<bool, std::vector<std::string>> answer = false;
  std::optional<std::string> axiom;
  std::optional<std::size_t> rule_applications;
  std::optional<std::size_t> elements;
  std::optional<Clash> clash;
};

// {"task", "answer", "axiom"?, "ruleApplications"?, "elements"?, "clash"?}
std::string emit_json(const Report& report);

// One node per element labelled with its constraint count; one edge per
// quasi-role labelled "R @ (v,v′)".
std::string emit_dot(const tableau::CompletionGraph& graph);

}  // namespace sel
