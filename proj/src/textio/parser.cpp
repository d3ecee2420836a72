#include <cctype>
#include <stdexcept>

#include "sel/textio.hpp"

namespace sel {
namespace {

enum class Tok {
  Ident, Star, LParen, RParen, LBracket, RBracket, LBrace, RBrace,
  Semi, Comma, Dot, Amp, Sub, Sharp, End
};

struct Token {
  Tok kind;
  std::string text;
  int line;
  int column;
};

struct SyntaxError : std::runtime_error {
  SyntaxError(int l, int c, const std::string& msg) : std::runtime_error(msg), line(l), column(c) {}
  int line;
  int column;
};

const char* describe(Tok t) {
  switch (t) {
    case Tok::Ident: return "identifier";
    case Tok::Star: return "'*'";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::LBracket: return "'['";
    case Tok::RBracket: return "']'";
    case Tok::LBrace: return "'{'";
    case Tok::RBrace: return "'}'";
    case Tok::Semi: return "';'";
    case Tok::Comma: return "','";
    case Tok::Dot: return "'.'";
    case Tok::Amp: return "'&'";
    case Tok::Sub: return "'<:'";
    case Tok::Sharp: return "'<='";
    case Tok::End: return "end of input";
  }
  return "?";
}

// Lexing never fails: unknown characters are reported and skipped.
std::vector<Token> lex(std::string_view text, std::vector<ParseDiagnostic>& diags) {
  std::vector<Token> out;
  int line = 1, col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k, ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else if ((static_cast<unsigned char>(text[i]) & 0xC0) != 0x80) {
        ++col;  // count code points, not UTF-8 continuation bytes
      }
    }
  };
  while (i < text.size()) {
    const char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    if (c == '#') {
      while (i < text.size() && text[i] != '\n') advance(1);
      continue;
    }
    const int l = line, k = col;
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < text.size() &&
             (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_'))
        ++j;
      out.push_back({Tok::Ident, std::string(text.substr(i, j - i)), l, k});
      advance(j - i);
      continue;
    }
    auto single = [&](Tok t) {
      out.push_back({t, std::string(1, c), l, k});
      advance(1);
    };
    switch (c) {
      case '*': single(Tok::Star); continue;
      case '(': single(Tok::LParen); continue;
      case ')': single(Tok::RParen); continue;
      case '[': single(Tok::LBracket); continue;
      case ']': single(Tok::RBracket); continue;
      case '{': single(Tok::LBrace); continue;
      case '}': single(Tok::RBrace); continue;
      case ';': single(Tok::Semi); continue;
      case ',': single(Tok::Comma); continue;
      case '.': single(Tok::Dot); continue;
      case '&': single(Tok::Amp); continue;
      default: break;
    }
    if (c == '<' && i + 1 < text.size() && (text[i + 1] == ':' || text[i + 1] == '=')) {
      out.push_back({text[i + 1] == ':' ? Tok::Sub : Tok::Sharp, std::string(text.substr(i, 2)), l, k});
      advance(2);
      continue;
    }
    std::size_t len = 1;
    const auto lead = static_cast<unsigned char>(c);
    if (lead >= 0xF0) len = 4;
    else if (lead >= 0xE0) len = 3;
    else if (lead >= 0xC0) len = 2;
    len = std::min(len, text.size() - i);
    diags.push_back({l, k, "unknown token '" + std::string(text.substr(i, len)) + "'",
                     ParseDiagnostic::Kind::Error});
    advance(len);
  }
  out.push_back({Tok::End, "", line, col});
  return out;
}

bool is_keyword(const std::string& s) { return s == "Top" || s == "Bot" || s == "ex"; }

// Result of parsing the contents of "modality [ ... ]".
using Bracketed = std::variant<AxiomBody, ConceptTerm>;

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  AnnotatedKb knowledge_base(std::vector<ParseDiagnostic>& diags) {
    AnnotatedKb kb;
    while (peek().kind != Tok::End) {
      try {
        statement(kb);
        expect(Tok::Semi);
      } catch (const SyntaxError& e) {
        diags.push_back({e.line, e.column, e.what(), ParseDiagnostic::Kind::Error});
        recover();
      }
    }
    return kb;
  }

  Axiom single_axiom() {
    AnnotatedKb kb;
    const Token& start = peek();
    statement(kb);
    accept(Tok::Semi);
    expect_end();
    if (!kb.blocks.empty())
      throw SyntaxError(start.line, start.column, "a block is not a single axiom");
    auto all = kb.kb.axioms();
    if (all.size() != 1) throw SyntaxError(start.line, start.column, "expected one axiom");
    return all.front();
  }

  ConceptTerm single_concept() {
    ConceptTerm c = concept_term();
    expect_end();
    return c;
  }

 private:
  const Token& peek(std::size_t ahead = 0) const {
    return toks_[std::min(pos_ + ahead, toks_.size() - 1)];
  }
  const Token& take() {
    const Token& t = toks_[pos_];
    if (pos_ + 1 < toks_.size()) ++pos_;
    return t;
  }
  bool accept(Tok k) {
    if (peek().kind != k) return false;
    take();
    return true;
  }
  [[noreturn]] void fail(const Token& t, const std::string& msg) const {
    throw SyntaxError(t.line, t.column, msg);
  }
  const Token& expect(Tok k) {
    if (peek().kind != k) {
      std::string found = peek().kind == Tok::End ? "end of input" : "'" + peek().text + "'";
      fail(peek(), std::string("expected ") + describe(k) + ", found " + found);
    }
    return take();
  }
  void expect_end() {
    if (peek().kind != Tok::End) fail(peek(), "unexpected '" + peek().text + "'");
  }

  // Skip past the next ';' at bracket depth zero.
  void recover() {
    int depth = 0;
    while (peek().kind != Tok::End) {
      const Tok k = take().kind;
      if (k == Tok::LParen || k == Tok::LBracket || k == Tok::LBrace) ++depth;
      if (k == Tok::RParen || k == Tok::RBracket || k == Tok::RBrace) depth = std::max(0, depth - 1);
      if (k == Tok::Semi && depth == 0) return;
    }
  }

  std::string name(const char* what) {
    const Token& t = expect(Tok::Ident);
    if (is_keyword(t.text)) fail(t, std::string("keyword '") + t.text + "' used as " + what);
    if (t.text.rfind(kReservedPrefix, 0) == 0)
      fail(t, "identifier '" + t.text + "' uses the reserved prefix " + std::string(kReservedPrefix));
    return t.text;
  }

  std::string standpoint() {
    if (accept(Tok::Star)) return kUniversal;
    return name("standpoint");
  }

  // "B" "(" SP ")" followed by "[" or "{".
  bool at_modality() const {
    const Token& t = peek();
    if (t.kind != Tok::Ident || (t.text != "B" && t.text != "D")) return false;
    if (peek(1).kind != Tok::LParen) return false;
    if (peek(2).kind != Tok::Ident && peek(2).kind != Tok::Star) return false;
    if (peek(3).kind != Tok::RParen) return false;
    return peek(4).kind == Tok::LBracket || peek(4).kind == Tok::LBrace;
  }

  std::pair<Mode, std::string> modality() {
    const Token& t = take();
    Mode mode = t.text == "B" ? Mode::Box : Mode::Diamond;
    expect(Tok::LParen);
    std::string sp = standpoint();
    expect(Tok::RParen);
    return {mode, sp};
  }

  bool at_sharpening() const {
    return (peek().kind == Tok::Ident || peek().kind == Tok::Star) && peek(1).kind == Tok::Sharp;
  }

  bool at_role_assertion() const {
    return peek().kind == Tok::Ident && peek(1).kind == Tok::LParen &&
           peek(2).kind == Tok::Ident && peek(3).kind == Tok::Comma;
  }

  void statement(AnnotatedKb& kb) {
    if (at_sharpening()) {
      std::string lower = standpoint();
      expect(Tok::Sharp);
      std::string upper = standpoint();
      kb.kb.add(Sharpening{lower, upper});
      return;
    }
    if (at_modality()) {
      auto [mode, sp] = modality();
      if (accept(Tok::LBrace)) {
        Block block{mode, sp, {}};
        while (!accept(Tok::RBrace)) {
          if (peek().kind == Tok::End) fail(peek(), "unbalanced '{'");
          block.body.push_back(inner_axiom());
          expect(Tok::Semi);
        }
        kb.blocks.push_back(std::move(block));
        return;
      }
      expect(Tok::LBracket);
      Bracketed inner = bracketed();
      expect(Tok::RBracket);
      if (auto* body = std::get_if<AxiomBody>(&inner)) {
        kb.kb.add(ModalAxiom{mode, sp, std::move(*body)});
        return;
      }
      ConceptTerm c = conjunction_tail(ConceptTerm::modal(mode, sp, std::get<ConceptTerm>(inner)));
      kb.kb.add(global(axiom_tail(c)));
      return;
    }
    kb.kb.add(global(inner_axiom()));
  }

  // An axiom that is not allowed to carry its own modality or be a sharpening.
  AxiomBody inner_axiom() {
    if (at_sharpening()) fail(peek(), "sharpening statement inside a modality");
    if (at_role_assertion()) return role_assertion();
    return axiom_tail(concept_term());
  }

  Bracketed bracketed() {
    if (at_sharpening()) fail(peek(), "sharpening statement inside a modality");
    if (at_role_assertion()) return role_assertion();
    ConceptTerm c = concept_term();
    if (peek().kind == Tok::Sub || peek().kind == Tok::LParen) return axiom_tail(c);
    return c;
  }

  AxiomBody role_assertion() {
    RoleAssertion r;
    r.role = name("role");
    expect(Tok::LParen);
    r.subject = name("individual");
    expect(Tok::Comma);
    r.object = name("individual");
    expect(Tok::RParen);
    return r;
  }

  AxiomBody axiom_tail(const ConceptTerm& c) {
    if (accept(Tok::Sub)) return Gci{c, concept_term()};
    if (accept(Tok::LParen)) {
      std::string ind = name("individual");
      expect(Tok::RParen);
      return ConceptAssertion{c, ind};
    }
    fail(peek(), "expected '<:' or '(' after concept, found '" + peek().text + "'");
  }

  ConceptTerm conjunction_tail(ConceptTerm c) {
    while (accept(Tok::Amp)) c = ConceptTerm::conj(std::move(c), unary());
    return c;
  }

  ConceptTerm concept_term() { return conjunction_tail(unary()); }

  ConceptTerm unary() {
    const Token& t = peek();
    if (t.kind == Tok::LParen) {
      take();
      ConceptTerm c = concept_term();
      if (peek().kind != Tok::RParen) fail(peek(), "unbalanced '('");
      take();
      return c;
    }
    if (t.kind != Tok::Ident) fail(t, "expected concept, found '" + t.text + "'");
    if (t.text == "Top") {
      take();
      return ConceptTerm::top();
    }
    if (t.text == "Bot") {
      take();
      return ConceptTerm::bot();
    }
    if (t.text == "ex") {
      take();
      std::string role = name("role");
      expect(Tok::Dot);
      return ConceptTerm::exists(role, concept_term());
    }
    if (at_modality() && peek(4).kind == Tok::LBracket) {
      auto [mode, sp] = modality();
      expect(Tok::LBracket);
      ConceptTerm inner = concept_term();
      if (peek().kind != Tok::RBracket) fail(peek(), "unbalanced '['");
      take();
      return ConceptTerm::modal(mode, sp, inner);
    }
    return ConceptTerm::atom(name("concept"));
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

template <typename T, typename F>
ParseResult<T> run(std::string_view text, F&& f) {
  ParseResult<T> result;
  auto toks = lex(text, result.diagnostics);
  Parser p(std::move(toks));
  try {
    T value = f(p, result.diagnostics);
    if (result.diagnostics.empty()) result.value = std::move(value);
  } catch (const SyntaxError& e) {
    result.diagnostics.push_back({e.line, e.column, e.what(), ParseDiagnostic::Kind::Error});
  }
  return result;
}

}  // namespace

std::string to_string(const ParseDiagnostic& d) {
  return std::to_string(d.line) + ":" + std::to_string(d.column) + ": " +
         (d.kind == ParseDiagnostic::Kind::Error ? "error: " : "warning: ") + d.message;
}

ParseResult<AnnotatedKb> parse(std::string_view text) {
  return run<AnnotatedKb>(text, [](Parser& p, auto& diags) { return p.knowledge_base(diags); });
}

ParseResult<Axiom> parse_axiom(std::string_view text) {
  return run<Axiom>(text, [](Parser& p, auto&) { return p.single_axiom(); });
}

ParseResult<ConceptTerm> parse_concept(std::string_view text) {
  return run<ConceptTerm>(text, [](Parser& p, auto&) { return p.single_concept(); });
}

}  // namespace sel
