#include <gtest/gtest.h>

#include <regex>
#include <sstream>

#include "fuzz.hpp"
#include "sel/normalizer.hpp"
#include "sel/tableau.hpp"
#include "sel/textio.hpp"

namespace sel {
namespace {

using testing::axiom_from;
using testing::concept_from;

const ConceptTerm Tumour = ConceptTerm::atom("Tumour");
const ConceptTerm Tissue = ConceptTerm::atom("Tissue");

TEST(Parse, ModalGci) {
  EXPECT_EQ(axiom_from("B(TT)[Tumour <: Tissue];"), Axiom{box("TT", Gci{Tumour, Tissue})});
}

TEST(Parse, OmittedModalityIsUniversalBox) {
  EXPECT_EQ(axiom_from("Tumour <: Tissue;"), Axiom{global(Gci{Tumour, Tissue})});
}

TEST(Parse, Sharpening) {
  EXPECT_EQ(axiom_from("TT <= SN;"), Axiom(Sharpening{"TT", "SN"}));
  EXPECT_EQ(axiom_from("TT <= *"), Axiom(Sharpening{"TT", "*"}));
}

TEST(Parse, Assertions) {
  EXPECT_EQ(axiom_from("D(SN)[HasPart(a, b)]"), Axiom{diamond("SN", RoleAssertion{"HasPart", "a", "b"})});
  EXPECT_EQ(axiom_from("Colon(a)"), Axiom{global(ConceptAssertion{ConceptTerm::atom("Colon"), "a"})});
  EXPECT_EQ(axiom_from("B(TP)[(ex ProductOf.Tumour)(b)]"),
            Axiom{box("TP", ConceptAssertion{ConceptTerm::exists("ProductOf", Tumour), "b"})});
}

TEST(Parse, Precedence) {
  const ConceptTerm A = ConceptTerm::atom("A"), Bc = ConceptTerm::atom("B"), C = ConceptTerm::atom("C");
  EXPECT_EQ(concept_from("A & B & C"), ConceptTerm::conj(ConceptTerm::conj(A, Bc), C));
  EXPECT_EQ(concept_from("ex R.A & B"), ConceptTerm::exists("R", ConceptTerm::conj(A, Bc)));
  EXPECT_EQ(concept_from("(ex R.A) & B"), ConceptTerm::conj(ConceptTerm::exists("R", A), Bc));
  EXPECT_EQ(concept_from("D(*)[A] & Top"), ConceptTerm::conj(ConceptTerm::diamond("*", A), ConceptTerm::top()));
  EXPECT_EQ(concept_from("B(s)[Bot]"), ConceptTerm::box("s", ConceptTerm::bot()));
}

TEST(Parse, CommentsAndBlocks) {
  const auto r = parse("# header\nA <: B; # trailing\nB(s){ A(a); R(a, b); };\nD(t){};\n");
  ASSERT_TRUE(r.ok());
  EXPECT_EQ(r.value->kb.axiom_count(), 1u);
  ASSERT_EQ(r.value->blocks.size(), 2u);
  EXPECT_EQ(r.value->blocks[0].body.size(), 2u);
  EXPECT_EQ(r.value->blocks[1].mode, Mode::Diamond);
}

TEST(Parse, DiagnosticPosition) {
  const auto r = parse("A <: B;\nB(s)[A <: ];\n");
  ASSERT_FALSE(r.ok());
  ASSERT_FALSE(r.diagnostics.empty());
  EXPECT_EQ(r.diagnostics[0].line, 2);
  EXPECT_EQ(r.diagnostics[0].column, 11);
  EXPECT_EQ(to_string(r.diagnostics[0]).rfind("2:11: ", 0), 0u) << to_string(r.diagnostics[0]);
}

TEST(Parse, Rejects) {
  for (const char* bad : {"A <: B", "A <: B;;", "B(s)[A <: B", "ex R A <: B;", "A(a, b, c);", "B()[A <: B];",
                          "s <= ;", "A <: B; @", "__fA0 <: B;"}) {
    EXPECT_FALSE(parse(bad).ok()) << bad;
  }
  EXPECT_FALSE(parse_concept("A &").ok());
}

TEST(Serialize, Canonical) {
  EXPECT_EQ(serialize(KnowledgeBase{}), "");
  EXPECT_EQ(serialize(KnowledgeBase{global(Gci{ConceptTerm::top(), ConceptTerm::bot()})}), "Top <: Bot;\n");
  const KnowledgeBase kb{global(ConceptAssertion{Tumour, "b"}), box("TT", Gci{Tumour, Tissue}), Sharpening{"TT", "SN"}};
  EXPECT_EQ(serialize(kb), "TT <= SN;\nB(TT)[Tumour <: Tissue];\nTumour(b);\n");
}

TEST(Serialize, RoundTripsEveryCorpusFile) {
  for (const char* file : {"tumour.sel", "tumour_clinic.sel", "tumour_inconsistent.sel", "grammar.sel"}) {
    SCOPED_TRACE(file);
    const auto first = parse(testing::read_file(testing::corpus_path(file)));
    ASSERT_TRUE(first.ok());
    const std::string once = serialize(*first.value);
    const auto second = parse(once);
    ASSERT_TRUE(second.ok()) << once;
    EXPECT_EQ(serialize(*second.value), once);
    EXPECT_EQ(second.value->kb, first.value->kb);
  }
}

TEST(Serialize, RoundTripsGeneratedKbs) {
  testing::KbGenerator gen(3);
  for (int i = 0; i < 300; ++i) {
    const KnowledgeBase kb = gen.next();
    const auto back = parse(serialize(kb));
    ASSERT_TRUE(back.ok()) << serialize(kb);
    EXPECT_EQ(back.value->kb, kb) << serialize(kb);
  }
}

TEST(Report, Json) {
  Report sat{"sat", true};
  sat.rule_applications = 12;
  EXPECT_EQ(emit_json(sat), R"({"task":"sat","answer":true,"ruleApplications":12})");
  Report ent{"entails", true};
  ent.axiom = "B(TT)[Tumour(b)]";
  EXPECT_EQ(emit_json(ent), R"({"task":"entails","answer":true,"axiom":"B(TT)[Tumour(b)]"})");
  Report inst{"instances", std::vector<std::string>{"p1"}};
  EXPECT_EQ(emit_json(inst), R"({"task":"instances","answer":["p1"]})");
}

// digraph ID { (node_stmt | edge_stmt)* } with quoted labels.
bool valid_dot(const std::string& dot) {
  std::istringstream in(dot);
  std::string line;
  const std::regex header(R"(digraph [A-Za-z_][A-Za-z0-9_]* \{)");
  const std::regex node(R"(  n[0-9]+ \[label="([^"\\]|\\.)*"\];)");
  const std::regex edge(R"(  n[0-9]+ -> n[0-9]+ \[label="([^"\\]|\\.)*"\];)");
  if (!std::getline(in, line) || !std::regex_match(line, header)) return false;
  bool closed = false;
  while (std::getline(in, line)) {
    if (closed) return false;
    if (line == "}") {
      closed = true;
      continue;
    }
    if (!std::regex_match(line, node) && !std::regex_match(line, edge)) return false;
  }
  return closed;
}

TEST(Report, DotIsWellFormed) {
  const KnowledgeBase kb = normalize(testing::load_corpus("tumour_clinic.sel")).kb;
  const std::string dot = emit_dot(tableau::saturate(kb).graph);
  EXPECT_TRUE(valid_dot(dot)) << dot;
  EXPECT_NE(dot.find("->"), std::string::npos);
  EXPECT_TRUE(valid_dot(emit_dot(tableau::init_graph(KnowledgeBase{}))));
}

}  // namespace
}  // namespace sel
