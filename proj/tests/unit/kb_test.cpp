#include <gtest/gtest.h>

#include "fuzz.hpp"
#include "sel/kb.hpp"
#include "sel/signature.hpp"

namespace sel {
namespace {

using testing::axiom_from;
using testing::concept_from;
using testing::kb_from;

const ConceptTerm A = ConceptTerm::atom("A");
const ConceptTerm B = ConceptTerm::atom("B");

TEST(ConceptTerm, StructuralEquality) {
  EXPECT_EQ(ConceptTerm::conj(A, B), ConceptTerm::conj(ConceptTerm::atom("A"), B));
  EXPECT_NE(ConceptTerm::conj(A, B), ConceptTerm::conj(B, A));
  EXPECT_NE(ConceptTerm::box("s", A), ConceptTerm::diamond("s", A));
  EXPECT_EQ(ConceptTerm(), ConceptTerm::top());
  EXPECT_EQ(ConceptTerm::exists("R", A).hash(), ConceptTerm::exists("R", A).hash());
  EXPECT_EQ(ConceptTerm::exists("R", ConceptTerm::conj(A, B)).size(), 4u);
  EXPECT_EQ(ConceptTerm::modal(Mode::Diamond, "s", A), ConceptTerm::diamond("s", A));
}

TEST(KnowledgeBase, PartitionsAxioms) {
  KnowledgeBase kb{Sharpening{"s", "*"}, box("s", Gci{A, B}), diamond("t", ConceptAssertion{A, "a"}),
                   global(RoleAssertion{"R", "a", "b"})};
  EXPECT_EQ(kb.sbox().size(), 1u);
  EXPECT_EQ(kb.tbox().size(), 1u);
  EXPECT_EQ(kb.abox().size(), 2u);
  EXPECT_EQ(kb.axiom_count(), 4u);
  EXPECT_TRUE(kb.contains(global(RoleAssertion{"R", "a", "b"})));
  kb.add(box("s", Gci{A, B}));
  EXPECT_EQ(kb.axiom_count(), 4u);
  EXPECT_TRUE(std::holds_alternative<Sharpening>(kb.axioms().front()));
}

TEST(TokenSize, Counts) {
  EXPECT_EQ(token_size(KnowledgeBase{}), 1u);
  EXPECT_EQ(token_size(ConceptTerm::exists("R", ConceptTerm::conj(A, B))), 5u);
  EXPECT_EQ(token_size(Axiom{Sharpening{"s", "t"}}), 4u);
  const KnowledgeBase kb{box("TT", Gci{A, B})};
  EXPECT_EQ(token_size(kb), 7u);
}

TEST(Signature, EmptyKb) {
  const Signature s = signature(KnowledgeBase{});
  EXPECT_EQ(s.standpoints, std::set<std::string>{"*"});
  EXPECT_TRUE(s.individuals.empty());
  EXPECT_EQ(s.basic_concepts, std::set<ConceptTerm>{ConceptTerm::top()});
  EXPECT_EQ(s.size, 1u);
}

TEST(Signature, SingleGci) {
  const ConceptTerm tumour = ConceptTerm::atom("Tumour"), tissue = ConceptTerm::atom("Tissue");
  const ModalAxiom ax = box("TT", Gci{tumour, tissue});
  const Signature s = signature(KnowledgeBase{ax});
  EXPECT_EQ(s.standpoints, (std::set<std::string>{"*", "TT"}));
  EXPECT_EQ(s.basic_concepts, (std::set<ConceptTerm>{ConceptTerm::top(), tumour, tissue}));
  EXPECT_TRUE(s.concept_closure.count(tumour) && s.concept_closure.count(tissue));
  EXPECT_EQ(s.subformulas, (std::set<Formula>{ax, Gci{tumour, tissue}}));
}

TEST(Signature, CorpusIndividualsAndStandpoints) {
  const Signature s = signature(testing::load_corpus("tumour.sel"));
  EXPECT_EQ(s.individuals, (std::set<std::string>{"a", "b", "p1"}));
  for (const char* sp : {"*", "SN", "TP", "TT"}) EXPECT_TRUE(s.standpoints.count(sp)) << sp;
}

TEST(Signature, ClosureIncludesNestedTerms) {
  const Signature s = signature(KnowledgeBase{axiom_from("B(s)[ex R.(A & D(t)[C]) <: Bot]")});
  EXPECT_TRUE(s.concept_closure.count(concept_from("D(t)[C]")));
  EXPECT_TRUE(s.concept_closure.count(concept_from("C")));
  EXPECT_TRUE(s.standpoints.count("t"));
  EXPECT_EQ(s.roles, std::set<std::string>{"R"});
}

TEST(NormalForm, Shapes) {
  EXPECT_TRUE(is_normal_form(axiom_from("B(TT)[Tumour <: Tissue]")));
  EXPECT_FALSE(is_normal_form(axiom_from("D(SN)[Tumour <: Tissue]")));
  EXPECT_FALSE(is_normal_form(axiom_from("ex R.(A & B) <: C")));
  EXPECT_TRUE(is_normal_form(axiom_from("A & Top <: Bot")));
  EXPECT_TRUE(is_normal_form(axiom_from("ex R.Top <: B")));
  EXPECT_TRUE(is_normal_form(axiom_from("A <: ex R.Bot")));
  EXPECT_TRUE(is_normal_form(axiom_from("A <: D(s)[B]")));
  EXPECT_TRUE(is_normal_form(axiom_from("A <: B(s)[Bot]")));
  EXPECT_FALSE(is_normal_form(axiom_from("A <: B & C")));
  EXPECT_FALSE(is_normal_form(axiom_from("B(s)[A] <: C")));
  EXPECT_FALSE(is_normal_form(axiom_from("Bot <: C")));
  EXPECT_FALSE(is_normal_form(axiom_from("A <: Top")));
  EXPECT_TRUE(is_normal_form(axiom_from("B(s)[A(a)]")));
  EXPECT_FALSE(is_normal_form(axiom_from("B(s)[(A & B)(a)]")));
  EXPECT_TRUE(is_normal_form(axiom_from("B(s)[R(a, b)]")));
  EXPECT_FALSE(is_normal_form(axiom_from("D(s)[R(a, b)]")));
  EXPECT_TRUE(is_normal_form(axiom_from("s <= t")));
  EXPECT_TRUE(is_normal_form(KnowledgeBase{}));
}

TEST(FreshNames, AvoidUsedNames) {
  FreshNames fresh({"__fA0", "__fA1"});
  const std::string a = fresh.concept_name();
  EXPECT_EQ(a, "__fA2");
  EXPECT_NE(fresh.concept_name(), a);
  EXPECT_EQ(fresh.standpoint().rfind("__fS", 0), 0u);
  EXPECT_EQ(fresh.role().rfind("__fR", 0), 0u);
}

TEST(Desugar, BoxBlock) {
  const KnowledgeBase kb = kb_from("B(SN){ Patient(p1); HasPart(p1, a); Colon(a); };");
  EXPECT_EQ(kb, (KnowledgeBase{axiom_from("B(SN)[Patient(p1)]"), axiom_from("B(SN)[HasPart(p1, a)]"),
                               axiom_from("B(SN)[Colon(a)]")}));
}

TEST(Desugar, DiamondBlockUsesFreshStandpoint) {
  const KnowledgeBase kb = kb_from("D(SN){ Tumour(b); };");
  ASSERT_EQ(kb.sbox().size(), 1u);
  const Sharpening sh = *kb.sbox().begin();
  EXPECT_EQ(sh.upper, "SN");
  EXPECT_EQ(sh.lower.rfind(kReservedPrefix, 0), 0u);
  EXPECT_TRUE(kb.contains(box(sh.lower, ConceptAssertion{ConceptTerm::atom("Tumour"), "b"})));
  EXPECT_EQ(kb.axiom_count(), 2u);
}

TEST(Desugar, NoBlocksIsIdentity) {
  AnnotatedKb akb;
  akb.kb = KnowledgeBase{axiom_from("A <: B"), axiom_from("s <= t")};
  EXPECT_EQ(desugar_blocks(akb), akb.kb);
}

}  // namespace
}  // namespace sel
