#include <gtest/gtest.h>

#include <json.hpp>
#include <random>

#include "fuzz.hpp"
#include "sel/detail/sat.hpp"
#include "sel/oracle.hpp"
#include "sel/textio.hpp"

namespace sel {
namespace {

using testing::concept_from;
using testing::kb_from;

Bitset bits(std::size_t n, std::initializer_list<std::size_t> on) {
  Bitset b(n);
  for (std::size_t i : on) b.set(i);
  return b;
}

// Δ = {0,1}, Π = {0,1}, σ(s) = σ(*) = Π, A = {0} at π₀ only, R = {(0,1)} at both.
StandpointStructure two_worlds() {
  StandpointStructure d;
  d.domain = 2;
  d.precisifications = 2;
  d.sigma["*"] = bits(2, {0, 1});
  d.sigma["s"] = bits(2, {0, 1});
  d.gamma.resize(2);
  d.gamma[0].concepts["A"] = bits(2, {0});
  d.gamma[1].concepts["A"] = bits(2, {});
  for (auto& g : d.gamma) {
    g.concepts["B"] = bits(2, {1});
    g.roles["R"] = {bits(2, {1}), bits(2, {})};
  }
  d.individuals["a"] = 0;
  return d;
}

TEST(EvalConcept, TopIsDomain) {
  const auto d = two_worlds();
  EXPECT_EQ(eval_concept(d, 0, ConceptTerm::top()), bits(2, {0, 1}));
  EXPECT_EQ(eval_concept(d, 0, ConceptTerm::bot()), bits(2, {}));
}

TEST(EvalConcept, Modalities) {
  const auto d = two_worlds();
  for (std::size_t pi : {0u, 1u}) {
    EXPECT_EQ(eval_concept(d, pi, concept_from("D(s)[A]")), bits(2, {0}));
    EXPECT_EQ(eval_concept(d, pi, concept_from("B(s)[A]")), bits(2, {}));
  }
}

TEST(EvalConcept, ExistsAndConjunction) {
  const auto d = two_worlds();
  EXPECT_EQ(eval_concept(d, 0, concept_from("ex R.B")), bits(2, {0}));
  EXPECT_EQ(eval_concept(d, 0, concept_from("A & ex R.B")), bits(2, {0}));
  EXPECT_EQ(eval_concept(d, 1, concept_from("A & ex R.B")), bits(2, {}));
  EXPECT_THROW(eval_concept(d, 0, concept_from("Unknown")), OracleError);
}

TEST(Satisfies, Axioms) {
  const auto d = two_worlds();
  EXPECT_TRUE(satisfies(d, KnowledgeBase{}));
  EXPECT_TRUE(well_formed(d));
  EXPECT_FALSE(satisfies(d, kb_from("D(s)[A(a)]; R(a, a);")));
  EXPECT_TRUE(satisfies(d, kb_from("(ex R.B)(a); A <: ex R.B;")));
  EXPECT_TRUE(satisfies(d, kb_from("D(s)[A(a)]; s <= *; * <= s; ex R.B <: Top;")));
  EXPECT_FALSE(satisfies(d, kb_from("B(s)[A(a)];")));
  EXPECT_FALSE(satisfies(d, kb_from("B(*)[Top <: Bot];")));
  EXPECT_TRUE(satisfies(d, kb_from("D(*)[A <: Bot];")));
}

TEST(Satisfies, SingleWorldTaxonomy) {
  StandpointStructure d;
  d.domain = 2;
  d.sigma["*"] = bits(1, {0});
  d.sigma["TT"] = bits(1, {0});
  d.gamma.resize(1);
  d.gamma[0].concepts["Tumour"] = bits(2, {0});
  d.gamma[0].concepts["Tissue"] = bits(2, {0, 1});
  EXPECT_TRUE(satisfies(d, kb_from("B(TT)[Tumour <: Tissue]; TT <= *;")));
  EXPECT_FALSE(satisfies(d, kb_from("B(TT)[Tissue <: Tumour];")));
}

TEST(Satisfies, TopBotHasNoModel) {
  const KnowledgeBase kb{global(Gci{ConceptTerm::top(), ConceptTerm::bot()})};
  EXPECT_FALSE(satisfies(two_worlds(), kb));
  EXPECT_FALSE(search_model(kb, 3, 3).has_value());
}

TEST(WellFormed, RejectsBrokenStructures) {
  auto d = two_worlds();
  d.sigma["s"] = bits(2, {});
  EXPECT_FALSE(well_formed(d));
  d = two_worlds();
  d.sigma["*"] = bits(2, {0});
  EXPECT_FALSE(well_formed(d));
  d = two_worlds();
  d.gamma.pop_back();
  EXPECT_FALSE(well_formed(d));
}

TEST(Search, EmptyKbHasSmallestModel) {
  const auto m = search_model(KnowledgeBase{}, 3, 3);
  ASSERT_TRUE(m.has_value());
  EXPECT_EQ(m->domain, 1u);
  EXPECT_EQ(m->precisifications, 1u);
}

TEST(Search, SmallKbs) {
  const KnowledgeBase unsat = kb_from("D(s)[A(a)]; B(s)[A <: Bot];");
  for (std::size_t n = 1; n <= 3; ++n) EXPECT_FALSE(search_model(unsat, n, n).has_value());
  const KnowledgeBase sat = kb_from("B(TT)[Tumour <: Tissue]; B(*)[Tissue & Process <: Bot]; D(*)[Tumour & Process <: Bot];");
  const auto m = search_model(sat, 2, 2);
  ASSERT_TRUE(m.has_value());
  EXPECT_TRUE(satisfies(*m, sat));
}

TEST(Search, NeedsTwoPrecisifications) {
  const KnowledgeBase kb = kb_from("D(*)[A(a)]; D(*)[B(a)]; A & B <: Bot;");
  EXPECT_FALSE(search_model(kb, 2, 1).has_value());
  const auto m = search_model(kb, 2, 2);
  ASSERT_TRUE(m.has_value());
  EXPECT_EQ(m->precisifications, 2u);
  EXPECT_TRUE(satisfies(*m, kb));
}

TEST(Search, Countermodel) {
  const KnowledgeBase kb = kb_from("A <: B; A(a);");
  EXPECT_FALSE(search_countermodel(kb, testing::axiom_from("B(a)"), 3, 3).has_value());
  const auto m = search_countermodel(kb, testing::axiom_from("B <: A"), 3, 3);
  ASSERT_TRUE(m.has_value());
  EXPECT_TRUE(satisfies(*m, kb));
  EXPECT_FALSE(satisfies(*m, testing::axiom_from("B <: A")));
}

TEST(Search, FoundModelsSatisfyGeneratedKbs) {
  testing::KbGenerator gen(31);
  for (int i = 0; i < 200; ++i) {
    const KnowledgeBase kb = gen.next();
    const auto m = search_model(kb, 3, 3);
    if (m) EXPECT_TRUE(satisfies(*m, kb)) << serialize(kb);
  }
}

TEST(Search, Json) {
  const auto m = search_model(kb_from("A(a);"), 2, 2);
  ASSERT_TRUE(m.has_value());
  const auto j = nlohmann::json::parse(structure_to_json(*m));
  for (const char* key : {"domain", "precisifications", "sigma", "individuals", "interpretations"})
    EXPECT_TRUE(j.contains(key)) << key;
}

// Exhaustive check of small random CNFs against brute force.
TEST(SatSolver, MatchesBruteForce) {
  std::mt19937 rng(5);
  for (int round = 0; round < 400; ++round) {
    const std::uint32_t vars = 1 + rng() % 10;
    const int clauses = static_cast<int>(rng() % 45);
    std::vector<std::vector<detail::Lit>> cnf;
    detail::SatSolver solver;
    for (std::uint32_t v = 0; v < vars; ++v) solver.new_var();
    for (int c = 0; c < clauses; ++c) {
      std::vector<detail::Lit> clause;
      const int len = 1 + static_cast<int>(rng() % 3);
      for (int k = 0; k < len; ++k) {
        detail::Lit l = detail::pos(rng() % vars);
        if (rng() % 2) l = detail::neg(l);
        clause.push_back(l);
      }
      cnf.push_back(clause);
      solver.add_clause(clause);
    }
    bool brute = false;
    for (std::uint32_t m = 0; m < (1u << vars) && !brute; ++m) {
      bool all = true;
      for (const auto& clause : cnf) {
        bool any = false;
        for (detail::Lit l : clause) any |= (((m >> detail::var_of(l)) & 1u) != 0) != ((l & 1u) != 0);
        all &= any;
      }
      brute = all;
    }
    const auto result = solver.solve();
    ASSERT_EQ(result == detail::SatSolver::Result::Sat, brute) << "round " << round;
    if (brute) {
      for (const auto& clause : cnf) {
        bool any = false;
        for (detail::Lit l : clause) any |= solver.model_value(detail::var_of(l)) != ((l & 1u) != 0);
        EXPECT_TRUE(any);
      }
    }
  }
}

}  // namespace
}  // namespace sel
