#include <gtest/gtest.h>

#include "fuzz.hpp"
#include "sel/normalizer.hpp"
#include "sel/quasimodel.hpp"
#include "sel/tableau.hpp"
#include "sel/textio.hpp"

namespace sel::tableau {
namespace {

using testing::axiom_from;
using testing::kb_from;

KnowledgeBase normal(const KnowledgeBase& kb) { return normalize(kb).kb; }

Verdict checked(const KnowledgeBase& normal_kb) {
  Options opt;
  opt.check_invariants = true;
  return saturate(normal_kb, opt);
}

bool tagged(const CompletionGraph& g, ElemId e, VarId v, const ConceptTerm& c) {
  const auto idx = g.symbols().concept_index(c);
  return idx && g.has(e, Constraint{v, Tag{Tag::Kind::Concept, *idx}});
}

TEST(InitGraph, EmptyKb) {
  const CompletionGraph g = init_graph(KnowledgeBase{});
  ASSERT_EQ(g.elements().size(), 1u);
  EXPECT_TRUE(g.quasi_roles().empty());
  const auto& top = g.element(g.top_element());
  ASSERT_EQ(top.vars.size(), 1u);
  const VarId x = g.initial_variable(g.symbols().universal);
  EXPECT_EQ(top.vars[0].id, x);
  EXPECT_TRUE(tagged(g, 0, x, ConceptTerm::top()));
  EXPECT_TRUE(g.standpoint_signature(0, x).test(g.symbols().universal));
  EXPECT_TRUE(check_coherence(g));
}

TEST(InitGraph, IndividualsAndInitialVariables) {
  const CompletionGraph g = init_graph(kb_from("B(TT)[A(a)]; TT <= SN;"));
  ASSERT_EQ(g.elements().size(), 2u);
  const Symbols& sym = g.symbols();
  const ElemId ea = g.individual_element(*sym.individual_index("a"));
  for (const auto& el : g.elements()) {
    for (const char* s : {"*", "TT", "SN"}) EXPECT_NE(el.find(g.initial_variable(*sym.standpoint_index(s))), nullptr);
  }
  for (const auto& v : g.element(ea).vars) EXPECT_TRUE(v.individuals.test(*sym.individual_index("a")));
}

TEST(InitGraph, TumourCorpusHasFourElements) {
  const CompletionGraph g = init_graph(normal(testing::load_corpus("tumour.sel")));
  EXPECT_EQ(g.elements().size(), 4u);
  EXPECT_TRUE(g.quasi_roles().empty());
}

TEST(InitGraph, RejectsNonNormalInput) {
  EXPECT_THROW(saturate(KnowledgeBase{axiom_from("A <: B & C")}), std::invalid_argument);
}

TEST(Saturate, SubsumptionFires) {
  const Verdict v = checked(kb_from("A <: B; A(a);"));
  ASSERT_TRUE(v.satisfiable);
  const ElemId ea = v.graph.individual_element(*v.graph.symbols().individual_index("a"));
  const VarId x = v.graph.initial_variable(v.graph.symbols().universal);
  EXPECT_TRUE(tagged(v.graph, ea, x, ConceptTerm::atom("B")));
  EXPECT_GT(v.counters[Rule::Subsume], 0u);
}

TEST(Saturate, DiamondCreatesWitness) {
  const Verdict v = checked(kb_from("A <: D(s)[B]; A(a);"));
  ASSERT_TRUE(v.satisfiable);
  EXPECT_GT(v.counters[Rule::Diamond], 0u);
  const ElemId ea = v.graph.individual_element(*v.graph.symbols().individual_index("a"));
  const auto s = *v.graph.symbols().standpoint_index("s");
  bool witness = false;
  for (const auto& var : v.graph.element(ea).vars) {
    witness |= var.standpoints.test(s) && tagged(v.graph, ea, var.id, ConceptTerm::atom("B"));
  }
  EXPECT_TRUE(witness);
}

TEST(Saturate, TopToBotClashes) {
  const Verdict v = checked(KnowledgeBase{global(Gci{ConceptTerm::top(), ConceptTerm::bot()})});
  EXPECT_FALSE(v.satisfiable);
  ASSERT_TRUE(v.clash.has_value());
  const VarId x = v.graph.initial_variable(v.graph.symbols().universal);
  EXPECT_TRUE(tagged(v.graph, v.clash->element, x, ConceptTerm::bot()));
  EXPECT_GT(v.counters[Rule::Box], 0u);
}

TEST(Saturate, Verdicts) {
  EXPECT_TRUE(checked(KnowledgeBase{}).satisfiable);
  EXPECT_TRUE(checked(normal(testing::load_corpus("tumour.sel"))).satisfiable);
  EXPECT_TRUE(checked(normal(testing::load_corpus("tumour_clinic.sel"))).satisfiable);
  EXPECT_FALSE(checked(normal(testing::load_corpus("tumour_inconsistent.sel"))).satisfiable);
  EXPECT_FALSE(checked(normal(kb_from("D(s)[A(a)]; B(s)[A <: Bot];"))).satisfiable);
  EXPECT_TRUE(checked(normal(kb_from("D(s)[A(a)]; D(s)[A <: Bot];"))).satisfiable);
  EXPECT_FALSE(checked(normal(kb_from("A(a); R(a, b); ex R.Top <: D(s)[C]; B(s)[C <: Bot];"))).satisfiable);
  EXPECT_FALSE(checked(normal(kb_from("A(a); A <: ex R.B; ex R.B <: Bot;"))).satisfiable);
}

TEST(Saturate, ExistentialReusesElementsAcrossIndividuals) {
  const Verdict v = checked(kb_from("A <: ex R.B; A(a); A(b);"));
  ASSERT_TRUE(v.satisfiable);
  EXPECT_EQ(v.graph.elements().size(), 4u);
  EXPECT_EQ(v.counters[Rule::ExistsGen], 1u);
  EXPECT_GT(v.counters[Rule::ExistsReuse], 0u);
}

TEST(Saturate, SaturatedGraphHasNoApplicableRule) {
  testing::KbGenerator gen(21);
  for (int i = 0; i < 200; ++i) {
    const KnowledgeBase kb = normal(gen.next());
    const Verdict v = checked(kb);
    if (v.satisfiable) {
      EXPECT_FALSE(find_applicable(v.graph).has_value()) << serialize(kb);
      EXPECT_TRUE(check_coherence(v.graph)) << serialize(kb);
    }
  }
}

TEST(Saturate, CorpusGraphsAreCoherent) {
  for (const char* file : {"tumour.sel", "tumour_clinic.sel", "grammar.sel"}) {
    const Verdict v = checked(normal(testing::load_corpus(file)));
    if (v.satisfiable) EXPECT_TRUE(check_coherence(v.graph)) << file;
  }
}

TEST(Saturate, StepsRespectPriority) {
  Engine engine(normal(testing::load_corpus("tumour_clinic.sel")));
  while (true) {
    const CompletionGraph before = engine.graph();
    const StepResult r = engine.step();
    if (!r.applied) break;
    if (rule_class(r.rule) != RuleClass::LL) {
      EXPECT_FALSE(find_applicable(before, RuleClass(static_cast<int>(rule_class(r.rule)) - 1)).has_value())
          << rule_name(r.rule);
    }
    if (engine.clash()) break;
  }
  EXPECT_TRUE(engine.saturated());
}

TEST(Saturate, Deterministic) {
  const KnowledgeBase kb = normal(testing::load_corpus("tumour_clinic.sel"));
  const Verdict a = saturate(kb), b = saturate(kb);
  EXPECT_EQ(a.counters.applications, b.counters.applications);
  EXPECT_EQ(emit_dot(a.graph), emit_dot(b.graph));
}

TEST(Saturate, StepLimit) {
  Options opt;
  opt.max_steps = 5;
  EXPECT_THROW(saturate(normal(testing::load_corpus("tumour.sel")), opt), BoundExceeded);
}

TEST(Saturate, TraceReportsEveryApplication) {
  std::size_t n = 0;
  Options opt;
  opt.trace = [&](const TraceRecord& r) {
    EXPECT_FALSE(r.element.empty());
    ++n;
  };
  const Verdict v = saturate(normal(testing::load_corpus("tumour.sel")), opt);
  EXPECT_EQ(n, v.counters.total());
}

TEST(Bounds, CountingBoundsHold) {
  testing::KbGenerator gen(22);
  for (int i = 0; i < 300; ++i) {
    const KnowledgeBase kb = normal(gen.next());
    const Verdict v = checked(kb);
    EXPECT_TRUE(testing::within_counting_bounds(v.graph, v.counters)) << serialize(kb);
  }
  const Bounds b = counting_bounds(2);
  EXPECT_DOUBLE_EQ(b.rule_applications, 27.0 * 64);
  EXPECT_DOUBLE_EQ(b.elements, 12.0);
  EXPECT_DOUBLE_EQ(b.constraints_per_system, 16.0);
}

TEST(Coherence, SharedIndividualTagIsIncoherent) {
  const Verdict v = checked(kb_from("A(a); B(b);"));
  ASSERT_TRUE(check_coherence(v.graph));
  CompletionGraph g = v.graph;
  const auto a = *g.symbols().individual_index("a");
  const auto b = *g.symbols().individual_index("b");
  for (auto& var : g.mutable_element(g.individual_element(b)).vars) var.individuals.set(a);
  EXPECT_FALSE(check_coherence(g));
}

TEST(Runs, EmptyKbHasOneRun) {
  const Verdict v = checked(KnowledgeBase{});
  const RunSet runs = enumerate_runs(v.graph, 100);
  ASSERT_EQ(runs.runs.size(), 1u);
  EXPECT_EQ(runs.runs[0], (tableau::Run{v.graph.initial_variable(v.graph.symbols().universal)}));
}

TEST(Runs, OneRunPerInitialVariable) {
  const Verdict v = checked(kb_from("s <= *;"));
  const RunSet runs = enumerate_runs(v.graph, 100);
  EXPECT_EQ(runs.runs.size(), 2u);
  for (const tableau::Run& r : runs.runs) EXPECT_TRUE(is_run(v.graph, r));
}

TEST(Runs, CorpusIndividualVariablesAreCovered) {
  for (const char* file : {"tumour.sel", "tumour_clinic.sel"}) {
    const Verdict v = checked(normal(testing::load_corpus(file)));
    const RunSet runs = enumerate_runs(v.graph, 100000);
    ASSERT_FALSE(runs.capped) << file;
    for (const tableau::Run& r : runs.runs) EXPECT_TRUE(is_run(v.graph, r));
    const Symbols& sym = v.graph.symbols();
    for (std::uint32_t a = 0; a < sym.individuals.size(); ++a) {
      const ElemId e = v.graph.individual_element(a);
      for (const auto& var : v.graph.element(e).vars) {
        bool hit = false;
        for (const tableau::Run& r : runs.runs) hit |= r[e] == var.id;
        EXPECT_TRUE(hit) << file << " " << v.graph.element(e).name << " " << v.graph.variables()[var.id].name;
      }
    }
  }
}

// a has one s-variable and it is linked to the witness y, so every s-run maps
// the generated element to y and its copy of x_s stays unused.
TEST(Runs, GeneratedElementVariablesCanBeUncoverable) {
  const Verdict v = checked(kb_from("B(s)[A <: ex R.B]; B(s)[A(a)];"));
  ASSERT_TRUE(v.satisfiable);
  ASSERT_EQ(v.graph.elements().size(), 3u);
  EXPECT_TRUE(covering_runs(v.graph, 1000).capped);
  const Signature vocabulary = signature(kb_from("B(s)[A <: ex R.B]; B(s)[A(a)];"));
  const Extraction ex = extract_model(v.graph, 1000, &vocabulary);
  ASSERT_TRUE(ex.model.has_value());
  EXPECT_TRUE(satisfies(*ex.model, kb_from("B(s)[A <: ex R.B]; B(s)[A(a)];")));
}

TEST(Extraction, EmptyKb) {
  const Extraction ex = extract_model(checked(KnowledgeBase{}).graph, 100);
  ASSERT_TRUE(ex.model.has_value());
  EXPECT_EQ(ex.model->domain, 1u);
  EXPECT_EQ(ex.model->precisifications, 1u);
}

TEST(Extraction, ModelsSatisfyTheirKb) {
  const KnowledgeBase kbs[] = {kb_from("B(TT)[A(a)]; TT <= SN;"), testing::load_corpus("tumour.sel"),
                               testing::load_corpus("tumour_clinic.sel"), testing::load_corpus("grammar.sel")};
  for (const auto& kb : kbs) {
    const Verdict v = checked(normal(kb));
    ASSERT_TRUE(v.satisfiable) << serialize(kb);
    const Signature vocabulary = signature(kb);
    const Extraction ex = extract_model(v.graph, 100000, &vocabulary);
    ASSERT_TRUE(ex.model.has_value()) << serialize(kb);
    EXPECT_TRUE(well_formed(*ex.model));
    EXPECT_TRUE(satisfies(*ex.model, kb)) << serialize(kb);
  }
}

}  // namespace
}  // namespace sel::tableau
