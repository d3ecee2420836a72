#include <gtest/gtest.h>

#include "fuzz.hpp"
#include "sel/textio.hpp"

namespace sel {
namespace {

TEST(Fuzz, TableauAgreesWithOracle) {
  testing::KbGenerator gen(101);
  for (int i = 0; i < 300; ++i) {
    const KnowledgeBase kb = gen.next();
    const testing::DifferentialResult r = testing::differential(kb);
    EXPECT_FALSE(r.unsound) << serialize(kb) << r.detail;
    EXPECT_FALSE(r.extraction_failed) << serialize(kb) << r.detail;
    EXPECT_FALSE(r.extraction_capped) << serialize(kb);
    EXPECT_FALSE(r.oracle_miss) << serialize(kb);
    EXPECT_TRUE(r.bounds_ok) << serialize(kb);
  }
}

TEST(Fuzz, DeeperModalNesting) {
  testing::KbGenerator gen(102, testing::FuzzBounds{.concepts = 3, .standpoints = 2, .max_axioms = 4, .modal_depth = 3});
  for (int i = 0; i < 200; ++i) {
    const KnowledgeBase kb = gen.next();
    const testing::DifferentialResult r = testing::differential(kb, 3, 3);
    EXPECT_FALSE(r.unsound) << serialize(kb) << r.detail;
    EXPECT_FALSE(r.extraction_failed) << serialize(kb) << r.detail;
    EXPECT_TRUE(r.bounds_ok) << serialize(kb);
  }
}

}  // namespace
}  // namespace sel
