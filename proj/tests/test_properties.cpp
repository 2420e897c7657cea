#include <gtest/gtest.h>

#include "properties.hpp"

using namespace bcrate::props;

namespace {

void expect_property(const std::string& id) {
  const PropertyResult res = run_property(id);
  EXPECT_GE(res.cases, res.exhaustive ? 1 : 200) << res.what;
  for (const auto& f : res.failures) ADD_FAILURE() << res.what << ": " << f;
}

}  // namespace

TEST(Properties, B1EqualsAlpha) { expect_property("a"); }
TEST(Properties, TopLevelIsStrongCover) { expect_property("b"); }
TEST(Properties, MonotoneChain) { expect_property("c"); }
TEST(Properties, CoverageCharacterization) { expect_property("d"); }
TEST(Properties, ReducedEqualsFull) { expect_property("e"); }
TEST(Properties, SymmetricEqualsFull) { expect_property("f"); }
TEST(Properties, ApproxOutcomesVerify) { expect_property("g"); }
TEST(Properties, LowDegreeCoverBound) { expect_property("h"); }
TEST(Properties, CodeRatesAboveB2) { expect_property("i"); }
TEST(Properties, B2BelowMinrk) { expect_property("j"); }
