#include <gtest/gtest.h>

#include "fsub/gen.hpp"
#include "fsub/judgments.hpp"
#include "fsub/parser.hpp"

namespace {

using namespace fsubtype;

VarName V(const char* s) { return VarName(s); }
Env E(const char* s) { return parse_env(s); }

TEST(Dom, Examples) {
  EXPECT_TRUE(dom(Env{}).empty());
  EXPECT_EQ(dom(E("X <: Top, Y <: X")), (std::vector<VarName>{V("X"), V("Y")}));
  EXPECT_EQ(dom(E("X <: Top, X <: Top")).size(), 2u);
}

TEST(Env, StorageIsNewestFirst) {
  Env g = E("X <: Top, Y <: X");
  ASSERT_EQ(g.newest_first().size(), 2u);
  EXPECT_EQ(g.newest_first()[0].var, V("Y"));
  EXPECT_EQ(g.declaration(0).var, V("X"));
  EXPECT_EQ(g.oldest(1), E("X <: Top"));
  EXPECT_EQ(g.newest(1), E("Y <: X"));
  EXPECT_EQ(concat(g.oldest(1), g.newest(1)), g);
  EXPECT_EQ(g.with_bound_at(1, Ty::top()), E("X <: Top, Y <: Top"));
  EXPECT_EQ(Env::from_declarations(g.declarations()), g);
}

TEST(Lookup, Examples) {
  EXPECT_FALSE(lookup(Env{}, V("X")));
  EXPECT_EQ(lookup(E("X <: Top, Y <: X"), V("Y")), Ty::var("X"));
  EXPECT_EQ(lookup(E("X <: Top, X <: Top -> Top"), V("X")), parse_type("Top -> Top"));
}

TEST(Gfresh, Examples) {
  EXPECT_TRUE(gfresh(Env{}, V("X")));
  EXPECT_FALSE(gfresh(E("X <: Top"), V("X")));
}

TEST(Closed, Examples) {
  EXPECT_TRUE(closed(Ty::top(), Env{}));
  EXPECT_FALSE(closed(Ty::var("Y"), E("X <: Top")));
  EXPECT_TRUE(closed(parse_type("All Z <: X . Z -> Y"), E("X <: Top, Y <: X")));
}

TEST(Ok, Examples) {
  EXPECT_TRUE(ok(Env{}));
  EXPECT_TRUE(ok(E("X <: Top, Y <: X")));
  EXPECT_FALSE(ok(E("X <: Y")));
  EXPECT_FALSE(ok(E("X <: Top, X <: Top")));
  EXPECT_FALSE(ok(E("X <: X")));
  EXPECT_TRUE(ok_violation(E("X <: Y")).has_value());
  EXPECT_FALSE(ok_violation(E("X <: Top")).has_value());
}

TEST(FreshForEnv, Examples) {
  EXPECT_EQ(fresh_for_env(Env{}), V("X0"));
  EXPECT_NE(fresh_for_env(E("X0 <: Top")), V("X0"));
}

TEST(Properties, OverGeneratedEnvironments) {
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    Generator gen(GenConfig{}.with_seed(seed));
    Env g = gen.env();
    ASSERT_TRUE(ok(g));
    ASSERT_TRUE(gfresh(g, fresh_for_env(g)));
    const auto bindings = g.declarations();
    for (std::size_t i = 0; i < bindings.size(); ++i) {
      ASSERT_TRUE(ok(g.oldest(i)));
      ASSERT_FALSE(occurs_free(bindings[i].var, bindings[i].bound));
    }
    Ty t = gen.closed_ty(g);
    Env bigger = concat(g, gen.extension(g, 3));
    ASSERT_TRUE(closed(t, bigger));
    for (const char* n : {"X0", "X1", "X2", "X3", "Q"}) {
      const bool present = lookup(g, V(n)).has_value();
      const auto d = dom(g);
      ASSERT_EQ(present, !gfresh(g, V(n)));
      ASSERT_EQ(present, std::find(d.begin(), d.end(), V(n)) != d.end());
    }
  }
}

TEST(Env, EqualityAndHash) {
  EXPECT_EQ(E("X <: Top"), E("X <: Top"));
  EXPECT_NE(E("X <: Top"), E("Y <: Top"));
  EXPECT_EQ(std::hash<Env>{}(E("X <: All Y <: Top . Y")), std::hash<Env>{}(E("X <: All Z <: Top . Z")));
}

}  // namespace
