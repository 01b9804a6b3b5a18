#include <gtest/gtest.h>

#include "fsub/adequacy.hpp"
#include "fsub/errors.hpp"
#include "fsub/gen.hpp"
#include "fsub/parser.hpp"

namespace {

using namespace fsubtype;

TEST(Adequacy, TopOnlyRoundTrip) {
  Derivation d = make_top(Env{}, Ty::top());
  Derivation i = to_implicit(d);
  EXPECT_EQ(i.rule(), Rule::ImplicitTop);
  EXPECT_TRUE(check_derivation_implicit(i));
  EXPECT_EQ(to_explicit(i), d);
}

TEST(Adequacy, ReflBecomesVar) {
  Env g = parse_env("X <: Top");
  Derivation refl(Rule::Refl, Judgment{g, Ty::var("X"), Ty::var("X")}, {});
  Derivation e = to_explicit(refl);
  EXPECT_EQ(e.rule(), Rule::Var);
  EXPECT_TRUE(check_derivation(e));
}

TEST(Adequacy, ToExplicitRejectsIllScopedRoot) {
  Derivation loose(Rule::ImplicitTop, Judgment{Env{}, Ty::var("Q"), Ty::top()}, {});
  ASSERT_TRUE(check_derivation_implicit(loose));
  EXPECT_THROW(to_explicit(loose), ScopingError);
  Derivation dup(Rule::ImplicitTop, Judgment{parse_env("X <: Top, X <: Top"), Ty::top(), Ty::top()},
                 {});
  EXPECT_THROW(to_explicit(dup), ScopingError);
}

TEST(Adequacy, ToExplicitRejectsInvalidImplicitTree) {
  Env g = parse_env("X <: Top");
  Derivation bogus(Rule::Refl, Judgment{g, Ty::var("X"), Ty::top()}, {});
  EXPECT_THROW(to_explicit(bogus), PreconditionError);
  EXPECT_THROW(to_implicit(bogus), std::invalid_argument);
}

TEST(Adequacy, GeneratedRoundTrips) {
  for (std::uint64_t seed = 0; seed < 500; ++seed) {
    Derivation d = gen_derivation(GenConfig{}.with_seed(seed));
    Derivation i = to_implicit(d);
    ASSERT_TRUE(check_derivation_implicit(i));
    Derivation e = to_explicit(i);
    ASSERT_TRUE(check_derivation(e));
    ASSERT_EQ(e.concl(), d.concl());
    ASSERT_EQ(e, d);
  }
}

}  // namespace
