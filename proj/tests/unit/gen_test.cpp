#include <gtest/gtest.h>

#include "fsub/gen.hpp"
#include "fsub/serialize.hpp"
#include "fsub/subtyper.hpp"

namespace {

using namespace fsubtype;

TEST(SplitMix64, ReferenceStream) {
  // First outputs for seed 0, from the published reference implementation.
  SplitMix64 r(0);
  EXPECT_EQ(r.next(), 0xe220a8397b1dcdafULL);
  EXPECT_EQ(r.next(), 0x6e789e6aa1b965f4ULL);
  EXPECT_EQ(r.next(), 0x06c45d188009454fULL);
}

TEST(SplitMix64, SampleSeedsDiffer) {
  std::set<std::uint64_t> seen;
  for (std::uint64_t i = 0; i < 1000; ++i) seen.insert(sample_seed(42, i));
  EXPECT_EQ(seen.size(), 1000u);
  EXPECT_EQ(sample_seed(42, 3), sample_seed(42, 3));
}

TEST(GenEnv, ZeroLength) {
  GenConfig cfg;
  cfg.max_env_len = 0;
  for (std::uint64_t s = 0; s < 20; ++s) EXPECT_TRUE(gen_env(cfg.with_seed(s)).empty());
}

TEST(GenEnv, DeterministicAndOk) {
  EXPECT_EQ(gen_env(GenConfig{}.with_seed(5)), gen_env(GenConfig{}.with_seed(5)));
  std::size_t nonempty = 0;
  for (std::uint64_t s = 0; s < 10000; ++s) {
    Env g = gen_env(GenConfig{}.with_seed(s));
    ASSERT_TRUE(ok(g));
    ASSERT_LE(g.size(), 4u);
    if (!g.empty()) ++nonempty;
  }
  EXPECT_GT(nonempty, 5000u);
}

TEST(GenClosedTy, SizeOneOverEmptyIsTop) {
  Generator gen(GenConfig{}.with_seed(1));
  for (int i = 0; i < 50; ++i) EXPECT_EQ(gen.closed_ty(Env{}, 1), Ty::top());
}

TEST(GenClosedTy, ClosedAndBounded) {
  std::map<Ty::Kind, int> kinds;
  for (std::uint64_t s = 0; s < 10000; ++s) {
    GenConfig cfg = GenConfig{}.with_seed(s);
    Env g = gen_env(cfg);
    Ty t = gen_closed_ty(g, cfg.with_seed(s + 1));
    ASSERT_TRUE(closed(t, g));
    ASSERT_LE(t.size(), cfg.max_ty_size);
    ++kinds[t.kind()];
    if (t.is_forall()) {
      VarName w = fresh_for_env(g);
      ASSERT_TRUE(closed(open(t.body(), w), g.extended(w, t.bound())));
    }
  }
  for (auto k : {Ty::Kind::Top, Ty::Kind::Var, Ty::Kind::Arrow, Ty::Kind::Forall}) {
    EXPECT_GT(kinds[k], 1000) << static_cast<int>(k);
  }
}

TEST(GenDerivation, DepthOneIsALeaf) {
  GenConfig cfg;
  cfg.max_deriv_depth = 1;
  for (std::uint64_t s = 0; s < 200; ++s) {
    Derivation d = gen_derivation(cfg.with_seed(s));
    EXPECT_TRUE(d.rule() == Rule::Top || d.rule() == Rule::Var);
    Generator gen(cfg.with_seed(s));
    Env g = gen.env();
    Derivation e = gen.derivation_from(g, gen.closed_ty(g), 1);
    EXPECT_TRUE(e.rule() == Rule::Top || e.rule() == Rule::Var);
  }
}

TEST(GenDerivation, HeightsRespectTheDepthBound) {
  for (std::size_t depth : {2u, 3u, 6u}) {
    GenConfig cfg;
    cfg.max_deriv_depth = depth;
    for (std::uint64_t s = 0; s < 2000; ++s) {
      DerivationPair p = gen_derivation_pair(cfg.with_seed(s));
      ASSERT_LE(p.sub_middle.height(), depth);
      ASSERT_LE(p.middle_sup.height(), depth);
      ASSERT_LE(gen_derivation(cfg.with_seed(s)).height(), depth);
    }
  }
}

TEST(GenDerivation, AllValid) {
  std::map<Rule, int> rules;
  for (std::uint64_t s = 0; s < 10000; ++s) {
    Derivation d = gen_derivation(GenConfig{}.with_seed(s));
    auto report = check_derivation(d);
    ASSERT_TRUE(report) << report.message;
    ++rules[d.rule()];
  }
  for (auto r : {Rule::Top, Rule::Var, Rule::Trs, Rule::Arr, Rule::All}) EXPECT_GT(rules[r], 100);
}

TEST(GenDerivation, PairsShareMiddleAndEnv) {
  for (std::uint64_t s = 0; s < 1000; ++s) {
    DerivationPair p = gen_derivation_pair(GenConfig{}.with_seed(s));
    ASSERT_TRUE(check_derivation(p.sub_middle));
    ASSERT_TRUE(check_derivation(p.middle_sup));
    ASSERT_EQ(p.sub_middle.env(), p.middle_sup.env());
    ASSERT_EQ(p.sub_middle.rhs(), p.middle_sup.lhs());
  }
}

TEST(GenDerivation, NarrowingInstancesAreWellFormed) {
  Generator gen(GenConfig{}.with_seed(3));
  for (int i = 0; i < 500; ++i) {
    NarrowingInstance n = gen.narrowing_instance(i % 2 == 0);
    ASSERT_TRUE(ok(n.split.assemble()));
    ASSERT_TRUE(check_derivation(n.derivation));
    ASSERT_TRUE(check_derivation(n.evidence));
    ASSERT_EQ(n.derivation.env(), n.split.assemble());
    ASSERT_EQ(n.evidence.concl(), (Judgment{n.split.prefix, n.new_bound, n.split.pivot_bound}));
    if (i % 2 == 0) {
      ASSERT_EQ(n.derivation.rule(), Rule::Trs);
      ASSERT_EQ(n.derivation.lhs(), Ty::var(n.split.pivot_var));
    }
  }
}

TEST(GenDerivation, SameConfigSameSerialization) {
  for (std::uint64_t s = 0; s < 100; ++s) {
    GenConfig cfg = GenConfig{}.with_seed(s);
    EXPECT_EQ(serialize(gen_derivation(cfg)), serialize(gen_derivation(cfg)));
  }
}

std::size_t env_measure(const Env& g) { return g.size() * 1000 + total_type_size(g); }

TEST(Shrink, EmptyEnvironmentHasNoCandidates) { EXPECT_TRUE(shrink(Env{}).empty()); }

TEST(Shrink, EnvironmentCandidatesAreOkAndSmaller) {
  for (std::uint64_t s = 0; s < 2000; ++s) {
    Env g = gen_env(GenConfig{}.with_seed(s));
    auto candidates = shrink(g);
    ASSERT_LE(candidates.size(), g.size() + total_type_size(g) * total_type_size(g) + 1);
    for (const auto& c : candidates) {
      ASSERT_TRUE(ok(c));
      ASSERT_TRUE(c.size() < g.size() ||
                  (c.size() == g.size() && total_type_size(c) < total_type_size(g)));
    }
  }
}

TEST(Shrink, TypeCandidatesStayClosedAndShrink) {
  Generator gen(GenConfig{}.with_seed(9));
  for (int i = 0; i < 2000; ++i) {
    Env g = gen.env();
    Ty t = gen.closed_ty(g, 12);
    for (const auto& c : shrink(t, g)) {
      ASSERT_TRUE(closed(c, g));
      ASSERT_LT(c.size(), t.size());
    }
  }
}

TEST(Shrink, DerivationCandidatesStayValid) {
  for (std::uint64_t s = 0; s < 1000; ++s) {
    Derivation d = gen_derivation(GenConfig{}.with_seed(s));
    for (const auto& c : shrink(d)) {
      ASSERT_TRUE(check_derivation(c));
      ASSERT_LT(c.height(), d.height());
    }
  }
}

TEST(Shrink, MinimizeTerminatesWithinMeasure) {
  // Property that fails whenever the environment binds anything: minimal
  // counterexample is a single binding with bound Top.
  for (std::uint64_t s = 0; s < 200; ++s) {
    Env g = gen_env(GenConfig{}.with_seed(s));
    if (g.empty()) continue;
    auto [small, steps] = minimize<Env>(
        g, [](const Env& e) { return !e.empty(); },
        [](const Env& e) { return shrink(e); });
    EXPECT_EQ(small.size(), 1u);
    EXPECT_EQ(small.declaration(0).bound, Ty::top());
    EXPECT_LE(steps, env_measure(g));
  }
}

TEST(Enumerate, Counts) {
  std::vector<VarName> none;
  EXPECT_EQ(enumerate_types(none, 1).size(), 1u);
  // Top -> Top and All _ <: Top . {Top, index}
  EXPECT_EQ(enumerate_types(none, 3).size(), 4u);
  std::vector<VarName> two{VarName("X0"), VarName("X1")};
  EXPECT_EQ(enumerate_types(two, 3).size(), 3u + 9u + 12u);
  for (const auto& t : enumerate_types(two, 5)) ASSERT_TRUE(is_locally_closed(t));
  auto envs = enumerate_envs(two, 2, 3);
  EXPECT_EQ(envs.size(), 1u + 8u + 96u);
  for (const auto& g : envs) ASSERT_TRUE(ok(g));
}

}  // namespace
