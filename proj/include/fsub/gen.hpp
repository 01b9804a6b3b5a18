#pragma once

// Seeded generation of well-formed test inputs: ok environments, closed
// types and valid derivations, plus shrinking and exhaustive enumeration.
//
// Randomness comes from SplitMix64 (Steele, Lea & Flood 2014): a 64-bit state
// advanced by the golden-gamma constant and finalized with the murmur3-style
// mixer. It is fully specified by its three constants, so any language can
// reproduce a stream. `split` derives an independent child seed.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "fsub/derivation.hpp"
#include "fsub/judgments.hpp"
#include "fsub/metatheory.hpp"
#include "fsub/syntax.hpp"

namespace fsubtype {

class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() noexcept {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, n). n must be positive.
  std::size_t below(std::size_t n) noexcept { return static_cast<std::size_t>(next() % n); }
  /// True with probability percent/100.
  bool chance(unsigned percent) noexcept { return below(100) < percent; }

  SplitMix64 split() noexcept { return SplitMix64(next()); }

 private:
  std::uint64_t state_;
};

/// Seed of the i-th sample of a stream; lets samples be generated
/// independently of one another.
std::uint64_t sample_seed(std::uint64_t seed, std::uint64_t index) noexcept;

struct GenConfig {
  std::uint64_t seed = 0;
  std::size_t max_env_len = 4;
  std::size_t max_ty_size = 8;
  std::size_t max_deriv_depth = 6;

  GenConfig with_seed(std::uint64_t s) const {
    GenConfig c = *this;
    c.seed = s;
    return c;
  }
};

struct DerivationPair {
  Derivation sub_middle;  // Γ ⊢ S <: Q
  Derivation middle_sup;  // Γ ⊢ Q <: T
};

struct NarrowingInstance {
  EnvSplit split;
  Ty new_bound;
  Derivation derivation;  // over split.assemble()
  Derivation evidence;    // split.prefix ⊢ new_bound <: split.pivot_bound
};

struct WeakeningInstance {
  Derivation derivation;
  Env extension;
};

struct PermutationInstance {
  Derivation derivation;
  std::vector<std::size_t> order;
};

/// Stateful generator; every draw advances one SplitMix64 stream seeded from
/// the config, so equal configs yield equal sequences of draws.
class Generator {
 public:
  explicit Generator(const GenConfig& cfg);

  const GenConfig& config() const noexcept { return cfg_; }
  SplitMix64& rng() noexcept { return rng_; }

  /// Always ok. Length uniform in [0, max_env_len].
  Env env();
  /// An ok extension Δ of `g`: ok(g, Δ).
  Env extension(const Env& g, std::size_t max_len);
  /// Closed in `g` with size <= max_size (at least 1).
  Ty closed_ty(const Env& g, std::size_t max_size);
  Ty closed_ty(const Env& g) { return closed_ty(g, cfg_.max_ty_size); }

  /// A derivation of Γ ⊢ S <: q for some S, height <= depth when q allows.
  Derivation derivation_into(const Env& g, const Ty& q, std::size_t depth);
  /// A derivation of Γ ⊢ q <: T for some T, height <= depth.
  Derivation derivation_from(const Env& g, const Ty& q, std::size_t depth);

  Derivation derivation();
  DerivationPair derivation_pair();
  /// With `pivot_trs`, the derivation ends in (trs) at the pivot.
  NarrowingInstance narrowing_instance(bool pivot_trs);
  WeakeningInstance weakening_instance();
  PermutationInstance permutation_instance();

 private:
  Ty target(const Env& g, std::size_t depth);
  std::optional<Derivation> through_variable(const Env& g, const Ty& q, std::size_t depth);

  GenConfig cfg_;
  SplitMix64 rng_;
};

Env gen_env(const GenConfig& cfg);
Ty gen_closed_ty(const Env& g, const GenConfig& cfg);
Derivation gen_derivation(const GenConfig& cfg);
DerivationPair gen_derivation_pair(const GenConfig& cfg);

// Shrinking. Every candidate is strictly smaller than its input under
// (env length, total type size, derivation height) and keeps the input's
// invariant: shrunk environments stay ok, shrunk types stay closed in `g`,
// shrunk derivations stay valid.
std::size_t total_type_size(const Env& g);
std::vector<Env> shrink(const Env& g);
std::vector<Ty> shrink(const Ty& t, const Env& g);
std::vector<Derivation> shrink(const Derivation& d);

/// Greedy minimization: repeatedly moves to the first shrink candidate that
/// still fails. Returns the final value and the number of steps taken.
template <class T, class Shrink>
std::pair<T, std::size_t> minimize(T value, const std::function<bool(const T&)>& fails,
                                   Shrink shrink_fn) {
  std::size_t steps = 0;
  bool progressed = true;
  while (progressed) {
    progressed = false;
    for (auto& candidate : shrink_fn(value)) {
      if (fails(candidate)) {
        value = std::move(candidate);
        ++steps;
        progressed = true;
        break;
      }
    }
  }
  return {std::move(value), steps};
}

// Exhaustive enumeration.
/// Every locally closed type of size <= max_size whose free names are drawn
/// from `names`.
std::vector<Ty> enumerate_types(const std::vector<VarName>& names, std::size_t max_size);
/// Every ok environment of length <= max_len over distinct names from `pool`
/// whose bounds have size <= max_bound_size.
std::vector<Env> enumerate_envs(const std::vector<VarName>& pool, std::size_t max_len,
                                std::size_t max_bound_size);

}  // namespace fsubtype
