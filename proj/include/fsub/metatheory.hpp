#pragma once

// Derivation transformers for the structural properties of algorithmic
// subtyping: reflexivity, permutation and weakening of the environment,
// narrowing of a bound, and transitivity.
//
// Transitivity and narrowing are mutually recursive. Both recurse on the
// middle type Q first and on the input derivation second; the one call that
// does not shrink Q is narrowing's appeal to transitivity at the pivot's own
// bound. With FSUB_DEBUG_CHECKS the lexicographic measure
// (size(Q), narrowing-above-transitivity, height) is verified to strictly
// decrease on every recursive call.
//
// Every transformer checks its inputs and throws PreconditionError when they
// violate the stated contract.

#include <cstddef>
#include <vector>

#include "fsub/derivation.hpp"
#include "fsub/judgments.hpp"
#include "fsub/syntax.hpp"

namespace fsubtype {

/// Γ, X<:bound, Δ viewed around the pivot X. `suffix` holds the bindings
/// newer than the pivot.
struct EnvSplit {
  Env prefix;
  VarName pivot_var;
  Ty pivot_bound;
  Env suffix;

  Env assemble() const;
  /// The same environment with the pivot's bound replaced.
  Env assemble_with(const Ty& bound) const;

  /// Splits `g` at the binding of `x`. Throws PreconditionError if `x` is not
  /// in dom(g).
  static EnvSplit at(const Env& g, const VarName& x);
};

/// ok(g) and closed(s, g) required.
Derivation derive_refl(const Env& g, const Ty& s);

/// `new_order[i]` is the declaration index (in d's root environment) of the
/// binding placed at position i. Throws PreconditionError if the reordered
/// environment is not ok.
Derivation derive_permute(const Derivation& d, const std::vector<std::size_t>& new_order);

/// Appends `delta` (newer bindings) to the root environment Γ of `d`.
/// Throws PreconditionError unless ok(Γ, Δ).
Derivation derive_weaken(const Derivation& d, const Env& delta);

/// Checks that narrowing the pivot to `p` keeps the environment ok, given a
/// derivation of Γ ⊢ P <: Q. Returns true; throws PreconditionError on bad
/// input and InternalConsistencyError if the narrowed environment is not ok.
bool ok_narrow(const EnvSplit& split, const Ty& p, const Derivation& d_pq);

Derivation derive_trans(const Derivation& d1, const Derivation& d2);

/// `d` concludes over split.assemble(); `d_pq` concludes Γ ⊢ P <: Q with
/// Γ = split.prefix and Q = split.pivot_bound. The result concludes the same
/// sides over split.assemble_with(p).
Derivation derive_narrow(const EnvSplit& split, const Ty& p, const Derivation& d,
                         const Derivation& d_pq);

struct EnvFacts {
  /// One entry per node, preorder.
  std::vector<bool> env_ok;
  std::vector<bool> sides_closed;
};

/// Recomputes ok(Γ) and closed(S, Γ) ∧ closed(T, Γ) at every node of a valid
/// derivation. Throws PreconditionError if `d` is not valid and
/// InternalConsistencyError if any fact is false.
EnvFacts derivation_env_facts(const Derivation& d);

}  // namespace fsubtype
