#pragma once

// Translations between the explicit rule system (ok/closed side conditions on
// every leaf) and the implicit one in which scoping is a single precondition
// on the root judgment. Both preserve every conclusion.

#include "fsub/derivation.hpp"

namespace fsubtype {

/// Erases side conditions: top->Top, var->Refl, trs->Trans, arr->Arr, all->All.
/// Throws std::invalid_argument on a node that is not an explicit rule.
Derivation to_implicit(const Derivation& d);

/// Re-establishes side conditions at every node. Throws ScopingError if the
/// root environment is not ok or a root side is not closed in it, and
/// PreconditionError if `d` is not accepted by check_derivation_implicit.
Derivation to_explicit(const Derivation& d);

}  // namespace fsubtype
