#include "fsub/adequacy.hpp"

#include <stdexcept>

#include "fsub/errors.hpp"
#include "fsub/subtyper.hpp"

namespace fsubtype {

namespace {

Rule implicit_of(Rule r) {
  switch (r) {
    case Rule::Top: return Rule::ImplicitTop;
    case Rule::Var: return Rule::Refl;
    case Rule::Trs: return Rule::Trans;
    case Rule::Arr: return Rule::ImplicitArr;
    case Rule::All: return Rule::ImplicitAll;
    default:
      throw std::invalid_argument("to_implicit: (" + std::string(rule_name(r)) +
                                  ") is not an explicit rule");
  }
}

Rule explicit_of(Rule r) {
  switch (r) {
    case Rule::ImplicitTop: return Rule::Top;
    case Rule::Refl: return Rule::Var;
    case Rule::Trans: return Rule::Trs;
    case Rule::ImplicitArr: return Rule::Arr;
    case Rule::ImplicitAll: return Rule::All;
    default:
      throw std::invalid_argument("to_explicit: (" + std::string(rule_name(r)) +
                                  ") is not an implicit rule");
  }
}

template <class Retag>
Derivation retag(const Derivation& d, Retag f) {
  std::vector<Derivation> premises;
  premises.reserve(d.premises().size());
  for (const auto& p : d.premises()) premises.push_back(retag(p, f));
  return Derivation(f(d.rule()), d.concl(), std::move(premises), d.witness());
}

}  // namespace

Derivation to_implicit(const Derivation& d) { return retag(d, implicit_of); }

Derivation to_explicit(const Derivation& d) {
  if (auto why = scoping_violation(d.env(), d.lhs(), d.rhs())) {
    throw ScopingError("to_explicit: root judgment is not well scoped: " + *why);
  }
  if (auto report = check_derivation_implicit(d); !report) {
    throw PreconditionError("to_explicit: not a valid implicit derivation: " + report.message);
  }
  // Scoping propagates from the root: premises only mention components of
  // closed types, bounds of an ok environment, or bodies opened at a witness
  // bound in the extended (still ok) environment. So retagging suffices and
  // the explicit checker re-derives each side condition.
  Derivation out = retag(d, explicit_of);
  if (auto report = check_derivation(out); !report) {
    throw InternalConsistencyError("to_explicit produced an invalid tree: " + report.message);
  }
  return out;
}

}  // namespace fsubtype
