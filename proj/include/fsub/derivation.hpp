#pragma once

// Derivation trees for the subtyping judgment and their checkers.
//
// Three rule families share one tree type:
//   explicit:     top var trs arr all   (environment side conditions spelled out)
//   implicit:     Top Refl Trans Arr All (scoping left to a global precondition)
//   declarative:  D-Hyp D-Refl D-Trans  (used alongside Top/Arr/All)

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fsub/judgments.hpp"
#include "fsub/syntax.hpp"

namespace fsubtype {

enum class Rule {
  Top,
  Var,
  Trs,
  Arr,
  All,
  ImplicitTop,
  Refl,
  Trans,
  ImplicitArr,
  ImplicitAll,
  DeclHyp,
  DeclRefl,
  DeclTrans,
};

std::size_t arity(Rule r) noexcept;
bool has_witness(Rule r) noexcept;
bool is_explicit(Rule r) noexcept;
bool is_implicit(Rule r) noexcept;
std::string_view rule_name(Rule r) noexcept;
std::optional<Rule> rule_from_name(std::string_view name);

struct Judgment {
  Env env;
  Ty lhs;
  Ty rhs;

  friend bool operator==(const Judgment&, const Judgment&) = default;
};

std::string print_judgment(const Judgment& j);

/// An immutable derivation tree. Copies share structure.
class Derivation {
 public:
  /// Throws std::invalid_argument if the premise count does not match the
  /// rule's arity or the witness is present on a non-binding rule (or absent
  /// on a binding one).
  Derivation(Rule rule, Judgment concl, std::vector<Derivation> premises,
             std::optional<VarName> witness = std::nullopt);

  Rule rule() const noexcept { return node_->rule; }
  const Judgment& concl() const noexcept { return node_->concl; }
  const Env& env() const noexcept { return node_->concl.env; }
  const Ty& lhs() const noexcept { return node_->concl.lhs; }
  const Ty& rhs() const noexcept { return node_->concl.rhs; }
  const std::vector<Derivation>& premises() const noexcept { return node_->premises; }
  const Derivation& premise(std::size_t i) const { return node_->premises.at(i); }
  const std::optional<VarName>& witness() const noexcept { return node_->witness; }

  /// A leaf has height 1.
  std::size_t height() const noexcept { return node_->height; }
  std::size_t node_count() const noexcept { return node_->node_count; }

  friend bool operator==(const Derivation& a, const Derivation& b);

 private:
  struct Node {
    Rule rule;
    Judgment concl;
    std::vector<Derivation> premises;
    std::optional<VarName> witness;
    std::size_t height;
    std::size_t node_count;
  };
  std::shared_ptr<const Node> node_;
};

// Explicit-rule node builders. They do not check side conditions.
Derivation make_top(const Env& g, const Ty& s);
Derivation make_var(const Env& g, const VarName& x);
Derivation make_trs(const Env& g, const VarName& x, Derivation bound_sub_rhs);
Derivation make_arr(const Env& g, Derivation dom_premise, Derivation cod_premise);
/// `bound_premise` concludes T1 <: S1; `body_premise` lives in g extended by
/// (witness, T1). S2 and T2 are abstracted over the witness.
Derivation make_all(const Env& g, const VarName& witness, Derivation bound_premise,
                    Derivation body_premise);

struct CheckReport {
  bool valid = true;
  /// Premise indices from the root to the first offending node.
  std::vector<std::size_t> path;
  std::string message;

  explicit operator bool() const noexcept { return valid; }
};

/// Validates a tree of explicit rules, side conditions included.
CheckReport check_derivation(const Derivation& d);
/// Validates a tree of implicit rules (no ok/closed premises).
CheckReport check_derivation_implicit(const Derivation& d);

/// Every name mentioned anywhere in the tree: environment domains, free
/// names of types, bounds and witnesses.
VarSet names_in(const Derivation& d);

/// Renames `from` to `to` everywhere in the tree. Precondition: `to` does
/// not occur in the tree.
Derivation rename_var(const Derivation& d, const VarName& from, const VarName& to);

/// Renames the witness of the binding node at `path` (consistently through
/// its body premise). Throws PreconditionError when the node is not a
/// binding node or `to` is not fresh for it.
Derivation rename_witness(const Derivation& d, const std::vector<std::size_t>& path,
                          const VarName& to);

/// Paths of all nodes carrying a witness, in preorder.
std::vector<std::vector<std::size_t>> witness_paths(const Derivation& d);

/// Rule names of the tree in preorder.
std::vector<std::string> rule_sequence(const Derivation& d);

/// Indented text rendering, one node per line.
std::string render(const Derivation& d, std::size_t indent = 0);

}  // namespace fsubtype
