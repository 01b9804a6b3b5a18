#pragma once

// Fuel-bounded algorithmic subtyping.
//
// Rules are tried in a fixed order: (top) whenever the right side is Top,
// (var) for X <: X, (trs) for any other variable on the left, then (arr) and
// (all) by shape. Every goal visited costs one unit of fuel; the search
// answers Unknown rather than diverge.

#include <cstddef>
#include <string>
#include <variant>
#include <vector>

#include "fsub/derivation.hpp"
#include "fsub/judgments.hpp"
#include "fsub/syntax.hpp"

namespace fsubtype {

inline constexpr std::size_t kDefaultFuel = 10000;

struct SubYes {
  Derivation derivation;
};

struct SubNo {
  /// Goals from the root down to the one no rule matched.
  std::vector<Judgment> trace;
  std::string reason;
};

struct SubUnknown {
  std::size_t fuel_spent = 0;
};

class SubResult {
 public:
  SubResult(SubYes y) : value_(std::move(y)) {}
  SubResult(SubNo n) : value_(std::move(n)) {}
  SubResult(SubUnknown u) : value_(u) {}

  bool is_yes() const noexcept { return std::holds_alternative<SubYes>(value_); }
  bool is_no() const noexcept { return std::holds_alternative<SubNo>(value_); }
  bool is_unknown() const noexcept { return std::holds_alternative<SubUnknown>(value_); }

  const Derivation& derivation() const { return std::get<SubYes>(value_).derivation; }
  const SubNo& no() const { return std::get<SubNo>(value_); }
  const SubUnknown& unknown() const { return std::get<SubUnknown>(value_); }

  /// "YES", "NO" or "UNKNOWN".
  std::string_view label() const noexcept;

 private:
  std::variant<SubYes, SubNo, SubUnknown> value_;
};

/// Decides g |- s <: t. Ill-scoped inputs answer No with a scoping reason.
SubResult decide_sub(const Env& g, const Ty& s, const Ty& t, std::size_t fuel = kDefaultFuel);

/// Why (g, s, t) violates the decision procedure's precondition, if it does.
std::optional<std::string> scoping_violation(const Env& g, const Ty& s, const Ty& t);

}  // namespace fsubtype
