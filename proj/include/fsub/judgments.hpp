#pragma once

// Typing environments and the well-formedness judgments over them.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fsub/syntax.hpp"

namespace fsubtype {

struct Binding {
  VarName var;
  Ty bound;

  friend bool operator==(const Binding&, const Binding&) = default;
};

/// An ordered sequence of bounds. Stored most-recent-first, so the newest
/// binding is at the head; `declarations()` gives the written order.
/// Duplicate names are representable; `ok` rejects them.
class Env {
 public:
  Env() = default;

  /// Builds an environment from bindings in declaration order (oldest first).
  static Env from_declarations(const std::vector<Binding>& oldest_first);

  /// This environment with `(x, bound)` as the newest binding.
  Env extended(VarName x, Ty bound) const;

  std::size_t size() const noexcept { return newest_first_.size(); }
  bool empty() const noexcept { return newest_first_.empty(); }

  std::span<const Binding> newest_first() const noexcept { return newest_first_; }
  std::vector<Binding> declarations() const;

  /// Binding at `index` in declaration order.
  const Binding& declaration(std::size_t index) const;

  /// The oldest `n` bindings.
  Env oldest(std::size_t n) const;
  /// The newest `n` bindings, as an environment of their own.
  Env newest(std::size_t n) const;

  /// Copy with the bound at declaration position `index` replaced.
  Env with_bound_at(std::size_t index, Ty bound) const;

  std::size_t hash() const noexcept;

  friend bool operator==(const Env&, const Env&) = default;

 private:
  std::vector<Binding> newest_first_;
};

/// `older` followed by `newer` (Γ, Δ in written order).
Env concat(const Env& older, const Env& newer);

/// Names in declaration order, duplicates preserved.
std::vector<VarName> dom(const Env& g);
VarSet dom_set(const Env& g);

/// Bound of the most recent binding of `x`.
std::optional<Ty> lookup(const Env& g, const VarName& x);

bool gfresh(const Env& g, const VarName& x);
bool closed(const Ty& t, const Env& g);
bool ok(const Env& g);

/// Why `g` is not ok, or nullopt when it is.
std::optional<std::string> ok_violation(const Env& g);

/// Least canonical name not in dom(g).
VarName fresh_for_env(const Env& g);

}  // namespace fsubtype

template <>
struct std::hash<fsubtype::Env> {
  std::size_t operator()(const fsubtype::Env& e) const noexcept { return e.hash(); }
};
