#pragma once

// Pure F<: types in locally nameless form: bound occurrences are de Bruijn
// indices, free occurrences are names. Alpha-equivalent types are therefore
// structurally identical, and substituting a name for a name cannot capture.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <set>
#include <string>
#include <string_view>

namespace fsubtype {

/// A type variable name matching [A-Za-z_][A-Za-z0-9_']*.
class VarName {
 public:
  /// Throws std::invalid_argument if `text` is not a valid identifier.
  explicit VarName(std::string text);

  const std::string& str() const noexcept { return text_; }

  friend bool operator==(const VarName&, const VarName&) = default;
  friend std::strong_ordering operator<=>(const VarName& a, const VarName& b) {
    return a.text_.compare(b.text_) <=> 0;
  }

  static bool is_valid(std::string_view text);

 private:
  std::string text_;
};

using VarSet = std::set<VarName>;

class Abstraction;

/// An immutable, cheaply copyable type. Values built through the public
/// constructors are always locally closed.
class Ty {
 public:
  enum class Kind : std::uint8_t { Top, Var, Bound, Arrow, Forall };

  static Ty top();
  static Ty var(VarName name);
  static Ty var(std::string_view name) { return var(VarName(std::string(name))); }
  static Ty arrow(Ty dom, Ty cod);
  static Ty forall(Ty bound, Abstraction body);

  Kind kind() const noexcept;
  bool is_top() const noexcept { return kind() == Kind::Top; }
  bool is_var() const noexcept { return kind() == Kind::Var; }
  bool is_arrow() const noexcept { return kind() == Kind::Arrow; }
  bool is_forall() const noexcept { return kind() == Kind::Forall; }

  /// Var only.
  const VarName& name() const;
  /// Arrow only.
  const Ty& dom() const;
  const Ty& cod() const;
  /// Forall only.
  const Ty& bound() const;
  Abstraction body() const;

  /// Number of constructors.
  std::size_t size() const noexcept;
  std::size_t hash() const noexcept;

  /// Smallest n such that every index is below n binders deep plus n.
  /// Zero means locally closed.
  std::size_t open_depth() const noexcept;

  friend bool operator==(const Ty& a, const Ty& b);

 private:
  struct Node;
  explicit Ty(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  std::shared_ptr<const Node> node_;

  friend class Abstraction;
  friend struct TyAccess;
};

/// The body of a universal type: a term in which index 0 refers to the
/// enclosing binder. Produced by `close` and consumed by `open`.
class Abstraction {
 public:
  /// The underlying term, which may mention index 0. Internal use only.
  const Ty& raw() const noexcept { return term_; }

  /// Throws MalformedType unless `raw` has at most index 0 open.
  static Abstraction from_raw(Ty raw);

  friend bool operator==(const Abstraction&, const Abstraction&) = default;

 private:
  explicit Abstraction(Ty term) : term_(std::move(term)) {}
  Ty term_;

  friend class Ty;
  friend Abstraction close(const Ty& t, const VarName& x);
};

namespace detail {
/// Builds a raw bound-index node. Never appears in surface values; exposed so
/// tests can confirm malformed input is rejected.
Ty make_bound(std::size_t index);
}  // namespace detail

VarSet fv(const Ty& t);
/// Free names of a body, ignoring its open index.
VarSet fv(const Abstraction& body);
bool occurs_free(const VarName& x, const Ty& t);

/// Replaces index 0 of `body` by `x`.
Ty open(const Abstraction& body, const VarName& x);
/// Abstracts every free occurrence of `x`; inverse of `open`.
Abstraction close(const Ty& t, const VarName& x);

/// Renames free occurrences of `x` to `y`.
Ty subst_var(const Ty& t, const VarName& x, const VarName& y);

bool alpha_eq(const Ty& s, const Ty& t);
std::size_t size(const Ty& t);
bool is_locally_closed(const Ty& t) noexcept;

/// The n-th name of the canonical sequence X0, X1, ...
VarName canonical_name(std::size_t n);
/// Least canonical name outside `avoid`.
VarName fresh(const VarSet& avoid);

}  // namespace fsubtype

template <>
struct std::hash<fsubtype::VarName> {
  std::size_t operator()(const fsubtype::VarName& v) const noexcept {
    return std::hash<std::string>{}(v.str());
  }
};

template <>
struct std::hash<fsubtype::Ty> {
  std::size_t operator()(const fsubtype::Ty& t) const noexcept { return t.hash(); }
};
