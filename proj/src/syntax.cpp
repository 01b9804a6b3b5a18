#include "fsub/syntax.hpp"

#include <algorithm>
#include <optional>
#include <stdexcept>

#include "fsub/errors.hpp"

namespace fsubtype {

namespace {

bool is_ident_start(char c) {
  return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || c == '_';
}

bool is_ident_char(char c) {
  return is_ident_start(c) || (c >= '0' && c <= '9') || c == '\'';
}

std::size_t mix(std::size_t seed, std::size_t value) {
  // boost::hash_combine constant
  return seed ^ (value + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

std::uint64_t name_bit(const VarName& v) {
  return std::uint64_t{1} << (std::hash<VarName>{}(v) % 64);
}

}  // namespace

VarName::VarName(std::string text) : text_(std::move(text)) {
  if (!is_valid(text_)) {
    throw std::invalid_argument("invalid type variable name '" + text_ + "'");
  }
}

bool VarName::is_valid(std::string_view text) {
  if (text.empty() || !is_ident_start(text.front())) return false;
  return std::all_of(text.begin(), text.end(), is_ident_char);
}

struct Ty::Node {
  Kind kind = Kind::Top;
  std::size_t index = 0;          // Bound
  std::optional<VarName> name;    // Var
  std::optional<Ty> left;         // Arrow dom, Forall bound
  std::optional<Ty> right;        // Arrow cod, Forall raw body
  std::size_t size = 1;
  std::size_t hash = 0;
  std::size_t open_depth = 0;
  std::uint64_t names = 0;        // over-approximation of free names
};

struct TyAccess {
  static const Ty::Node& node(const Ty& t) { return *t.node_; }

  static Ty make(Ty::Node n) { return Ty(std::make_shared<const Ty::Node>(std::move(n))); }

  static Ty top() {
    static const Ty instance = [] {
      Ty::Node n;
    n.kind = Ty::Kind::Top;
      n.hash = mix(0, 1);
      return make(std::move(n));
    }();
    return instance;
  }

  static Ty var(VarName v) {
    Ty::Node n;
    n.kind = Ty::Kind::Var;
    n.hash = mix(mix(0, 2), std::hash<VarName>{}(v));
    n.names = name_bit(v);
    n.name = std::move(v);
    return make(std::move(n));
  }

  static Ty bound(std::size_t k) {
    Ty::Node n;
    n.kind = Ty::Kind::Bound;
    n.index = k;
    n.hash = mix(mix(0, 3), k);
    n.open_depth = k + 1;
    return make(std::move(n));
  }

  static Ty arrow(Ty a, Ty b) {
    Ty::Node n;
    n.kind = Ty::Kind::Arrow;
    n.size = 1 + a.size() + b.size();
    n.hash = mix(mix(mix(0, 4), a.hash()), b.hash());
    n.open_depth = std::max(a.open_depth(), b.open_depth());
    n.names = node(a).names | node(b).names;
    n.left = std::move(a);
    n.right = std::move(b);
    return make(std::move(n));
  }

  static Ty forall(Ty bound, Ty body) {
    Ty::Node n;
    n.kind = Ty::Kind::Forall;
    n.size = 1 + bound.size() + body.size();
    n.hash = mix(mix(mix(0, 5), bound.hash()), body.hash());
    const std::size_t body_depth = body.open_depth();
    n.open_depth = std::max(bound.open_depth(), body_depth == 0 ? 0 : body_depth - 1);
    n.names = node(bound).names | node(body).names;
    n.left = std::move(bound);
    n.right = std::move(body);
    return make(std::move(n));
  }
};

namespace {

bool may_mention(const Ty& t, const VarName& x) {
  return (TyAccess::node(t).names & name_bit(x)) != 0;
}

Ty open_at(const Ty& t, std::size_t depth, const VarName& x) {
  if (t.open_depth() <= depth) return t;
  const auto& n = TyAccess::node(t);
  switch (n.kind) {
    case Ty::Kind::Bound:
      if (n.index == depth) return TyAccess::var(x);
      throw MalformedType("index " + std::to_string(n.index) + " escapes its binders");
    case Ty::Kind::Arrow:
      return TyAccess::arrow(open_at(*n.left, depth, x), open_at(*n.right, depth, x));
    case Ty::Kind::Forall:
      return TyAccess::forall(open_at(*n.left, depth, x), open_at(*n.right, depth + 1, x));
    default:
      return t;
  }
}

Ty close_at(const Ty& t, std::size_t depth, const VarName& x) {
  if (!may_mention(t, x)) return t;
  const auto& n = TyAccess::node(t);
  switch (n.kind) {
    case Ty::Kind::Var:
      return *n.name == x ? TyAccess::bound(depth) : t;
    case Ty::Kind::Arrow:
      return TyAccess::arrow(close_at(*n.left, depth, x), close_at(*n.right, depth, x));
    case Ty::Kind::Forall:
      return TyAccess::forall(close_at(*n.left, depth, x), close_at(*n.right, depth + 1, x));
    default:
      return t;
  }
}

Ty rename(const Ty& t, const VarName& x, const VarName& y) {
  if (!may_mention(t, x)) return t;
  const auto& n = TyAccess::node(t);
  switch (n.kind) {
    case Ty::Kind::Var:
      return *n.name == x ? TyAccess::var(y) : t;
    case Ty::Kind::Arrow:
      return TyAccess::arrow(rename(*n.left, x, y), rename(*n.right, x, y));
    case Ty::Kind::Forall:
      return TyAccess::forall(rename(*n.left, x, y), rename(*n.right, x, y));
    default:
      return t;
  }
}

void collect_fv(const Ty& t, VarSet& out) {
  const auto& n = TyAccess::node(t);
  switch (n.kind) {
    case Ty::Kind::Var:
      out.insert(*n.name);
      break;
    case Ty::Kind::Arrow:
    case Ty::Kind::Forall:
      collect_fv(*n.left, out);
      collect_fv(*n.right, out);
      break;
    default:
      break;
  }
}

bool structurally_equal(const Ty& a, const Ty& b) {
  const auto& x = TyAccess::node(a);
  const auto& y = TyAccess::node(b);
  if (&x == &y) return true;
  if (x.hash != y.hash || x.kind != y.kind || x.size != y.size) return false;
  switch (x.kind) {
    case Ty::Kind::Top:
      return true;
    case Ty::Kind::Var:
      return *x.name == *y.name;
    case Ty::Kind::Bound:
      return x.index == y.index;
    case Ty::Kind::Arrow:
    case Ty::Kind::Forall:
      return structurally_equal(*x.left, *y.left) && structurally_equal(*x.right, *y.right);
  }
  return false;
}

void require_closed(const Ty& t, const char* what) {
  if (t.open_depth() != 0) {
    throw MalformedType(std::string(what) + ": type is not locally closed");
  }
}

}  // namespace

Ty Ty::top() { return TyAccess::top(); }
Ty Ty::var(VarName name) { return TyAccess::var(std::move(name)); }

Ty Ty::arrow(Ty dom, Ty cod) {
  require_closed(dom, "arrow domain");
  require_closed(cod, "arrow codomain");
  return TyAccess::arrow(std::move(dom), std::move(cod));
}

Ty Ty::forall(Ty bound, Abstraction body) {
  require_closed(bound, "universal bound");
  return TyAccess::forall(std::move(bound), std::move(body.term_));
}

Ty::Kind Ty::kind() const noexcept { return node_->kind; }

const VarName& Ty::name() const {
  if (!is_var()) throw std::logic_error("Ty::name on a non-variable");
  return *node_->name;
}

const Ty& Ty::dom() const {
  if (!is_arrow()) throw std::logic_error("Ty::dom on a non-arrow");
  return *node_->left;
}

const Ty& Ty::cod() const {
  if (!is_arrow()) throw std::logic_error("Ty::cod on a non-arrow");
  return *node_->right;
}

const Ty& Ty::bound() const {
  if (!is_forall()) throw std::logic_error("Ty::bound on a non-universal");
  return *node_->left;
}

Abstraction Ty::body() const {
  if (!is_forall()) throw std::logic_error("Ty::body on a non-universal");
  return Abstraction(*node_->right);
}

std::size_t Ty::size() const noexcept { return node_->size; }
std::size_t Ty::hash() const noexcept { return node_->hash; }
std::size_t Ty::open_depth() const noexcept { return node_->open_depth; }

bool operator==(const Ty& a, const Ty& b) { return structurally_equal(a, b); }

Abstraction Abstraction::from_raw(Ty raw) {
  if (raw.open_depth() > 1) {
    throw MalformedType("body has more than one open index");
  }
  return Abstraction(std::move(raw));
}

namespace detail {
Ty make_bound(std::size_t index) { return TyAccess::bound(index); }
}  // namespace detail

VarSet fv(const Ty& t) {
  VarSet out;
  collect_fv(t, out);
  return out;
}

VarSet fv(const Abstraction& body) { return fv(body.raw()); }

bool occurs_free(const VarName& x, const Ty& t) {
  if (!may_mention(t, x)) return false;
  const auto& n = TyAccess::node(t);
  switch (n.kind) {
    case Ty::Kind::Var:
      return *n.name == x;
    case Ty::Kind::Arrow:
    case Ty::Kind::Forall:
      return occurs_free(x, *n.left) || occurs_free(x, *n.right);
    default:
      return false;
  }
}

Ty open(const Abstraction& body, const VarName& x) {
  if (body.raw().open_depth() > 1) {
    throw MalformedType("body has more than one open index");
  }
  return open_at(body.raw(), 0, x);
}

Abstraction close(const Ty& t, const VarName& x) {
  require_closed(t, "close");
  return Abstraction(close_at(t, 0, x));
}

Ty subst_var(const Ty& t, const VarName& x, const VarName& y) {
  require_closed(t, "subst_var");
  if (x == y) return t;
  return rename(t, x, y);
}

bool alpha_eq(const Ty& s, const Ty& t) {
  require_closed(s, "alpha_eq");
  require_closed(t, "alpha_eq");
  return s == t;
}

std::size_t size(const Ty& t) { return t.size(); }

bool is_locally_closed(const Ty& t) noexcept { return t.open_depth() == 0; }

VarName canonical_name(std::size_t n) { return VarName("X" + std::to_string(n)); }

VarName fresh(const VarSet& avoid) {
  for (std::size_t i = 0;; ++i) {
    VarName candidate = canonical_name(i);
    if (!avoid.contains(candidate)) return candidate;
  }
}

}  // namespace fsubtype
