#include "fsub/declarative.hpp"

#include <algorithm>
#include <unordered_set>

#include "fsub/subtyper.hpp"

namespace fsubtype {

std::size_t DeclarativeOracle::KeyHash::operator()(const Key& k) const noexcept {
  std::size_t h = k.env.hash();
  h ^= k.lhs.hash() + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  h ^= k.rhs.hash() + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  return h;
}

namespace {

void closed_subterms(const Ty& t, std::vector<Ty>& out, std::unordered_set<Ty>& seen) {
  if (!is_locally_closed(t)) return;
  if (seen.insert(t).second) out.push_back(t);
  if (t.is_arrow()) {
    closed_subterms(t.dom(), out, seen);
    closed_subterms(t.cod(), out, seen);
  } else if (t.is_forall()) {
    closed_subterms(t.bound(), out, seen);
    // Only a body that ignores its binder is a closed subterm on its own.
    if (t.body().raw().open_depth() == 0) closed_subterms(t.body().raw(), out, seen);
  }
}

}  // namespace

std::vector<Ty> DeclarativeOracle::midpoints(const Env& g, const Ty& s, const Ty& t) const {
  std::vector<Ty> out;
  std::unordered_set<Ty> seen;
  closed_subterms(s, out, seen);
  closed_subterms(t, out, seen);
  for (const auto& b : g.declarations()) {
    if (seen.insert(b.bound).second) out.push_back(b.bound);
  }
  if (seen.insert(Ty::top()).second) out.push_back(Ty::top());
  return out;
}

bool DeclarativeOracle::derivable(const Env& g, const Ty& s, const Ty& t, std::size_t max_depth) {
  for (std::size_t depth = 1; depth <= max_depth; ++depth) {
    if (within(g, s, t, depth)) return true;
  }
  return false;
}

bool DeclarativeOracle::within(const Env& g, const Ty& s, const Ty& t, std::size_t depth) {
  if (depth == 0) return false;
  Key key{g, s, t};
  if (auto it = memo_.find(key); it != memo_.end()) {
    if (it->second.true_from <= depth) return true;
    if (it->second.false_through >= depth) return false;
  }
  const bool result = search(g, s, t, depth);
  Entry& e = memo_[std::move(key)];
  if (result) {
    e.true_from = std::min(e.true_from, depth);
  } else {
    e.false_through = std::max(e.false_through, depth);
  }
  return result;
}

bool DeclarativeOracle::search(const Env& g, const Ty& s, const Ty& t, std::size_t depth) {
  // Leaves: reflexivity, Top, hypothesis.
  if (s == t || t.is_top()) return true;
  if (s.is_var()) {
    if (auto u = lookup(g, s.name()); u && *u == t) return true;
  }
  if (depth == 1) return false;
  const std::size_t sub = depth - 1;

  if (s.is_arrow() && t.is_arrow()) {
    if (within(g, t.dom(), s.dom(), sub) && within(g, s.cod(), t.cod(), sub)) return true;
  }
  if (s.is_forall() && t.is_forall() && within(g, t.bound(), s.bound(), sub)) {
    VarSet avoid = dom_set(g);
    avoid.merge(fv(s.body()));
    avoid.merge(fv(t.body()));
    const VarName w = fresh(avoid);
    if (within(g.extended(w, t.bound()), open(s.body(), w), open(t.body(), w), sub)) return true;
  }
  for (const Ty& m : midpoints(g, s, t)) {
    if (m == s || m == t) continue;
    if (within(g, s, m, sub) && within(g, m, t, sub)) return true;
  }
  return false;
}

bool decide_sub_declarative(const Env& g, const Ty& s, const Ty& t, std::size_t max_depth) {
  if (scoping_violation(g, s, t)) return false;
  DeclarativeOracle oracle;
  return oracle.derivable(g, s, t, max_depth);
}

}  // namespace fsubtype
