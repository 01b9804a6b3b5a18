#include "fsub/gen.hpp"

#include <algorithm>
#include <numeric>

#include "fsub/subtyper.hpp"

namespace fsubtype {

std::uint64_t sample_seed(std::uint64_t seed, std::uint64_t index) noexcept {
  SplitMix64 mixer(seed ^ (index * 0xd1b54a32d192ed03ULL));
  mixer.next();
  return mixer.next();
}

Generator::Generator(const GenConfig& cfg) : cfg_(cfg), rng_(cfg.seed) {}

Env Generator::env() { return extension(Env{}, cfg_.max_env_len); }

Env Generator::extension(const Env& g, std::size_t max_len) {
  const std::size_t len = rng_.below(max_len + 1);
  Env out = g;
  std::vector<Binding> added;
  for (std::size_t i = 0; i < len; ++i) {
    VarName x = fresh_for_env(out);
    Ty bound = closed_ty(out);
    added.push_back(Binding{x, bound});
    out = out.extended(std::move(x), std::move(bound));
  }
  return Env::from_declarations(added);
}

Ty Generator::closed_ty(const Env& g, std::size_t max_size) {
  const std::size_t budget = std::max<std::size_t>(max_size, 1);
  const auto names = dom(g);
  // Top 20, variable 30, arrow 25, universal 25; unavailable choices drop out.
  const unsigned w_top = 20;
  const unsigned w_var = names.empty() ? 0 : 30;
  const unsigned w_node = budget >= 3 ? 25 : 0;
  const unsigned total = w_top + w_var + 2 * w_node;
  std::size_t r = rng_.below(total);
  if (r < w_top) return Ty::top();
  r -= w_top;
  if (r < w_var) return Ty::var(names[rng_.below(names.size())]);
  r -= w_var;
  const std::size_t remaining = budget - 1;
  const std::size_t left = 1 + rng_.below(remaining - 1);
  const std::size_t right = remaining - left;
  if (r < w_node) {
    Ty dom_ty = closed_ty(g, left);
    return Ty::arrow(std::move(dom_ty), closed_ty(g, right));
  }
  Ty bound = closed_ty(g, left);
  const VarName w = fresh_for_env(g);
  Ty body = closed_ty(g.extended(w, bound), right);
  return Ty::forall(std::move(bound), close(body, w));
}

namespace {

// Least height of a derivation of _ <: q built by into-synthesis. Every
// q <: _ has a derivation of height 1, by (top).
std::size_t min_into_height(const Ty& q) {
  if (q.is_arrow()) return 1 + min_into_height(q.cod());
  if (q.is_forall()) return 1 + min_into_height(open(q.body(), VarName("w")));
  return 1;
}

VarName binder_for(const Env& g, const Abstraction& a, const Abstraction& b) {
  VarSet avoid = dom_set(g);
  avoid.merge(fv(a));
  avoid.merge(fv(b));
  return fresh(avoid);
}

}  // namespace

std::optional<Derivation> Generator::through_variable(const Env& g, const Ty& q,
                                                      std::size_t depth) {
  if (depth < 2) return std::nullopt;
  std::vector<Derivation> routes;
  for (const auto& b : g.declarations()) {
    if (q.is_var() && q.name() == b.var) continue;
    SubResult r = decide_sub(g, b.bound, q, 200);
    if (r.is_yes() && r.derivation().height() <= depth - 1) {
      routes.push_back(make_trs(g, b.var, r.derivation()));
    }
  }
  if (routes.empty()) return std::nullopt;
  return routes[rng_.below(routes.size())];
}

Derivation Generator::derivation_into(const Env& g, const Ty& q, std::size_t depth) {
  if (rng_.chance(30)) {
    if (auto d = through_variable(g, q, depth)) return *d;
  }
  switch (q.kind()) {
    case Ty::Kind::Top:
      return make_top(g, closed_ty(g));
    case Ty::Kind::Var:
      return make_var(g, q.name());
    case Ty::Kind::Arrow: {
      if (depth < 2) return derive_refl(g, q);
      Derivation dom_premise = derivation_from(g, q.dom(), depth - 1);
      Derivation cod_premise = derivation_into(g, q.cod(), depth - 1);
      return make_arr(g, std::move(dom_premise), std::move(cod_premise));
    }
    case Ty::Kind::Forall: {
      if (depth < 2) return derive_refl(g, q);
      Derivation bound_premise = derivation_from(g, q.bound(), depth - 1);
      const VarName w = binder_for(g, q.body(), q.body());
      Derivation body_premise =
          derivation_into(g.extended(w, q.bound()), open(q.body(), w), depth - 1);
      return make_all(g, w, std::move(bound_premise), std::move(body_premise));
    }
    case Ty::Kind::Bound:
      break;
  }
  return derive_refl(g, q);
}

Derivation Generator::derivation_from(const Env& g, const Ty& q, std::size_t depth) {
  if (depth < 2 || q.is_top() || rng_.chance(20)) {
    if (q.is_var() && rng_.chance(50)) return make_var(g, q.name());
    return make_top(g, q);
  }
  switch (q.kind()) {
    case Ty::Kind::Var: {
      const std::size_t r = rng_.below(100);
      if (r < 30) return make_var(g, q.name());
      return make_trs(g, q.name(), derivation_from(g, *lookup(g, q.name()), depth - 1));
    }
    case Ty::Kind::Arrow: {
      if (min_into_height(q.dom()) > depth - 1) return make_top(g, q);
      Derivation dom_premise = derivation_into(g, q.dom(), depth - 1);
      Derivation cod_premise = derivation_from(g, q.cod(), depth - 1);
      return make_arr(g, std::move(dom_premise), std::move(cod_premise));
    }
    case Ty::Kind::Forall: {
      if (min_into_height(q.bound()) > depth - 1) return make_top(g, q);
      Derivation bound_premise = derivation_into(g, q.bound(), depth - 1);
      const Ty& new_bound = bound_premise.lhs();
      const VarName w = binder_for(g, q.body(), q.body());
      Derivation body_premise =
          derivation_from(g.extended(w, new_bound), open(q.body(), w), depth - 1);
      return make_all(g, w, std::move(bound_premise), std::move(body_premise));
    }
    default:
      return make_top(g, q);
  }
}

Ty Generator::target(const Env& g, std::size_t depth) {
  for (int attempt = 0; attempt < 8; ++attempt) {
    Ty q = closed_ty(g);
    if (min_into_height(q) <= depth) return q;
  }
  return Ty::top();
}

Derivation Generator::derivation() {
  Env g = env();
  Ty q = target(g, cfg_.max_deriv_depth);
  return derivation_into(g, q, cfg_.max_deriv_depth);
}

DerivationPair Generator::derivation_pair() {
  Env g = env();
  Ty q = target(g, cfg_.max_deriv_depth);
  Derivation d1 = derivation_into(g, q, cfg_.max_deriv_depth);
  Derivation d2 = derivation_from(g, q, cfg_.max_deriv_depth);
  return DerivationPair{std::move(d1), std::move(d2)};
}

NarrowingInstance Generator::narrowing_instance(bool pivot_trs) {
  const std::size_t depth = cfg_.max_deriv_depth;
  Env prefix = extension(Env{}, cfg_.max_env_len > 0 ? cfg_.max_env_len - 1 : 0);
  Ty q = target(prefix, depth);
  const VarName x = fresh_for_env(prefix);
  Env with_pivot = prefix.extended(x, q);
  Env suffix = extension(with_pivot, cfg_.max_env_len / 2);
  EnvSplit split{prefix, x, q, suffix};
  Env full = split.assemble();

  Derivation evidence = derivation_into(prefix, q, depth);
  Ty p = evidence.lhs();

  Derivation d = [&] {
    if (pivot_trs) return make_trs(full, x, derivation_from(full, q, depth - 1));
    if (rng_.chance(50)) return derivation_from(full, closed_ty(full), depth);
    return derivation_into(full, target(full, depth), depth);
  }();
  return NarrowingInstance{std::move(split), std::move(p), std::move(d), std::move(evidence)};
}

WeakeningInstance Generator::weakening_instance() {
  Derivation d = derivation();
  Env delta = extension(d.env(), std::max<std::size_t>(cfg_.max_env_len, 1));
  return WeakeningInstance{std::move(d), std::move(delta)};
}

PermutationInstance Generator::permutation_instance() {
  Derivation d = derivation();
  std::vector<std::size_t> order(d.env().size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  for (std::size_t i = order.size(); i > 1; --i) {
    std::swap(order[i - 1], order[rng_.below(i)]);
  }
  return PermutationInstance{std::move(d), std::move(order)};
}

Env gen_env(const GenConfig& cfg) { return Generator(cfg).env(); }
Ty gen_closed_ty(const Env& g, const GenConfig& cfg) { return Generator(cfg).closed_ty(g); }
Derivation gen_derivation(const GenConfig& cfg) { return Generator(cfg).derivation(); }
DerivationPair gen_derivation_pair(const GenConfig& cfg) {
  return Generator(cfg).derivation_pair();
}

std::size_t total_type_size(const Env& g) {
  std::size_t n = 0;
  for (const auto& b : g.newest_first()) n += b.bound.size();
  return n;
}

std::vector<Ty> shrink(const Ty& t, const Env& g) {
  std::vector<Ty> out;
  if (t.size() > 1) out.push_back(Ty::top());
  if (t.is_arrow()) {
    out.push_back(t.dom());
    out.push_back(t.cod());
    for (auto& d : shrink(t.dom(), g)) out.push_back(Ty::arrow(d, t.cod()));
    for (auto& c : shrink(t.cod(), g)) out.push_back(Ty::arrow(t.dom(), c));
  } else if (t.is_forall()) {
    out.push_back(t.bound());
    if (is_locally_closed(t.body().raw())) out.push_back(t.body().raw());
    for (auto& b : shrink(t.bound(), g)) out.push_back(Ty::forall(b, t.body()));
    VarSet avoid = dom_set(g);
    avoid.merge(fv(t.body()));
    const VarName w = fresh(avoid);
    for (auto& b : shrink(open(t.body(), w), g.extended(w, t.bound()))) {
      out.push_back(Ty::forall(t.bound(), close(b, w)));
    }
  }
  return out;
}

std::vector<Env> shrink(const Env& g) {
  std::vector<Env> out;
  const auto bindings = g.declarations();
  // Drop a binding that no later bound mentions.
  for (std::size_t i = bindings.size(); i-- > 0;) {
    bool used = false;
    for (std::size_t j = i + 1; j < bindings.size() && !used; ++j) {
      used = occurs_free(bindings[i].var, bindings[j].bound);
    }
    if (used) continue;
    std::vector<Binding> rest = bindings;
    rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(i));
    out.push_back(Env::from_declarations(rest));
  }
  // Shrink one bound in place.
  for (std::size_t i = 0; i < bindings.size(); ++i) {
    const Env prefix = g.oldest(i);
    for (auto& smaller : shrink(bindings[i].bound, prefix)) {
      std::vector<Binding> next = bindings;
      next[i].bound = std::move(smaller);
      out.push_back(Env::from_declarations(next));
    }
  }
  return out;
}

std::vector<Derivation> shrink(const Derivation& d) { return d.premises(); }

namespace {

std::vector<Ty> types_of_size(std::size_t n, const std::vector<VarName>& scope,
                              const VarSet& reserved) {
  std::vector<Ty> out;
  if (n == 1) {
    out.push_back(Ty::top());
    for (const auto& v : scope) out.push_back(Ty::var(v));
    return out;
  }
  if (n < 3) return out;
  for (std::size_t a = 1; a + 1 < n; ++a) {
    const std::size_t b = n - 1 - a;
    const auto lefts = types_of_size(a, scope, reserved);
    const auto rights = types_of_size(b, scope, reserved);
    for (const auto& l : lefts) {
      for (const auto& r : rights) out.push_back(Ty::arrow(l, r));
    }
    VarSet avoid = reserved;
    avoid.insert(scope.begin(), scope.end());
    const VarName w = fresh(avoid);
    std::vector<VarName> inner = scope;
    inner.push_back(w);
    const auto bodies = types_of_size(b, inner, reserved);
    for (const auto& l : lefts) {
      for (const auto& body : bodies) out.push_back(Ty::forall(l, close(body, w)));
    }
  }
  return out;
}

}  // namespace

std::vector<Ty> enumerate_types(const std::vector<VarName>& names, std::size_t max_size) {
  const VarSet reserved(names.begin(), names.end());
  std::vector<Ty> out;
  for (std::size_t n = 1; n <= max_size; ++n) {
    auto layer = types_of_size(n, names, reserved);
    out.insert(out.end(), layer.begin(), layer.end());
  }
  return out;
}

std::vector<Env> enumerate_envs(const std::vector<VarName>& pool, std::size_t max_len,
                                std::size_t max_bound_size) {
  std::vector<Env> out{Env{}};
  std::vector<Env> frontier{Env{}};
  for (std::size_t len = 0; len < max_len; ++len) {
    std::vector<Env> next;
    for (const auto& g : frontier) {
      const auto bounds = enumerate_types(dom(g), max_bound_size);
      for (const auto& x : pool) {
        if (!gfresh(g, x)) continue;
        for (const auto& b : bounds) next.push_back(g.extended(x, b));
      }
    }
    out.insert(out.end(), next.begin(), next.end());
    frontier = std::move(next);
  }
  return out;
}

}  // namespace fsubtype
