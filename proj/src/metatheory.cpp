#include "fsub/metatheory.hpp"

#include <algorithm>
#include <compare>
#include <numeric>

#include "fsub/errors.hpp"

namespace fsubtype {

Env EnvSplit::assemble() const { return assemble_with(pivot_bound); }

Env EnvSplit::assemble_with(const Ty& bound) const {
  return concat(prefix.extended(pivot_var, bound), suffix);
}

EnvSplit EnvSplit::at(const Env& g, const VarName& x) {
  const auto names = dom(g);
  auto it = std::find(names.rbegin(), names.rend(), x);
  if (it == names.rend()) {
    throw PreconditionError("pivot " + x.str() + " is not in the environment");
  }
  const std::size_t index = static_cast<std::size_t>(names.rend() - it) - 1;
  return EnvSplit{g.oldest(index), x, g.declaration(index).bound, g.newest(g.size() - index - 1)};
}

namespace {

void require_valid(const Derivation& d, const char* who) {
  if (auto report = check_derivation(d); !report) {
    throw PreconditionError(std::string(who) + ": input derivation is invalid: " + report.message);
  }
}

Derivation with_env(const Derivation& d, Env env, std::vector<Derivation> premises) {
  return Derivation(d.rule(), Judgment{std::move(env), d.lhs(), d.rhs()}, std::move(premises),
                    d.witness());
}

/// Replaces the oldest `root_size` bindings of every node's environment by
/// `root`. Bindings introduced by binding nodes stay on top.
Derivation rebase(const Derivation& d, std::size_t root_size, const Env& root) {
  const std::size_t local = d.env().size() - root_size;
  Env env = concat(root, d.env().newest(local));
  std::vector<Derivation> premises;
  premises.reserve(d.premises().size());
  for (const auto& p : d.premises()) premises.push_back(rebase(p, root_size, root));
  return with_env(d, std::move(env), std::move(premises));
}

Derivation permute_unchecked(const Derivation& d, const std::vector<std::size_t>& order) {
  std::vector<Binding> bindings;
  bindings.reserve(order.size());
  for (std::size_t i : order) bindings.push_back(d.env().declaration(i));
  return rebase(d, order.size(), Env::from_declarations(bindings));
}

// Induction on the derivation. At a binding node the body premise is weakened
// over its own extended environment (Γ, w<:T1) and the witness is then moved
// back past Δ by a permutation.
Derivation weaken_unchecked(const Derivation& d, const Env& delta) {
  const Env env = concat(d.env(), delta);
  std::vector<Derivation> premises;
  switch (d.rule()) {
    case Rule::Top:
    case Rule::Var:
      return with_env(d, env, {});
    case Rule::Trs:
      return with_env(d, env, {weaken_unchecked(d.premise(0), delta)});
    case Rule::Arr:
      return with_env(d, env,
                      {weaken_unchecked(d.premise(0), delta), weaken_unchecked(d.premise(1), delta)});
    case Rule::All: {
      Derivation body = d.premise(1);
      VarName w = *d.witness();
      if (!gfresh(delta, w)) {
        VarSet avoid = names_in(body);
        avoid.merge(dom_set(env));
        const VarName renamed = fresh(avoid);
        body = rename_var(body, w, renamed);
        w = renamed;
      }
      const std::size_t n = d.env().size();
      Derivation widened = weaken_unchecked(body, delta);  // over Γ, w<:T1, Δ
      std::vector<std::size_t> order(n);
      std::iota(order.begin(), order.end(), std::size_t{0});
      for (std::size_t i = 0; i < delta.size(); ++i) order.push_back(n + 1 + i);
      order.push_back(n);
      Derivation moved = permute_unchecked(widened, order);  // over Γ, Δ, w<:T1
      return Derivation(Rule::All, Judgment{env, d.lhs(), d.rhs()},
                        {weaken_unchecked(d.premise(0), delta), std::move(moved)}, w);
    }
    default:
      throw PreconditionError("derive_weaken: not an explicit derivation");
  }
}

Derivation refl_unchecked(const Env& g, const Ty& s) {
  switch (s.kind()) {
    case Ty::Kind::Top:
      return make_top(g, s);
    case Ty::Kind::Var:
      return make_var(g, s.name());
    case Ty::Kind::Arrow:
      return make_arr(g, refl_unchecked(g, s.dom()), refl_unchecked(g, s.cod()));
    case Ty::Kind::Forall: {
      VarSet avoid = dom_set(g);
      avoid.merge(fv(s.body()));
      const VarName w = fresh(avoid);
      return make_all(g, w, refl_unchecked(g, s.bound()),
                      refl_unchecked(g.extended(w, s.bound()), open(s.body(), w)));
    }
    case Ty::Kind::Bound:
      break;
  }
  throw MalformedType("derive_refl: type is not locally closed");
}

struct Measure {
  std::size_t middle_size;
  int level;  // 0 = transitivity, 1 = narrowing
  std::size_t height;

  friend auto operator<=>(const Measure&, const Measure&) = default;
};

class TransNarrow {
 public:
  Derivation trans(const Derivation& d1, const Derivation& d2) {
    Frame frame(*this, Measure{d1.rhs().size(), 0, d1.height()});
    const Env& g = d1.env();

    // Q = Top, or any Q when the second derivation ends in (top): the result
    // is (top) on S, whose side conditions d1 already guarantees.
    if (d2.rule() == Rule::Top) return make_top(g, d1.lhs());

    switch (d1.rule()) {
      case Rule::Var:
        return d2;

      case Rule::Trs:
        return Derivation(Rule::Trs, Judgment{g, d1.lhs(), d2.rhs()}, {trans(d1.premise(0), d2)});

      case Rule::Arr: {
        expect(d2, Rule::Arr);
        const Derivation& q1_s1 = d1.premise(0);
        const Derivation& s2_q2 = d1.premise(1);
        const Derivation& t1_q1 = d2.premise(0);
        const Derivation& q2_t2 = d2.premise(1);
        return Derivation(Rule::Arr, Judgment{g, d1.lhs(), d2.rhs()},
                          {trans(t1_q1, q1_s1), trans(s2_q2, q2_t2)});
      }

      case Rule::All: {
        expect(d2, Rule::All);
        const Derivation& q1_s1 = d1.premise(0);
        const Derivation& t1_q1 = d2.premise(0);
        Derivation s2_q2 = d1.premise(1);  // over Γ, w1<:Q1
        Derivation q2_t2 = d2.premise(1);  // over Γ, w2<:T1
        VarName w = *d1.witness();
        if (w != *d2.witness()) {
          VarSet avoid = dom_set(g);
          avoid.merge(names_in(s2_q2));
          avoid.merge(names_in(q2_t2));
          const VarName common = fresh(avoid);
          s2_q2 = rename_var(s2_q2, w, common);
          q2_t2 = rename_var(q2_t2, *d2.witness(), common);
          w = common;
        }
        Derivation bound = trans(t1_q1, q1_s1);
        Derivation narrowed =
            narrow(s2_q2, g.size(), w, d1.rhs().bound(), t1_q1.lhs(), t1_q1);  // over Γ, w<:T1
        Derivation body = trans(narrowed, q2_t2);
        return Derivation(Rule::All, Judgment{g, d1.lhs(), d2.rhs()},
                          {std::move(bound), std::move(body)}, w);
      }

      case Rule::Top:
        throw InternalConsistencyError("derive_trans: Top <: T must end in (top)");
      default:
        throw InternalConsistencyError("derive_trans: not an explicit derivation");
    }
  }

  // Inner induction on `d`, which concludes over Γ, X<:Q, Δ with the pivot at
  // declaration index `pivot`. The (top)/(var)/(arr)/(all) cases rebuild the
  // node over the narrowed environment; their side conditions carry over
  // because the domain is unchanged and ok_narrow established ok.
  Derivation narrow(const Derivation& d, std::size_t pivot, const VarName& x, const Ty& q,
                    const Ty& p, const Derivation& d_pq) {
    Frame frame(*this, Measure{q.size(), 1, d.height()});
    Env env = d.env().with_bound_at(pivot, p);
    switch (d.rule()) {
      case Rule::Top:
      case Rule::Var:
        return with_env(d, std::move(env), {});

      case Rule::Arr:
      case Rule::All:
        return with_env(d, std::move(env),
                        {narrow(d.premise(0), pivot, x, q, p, d_pq),
                         narrow(d.premise(1), pivot, x, q, p, d_pq)});

      case Rule::Trs: {
        Derivation rest = narrow(d.premise(0), pivot, x, q, p, d_pq);
        if (d.lhs().name() != x) return with_env(d, std::move(env), {std::move(rest)});
        // X <: N via Q <: N: weaken Γ ⊢ P <: Q to the narrowed environment,
        // compose with the narrowed Q <: N at the same Q, and close with
        // (trs) through the new bound P.
        Derivation p_q = weaken_unchecked(d_pq, env.newest(env.size() - pivot));
        Derivation p_n = trans(p_q, rest);
        return Derivation(Rule::Trs, Judgment{std::move(env), d.lhs(), d.rhs()}, {std::move(p_n)});
      }

      default:
        throw InternalConsistencyError("derive_narrow: not an explicit derivation");
    }
  }

 private:
  class Frame {
   public:
    Frame(TransNarrow& owner, Measure m) : owner_(owner) {
#ifdef FSUB_DEBUG_CHECKS
      if (!owner_.stack_.empty() && !(m < owner_.stack_.back())) {
        throw InternalConsistencyError("transitivity/narrowing measure did not decrease");
      }
#endif
      owner_.stack_.push_back(m);
    }
    ~Frame() { owner_.stack_.pop_back(); }
    Frame(const Frame&) = delete;
    Frame& operator=(const Frame&) = delete;

   private:
    TransNarrow& owner_;
  };

  static void expect(const Derivation& d, Rule r) {
    if (d.rule() != r) {
      throw InternalConsistencyError("derive_trans: expected (" + std::string(rule_name(r)) +
                                     ") on the right, found (" + std::string(rule_name(d.rule())) +
                                     ")");
    }
  }

  std::vector<Measure> stack_;
};

}  // namespace

Derivation derive_refl(const Env& g, const Ty& s) {
  if (auto why = ok_violation(g)) throw PreconditionError("derive_refl: environment not ok: " + *why);
  if (!is_locally_closed(s) || !closed(s, g)) {
    throw PreconditionError("derive_refl: type is not closed in the environment");
  }
  return refl_unchecked(g, s);
}

Derivation derive_permute(const Derivation& d, const std::vector<std::size_t>& new_order) {
  require_valid(d, "derive_permute");
  const std::size_t n = d.env().size();
  std::vector<bool> seen(n, false);
  if (new_order.size() != n) throw PreconditionError("derive_permute: permutation has wrong length");
  for (std::size_t i : new_order) {
    if (i >= n || seen[i]) throw PreconditionError("derive_permute: not a permutation");
    seen[i] = true;
  }
  std::vector<Binding> bindings;
  for (std::size_t i : new_order) bindings.push_back(d.env().declaration(i));
  if (auto why = ok_violation(Env::from_declarations(bindings))) {
    throw PreconditionError("derive_permute: permuted environment is not ok: " + *why);
  }
  return permute_unchecked(d, new_order);
}

Derivation derive_weaken(const Derivation& d, const Env& delta) {
  require_valid(d, "derive_weaken");
  if (auto why = ok_violation(concat(d.env(), delta))) {
    throw PreconditionError("derive_weaken: extended environment is not ok: " + *why);
  }
  return weaken_unchecked(d, delta);
}

bool ok_narrow(const EnvSplit& split, const Ty& p, const Derivation& d_pq) {
  if (auto why = ok_violation(split.assemble())) {
    throw PreconditionError("ok_narrow: environment not ok: " + *why);
  }
  require_valid(d_pq, "ok_narrow");
  if (!(d_pq.concl() == Judgment{split.prefix, p, split.pivot_bound})) {
    throw PreconditionError("ok_narrow: evidence must conclude Γ ⊢ P <: Q for the split");
  }
  // P is closed in Γ by the evidence; Δ only depends on the unchanged domain.
  if (auto why = ok_violation(split.assemble_with(p))) {
    throw InternalConsistencyError("ok_narrow: narrowed environment is not ok: " + *why);
  }
  return true;
}

Derivation derive_trans(const Derivation& d1, const Derivation& d2) {
  require_valid(d1, "derive_trans");
  require_valid(d2, "derive_trans");
  if (!(d1.env() == d2.env())) {
    throw PreconditionError("derive_trans: derivations conclude over different environments");
  }
  if (!(d1.rhs() == d2.lhs())) {
    throw PreconditionError("derive_trans: middle types differ");
  }
  return TransNarrow{}.trans(d1, d2);
}

Derivation derive_narrow(const EnvSplit& split, const Ty& p, const Derivation& d,
                         const Derivation& d_pq) {
  require_valid(d, "derive_narrow");
  if (!(d.env() == split.assemble())) {
    throw PreconditionError("derive_narrow: derivation environment does not match the split");
  }
  ok_narrow(split, p, d_pq);
  return TransNarrow{}.narrow(d, split.prefix.size(), split.pivot_var, split.pivot_bound, p, d_pq);
}

namespace {

void collect_facts(const Derivation& d, EnvFacts& out) {
  out.env_ok.push_back(ok(d.env()));
  out.sides_closed.push_back(closed(d.lhs(), d.env()) && closed(d.rhs(), d.env()));
  for (const auto& p : d.premises()) collect_facts(p, out);
}

}  // namespace

EnvFacts derivation_env_facts(const Derivation& d) {
  require_valid(d, "derivation_env_facts");
  EnvFacts facts;
  collect_facts(d, facts);
  for (std::size_t i = 0; i < facts.env_ok.size(); ++i) {
    if (!facts.env_ok[i] || !facts.sides_closed[i]) {
      throw InternalConsistencyError("node " + std::to_string(i) +
                                     " of an accepted derivation violates ok/closed");
    }
  }
  return facts;
}

}  // namespace fsubtype
