#include "fsub/derivation.hpp"

#include <algorithm>
#include <array>
#include <stdexcept>

#include "fsub/errors.hpp"
#include "fsub/parser.hpp"

namespace fsubtype {

namespace {

struct RuleInfo {
  Rule rule;
  std::string_view name;
  std::size_t arity;
  bool witness;
};

constexpr std::array<RuleInfo, 13> kRules{{
    {Rule::Top, "top", 0, false},
    {Rule::Var, "var", 0, false},
    {Rule::Trs, "trs", 1, false},
    {Rule::Arr, "arr", 2, false},
    {Rule::All, "all", 2, true},
    {Rule::ImplicitTop, "Top", 0, false},
    {Rule::Refl, "Refl", 0, false},
    {Rule::Trans, "Trans", 1, false},
    {Rule::ImplicitArr, "Arr", 2, false},
    {Rule::ImplicitAll, "All", 2, true},
    {Rule::DeclHyp, "D-Hyp", 0, false},
    {Rule::DeclRefl, "D-Refl", 0, false},
    {Rule::DeclTrans, "D-Trans", 2, false},
}};

const RuleInfo& info(Rule r) { return kRules[static_cast<std::size_t>(r)]; }

}  // namespace

std::size_t arity(Rule r) noexcept { return info(r).arity; }
bool has_witness(Rule r) noexcept { return info(r).witness; }
bool is_explicit(Rule r) noexcept { return static_cast<int>(r) <= static_cast<int>(Rule::All); }
bool is_implicit(Rule r) noexcept {
  return static_cast<int>(r) >= static_cast<int>(Rule::ImplicitTop) &&
         static_cast<int>(r) <= static_cast<int>(Rule::ImplicitAll);
}
std::string_view rule_name(Rule r) noexcept { return info(r).name; }

std::optional<Rule> rule_from_name(std::string_view name) {
  for (const auto& ri : kRules) {
    if (ri.name == name) return ri.rule;
  }
  return std::nullopt;
}

std::string print_judgment(const Judgment& j) { return print_judgment(j.env, j.lhs, j.rhs); }

Derivation::Derivation(Rule rule, Judgment concl, std::vector<Derivation> premises,
                       std::optional<VarName> witness) {
  if (premises.size() != arity(rule)) {
    throw std::invalid_argument("rule (" + std::string(rule_name(rule)) + ") takes " +
                                std::to_string(arity(rule)) + " premises, got " +
                                std::to_string(premises.size()));
  }
  if (witness.has_value() != has_witness(rule)) {
    throw std::invalid_argument(has_witness(rule)
                                    ? "rule (" + std::string(rule_name(rule)) + ") needs a witness"
                                    : "rule (" + std::string(rule_name(rule)) +
                                          ") does not take a witness");
  }
  std::size_t height = 0;
  std::size_t count = 1;
  for (const auto& p : premises) {
    height = std::max(height, p.height());
    count += p.node_count();
  }
  node_ = std::make_shared<const Node>(
      Node{rule, std::move(concl), std::move(premises), std::move(witness), height + 1, count});
}

bool operator==(const Derivation& a, const Derivation& b) {
  if (a.node_ == b.node_) return true;
  return a.rule() == b.rule() && a.witness() == b.witness() && a.concl() == b.concl() &&
         a.premises() == b.premises();
}

Derivation make_top(const Env& g, const Ty& s) {
  return Derivation(Rule::Top, Judgment{g, s, Ty::top()}, {});
}

Derivation make_var(const Env& g, const VarName& x) {
  return Derivation(Rule::Var, Judgment{g, Ty::var(x), Ty::var(x)}, {});
}

Derivation make_trs(const Env& g, const VarName& x, Derivation bound_sub_rhs) {
  Ty rhs = bound_sub_rhs.rhs();
  return Derivation(Rule::Trs, Judgment{g, Ty::var(x), std::move(rhs)},
                    {std::move(bound_sub_rhs)});
}

Derivation make_arr(const Env& g, Derivation dom_premise, Derivation cod_premise) {
  Ty lhs = Ty::arrow(dom_premise.rhs(), cod_premise.lhs());
  Ty rhs = Ty::arrow(dom_premise.lhs(), cod_premise.rhs());
  return Derivation(Rule::Arr, Judgment{g, std::move(lhs), std::move(rhs)},
                    {std::move(dom_premise), std::move(cod_premise)});
}

Derivation make_all(const Env& g, const VarName& witness, Derivation bound_premise,
                    Derivation body_premise) {
  Ty lhs = Ty::forall(bound_premise.rhs(), close(body_premise.lhs(), witness));
  Ty rhs = Ty::forall(bound_premise.lhs(), close(body_premise.rhs(), witness));
  return Derivation(Rule::All, Judgment{g, std::move(lhs), std::move(rhs)},
                    {std::move(bound_premise), std::move(body_premise)}, witness);
}

namespace {

class Checker {
 public:
  explicit Checker(bool implicit_rules) : implicit_(implicit_rules) {}

  CheckReport run(const Derivation& d) {
    path_.clear();
    visit(d);
    return report_;
  }

 private:
  bool fail(const Derivation& d, const std::string& why) {
    report_.valid = false;
    report_.path = path_;
    std::string where;
    try {
      where = print_judgment(d.concl());
    } catch (const Error&) {
      where = "<malformed judgment>";
    }
    report_.message = "(" + std::string(rule_name(d.rule())) + ") " + where + ": " + why;
    return false;
  }

  bool premise_is(const Derivation& d, std::size_t i, const Judgment& expected) {
    if (d.premise(i).concl() == expected) return true;
    return fail(d, "premise " + std::to_string(i) + " must conclude " + describe(expected));
  }

  static std::string describe(const Judgment& j) {
    try {
      return print_judgment(j);
    } catch (const Error&) {
      return "<malformed judgment>";
    }
  }

  bool visit(const Derivation& d) {
    if (!node(d)) return false;
    for (std::size_t i = 0; i < d.premises().size(); ++i) {
      path_.push_back(i);
      if (!visit(d.premise(i))) return false;
      path_.pop_back();
    }
    return true;
  }

  bool node(const Derivation& d) {
    const Env& g = d.env();
    const Ty& s = d.lhs();
    const Ty& t = d.rhs();
    if (!is_locally_closed(s) || !is_locally_closed(t)) {
      return fail(d, "conclusion contains an escaped bound index");
    }
    for (const auto& b : g.newest_first()) {
      if (!is_locally_closed(b.bound)) return fail(d, "environment bound is not locally closed");
    }
    if (implicit_ ? !is_implicit(d.rule()) : !is_explicit(d.rule())) {
      return fail(d, implicit_ ? "not a rule of the implicit system"
                               : "not a rule of the explicit system");
    }

    switch (d.rule()) {
      case Rule::Top:
        if (!t.is_top()) return fail(d, "right-hand side must be Top");
        if (auto why = ok_violation(g)) return fail(d, "environment not ok: " + *why);
        if (!closed(s, g)) return fail(d, "left-hand side is not closed in the environment");
        return true;

      case Rule::ImplicitTop:
        if (!t.is_top()) return fail(d, "right-hand side must be Top");
        return true;

      case Rule::Var:
      case Rule::Refl:
        if (!s.is_var() || !(s == t)) return fail(d, "both sides must be the same variable");
        if (d.rule() == Rule::Var) {
          if (auto why = ok_violation(g)) return fail(d, "environment not ok: " + *why);
          if (!lookup(g, s.name())) return fail(d, s.name().str() + " is not in the environment");
        }
        return true;

      case Rule::Trs:
      case Rule::Trans: {
        if (!s.is_var()) return fail(d, "left-hand side must be a variable");
        auto u = lookup(g, s.name());
        if (!u) return fail(d, s.name().str() + " is not in the environment");
        return premise_is(d, 0, Judgment{g, *u, t});
      }

      case Rule::Arr:
      case Rule::ImplicitArr:
        if (!s.is_arrow() || !t.is_arrow()) return fail(d, "both sides must be arrows");
        return premise_is(d, 0, Judgment{g, t.dom(), s.dom()}) &&
               premise_is(d, 1, Judgment{g, s.cod(), t.cod()});

      case Rule::All:
      case Rule::ImplicitAll: {
        if (!s.is_forall() || !t.is_forall()) return fail(d, "both sides must be universals");
        const VarName& w = *d.witness();
        if (!gfresh(g, w)) return fail(d, "witness " + w.str() + " is already in the environment");
        if (occurs_free(w, s.body().raw()) || occurs_free(w, t.body().raw())) {
          return fail(d, "witness " + w.str() + " occurs in a quantified body");
        }
        if (!premise_is(d, 0, Judgment{g, t.bound(), s.bound()})) return false;
        return premise_is(d, 1, Judgment{g.extended(w, t.bound()), open(s.body(), w),
                                         open(t.body(), w)});
      }

      default:
        return fail(d, "not a subtyping rule of this system");
    }
  }

  bool implicit_;
  std::vector<std::size_t> path_;
  CheckReport report_;
};

void collect_names(const Derivation& d, VarSet& out) {
  for (const auto& b : d.env().newest_first()) {
    out.insert(b.var);
    out.merge(fv(b.bound));
  }
  out.merge(fv(d.lhs()));
  out.merge(fv(d.rhs()));
  if (d.witness()) out.insert(*d.witness());
  for (const auto& p : d.premises()) collect_names(p, out);
}

Env rename_env(const Env& g, const VarName& from, const VarName& to) {
  std::vector<Binding> bs = g.declarations();
  for (auto& b : bs) {
    if (b.var == from) b.var = to;
    b.bound = subst_var(b.bound, from, to);
  }
  return Env::from_declarations(bs);
}

Derivation rebuild_at(const Derivation& d, const std::vector<std::size_t>& path, std::size_t depth,
                      const VarName& to) {
  if (depth == path.size()) {
    if (!d.witness()) throw PreconditionError("rename_witness: node has no witness");
    const VarName& w = *d.witness();
    if (w == to) return d;
    const Derivation& body = d.premise(1);
    if (names_in(body).contains(to) || !gfresh(d.env(), to)) {
      throw PreconditionError("rename_witness: " + to.str() + " is not fresh at this node");
    }
    return Derivation(d.rule(), d.concl(), {d.premise(0), rename_var(body, w, to)}, to);
  }
  std::vector<Derivation> premises = d.premises();
  const std::size_t i = path[depth];
  if (i >= premises.size()) throw PreconditionError("rename_witness: path leaves the tree");
  premises[i] = rebuild_at(premises[i], path, depth + 1, to);
  return Derivation(d.rule(), d.concl(), std::move(premises), d.witness());
}

void collect_witness_paths(const Derivation& d, std::vector<std::size_t>& path,
                           std::vector<std::vector<std::size_t>>& out) {
  if (d.witness()) out.push_back(path);
  for (std::size_t i = 0; i < d.premises().size(); ++i) {
    path.push_back(i);
    collect_witness_paths(d.premise(i), path, out);
    path.pop_back();
  }
}

void collect_rules(const Derivation& d, std::vector<std::string>& out) {
  out.emplace_back(rule_name(d.rule()));
  for (const auto& p : d.premises()) collect_rules(p, out);
}

void render_into(const Derivation& d, std::size_t indent, std::string& out) {
  out.append(indent, ' ');
  out += "(";
  out += rule_name(d.rule());
  out += ")";
  if (d.witness()) out += " [" + d.witness()->str() + "]";
  out += " " + print_judgment(d.concl()) + "\n";
  for (const auto& p : d.premises()) render_into(p, indent + 2, out);
}

}  // namespace

CheckReport check_derivation(const Derivation& d) { return Checker(false).run(d); }
CheckReport check_derivation_implicit(const Derivation& d) { return Checker(true).run(d); }

VarSet names_in(const Derivation& d) {
  VarSet out;
  collect_names(d, out);
  return out;
}

Derivation rename_var(const Derivation& d, const VarName& from, const VarName& to) {
  if (from == to) return d;
  std::vector<Derivation> premises;
  premises.reserve(d.premises().size());
  for (const auto& p : d.premises()) premises.push_back(rename_var(p, from, to));
  std::optional<VarName> w = d.witness();
  if (w && *w == from) w = to;
  Judgment j{rename_env(d.env(), from, to), subst_var(d.lhs(), from, to),
             subst_var(d.rhs(), from, to)};
  return Derivation(d.rule(), std::move(j), std::move(premises), std::move(w));
}

Derivation rename_witness(const Derivation& d, const std::vector<std::size_t>& path,
                          const VarName& to) {
  return rebuild_at(d, path, 0, to);
}

std::vector<std::vector<std::size_t>> witness_paths(const Derivation& d) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> path;
  collect_witness_paths(d, path, out);
  return out;
}

std::vector<std::string> rule_sequence(const Derivation& d) {
  std::vector<std::string> out;
  collect_rules(d, out);
  return out;
}

std::string render(const Derivation& d, std::size_t indent) {
  std::string out;
  render_into(d, indent, out);
  return out;
}

}  // namespace fsubtype
