#include "fsub/subtyper.hpp"

namespace fsubtype {

std::string_view SubResult::label() const noexcept {
  if (is_yes()) return "YES";
  if (is_no()) return "NO";
  return "UNKNOWN";
}

std::optional<std::string> scoping_violation(const Env& g, const Ty& s, const Ty& t) {
  if (auto why = ok_violation(g)) return "environment is not ok: " + *why;
  if (!is_locally_closed(s) || !is_locally_closed(t)) return "type is not locally closed";
  for (const Ty* side : {&s, &t}) {
    for (const auto& y : fv(*side)) {
      if (gfresh(g, y)) return "free variable " + y.str() + " is not in the environment";
    }
  }
  return std::nullopt;
}

namespace {

class Search {
 public:
  explicit Search(std::size_t fuel) : fuel_(fuel) {}

  SubResult goal(const Env& g, const Ty& s, const Ty& t) {
    if (fuel_ == 0) return SubUnknown{spent_};
    --fuel_;
    ++spent_;

    if (t.is_top()) return SubYes{make_top(g, s)};

    if (s.is_var()) {
      if (t.is_var() && s.name() == t.name()) return SubYes{make_var(g, s.name())};
      auto u = lookup(g, s.name());
      if (!u) return refute(g, s, t, s.name().str() + " is not in the environment");
      SubResult r = goal(g, *u, t);
      if (!r.is_yes()) return extend(std::move(r), g, s, t);
      return SubYes{make_trs(g, s.name(), r.derivation())};
    }

    if (s.is_arrow() && t.is_arrow()) {
      SubResult dom = goal(g, t.dom(), s.dom());
      if (!dom.is_yes()) return extend(std::move(dom), g, s, t);
      SubResult cod = goal(g, s.cod(), t.cod());
      if (!cod.is_yes()) return extend(std::move(cod), g, s, t);
      return SubYes{make_arr(g, dom.derivation(), cod.derivation())};
    }

    if (s.is_forall() && t.is_forall()) {
      SubResult bound = goal(g, t.bound(), s.bound());
      if (!bound.is_yes()) return extend(std::move(bound), g, s, t);
      VarSet avoid = dom_set(g);
      avoid.merge(fv(s.body()));
      avoid.merge(fv(t.body()));
      const VarName w = fresh(avoid);
      SubResult body = goal(g.extended(w, t.bound()), open(s.body(), w), open(t.body(), w));
      if (!body.is_yes()) return extend(std::move(body), g, s, t);
      return SubYes{make_all(g, w, bound.derivation(), body.derivation())};
    }

    return refute(g, s, t, "no rule applies");
  }

 private:
  static SubResult refute(const Env& g, const Ty& s, const Ty& t, std::string reason) {
    return SubNo{{Judgment{g, s, t}}, std::move(reason)};
  }

  static SubResult extend(SubResult r, const Env& g, const Ty& s, const Ty& t) {
    if (!r.is_no()) return r;
    SubNo no = r.no();
    no.trace.insert(no.trace.begin(), Judgment{g, s, t});
    return no;
  }

  std::size_t fuel_;
  std::size_t spent_ = 0;
};

}  // namespace

SubResult decide_sub(const Env& g, const Ty& s, const Ty& t, std::size_t fuel) {
  if (auto why = scoping_violation(g, s, t)) {
    return SubNo{{Judgment{g, s, t}}, "scoping: " + *why};
  }
  return Search(fuel).goal(g, s, t);
}

}  // namespace fsubtype
