#include "fsub/judgments.hpp"

#include <algorithm>
#include <stdexcept>

namespace fsubtype {

Env Env::from_declarations(const std::vector<Binding>& oldest_first) {
  Env e;
  e.newest_first_.assign(oldest_first.rbegin(), oldest_first.rend());
  return e;
}

Env Env::extended(VarName x, Ty bound) const {
  Env e;
  e.newest_first_.reserve(newest_first_.size() + 1);
  e.newest_first_.push_back(Binding{std::move(x), std::move(bound)});
  e.newest_first_.insert(e.newest_first_.end(), newest_first_.begin(), newest_first_.end());
  return e;
}

std::vector<Binding> Env::declarations() const {
  return {newest_first_.rbegin(), newest_first_.rend()};
}

const Binding& Env::declaration(std::size_t index) const {
  if (index >= newest_first_.size()) throw std::out_of_range("Env::declaration");
  return newest_first_[newest_first_.size() - 1 - index];
}

Env Env::oldest(std::size_t n) const {
  if (n > size()) throw std::out_of_range("Env::oldest");
  Env e;
  e.newest_first_.assign(newest_first_.end() - static_cast<std::ptrdiff_t>(n), newest_first_.end());
  return e;
}

Env Env::newest(std::size_t n) const {
  if (n > size()) throw std::out_of_range("Env::newest");
  Env e;
  e.newest_first_.assign(newest_first_.begin(), newest_first_.begin() + static_cast<std::ptrdiff_t>(n));
  return e;
}

Env Env::with_bound_at(std::size_t index, Ty bound) const {
  if (index >= size()) throw std::out_of_range("Env::with_bound_at");
  Env e = *this;
  e.newest_first_[size() - 1 - index].bound = std::move(bound);
  return e;
}

std::size_t Env::hash() const noexcept {
  std::size_t h = newest_first_.size();
  for (const auto& b : newest_first_) {
    h ^= std::hash<VarName>{}(b.var) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    h ^= b.bound.hash() + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return h;
}

Env concat(const Env& older, const Env& newer) {
  std::vector<Binding> all = older.declarations();
  for (auto& b : newer.declarations()) all.push_back(std::move(b));
  return Env::from_declarations(all);
}

std::vector<VarName> dom(const Env& g) {
  std::vector<VarName> out;
  out.reserve(g.size());
  for (const auto& b : g.declarations()) out.push_back(b.var);
  return out;
}

VarSet dom_set(const Env& g) {
  VarSet out;
  for (const auto& b : g.newest_first()) out.insert(b.var);
  return out;
}

std::optional<Ty> lookup(const Env& g, const VarName& x) {
  for (const auto& b : g.newest_first()) {
    if (b.var == x) return b.bound;
  }
  return std::nullopt;
}

bool gfresh(const Env& g, const VarName& x) {
  const auto bs = g.newest_first();
  return std::none_of(bs.begin(), bs.end(), [&](const Binding& b) { return b.var == x; });
}

bool closed(const Ty& t, const Env& g) {
  for (const auto& y : fv(t)) {
    if (gfresh(g, y)) return false;
  }
  return true;
}

std::optional<std::string> ok_violation(const Env& g) {
  VarSet seen;
  std::size_t position = 0;
  for (const auto& b : g.declarations()) {
    if (seen.contains(b.var)) {
      return "binding " + std::to_string(position) + ": " + b.var.str() +
             " is already in the domain";
    }
    if (!is_locally_closed(b.bound)) {
      return "binding " + std::to_string(position) + ": bound is not locally closed";
    }
    for (const auto& y : fv(b.bound)) {
      if (!seen.contains(y)) {
        return "binding " + std::to_string(position) + ": bound of " + b.var.str() +
               " mentions " + y.str() + ", which is not in scope";
      }
    }
    seen.insert(b.var);
    ++position;
  }
  return std::nullopt;
}

bool ok(const Env& g) { return !ok_violation(g).has_value(); }

VarName fresh_for_env(const Env& g) { return fresh(dom_set(g)); }

}  // namespace fsubtype
