#pragma once

// Bounded search for declarative subtyping derivations: unrestricted
// reflexivity, hypothesis lookup X <: U, and transitivity through any
// midpoint, alongside the Top/Arr/All rules.
//
// Transitivity midpoints are drawn from a finite candidate set: the locally
// closed subterms of both sides, the bounds of the environment, and Top.
// The search is complete only as far as that set reaches, which is enough
// for small instances; treat it as an oracle, not a decision procedure.

#include <cstddef>
#include <cstdint>
#include <unordered_map>
#include <vector>

#include "fsub/judgments.hpp"
#include "fsub/syntax.hpp"

namespace fsubtype {

/// Memoizing searcher. Results depend only on the goal, so one instance can
/// be reused across many queries.
class DeclarativeOracle {
 public:
  /// True iff a declarative derivation of height <= max_depth exists.
  /// Iterative deepening from height 1.
  bool derivable(const Env& g, const Ty& s, const Ty& t, std::size_t max_depth);

  std::size_t memo_size() const noexcept { return memo_.size(); }

 private:
  struct Key {
    Env env;
    Ty lhs;
    Ty rhs;
    friend bool operator==(const Key&, const Key&) = default;
  };
  struct KeyHash {
    std::size_t operator()(const Key& k) const noexcept;
  };
  struct Entry {
    std::size_t false_through = 0;          // no derivation of height <= this
    std::size_t true_from = SIZE_MAX;       // a derivation of this height exists
  };

  bool within(const Env& g, const Ty& s, const Ty& t, std::size_t depth);
  bool search(const Env& g, const Ty& s, const Ty& t, std::size_t depth);
  std::vector<Ty> midpoints(const Env& g, const Ty& s, const Ty& t) const;

  std::unordered_map<Key, Entry, KeyHash> memo_;
};

bool decide_sub_declarative(const Env& g, const Ty& s, const Ty& t, std::size_t max_depth);

}  // namespace fsubtype
