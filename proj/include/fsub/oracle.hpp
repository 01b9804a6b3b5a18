#pragma once

// Exhaustive cross-check of the algorithmic decision procedure against the
// declarative search on every small judgment.

#include <cstddef>
#include <string>
#include <vector>

#include "fsub/judgments.hpp"
#include "fsub/syntax.hpp"

namespace fsubtype {

struct OracleConfig {
  std::size_t max_size = 3;   // type size, for both sides and every bound
  std::size_t max_env = 2;    // environment length; also the size of the name pool
  std::size_t fuel = 50;
  std::size_t depth = 8;
};

struct Disagreement {
  Env env;
  Ty lhs;
  Ty rhs;
  std::string algorithmic;  // YES, NO or UNKNOWN
  bool declarative = false;
};

struct OracleReport {
  std::size_t envs = 0;
  std::size_t judgments = 0;
  std::size_t derivable = 0;
  std::size_t disagreements = 0;
  /// The first few disagreements, in enumeration order.
  std::vector<Disagreement> examples;
};

/// Names X0 .. X{max_env-1} are the pool; judgments range over every ok
/// environment from the pool and every pair of types over the pool, so
/// ill-scoped goals are included. An UNKNOWN answer counts as a disagreement.
OracleReport run_oracle_comparison(const OracleConfig& cfg);

}  // namespace fsubtype
