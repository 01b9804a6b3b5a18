#include "fsub/oracle.hpp"

#include "fsub/declarative.hpp"
#include "fsub/gen.hpp"
#include "fsub/subtyper.hpp"

namespace fsubtype {

OracleReport run_oracle_comparison(const OracleConfig& cfg) {
  std::vector<VarName> pool;
  for (std::size_t i = 0; i < cfg.max_env; ++i) pool.emplace_back(canonical_name(i));
  const auto envs = enumerate_envs(pool, cfg.max_env, cfg.max_size);
  const auto types = enumerate_types(pool, cfg.max_size);

  OracleReport report;
  report.envs = envs.size();
  DeclarativeOracle oracle;
  for (const auto& g : envs) {
    for (const auto& s : types) {
      for (const auto& t : types) {
        ++report.judgments;
        const SubResult alg = decide_sub(g, s, t, cfg.fuel);
        const bool decl =
            !scoping_violation(g, s, t) && oracle.derivable(g, s, t, cfg.depth);
        if (decl) ++report.derivable;
        if (!alg.is_unknown() && alg.is_yes() == decl) continue;
        ++report.disagreements;
        if (report.examples.size() < 10) {
          report.examples.push_back(Disagreement{g, s, t, std::string(alg.label()), decl});
        }
      }
    }
  }
  return report;
}

}  // namespace fsubtype
