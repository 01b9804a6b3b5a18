#include "fsub/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "fsub/errors.hpp"
#include "fsub/gen.hpp"
#include "fsub/metatheory.hpp"
#include "fsub/oracle.hpp"
#include "fsub/parser.hpp"
#include "fsub/serialize.hpp"
#include "fsub/subtyper.hpp"

namespace fsubtype::cli {
namespace {

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Line {
  std::size_t number;
  std::string text;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError(path + ": cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Non-blank lines that do not start with '#'.
std::vector<Line> read_lines(const std::string& path) {
  std::istringstream in(read_file(path));
  std::vector<Line> lines;
  std::string text;
  for (std::size_t n = 1; std::getline(in, text); ++n) {
    if (!text.empty() && text.back() == '\r') text.pop_back();
    const auto first = text.find_first_not_of(" \t");
    if (first == std::string::npos || text[first] == '#') continue;
    lines.push_back(Line{n, text});
  }
  return lines;
}

// "FILE:LINE:COL: message" for an error inside one line of FILE.
std::string locate(const std::string& path, std::size_t line, const ParseError& e) {
  std::string msg = e.what();
  const std::string prefix = std::to_string(e.pos().line) + ":" + std::to_string(e.pos().column) + ": ";
  if (msg.rfind(prefix, 0) == 0) msg.erase(0, prefix.size());
  return path + ":" + std::to_string(line) + ":" + std::to_string(e.pos().column) + ": " + msg;
}

Derivation load_derivation(const std::string& path) {
  const std::string text = read_file(path);
  try {
    return parse_derivation(text);
  } catch (const ParseError& e) {
    throw InputError(path + ": " + e.what());
  } catch (const std::invalid_argument& e) {
    throw InputError(path + ": " + e.what());
  }
}

void emit(std::ostream& out, const Derivation& d, bool text) {
  if (text) {
    out << render(d);
  } else {
    out << serialize(d) << '\n';
  }
}

struct CheckOptions {
  std::string file;
  std::size_t fuel = kDefaultFuel;
  bool json = false;
  bool derivation = false;
};

int run_check(const CheckOptions& o, std::ostream& out, std::ostream& err) {
  bool any_no = false, any_unknown = false, any_error = false;
  for (const auto& line : read_lines(o.file)) {
    std::optional<ParsedJudgment> parsed;
    try {
      parsed = parse_judgment(line.text);
    } catch (const ParseError& e) {
      err << locate(o.file, line.number, e) << '\n';
      out << "ERROR\n";
      any_error = true;
      continue;
    }
    const ParsedJudgment& j = *parsed;
    if (auto why = scoping_violation(j.env, j.lhs, j.rhs)) {
      err << o.file << ":" << line.number << ": " << *why << '\n';
      out << "ERROR\n";
      any_error = true;
      continue;
    }
    const SubResult r = decide_sub(j.env, j.lhs, j.rhs, o.fuel);
    out << r.label() << '\n';
    if (r.is_no()) any_no = true;
    if (r.is_unknown()) any_unknown = true;
    if (o.derivation && r.is_yes()) emit(out, r.derivation(), !o.json);
  }
  if (any_error) return kExitInput;
  if (any_unknown) return kExitUnknown;
  if (any_no) return kExitNo;
  return kExitOk;
}

int run_refl(const std::string& file, bool text, std::ostream& out, std::ostream& err) {
  int code = kExitOk;
  for (const auto& line : read_lines(file)) {
    std::optional<EnvAndType> input;
    try {
      input = parse_env_and_type(line.text);
    } catch (const ParseError& e) {
      err << locate(file, line.number, e) << '\n';
      code = std::max(code, kExitInput);
      continue;
    }
    try {
      emit(out, derive_refl(input->env, input->type), text);
    } catch (const PreconditionError& e) {
      err << file << ":" << line.number << ": " << e.what() << '\n';
      code = std::max(code, kExitPrecondition);
    }
  }
  return code;
}

struct GenOptions {
  std::uint64_t seed = 0;
  std::size_t count = 10;
  std::size_t max_env = 4;
  std::size_t max_size = 8;
  std::size_t depth = 6;
  bool derivations = false;
};

void run_gen(const GenOptions& o, std::ostream& out) {
  GenConfig base;
  base.max_env_len = o.max_env;
  base.max_ty_size = o.max_size;
  base.max_deriv_depth = o.depth;
  for (std::size_t i = 0; i < o.count; ++i) {
    Generator gen(base.with_seed(sample_seed(o.seed, i)));
    if (o.derivations) {
      out << serialize(gen.derivation()) << '\n';
      continue;
    }
    const Env g = gen.env();
    const Ty s = gen.closed_ty(g);
    const Ty t = gen.closed_ty(g);
    out << print_judgment(g, s, t) << '\n';
  }
}

int run_oracle(const OracleConfig& cfg, std::ostream& out) {
  const OracleReport r = run_oracle_comparison(cfg);
  out << r.envs << " environments, " << r.judgments << " judgments, " << r.derivable
      << " derivable\n";
  for (const auto& d : r.examples) {
    out << "disagreement: " << print_judgment(d.env, d.lhs, d.rhs) << "  algorithmic "
        << d.algorithmic << ", declarative " << (d.declarative ? "YES" : "NO") << '\n';
  }
  out << r.disagreements << " disagreements\n";
  return r.disagreements == 0 ? kExitOk : kExitNo;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Algorithmic subtyping for System F with bounded quantification"};
  app.name("fsub");
  app.require_subcommand(1, 1);

  CheckOptions check;
  auto* check_cmd = app.add_subcommand("check", "Decide each judgment line of FILE");
  check_cmd->add_option("FILE", check.file)->required();
  check_cmd->add_option("--fuel", check.fuel, "Search budget per judgment");
  check_cmd->add_flag("--json", check.json, "Print derivations in the serialization format");
  check_cmd->add_flag("--derivation", check.derivation, "Print the derivation of each YES");

  std::string refl_file;
  bool refl_text = false;
  auto* refl_cmd = app.add_subcommand("refl", "Derive T <: T for each line `ENV |- T`");
  refl_cmd->add_option("FILE", refl_file)->required();
  refl_cmd->add_flag("--text", refl_text, "Print trees instead of the serialization format");

  std::string trans_first, trans_second;
  bool trans_text = false;
  auto* trans_cmd = app.add_subcommand("trans", "Compose derivations of S <: Q and Q <: T");
  trans_cmd->add_option("FILE1", trans_first)->required();
  trans_cmd->add_option("FILE2", trans_second)->required();
  trans_cmd->add_flag("--text", trans_text, "Print the tree instead of the serialization format");

  std::string narrow_file, narrow_pivot, narrow_bound, narrow_evidence;
  bool narrow_text = false;
  auto* narrow_cmd = app.add_subcommand("narrow", "Narrow the bound of a variable in a derivation");
  narrow_cmd->add_option("FILE", narrow_file)->required();
  narrow_cmd->add_option("--pivot", narrow_pivot, "Variable whose bound is replaced")->required();
  narrow_cmd->add_option("--new-bound", narrow_bound, "The new, smaller bound")->required();
  narrow_cmd->add_option("--evidence", narrow_evidence, "Derivation of NEW-BOUND <: old bound")
      ->required();
  narrow_cmd->add_flag("--text", narrow_text, "Print the tree instead of the serialization format");

  GenOptions gen;
  auto* gen_cmd = app.add_subcommand("gen", "Emit a seeded corpus of judgments or derivations");
  gen_cmd->add_option("--seed", gen.seed)->required();
  gen_cmd->add_option("--count", gen.count)->required();
  gen_cmd->add_option("--max-env", gen.max_env, "Longest environment");
  gen_cmd->add_option("--max-size", gen.max_size, "Largest type")->check(CLI::PositiveNumber);
  gen_cmd->add_option("--depth", gen.depth, "Derivation height target")->check(CLI::PositiveNumber);
  gen_cmd->add_flag("--derivations", gen.derivations, "Emit valid derivations");

  OracleConfig oracle;
  auto* oracle_cmd =
      app.add_subcommand("oracle", "Compare the algorithmic and declarative systems exhaustively");
  oracle_cmd->add_option("--max-size", oracle.max_size)->required();
  oracle_cmd->add_option("--max-env", oracle.max_env)->required();
  oracle_cmd->add_option("--fuel", oracle.fuel);
  oracle_cmd->add_option("--depth", oracle.depth, "Declarative search height");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    if (*check_cmd) return run_check(check, out, err);
    if (*refl_cmd) return run_refl(refl_file, refl_text, out, err);
    if (*trans_cmd) {
      const Derivation d1 = load_derivation(trans_first);
      const Derivation d2 = load_derivation(trans_second);
      emit(out, derive_trans(d1, d2), trans_text);
      return kExitOk;
    }
    if (*narrow_cmd) {
      const Derivation d = load_derivation(narrow_file);
      const Derivation evidence = load_derivation(narrow_evidence);
      const Ty p = [&] {
        try {
          return parse_type(narrow_bound);
        } catch (const ParseError& e) {
          throw InputError(std::string("--new-bound: ") + e.what());
        }
      }();
      if (!VarName::is_valid(narrow_pivot)) throw InputError("--pivot: not an identifier");
      const EnvSplit split = EnvSplit::at(d.env(), VarName(narrow_pivot));
      emit(out, derive_narrow(split, p, d, evidence), narrow_text);
      return kExitOk;
    }
    if (*gen_cmd) {
      run_gen(gen, out);
      return kExitOk;
    }
    if (*oracle_cmd) return run_oracle(oracle, out);
  } catch (const InputError& e) {
    err << e.what() << '\n';
    return kExitInput;
  } catch (const PreconditionError& e) {
    err << "precondition violated: " << e.what() << '\n';
    return kExitPrecondition;
  }
  return kExitInput;
}

}  // namespace fsubtype::cli
