#pragma once

// Concrete ASCII syntax:
//
//   Ty   ::= "Top" | ident | Ty "->" Ty | "All" ident "<:" Ty "." Ty | "(" Ty ")"
//   Env  ::= "" | "empty" | ident "<:" Ty ("," ident "<:" Ty)*
//   Jdg  ::= Env "|-" Ty "<:" Ty
//
// `->` associates to the right and an `All` body extends as far right as
// possible. The printer emits minimal parentheses and canonical binder names.

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "fsub/errors.hpp"
#include "fsub/judgments.hpp"
#include "fsub/syntax.hpp"

namespace fsubtype {

enum class TokenKind {
  Ident,
  Top,
  All,
  Subtype,    // <:
  Arrow,      // ->
  Turnstile,  // |-
  Dot,
  Comma,
  LParen,
  RParen,
  End,
};

struct Token {
  TokenKind kind;
  std::string text;
  std::size_t offset;
  std::size_t length;
};

/// Throws ParseError on characters outside the token set.
std::vector<Token> tokenize(std::string_view input);

struct SourceJudgment {
  std::string env_text;
  std::string lhs_text;
  std::string rhs_text;
  std::vector<Token> tokens;
};

struct ParsedJudgment {
  Env env;
  Ty lhs;
  Ty rhs;
};

Ty parse_type(std::string_view input);
Env parse_env(std::string_view input);
ParsedJudgment parse_judgment(std::string_view input);
/// Splits a judgment line into its three textual parts with token spans.
SourceJudgment parse_judgment_source(std::string_view input);

struct EnvAndType {
  Env env;
  Ty type;
};
/// `Env "|-" Ty`, the goal form taken by reflexivity synthesis.
EnvAndType parse_env_and_type(std::string_view input);

std::string print_type(const Ty& t);
/// Binder names additionally avoid `avoid` (typically the environment's domain).
std::string print_type(const Ty& t, const VarSet& avoid);
std::string print_env(const Env& e);
std::string print_judgment(const Env& e, const Ty& lhs, const Ty& rhs);

std::string describe(const ParseError& e);

}  // namespace fsubtype
