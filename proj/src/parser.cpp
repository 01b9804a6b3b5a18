#include "fsub/parser.hpp"

#include <optional>
#include <sstream>

namespace fsubtype {

ParseError::ParseError(SourcePos pos, std::vector<std::string> expected, std::string found,
                       std::string message)
    : Error([&] {
        std::ostringstream os;
        os << pos.line << ":" << pos.column << ": ";
        if (!message.empty()) {
          os << message;
        } else {
          os << "expected ";
          if (expected.size() > 1) os << "one of ";
          for (std::size_t i = 0; i < expected.size(); ++i) {
            if (i > 0) os << ", ";
            os << expected[i];
          }
          os << "; found " << found;
        }
        return os.str();
      }()),
      pos_(pos),
      expected_(std::move(expected)),
      found_(std::move(found)) {}

namespace {

SourcePos position_of(std::string_view input, std::size_t offset) {
  SourcePos pos;
  pos.offset = offset;
  for (std::size_t i = 0; i < offset && i < input.size(); ++i) {
    if (input[i] == '\n') {
      ++pos.line;
      pos.column = 1;
    } else {
      ++pos.column;
    }
  }
  return pos;
}

const char* spelling(TokenKind k) {
  switch (k) {
    case TokenKind::Ident: return "identifier";
    case TokenKind::Top: return "'Top'";
    case TokenKind::All: return "'All'";
    case TokenKind::Subtype: return "'<:'";
    case TokenKind::Arrow: return "'->'";
    case TokenKind::Turnstile: return "'|-'";
    case TokenKind::Dot: return "'.'";
    case TokenKind::Comma: return "','";
    case TokenKind::LParen: return "'('";
    case TokenKind::RParen: return "')'";
    case TokenKind::End: return "end of input";
  }
  return "?";
}

bool ident_start(char c) {
  return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || c == '_';
}
bool ident_char(char c) {
  return ident_start(c) || (c >= '0' && c <= '9') || c == '\'';
}

class Parser {
 public:
  explicit Parser(std::string_view input) : input_(input), tokens_(tokenize(input)) {}

  const std::vector<Token>& tokens() const { return tokens_; }
  std::size_t index() const { return index_; }

  Ty type() {
    if (peek().kind == TokenKind::All) {
      advance();
      const Token& binder = expect(TokenKind::Ident);
      VarName x(binder.text);
      expect(TokenKind::Subtype);
      const std::size_t bound_start = peek().offset;
      Ty bound = type();
      if (occurs_free(x, bound)) {
        throw ParseError(position_of(input_, bound_start), {}, {},
                         "bound of 'All " + x.str() + "' mentions its own binder");
      }
      expect(TokenKind::Dot);
      Ty body = type();
      return Ty::forall(std::move(bound), close(body, x));
    }
    Ty left = atom();
    if (peek().kind == TokenKind::Arrow) {
      advance();
      Ty right = type();
      return Ty::arrow(std::move(left), std::move(right));
    }
    return left;
  }

  Env env() {
    if (at_env_end(0)) return Env{};
    if (peek().kind == TokenKind::Ident && peek().text == "empty" && at_env_end(1)) {
      advance();
      return Env{};
    }
    std::vector<Binding> bindings;
    while (true) {
      const Token& name = expect(TokenKind::Ident);
      VarName x(name.text);
      expect(TokenKind::Subtype);
      bindings.push_back(Binding{std::move(x), type()});
      if (peek().kind != TokenKind::Comma) break;
      advance();
    }
    return Env::from_declarations(bindings);
  }

  const Token& expect(TokenKind k) {
    if (peek().kind != k) fail({spelling(k)});
    return advance();
  }

  void expect_end() { expect(TokenKind::End); }

 private:
  const Token& peek(std::size_t ahead = 0) const {
    const std::size_t i = std::min(index_ + ahead, tokens_.size() - 1);
    return tokens_[i];
  }

  const Token& advance() {
    const Token& t = tokens_[index_];
    if (index_ + 1 < tokens_.size()) ++index_;
    return t;
  }

  bool at_env_end(std::size_t ahead) const {
    const TokenKind k = peek(ahead).kind;
    return k == TokenKind::End || k == TokenKind::Turnstile;
  }

  Ty atom() {
    const Token& t = peek();
    switch (t.kind) {
      case TokenKind::Top:
        advance();
        return Ty::top();
      case TokenKind::Ident:
        advance();
        return Ty::var(VarName(t.text));
      case TokenKind::LParen: {
        advance();
        Ty inner = type();
        expect(TokenKind::RParen);
        return inner;
      }
      default:
        fail({"'Top'", "identifier", "'('", "'All'"});
    }
  }

  [[noreturn]] void fail(std::vector<std::string> expected) const {
    const Token& t = peek();
    std::string found = t.kind == TokenKind::End ? "end of input" : "'" + t.text + "'";
    throw ParseError(position_of(input_, t.offset), std::move(expected), std::move(found));
  }

  std::string_view input_;
  std::vector<Token> tokens_;
  std::size_t index_ = 0;
};

struct Printer {
  std::string type(const Ty& t, VarSet& avoid, bool arrow_left) {
    switch (t.kind()) {
      case Ty::Kind::Top:
        return "Top";
      case Ty::Kind::Var:
        return t.name().str();
      case Ty::Kind::Arrow: {
        std::string s = type(t.dom(), avoid, true) + " -> " + type(t.cod(), avoid, false);
        return arrow_left ? "(" + s + ")" : s;
      }
      case Ty::Kind::Forall: {
        VarSet taken = avoid;
        taken.merge(fv(t));
        VarName x = fresh(taken);
        std::string s = "All " + x.str() + " <: " + type(t.bound(), avoid, false) + " . ";
        const bool inserted = avoid.insert(x).second;
        s += type(open(t.body(), x), avoid, false);
        if (inserted) avoid.erase(x);
        return arrow_left ? "(" + s + ")" : s;
      }
      case Ty::Kind::Bound:
        break;
    }
    throw MalformedType("print_type: type is not locally closed");
  }
};

}  // namespace

std::vector<Token> tokenize(std::string_view input) {
  std::vector<Token> out;
  std::size_t i = 0;
  auto push = [&](TokenKind k, std::size_t len) {
    out.push_back(Token{k, std::string(input.substr(i, len)), i, len});
    i += len;
  };
  while (i < input.size()) {
    const char c = input[i];
    if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
      ++i;
      continue;
    }
    if (ident_start(c)) {
      std::size_t j = i;
      while (j < input.size() && ident_char(input[j])) ++j;
      std::string_view word = input.substr(i, j - i);
      TokenKind k = word == "Top" ? TokenKind::Top : word == "All" ? TokenKind::All : TokenKind::Ident;
      push(k, j - i);
      continue;
    }
    std::string_view rest = input.substr(i);
    if (rest.starts_with("<:")) {
      push(TokenKind::Subtype, 2);
    } else if (rest.starts_with("->")) {
      push(TokenKind::Arrow, 2);
    } else if (rest.starts_with("|-")) {
      push(TokenKind::Turnstile, 2);
    } else if (c == '.') {
      push(TokenKind::Dot, 1);
    } else if (c == ',') {
      push(TokenKind::Comma, 1);
    } else if (c == '(') {
      push(TokenKind::LParen, 1);
    } else if (c == ')') {
      push(TokenKind::RParen, 1);
    } else {
      throw ParseError(position_of(input, i), {}, std::string(1, c),
                       "unexpected character '" + std::string(1, c) + "'");
    }
  }
  out.push_back(Token{TokenKind::End, "", input.size(), 0});
  return out;
}

Ty parse_type(std::string_view input) {
  Parser p(input);
  Ty t = p.type();
  p.expect_end();
  return t;
}

Env parse_env(std::string_view input) {
  Parser p(input);
  Env e = p.env();
  p.expect_end();
  return e;
}

ParsedJudgment parse_judgment(std::string_view input) {
  Parser p(input);
  Env e = p.env();
  p.expect(TokenKind::Turnstile);
  Ty lhs = p.type();
  p.expect(TokenKind::Subtype);
  Ty rhs = p.type();
  p.expect_end();
  return ParsedJudgment{std::move(e), std::move(lhs), std::move(rhs)};
}

SourceJudgment parse_judgment_source(std::string_view input) {
  Parser p(input);
  auto text_between = [&](std::size_t from_token, std::size_t to_token) {
    const auto& toks = p.tokens();
    const std::size_t begin = toks[from_token].offset;
    const std::size_t end =
        to_token == from_token ? begin : toks[to_token - 1].offset + toks[to_token - 1].length;
    return std::string(input.substr(begin, end - begin));
  };
  const std::size_t env_begin = p.index();
  p.env();
  const std::size_t env_end = p.index();
  p.expect(TokenKind::Turnstile);
  const std::size_t lhs_begin = p.index();
  p.type();
  const std::size_t lhs_end = p.index();
  p.expect(TokenKind::Subtype);
  const std::size_t rhs_begin = p.index();
  p.type();
  const std::size_t rhs_end = p.index();
  p.expect_end();
  return SourceJudgment{text_between(env_begin, env_end), text_between(lhs_begin, lhs_end),
                        text_between(rhs_begin, rhs_end), p.tokens()};
}

EnvAndType parse_env_and_type(std::string_view input) {
  Parser p(input);
  Env e = p.env();
  p.expect(TokenKind::Turnstile);
  Ty t = p.type();
  p.expect_end();
  return EnvAndType{std::move(e), std::move(t)};
}

std::string print_type(const Ty& t) { return print_type(t, VarSet{}); }

std::string print_type(const Ty& t, const VarSet& avoid) {
  VarSet scope = avoid;
  return Printer{}.type(t, scope, false);
}

std::string print_env(const Env& e) {
  const VarSet names = dom_set(e);
  std::string out;
  for (const auto& b : e.declarations()) {
    if (!out.empty()) out += ", ";
    out += b.var.str() + " <: " + print_type(b.bound, names);
  }
  return out;
}

std::string print_judgment(const Env& e, const Ty& lhs, const Ty& rhs) {
  const VarSet names = dom_set(e);
  std::string out = print_env(e);
  out += out.empty() ? "|- " : " |- ";
  out += print_type(lhs, names) + " <: " + print_type(rhs, names);
  return out;
}

std::string describe(const ParseError& e) { return e.what(); }

}  // namespace fsubtype
