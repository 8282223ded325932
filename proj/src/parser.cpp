#include "charfol/parser.hpp"

#include <cctype>
#include <type_traits>

namespace charfol::algebra {

namespace {

enum class Tok { Int, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen, End };

struct Token {
  Tok kind;
  std::size_t pos;
  std::string text;
};

std::vector<Token> lex(std::string_view s) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    char ch = s[i];
    if (std::isspace(static_cast<unsigned char>(ch))) {
      ++i;
      continue;
    }
    std::size_t start = i;
    if (std::isdigit(static_cast<unsigned char>(ch))) {
      while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
      out.push_back({Tok::Int, start, std::string(s.substr(start, i - start))});
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
      while (i < s.size() && (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_')) ++i;
      out.push_back({Tok::Ident, start, std::string(s.substr(start, i - start))});
      continue;
    }
    Tok k;
    switch (ch) {
      case '+': k = Tok::Plus; break;
      case '-': k = Tok::Minus; break;
      case '*': k = Tok::Star; break;
      case '/': k = Tok::Slash; break;
      case '^': k = Tok::Caret; break;
      case '(': k = Tok::LParen; break;
      case ')': k = Tok::RParen; break;
      default:
        throw ParseError(ErrorCode::SyntaxError, start, std::string("unexpected character '") + ch + "'");
    }
    out.push_back({k, start, std::string(1, ch)});
    ++i;
  }
  out.push_back({Tok::End, s.size(), ""});
  return out;
}

template <class C>
class Parser {
 public:
  Parser(std::string_view text, const VarList& vars, const gf::Field& field)
      : toks_(lex(text)), vars_(vars), field_(field) {}

  Poly<C> run() {
    Poly<C> r = expr();
    if (peek().kind != Tok::End) fail("unexpected token '" + peek().text + "'");
    return r;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  Token next() { return toks_[pos_++]; }
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(ErrorCode::SyntaxError, peek().pos, msg); }

  Poly<C> expr() {
    Poly<C> acc = term();
    while (peek().kind == Tok::Plus || peek().kind == Tok::Minus) {
      bool minus = next().kind == Tok::Minus;
      Poly<C> rhs = term();
      acc = minus ? acc - rhs : acc + rhs;
    }
    return acc;
  }

  Poly<C> term() {
    Poly<C> acc = unary();
    while (peek().kind == Tok::Star || peek().kind == Tok::Slash) {
      const Token op = next();
      std::size_t rhs_pos = peek().pos;
      Poly<C> rhs = unary();
      if (op.kind == Tok::Star) {
        acc = acc * rhs;
        continue;
      }
      if (!rhs.is_constant())
        throw ParseError(ErrorCode::SyntaxError, rhs_pos, "division is only allowed by constants");
      C c = rhs.constant_term();
      if (c.is_zero()) throw ParseError(ErrorCode::SyntaxError, rhs_pos, "division by zero");
      acc = acc * c.inverse();
    }
    return acc;
  }

  Poly<C> unary() {
    if (peek().kind == Tok::Minus) {
      next();
      return -unary();
    }
    if (peek().kind == Tok::Plus) {
      next();
      return unary();
    }
    return power();
  }

  Poly<C> power() {
    Poly<C> base = atom();
    if (peek().kind == Tok::Caret) {
      next();
      if (peek().kind != Tok::Int) fail("expected a nonnegative integer exponent");
      Token e = next();
      if (e.text.size() > 9) throw ParseError(ErrorCode::SyntaxError, e.pos, "exponent too large");
      base = base.pow(static_cast<std::uint32_t>(std::stoul(e.text)));
      if (peek().kind == Tok::Caret) fail("chained exponents are ambiguous; use parentheses");
    }
    return base;
  }

  Poly<C> atom() {
    const Token tok = peek();
    switch (tok.kind) {
      case Tok::Int: {
        next();
        // Reduce the decimal string mod p digit by digit.
        std::int64_t p = field_.characteristic(), v = 0;
        for (char ch : tok.text) v = (v * 10 + (ch - '0')) % p;
        return Poly<C>::from_int(field_, vars_, v);
      }
      case Tok::Ident: {
        next();
        for (std::size_t i = 0; i < vars_->size(); ++i)
          if ((*vars_)[i] == tok.text) return Poly<C>::variable(field_, vars_, i);
        if (tok.text == "u" && field_.degree() > 1) return Poly<C>::constant(field_, vars_, lift(field_.gen()));
        if constexpr (std::is_same_v<C, RatFunc>) {
          if (tok.text == "t") return Poly<C>::constant(field_, vars_, RatFunc::variable(field_));
        }
        throw ParseError(ErrorCode::UnknownVariable, tok.pos, "unknown identifier '" + tok.text + "'");
      }
      case Tok::LParen: {
        next();
        Poly<C> inner = expr();
        if (peek().kind != Tok::RParen) fail("expected ')'");
        next();
        return inner;
      }
      default:
        fail(tok.kind == Tok::End ? "unexpected end of input" : "unexpected token '" + tok.text + "'");
    }
  }

  static C lift(const gf::Elem& e) {
    if constexpr (std::is_same_v<C, RatFunc>) {
      return RatFunc::constant(e);
    } else {
      return e;
    }
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  VarList vars_;
  gf::Field field_;
};

}  // namespace

template <class C>
Poly<C> parse_poly(std::string_view text, const VarList& vars, const gf::Field& field) {
  if constexpr (std::is_same_v<C, RatFunc>) {
    for (const auto& v : *vars)
      if (v == "t") throw Error(ErrorCode::InvalidParameters, "'t' is reserved for the coefficient field");
  }
  return Parser<C>(text, vars, field).run();
}

template FqPoly parse_poly<gf::Elem>(std::string_view, const VarList&, const gf::Field&);
template KPoly parse_poly<RatFunc>(std::string_view, const VarList&, const gf::Field&);

RatFunc parse_ratfunc(std::string_view text, const gf::Field& field) {
  KPoly p = parse_k(text, make_vars({}), field);
  return p.constant_term();
}

}  // namespace charfol::algebra
