#include "cfl/parser.hpp"

#include <cctype>

#include "cfl/errors.hpp"

namespace cfl {

namespace {

enum class Tok {
  Ident,
  DyadicLit,
  Half,
  TruncSub,
  And,
  Or,
  Not,
  Sup,
  Inf,
  Dot,
  LParen,
  RParen,
  Comma,
  Pipe,
  Minus,
  End,
};

struct Token {
  Tok kind;
  std::string text;
  Dyadic value;  // DyadicLit only
  size_t offset;
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (true) {
      skip_ws();
      size_t at = pos_;
      if (pos_ >= src_.size()) {
        out.push_back({Tok::End, "", {}, at});
        return out;
      }
      char c = src_[pos_];
      if (isdigit(static_cast<unsigned char>(c))) {
        out.push_back(lex_number());
      } else if (isalpha(static_cast<unsigned char>(c)) || c == '_') {
        out.push_back(lex_ident());
      } else if (c == '-') {
        ++pos_;
        if (pos_ < src_.size() && src_[pos_] == '.') {
          ++pos_;
          out.push_back({Tok::TruncSub, "-.", {}, at});
        } else {
          out.push_back({Tok::Minus, "-", {}, at});
        }
      } else if (c == '/') {
        ++pos_;
        if (pos_ < src_.size() && src_[pos_] == '\\') {
          ++pos_;
          out.push_back({Tok::And, "/\\", {}, at});
        } else {
          throw ParseError("stray '/'", at);
        }
      } else if (c == '\\') {
        ++pos_;
        if (pos_ < src_.size() && src_[pos_] == '/') {
          ++pos_;
          out.push_back({Tok::Or, "\\/", {}, at});
        } else {
          throw ParseError("stray '\\'", at);
        }
      } else {
        ++pos_;
        switch (c) {
          case '~': out.push_back({Tok::Not, "~", {}, at}); break;
          case '.': out.push_back({Tok::Dot, ".", {}, at}); break;
          case '(': out.push_back({Tok::LParen, "(", {}, at}); break;
          case ')': out.push_back({Tok::RParen, ")", {}, at}); break;
          case ',': out.push_back({Tok::Comma, ",", {}, at}); break;
          case '|': out.push_back({Tok::Pipe, "|", {}, at}); break;
          default: throw ParseError(std::string("unexpected character '") + c + "'", at);
        }
      }
    }
  }

 private:
  std::string_view src_;
  size_t pos_ = 0;

  void skip_ws() {
    while (pos_ < src_.size() && isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }

  // Digits start either a dyadic literal "k/2^n" or the halving prefix
  // "1/2" (no caret).
  Token lex_number() {
    size_t at = pos_;
    std::string digits;
    while (pos_ < src_.size() && isdigit(static_cast<unsigned char>(src_[pos_])))
      digits += src_[pos_++];
    if (pos_ + 2 < src_.size() && src_[pos_] == '/' && src_[pos_ + 1] == '2' &&
        src_[pos_ + 2] == '^') {
      pos_ += 3;
      std::string exp;
      while (pos_ < src_.size() && isdigit(static_cast<unsigned char>(src_[pos_])))
        exp += src_[pos_++];
      if (exp.empty()) throw ParseError("missing exponent in dyadic literal", pos_);
      Dyadic v;
      try {
        v = Dyadic(BigInt(digits), static_cast<unsigned>(std::stoul(exp)));
      } catch (const DomainError& e) {
        throw ParseError(e.what(), at);
      }
      return {Tok::DyadicLit, digits + "/2^" + exp, v, at};
    }
    if (digits == "1" && pos_ + 1 < src_.size() && src_[pos_] == '/' && src_[pos_ + 1] == '2') {
      pos_ += 2;
      return {Tok::Half, "1/2", {}, at};
    }
    throw ParseError("number is neither a dyadic literal k/2^n nor the prefix 1/2", at);
  }

  Token lex_ident() {
    size_t at = pos_;
    std::string name;
    while (pos_ < src_.size() &&
           (isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_' ||
            src_[pos_] == '\''))
      name += src_[pos_++];
    if (name == "sup") return {Tok::Sup, name, {}, at};
    if (name == "inf") return {Tok::Inf, name, {}, at};
    return {Tok::Ident, name, {}, at};
  }
};

class Parser {
 public:
  Parser(std::string_view text, const Signature& sig) : sig_(sig) {
    toks_ = Lexer(text).run();
  }

  Formula formula() {
    Formula f = parse_formula();
    expect(Tok::End, "trailing input");
    return f;
  }

  Term term() {
    Term t = parse_term();
    expect(Tok::End, "trailing input");
    return t;
  }

 private:
  const Signature& sig_;
  std::vector<Token> toks_;
  size_t at_ = 0;

  const Token& peek() const { return toks_[at_]; }
  Token take() { return toks_[at_++]; }
  bool accept(Tok k) {
    if (peek().kind == k) {
      ++at_;
      return true;
    }
    return false;
  }
  Token expect(Tok k, const char* what) {
    if (peek().kind != k) throw ParseError(std::string("expected ") + what, peek().offset);
    return take();
  }

  Formula parse_formula() {
    if (peek().kind == Tok::Sup || peek().kind == Tok::Inf) {
      bool is_sup = take().kind == Tok::Sup;
      Token var = expect(Tok::Ident, "bound variable");
      expect(Tok::Dot, "'.' after bound variable");
      Formula body = parse_formula();
      return is_sup ? Formula::sup(var.text, std::move(body))
                    : Formula::inf(var.text, std::move(body));
    }
    return parse_or();
  }

  Formula parse_or() {
    Formula f = parse_and();
    while (accept(Tok::Or)) f = Formula::lor(std::move(f), parse_and());
    return f;
  }

  Formula parse_and() {
    Formula f = parse_sub();
    while (accept(Tok::And)) f = Formula::land(std::move(f), parse_sub());
    return f;
  }

  Formula parse_sub() {
    Formula f = parse_unary();
    while (accept(Tok::TruncSub)) f = Formula::trunc_sub(std::move(f), parse_unary());
    return f;
  }

  Formula parse_unary() {
    if (accept(Tok::Not)) return Formula::neg(parse_unary());
    if (accept(Tok::Half)) return Formula::half(parse_unary());
    return parse_primary();
  }

  Formula parse_primary() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::LParen: {
        take();
        Formula f = parse_formula();
        expect(Tok::RParen, "')'");
        return f;
      }
      case Tok::Pipe: {
        take();
        Formula a = parse_formula();
        expect(Tok::Minus, "'-' between |...| operands");
        Formula b = parse_formula();
        expect(Tok::Pipe, "closing '|'");
        return Formula::abs_diff(std::move(a), std::move(b));
      }
      case Tok::DyadicLit:
        return Formula::constant(take().value);
      case Tok::Ident: {
        Token name = take();
        std::vector<Term> args;
        if (accept(Tok::LParen)) {
          args.push_back(parse_term());
          while (accept(Tok::Comma)) args.push_back(parse_term());
          expect(Tok::RParen, "')'");
        }
        const Signature::Symbol* rel = sig_.relation(name.text);
        if (rel != nullptr && rel->arity != args.size())
          throw ParseError("relation " + name.text + " expects " + std::to_string(rel->arity) +
                               " arguments",
                           name.offset);
        return Formula::atomic(name.text, std::move(args));
      }
      default:
        throw ParseError("expected a formula", t.offset);
    }
  }

  Term parse_term() {
    Token name = expect(Tok::Ident, "term");
    std::vector<Term> args;
    bool had_parens = false;
    if (accept(Tok::LParen)) {
      had_parens = true;
      args.push_back(parse_term());
      while (accept(Tok::Comma)) args.push_back(parse_term());
      expect(Tok::RParen, "')'");
    }
    const Signature::Symbol* fn = sig_.function(name.text);
    if (fn != nullptr) {
      if (fn->arity != args.size())
        throw ParseError("function " + name.text + " expects " + std::to_string(fn->arity) +
                             " arguments",
                         name.offset);
      return Term::app(name.text, std::move(args));
    }
    if (had_parens) return Term::app(name.text, std::move(args));
    if (sig_.relation(name.text) != nullptr)
      throw ParseError("relation symbol " + name.text + " used as a term", name.offset);
    return Term::var(name.text);
  }
};

}  // namespace

Formula parse(std::string_view text, const Signature& sig) {
  return Parser(text, sig).formula();
}

Term parse_term(std::string_view text, const Signature& sig) {
  return Parser(text, sig).term();
}

}  // namespace cfl
