#include "lbp/parser.hpp"

#include <cctype>
#include <cstdlib>
#include <vector>

namespace lbp {

namespace {

enum class Tok { Ident, Number, LParen, RParen, Comma, Dot, Colon, Backslash, Plus, Star, Arrow, Eq, End };

struct Token {
  Tok kind;
  std::string text;
  double num = 0.0;
  int line, col;
  bool tight_lparen = false;  // '(' immediately after previous token
};

struct Lexer {
  std::string_view src;
  std::size_t pos = 0;
  int line = 1, col = 1;
  std::vector<Token> toks;

  [[noreturn]] void fail(const std::string& msg) { throw ParseError(msg, line, col); }

  void advance(std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
      if (src[pos] == '\n') { ++line; col = 1; } else { ++col; }
      ++pos;
    }
  }

  void run() {
    bool prev_adjacent = false;
    while (pos < src.size()) {
      char c = src[pos];
      if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
        advance(1);
        prev_adjacent = false;
        continue;
      }
      if (c == '-' && pos + 1 < src.size() && src[pos + 1] == '>') {
        push(Tok::Arrow, "->", prev_adjacent);
        advance(2);
        prev_adjacent = true;
        continue;
      }
      if (std::isdigit(static_cast<unsigned char>(c)) ||
          (c == '-' && pos + 1 < src.size() &&
           (std::isdigit(static_cast<unsigned char>(src[pos + 1])) || src[pos + 1] == '.'))) {
        lex_number();
        prev_adjacent = true;
        continue;
      }
      if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        std::size_t j = pos;
        while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_' || src[j] == '\''))
          ++j;
        push(Tok::Ident, std::string(src.substr(pos, j - pos)), prev_adjacent);
        advance(j - pos);
        prev_adjacent = true;
        continue;
      }
      switch (c) {
        case '(': push(Tok::LParen, "(", prev_adjacent); break;
        case ')': push(Tok::RParen, ")", prev_adjacent); break;
        case ',': push(Tok::Comma, ",", prev_adjacent); break;
        case '.': push(Tok::Dot, ".", prev_adjacent); break;
        case ':': push(Tok::Colon, ":", prev_adjacent); break;
        case '\\': push(Tok::Backslash, "\\", prev_adjacent); break;
        case '+': push(Tok::Plus, "+", prev_adjacent); break;
        case '*': push(Tok::Star, "*", prev_adjacent); break;
        case '=': push(Tok::Eq, "=", prev_adjacent); break;
        default: fail(std::string("unexpected character '") + c + "'");
      }
      advance(1);
      prev_adjacent = true;
    }
    toks.push_back({Tok::End, "", 0.0, line, col, false});
  }

  void lex_number() {
    std::size_t j = pos;
    if (src[j] == '-') ++j;
    while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
    if (j < src.size() && src[j] == '.' && j + 1 < src.size() &&
        std::isdigit(static_cast<unsigned char>(src[j + 1]))) {
      ++j;
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
    }
    if (j < src.size() && (src[j] == 'e' || src[j] == 'E')) {
      std::size_t k = j + 1;
      if (k < src.size() && (src[k] == '+' || src[k] == '-')) ++k;
      if (k < src.size() && std::isdigit(static_cast<unsigned char>(src[k]))) {
        ++k;
        while (k < src.size() && std::isdigit(static_cast<unsigned char>(src[k]))) ++k;
        j = k;
      }
    }
    std::string text(src.substr(pos, j - pos));
    Token t{Tok::Number, text, std::strtod(text.c_str(), nullptr), line, col, false};
    toks.push_back(t);
    advance(j - pos);
  }

  void push(Tok k, std::string text, bool adjacent) {
    toks.push_back({k, std::move(text), 0.0, line, col, k == Tok::LParen && adjacent});
  }
};

bool reserved(const std::string& s) {
  return s == "let" || s == "in" || s == "lin" || s == "R" || s == "Neg";
}

struct Parser {
  const std::vector<Token>& toks;
  const Registry& reg;
  std::size_t pos = 0;
  std::vector<std::string> lin_scope;  // lexically enclosing linear binders

  const Token& peek(int k = 0) const { return toks[pos + k]; }
  const Token& next() { return toks[pos++]; }

  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(msg, peek().line, peek().col);
  }

  void expect(Tok k, const std::string& what) {
    if (peek().kind != k) fail("expected " + what);
    ++pos;
  }

  bool is_lin(const std::string& n) const {
    for (auto it = lin_scope.rbegin(); it != lin_scope.rend(); ++it)
      if (*it == n) return true;
    return false;
  }

  // ---- types ----

  TypePtr type() {
    TypePtr l = type_prod();
    if (peek().kind == Tok::Arrow) {
      ++pos;
      return t_arrow(l, type());
    }
    return l;
  }

  TypePtr type_prod() {
    TypePtr l = type_atom();
    if (peek().kind == Tok::Star) {
      ++pos;
      return t_prod(l, type_prod());
    }
    return l;
  }

  TypePtr type_atom() {
    if (peek().kind == Tok::Ident && peek().text == "R") {
      ++pos;
      return t_real();
    }
    if (peek().kind == Tok::Ident && peek().text == "Neg") {
      ++pos;
      expect(Tok::LParen, "'(' after Neg");
      if (peek().kind != Tok::Number || peek().num < 1 || peek().num != static_cast<int>(peek().num))
        fail("Neg expects a positive natural dimension");
      int d = static_cast<int>(next().num);
      expect(Tok::RParen, "')'");
      return t_neg(d);
    }
    if (peek().kind == Tok::LParen) {
      ++pos;
      TypePtr t = type();
      expect(Tok::RParen, "')'");
      return t;
    }
    fail("expected a type");
  }

  // ---- terms ----

  TermPtr term() {
    switch (peek().kind) {
      case Tok::Backslash: {
        ++pos;
        if (peek().kind != Tok::Ident || reserved(peek().text)) fail("expected binder name");
        std::string x = next().text;
        TypePtr ty = t_real();
        if (peek().kind == Tok::Colon) {
          ++pos;
          ty = type();
        }
        expect(Tok::Dot, "'.' after binder");
        return mk_lam(x, Ann::Exp, ty, term());
      }
      case Tok::Ident:
        if (peek().text == "lin") {
          ++pos;
          if (peek().kind != Tok::Ident || reserved(peek().text)) fail("expected binder name");
          std::string z = next().text;
          expect(Tok::Dot, "'.' after binder");
          lin_scope.push_back(z);
          TermPtr body = term();
          lin_scope.pop_back();
          return mk_lam(z, Ann::Lin, t_real(), body);
        }
        if (peek().text == "let") return let_form();
        break;
      default: break;
    }
    return sum();
  }

  TermPtr let_form() {
    ++pos;  // let
    if (peek().kind == Tok::LParen) {
      ++pos;
      if (peek().kind != Tok::Ident || reserved(peek().text)) fail("expected binder name");
      std::string x = next().text;
      expect(Tok::Comma, "','");
      if (peek().kind != Tok::Ident || reserved(peek().text)) fail("expected binder name");
      std::string y = next().text;
      if (x == y) fail("let-pair binders must be distinct");
      expect(Tok::RParen, "')'");
      expect(Tok::Eq, "'='");
      TermPtr bound = term();
      expect_ident("in");
      TermPtr body = term();
      return mk_letpair(x, y, nullptr, nullptr, bound, body);
    }
    if (peek().kind != Tok::Ident || reserved(peek().text)) fail("expected binder name");
    std::string x = next().text;
    expect(Tok::Eq, "'='");
    TermPtr bound = term();
    expect_ident("in");
    TermPtr body = term();
    return mk_esub(x, Ann::Exp, nullptr, bound, body);
  }

  void expect_ident(const std::string& kw) {
    if (peek().kind != Tok::Ident || peek().text != kw) fail("expected '" + kw + "'");
    ++pos;
  }

  TermPtr sum() {
    TermPtr l = prod();
    while (peek().kind == Tok::Plus) {
      ++pos;
      l = mk_sum(l, prod());
    }
    return l;
  }

  TermPtr prod() {
    TermPtr l = app();
    while (peek().kind == Tok::Star) {
      ++pos;
      l = mk_mult(l, app());
    }
    return l;
  }

  bool atom_start() const {
    switch (peek().kind) {
      case Tok::Number:
      case Tok::LParen: return true;
      case Tok::Ident: return !reserved(peek().text);
      default: return false;
    }
  }

  TermPtr app() {
    TermPtr l = atom();
    while (atom_start()) l = mk_app(l, atom());
    return l;
  }

  TermPtr atom() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::Number: {
        ++pos;
        return mk_num(t.num);
      }
      case Tok::Ident: {
        if (reserved(t.text)) fail("unexpected keyword '" + t.text + "'");
        std::string name = next().text;
        if (peek().kind == Tok::LParen && peek().tight_lparen) {
          const FuncSym* f = reg.find(name);
          if (!f) fail("unknown function symbol '" + name + "'");
          ++pos;
          std::vector<TermPtr> args;
          if (peek().kind != Tok::RParen) {
            args.push_back(term());
            while (peek().kind == Tok::Comma) {
              ++pos;
              args.push_back(term());
            }
          }
          expect(Tok::RParen, "')'");
          if (static_cast<int>(args.size()) != f->arity)
            fail("arity mismatch: '" + name + "' expects " + std::to_string(f->arity) + " arguments, got " +
                 std::to_string(args.size()));
          return desugar_call(name, std::move(args));
        }
        if (reg.has(name)) fail("function symbol '" + name + "' used without arguments");
        return mk_var(name, is_lin(name) ? Ann::Lin : Ann::Exp);
      }
      case Tok::LParen: {
        ++pos;
        TermPtr fst = term();
        if (peek().kind == Tok::Comma) {
          ++pos;
          TermPtr snd = term();
          expect(Tok::RParen, "')'");
          return mk_pair(fst, snd);
        }
        expect(Tok::RParen, "')'");
        return fst;
      }
      default: fail("expected a term");
    }
  }

  // f(t1,...,tk) with compound ti desugars to f(..x..)[x <- ti] (let-form).
  TermPtr desugar_call(const std::string& name, std::vector<TermPtr> args) {
    std::vector<std::pair<std::string, TermPtr>> subs;
    std::vector<TermPtr> vars;
    vars.reserve(args.size());
    for (auto& a : args) {
      if (a->kind == TermKind::Var || a->kind == TermKind::Num) {
        vars.push_back(a);
      } else {
        std::string v = fresh_name("t");
        subs.emplace_back(v, a);
        vars.push_back(mk_var(v, Ann::Exp));
      }
    }
    TermPtr core = mk_funapp(name, std::move(vars));
    for (auto it = subs.rbegin(); it != subs.rend(); ++it)
      core = mk_esub(it->first, Ann::Exp, nullptr, it->second, core);
    return core;
  }
};

}  // namespace

TermPtr parse(std::string_view text, const Registry& reg) {
  Lexer lex{text};
  lex.run();
  Parser p{lex.toks, reg};
  TermPtr t = p.term();
  if (p.peek().kind != Tok::End) p.fail("trailing input");
  return t;
}

TypePtr parse_type(std::string_view text) {
  Lexer lex{text};
  lex.run();
  static Registry empty;
  Parser p{lex.toks, empty};
  TypePtr t = p.type();
  if (p.peek().kind != Tok::End) p.fail("trailing input");
  return t;
}

}  // namespace lbp
