// Surface syntax for terms and types.
//
//   type ::= 'o' | type '->' type (right assoc) | '(' type ')'
//   term ::= '\' ident ':' type '.' term
//          | atom+                       (application, left assoc)
//   atom ::= ident | '(' term ')'
//
// Names resolve to de Bruijn indices, innermost binding first, then the
// ambient context from its snoc end inward. The printer forgets all names
// and emits x0, x1, ... by binding order, context entries included, so
// parse(print(t)) recovers t up to alpha (exactly, in de Bruijn terms).

#pragma once

#include <cctype>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "certnf/syntax.hpp"

namespace certnf {

struct ParseError : Error {
  ParseError(std::size_t line, std::size_t col, const std::string& msg)
      : Error(std::to_string(line) + ":" + std::to_string(col) + ": " + msg),
        line(line),
        col(col) {}
  std::size_t line, col;
};

struct UnboundVariable : Error {
  explicit UnboundVariable(const std::string& name)
      : Error("unbound variable '" + name + "'"), name(name) {}
  std::string name;
};

namespace detail {

struct Token {
  enum class Kind { Ident, Lambda, Colon, Dot, LParen, RParen, Arrow, End };
  Kind kind;
  std::string text;
  std::size_t line, col;
};

class Lexer {
public:
  explicit Lexer(const std::string& src) : src_(src) { advance(); }

  const Token& peek() const { return tok_; }

  Token next() {
    Token t = tok_;
    advance();
    return t;
  }

private:
  void advance() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) bump();
    tok_.line = line_;
    tok_.col = col_;
    if (pos_ >= src_.size()) {
      tok_.kind = Token::Kind::End;
      tok_.text = "<end>";
      return;
    }
    char c = src_[pos_];
    if (c == '\\') {
      tok_ = {Token::Kind::Lambda, "\\", line_, col_};
      bump();
      return;
    }
    if (c == ':') {
      tok_ = {Token::Kind::Colon, ":", line_, col_};
      bump();
      return;
    }
    if (c == '.') {
      tok_ = {Token::Kind::Dot, ".", line_, col_};
      bump();
      return;
    }
    if (c == '(') {
      tok_ = {Token::Kind::LParen, "(", line_, col_};
      bump();
      return;
    }
    if (c == ')') {
      tok_ = {Token::Kind::RParen, ")", line_, col_};
      bump();
      return;
    }
    if (c == '-' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '>') {
      tok_ = {Token::Kind::Arrow, "->", line_, col_};
      bump();
      bump();
      return;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t l = line_, co = col_;
      std::string text;
      while (pos_ < src_.size() &&
             (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) {
        text += src_[pos_];
        bump();
      }
      tok_ = {Token::Kind::Ident, std::move(text), l, co};
      return;
    }
    throw ParseError(line_, col_, std::string("unexpected character '") + c + "'");
  }

  void bump() {
    if (src_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  const std::string& src_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1, col_ = 1;
  Token tok_{Token::Kind::End, "", 1, 1};
};

class Parser {
public:
  Parser(const std::string& src, std::vector<std::pair<std::string, TyPtr>> scope, Ctxt ctxt)
      : lex_(src), scope_(std::move(scope)), ctxt_(std::move(ctxt)) {}

  TyPtr parse_type_all() {
    TyPtr t = type();
    expect(Token::Kind::End);
    return t;
  }

  TmPtr parse_term_all() {
    TmPtr t = term();
    expect(Token::Kind::End);
    return t;
  }

private:
  TyPtr type() {
    TyPtr lhs = type_atom();
    if (lex_.peek().kind == Token::Kind::Arrow) {
      lex_.next();
      return Ty::arrow(std::move(lhs), type());
    }
    return lhs;
  }

  TyPtr type_atom() {
    Token t = lex_.next();
    if (t.kind == Token::Kind::Ident && t.text == "o") return Ty::iota();
    if (t.kind == Token::Kind::LParen) {
      TyPtr inner = type();
      expect(Token::Kind::RParen);
      return inner;
    }
    throw ParseError(t.line, t.col, "expected a type, got '" + t.text + "'");
  }

  TmPtr term() {
    if (lex_.peek().kind == Token::Kind::Lambda) {
      Token lam = lex_.next();
      Token name = lex_.next();
      if (name.kind != Token::Kind::Ident)
        throw ParseError(name.line, name.col, "expected a binder name after '\\'");
      expect(Token::Kind::Colon);
      TyPtr ann = type();
      expect(Token::Kind::Dot);
      scope_.emplace_back(name.text, ann);
      ctxt_ = ctxt_.snoc(ann);
      TmPtr body = term();
      scope_.pop_back();
      ctxt_ = body->ctxt().rest();
      (void)lam;
      return mk_abs(std::move(body));
    }
    TmPtr t = atom();
    while (starts_atom(lex_.peek().kind)) {
      Token at = lex_.peek();
      TmPtr a = atom();
      try {
        t = mk_app(std::move(t), std::move(a));
      } catch (const TypeMismatch& e) {
        throw ParseError(at.line, at.col, std::string("ill-typed application: ") + e.what());
      }
    }
    return t;
  }

  static bool starts_atom(Token::Kind k) {
    return k == Token::Kind::Ident || k == Token::Kind::LParen || k == Token::Kind::Lambda;
  }

  TmPtr atom() {
    if (lex_.peek().kind == Token::Kind::Lambda) return term();
    Token t = lex_.next();
    if (t.kind == Token::Kind::Ident) return resolve(t);
    if (t.kind == Token::Kind::LParen) {
      TmPtr inner = term();
      expect(Token::Kind::RParen);
      return inner;
    }
    throw ParseError(t.line, t.col, "expected a term, got '" + t.text + "'");
  }

  TmPtr resolve(const Token& t) {
    for (std::size_t k = scope_.size(); k > 0; --k) {
      if (scope_[k - 1].first == t.text)
        return mk_var(Idx(ctxt_, scope_.size() - k));
    }
    throw UnboundVariable(t.text);
  }

  void expect(Token::Kind k) {
    Token t = lex_.next();
    if (t.kind != k) throw ParseError(t.line, t.col, "unexpected '" + t.text + "'");
  }

  Lexer lex_;
  std::vector<std::pair<std::string, TyPtr>> scope_;  // bottom-first, binders on top
  Ctxt ctxt_;
};

}  // namespace detail

inline TyPtr parse_ty(const std::string& src) {
  return detail::Parser(src, {}, Ctxt()).parse_type_all();
}

// ctx lists the ambient context bottom-first; later entries shadow earlier
// ones of the same name, binders shadow both.
inline TmPtr parse_term(const std::string& src,
                        const std::vector<std::pair<std::string, TyPtr>>& ctx = {}) {
  std::vector<TyPtr> tys;
  tys.reserve(ctx.size());
  for (const auto& [name, ty] : ctx) tys.push_back(ty);
  return detail::Parser(src, ctx, Ctxt::from_types(tys)).parse_term_all();
}

namespace detail {

inline bool print_needs_parens_arg(const Tm& t) {
  return t.kind() != Tm::Kind::Var;
}

inline void print_rec(const TmPtr& t, std::string& out) {
  switch (t->kind()) {
    case Tm::Kind::Var: {
      std::size_t level = t->ctxt().size() - 1 - t->var().depth();
      out += "x" + std::to_string(level);
      return;
    }
    case Tm::Kind::App: {
      if (t->fn()->kind() == Tm::Kind::Abs) {
        out += "(";
        print_rec(t->fn(), out);
        out += ")";
      } else {
        print_rec(t->fn(), out);
      }
      out += " ";
      if (print_needs_parens_arg(*t->arg())) {
        out += "(";
        print_rec(t->arg(), out);
        out += ")";
      } else {
        print_rec(t->arg(), out);
      }
      return;
    }
    case Tm::Kind::Abs: {
      std::size_t level = t->ctxt().size();
      out += "\\x" + std::to_string(level) + ":" + show_ty(t->body()->ctxt().top()) + ". ";
      print_rec(t->body(), out);
      return;
    }
  }
}

}  // namespace detail

// Names every binding position x0, x1, ... outside in, starting with the
// ambient context entries.
inline std::string print_term(const TmPtr& t) {
  std::string out;
  detail::print_rec(t, out);
  return out;
}

// Context naming that matches print_term's output, for round-tripping.
inline std::vector<std::pair<std::string, TyPtr>> print_ctx_names(const Ctxt& c) {
  std::vector<std::pair<std::string, TyPtr>> out;
  std::vector<TyPtr> tys = c.types();
  for (std::size_t k = 0; k < tys.size(); ++k)
    out.emplace_back("x" + std::to_string(k), tys[k]);
  return out;
}

}  // namespace certnf
