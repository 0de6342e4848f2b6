#include <catch2/catch_amalgamated.hpp>

#include "certnf/parser.hpp"
#include "certnf/pcatlab.hpp"
#include "gen.hpp"

using namespace certnf;

namespace {
TyPtr io() { return Ty::iota(); }
TyPtr fn() { return Ty::arrow(io(), io()); }
}  // namespace

TEST_CASE("type syntax") {
  CHECK(ty_eq(parse_ty("o"), io()));
  CHECK(ty_eq(parse_ty("o->o"), fn()));
  CHECK(ty_eq(parse_ty("o->o->o"), Ty::arrow(io(), fn())));
  CHECK(ty_eq(parse_ty("(o->o)->o"), Ty::arrow(fn(), io())));
  CHECK_THROWS_AS(parse_ty("->"), ParseError);
  CHECK_THROWS_AS(parse_ty("o->"), ParseError);
}

TEST_CASE("parsing one") {
  TmPtr one = parse_term("\\f:o->o. f");
  TmPtr expect = mk_abs(mk_var(Idx(Ctxt().snoc(fn()), 0)));
  CHECK(alpha_eq(one, expect));
  CHECK(ty_eq(one->ty(), Ty::arrow(fn(), fn())));
}

TEST_CASE("free variables resolve through the provided context") {
  TmPtr v = parse_term("x", {{"x", io()}});
  CHECK(v->kind() == Tm::Kind::Var);
  CHECK(v->var().depth() == 0);
}

TEST_CASE("unbound names are reported") {
  CHECK_THROWS_AS(parse_term("\\x:o. y"), UnboundVariable);
}

TEST_CASE("application is left associative and typed") {
  TmPtr t = parse_term("f (g x)", {{"x", io()}, {"g", fn()}, {"f", fn()}});
  REQUIRE(t->kind() == Tm::Kind::App);
  CHECK(t->fn()->var().depth() == 0);
  CHECK_THROWS_AS(parse_term("x x", {{"x", io()}}), ParseError);
}

TEST_CASE("shadowing: the innermost binding wins") {
  TmPtr t = parse_term("\\x:o. x", {{"x", fn()}});
  REQUIRE(t->kind() == Tm::Kind::Abs);
  CHECK(t->body()->var().depth() == 0);
}

TEST_CASE("parse errors carry positions") {
  try {
    parse_term("\\x:o. (x");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line == 1);
    CHECK(e.col >= 8);
  }
}

TEST_CASE("printing the eta-long form of one") {
  Ctxt c = Ctxt().snoc(fn()).snoc(io());
  TmPtr expanded = mk_abs(mk_abs(mk_app(mk_var(Idx(c, 1)), mk_var(Idx(c, 0)))));
  CHECK(print_term(expanded) == "\\x0:o->o. \\x1:o. x0 x1");
}

TEST_CASE("printing free variables by context position") {
  TmPtr v = mk_var(Idx(Ctxt().snoc(io()), 0));
  CHECK(print_term(v) == "x0");
}

TEST_CASE("print then parse is the identity on enumerated terms") {
  TermEnum en;
  for (const Ctxt& g : enum_ctxts(2, 1))
    for (const TyPtr& ty : enum_types(1))
      for (const TmPtr& t : en.terms(g, ty, 2)) {
        TmPtr back = parse_term(print_term(t), print_ctx_names(g));
        CHECK(alpha_eq(back, t));
      }
}

TEST_CASE("print then parse on random deeper terms") {
  testgen::Rng rng(73);
  for (int i = 0; i < 80; ++i) {
    Ctxt g = testgen::random_ctxt(rng, 3, 2);
    TmPtr t = testgen::random_term(rng, g, 5);
    TmPtr back = parse_term(print_term(t), print_ctx_names(g));
    CHECK(alpha_eq(back, t));
  }
}
