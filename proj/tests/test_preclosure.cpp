#include <catch2/catch_amalgamated.hpp>

#include "certnf/pcatlab.hpp"
#include "certnf/preclosure.hpp"

using namespace certnf;

namespace {
TyPtr io() { return Ty::iota(); }
TyPtr fn() { return Ty::arrow(io(), io()); }
}  // namespace

TEST_CASE("concatenation has the empty context as unit") {
  for (const Ctxt& g : enum_ctxts(2, 1)) {
    CHECK(ctxt_eq(ctxt_concat(g, Ctxt()), g));
    CHECK(ctxt_eq(ctxt_concat(Ctxt(), g), g));
  }
}

TEST_CASE("projections select the blocks of a pairing") {
  TermEnum en;
  std::vector<Ctxt> cs = enum_ctxts(2, 1);
  for (const Ctxt& g : cs)
    for (const Ctxt& t1 : cs)
      for (const Ctxt& t2 : cs)
        for (const Subst& s1 : en.substs(g, t1, 1))
          for (const Subst& s2 : en.substs(g, t2, 1)) {
            Subst p = pair(s1, s2);
            CHECK(subst_eq(hcomp_rs(proj1(t1, t2), p), s1));
            CHECK(subst_eq(hcomp_rs(proj2(t1, t2), p), s2));
          }
}

TEST_CASE("pairing with an empty block pads nothing") {
  Ctxt g = Ctxt().snoc(io());
  Subst s1 = sub_id(g);
  Subst empty(g, Ctxt(), {});
  Subst p = pair(s1, empty);
  CHECK(subst_eq(p, s1));
}

TEST_CASE("type exponentiation unfolds pointwise") {
  CHECK(exp_ty(Ctxt(), io()).empty());
  CHECK(ctxt_eq(exp_ty(Ctxt().snoc(io()), io()), Ctxt().snoc(fn())));
  // two unfoldings
  Ctxt two = Ctxt().snoc(io()).snoc(io());
  CHECK(ctxt_eq(exp_ty(two, io()), Ctxt().snoc(fn()).snoc(fn())));
  // lengths are preserved
  for (const Ctxt& g : enum_ctxts(2, 1))
    for (const TyPtr& t : enum_types(1)) CHECK(exp_ty(g, t).size() == g.size());
}

TEST_CASE("context exponentiation peels the exponent") {
  for (const Ctxt& g : enum_ctxts(2, 1)) CHECK(ctxt_eq(exp_ctxt(g, Ctxt()), g));
  CHECK(ctxt_eq(exp_ctxt(Ctxt().snoc(io()), Ctxt().snoc(io())), Ctxt().snoc(fn())));
  for (const Ctxt& d : enum_ctxts(2, 1)) CHECK(exp_ctxt(Ctxt(), d).empty());
  for (const Ctxt& g : enum_ctxts(2, 1))
    for (const Ctxt& d : enum_ctxts(2, 1)) CHECK(exp_ctxt(g, d).size() == g.size());
}

TEST_CASE("one-binder abstraction and evaluation") {
  Ctxt g = Ctxt().snoc(io());
  TmPtr v = mk_var(Idx(g, 0));
  TmPtr abs = abs1(v);
  CHECK(ty_eq(abs->ty(), fn()));
  CHECK(abs->ctxt().empty());

  TmPtr one = mk_abs(mk_var(Idx(Ctxt().snoc(fn()), 0)));
  TmPtr ev = ev1(one);
  REQUIRE(ev->kind() == Tm::Kind::App);
  CHECK(alpha_eq(ev->fn(), shift(one, fn())));
  CHECK(ev->arg()->var().depth() == 0);
}

TEST_CASE("ev1 after abs1 collapses by one beta step") {
  TermEnum en;
  for (const Ctxt& g : enum_ctxts(1, 1))
    for (const TyPtr& dom : enum_types(1))
      for (const TyPtr& cod : enum_types(1))
        for (const TmPtr& t : en.terms(g.snoc(dom), cod, 2)) {
          TmPtr roundtrip = ev1(abs1(t));
          REQUIRE(roundtrip->kind() == Tm::Kind::App);
          DerivPtr step = cbeta(roundtrip->fn()->body(), roundtrip->arg());
          CheckResult r = check_deriv(step);
          REQUIRE(r.ok());
          CHECK(alpha_eq(r.lhs(), roundtrip));
          CHECK(alpha_eq(r.rhs(), t));
        }
}

TEST_CASE("curry and uncurry are identities on an empty exponent") {
  TermEnum en;
  for (const Ctxt& g : enum_ctxts(1, 1))
    for (const Ctxt& th : enum_ctxts(1, 1))
      for (const Subst& s : en.substs(g, th, 1)) {
        CHECK(subst_eq(curry(s, Ctxt()), s));
        CHECK(subst_eq(uncurry(s, th, Ctxt()), s));
      }
}

TEST_CASE("curry of anything into the empty target is empty") {
  Ctxt g = Ctxt().snoc(io());
  Subst empty(ctxt_concat(g, Ctxt().snoc(io())), Ctxt(), {});
  Subst c = curry(empty, Ctxt().snoc(io()));
  CHECK(c.entries().empty());
  CHECK(ctxt_eq(c.src(), g));
}

TEST_CASE("round-trip certificates validate at small bounds") {
  TermEnum en;
  std::vector<Ctxt> cs = enum_ctxts(1, 1);
  std::vector<Ctxt> exps = {Ctxt(), Ctxt().snoc(io()), Ctxt().snoc(fn()),
                            Ctxt().snoc(io()).snoc(io())};
  for (const Ctxt& g : cs)
    for (const Ctxt& d : exps)
      for (const Ctxt& th : cs) {
        Ctxt gd = ctxt_concat(g, d);
        for (const Subst& s : en.substs(gd, th, 2)) {
          Subst back = uncurry(curry(s, d), th, d);
          SubstDeriv cert = curry_beta_cert(s, d);
          SubstCheckResult r = check_subst_deriv(cert);
          REQUIRE(r.ok());
          CHECK(subst_eq(r.lhs(), back));
          CHECK(subst_eq(r.rhs(), s));
        }
        for (const Subst& u : en.substs(g, exp_ctxt(th, d), 2)) {
          Subst back = curry(uncurry(u, th, d), d);
          SubstDeriv cert = curry_eta_cert(u, th, d);
          SubstCheckResult r = check_subst_deriv(cert);
          REQUIRE(r.ok());
          CHECK(subst_eq(r.lhs(), back));
          CHECK(subst_eq(r.rhs(), u));
        }
      }
}

TEST_CASE("curry rejects sources that do not end with the exponent") {
  Subst s = sub_id(Ctxt().snoc(io()));
  CHECK_THROWS_AS(curry(s, Ctxt().snoc(fn())), CtxtMismatch);
}
