#include <catch2/catch_amalgamated.hpp>

#include "certnf/pcatlab.hpp"
#include "certnf/substitution.hpp"

using namespace certnf;

namespace {
TyPtr io() { return Ty::iota(); }
TyPtr fn() { return Ty::arrow(io(), io()); }
}  // namespace

TEST_CASE("identity substitution is a list of variables") {
  CHECK(sub_id(Ctxt()).entries().empty());
  Ctxt c = Ctxt().snoc(io()).snoc(io());
  Subst id = sub_id(c);
  REQUIRE(id.entries().size() == 2);
  CHECK(id.entries()[0]->var().depth() == 1);  // bottom entry listed first
  CHECK(id.entries()[1]->var().depth() == 0);
}

TEST_CASE("substituting the identity is the identity") {
  for (const Ctxt& g : enum_ctxts(2, 1)) {
    Subst id = sub_id(g);
    for (const TyPtr& ty : enum_types(1))
      for (const TmPtr& t : enum_terms(g, ty, 2, 1)) CHECK(alpha_eq(subst(t, id), t));
  }
}

TEST_CASE("composition with identities is neutral") {
  TermEnum en;
  for (const Ctxt& g : enum_ctxts(2, 1))
    for (const Ctxt& d : enum_ctxts(2, 1))
      for (const Subst& s : en.substs(g, d, 2)) {
        CHECK(subst_eq(sub_comp(sub_id(d), s), s));
        CHECK(subst_eq(sub_comp(s, sub_id(g)), s));
      }
}

namespace {
std::size_t check_assoc_exhaustive(TermEnum& en, const std::vector<Ctxt>& cs,
                                   std::size_t depth) {
  std::size_t cases = 0;
  for (const Ctxt& g : cs)
    for (const Ctxt& d : cs) {
      std::vector<Subst> gd = en.substs(g, d, depth);
      if (gd.empty()) continue;
      for (const Ctxt& h : cs) {
        std::vector<Subst> dh = en.substs(d, h, depth);
        if (dh.empty()) continue;
        for (const Ctxt& x : cs)
          for (const Subst& a : en.substs(h, x, depth))
            for (const Subst& b : dh)
              for (const Subst& c : gd) {
                ++cases;
                if (!subst_eq(sub_comp(sub_comp(a, b), c), sub_comp(a, sub_comp(b, c)))) {
                  CHECK(subst_eq(sub_comp(sub_comp(a, b), c), sub_comp(a, sub_comp(b, c))));
                  return cases;
                }
              }
      }
    }
  return cases;
}
}  // namespace

TEST_CASE("composition is associative over enumerated triples") {
  // The triple product grows cubically in the hom sizes, so the exhaustive
  // runs pair a deeper entry bound with a leaner context pool and vice versa.
  TermEnum en(1);
  std::vector<Ctxt> lean = {Ctxt(), Ctxt().snoc(io()), Ctxt().snoc(fn())};
  std::size_t deep = check_assoc_exhaustive(en, lean, 2);
  CHECK(deep > 0);
  std::size_t wide = check_assoc_exhaustive(en, enum_ctxts(2, 1), 1);
  CHECK(wide > 0);
}

TEST_CASE("substitution action respects composition") {
  TermEnum en;
  std::vector<Ctxt> cs = enum_ctxts(2, 1);
  for (const Ctxt& g : cs)
    for (const Ctxt& d : cs) {
      std::vector<Subst> psis = en.substs(g, d, 1);
      if (psis.empty()) continue;
      for (const Ctxt& h : cs)
        for (const Subst& sigma : en.substs(d, h, 1))
          for (const TyPtr& ty : enum_types(1))
            for (const TmPtr& t : en.terms(h, ty, 2))
              for (const Subst& psi : psis)
                CHECK(alpha_eq(subst(t, sub_comp(sigma, psi)), subst(subst(t, sigma), psi)));
    }
}

TEST_CASE("lookup order: depth one is listed first") {
  // subst(App(#0, #1), [u; v]) = App(v, u)
  Ctxt d = Ctxt().snoc(io()).snoc(fn());  // #0 : o->o, #1 : o
  TmPtr t = mk_app(mk_var(Idx(d, 0)), mk_var(Idx(d, 1)));
  Ctxt g = Ctxt().snoc(io()).snoc(fn());
  TmPtr u = mk_var(Idx(g, 1));  // : o
  TmPtr v = mk_var(Idx(g, 0));  // : o->o
  Subst s(g, d, {u, v});
  TmPtr r = subst(t, s);
  REQUIRE(r->kind() == Tm::Kind::App);
  CHECK(alpha_eq(r->fn(), v));
  CHECK(alpha_eq(r->arg(), u));
  CHECK(validate(r));
}

TEST_CASE("lifting renamings") {
  for (const Ctxt& g : enum_ctxts(2, 1)) {
    CHECK(subst_eq(lift_rnm(rnm_id(g)), sub_id(g)));
    for (const Ctxt& d : enum_ctxts(2, 1))
      for (const Rnm& r : enum_rnms(g, d))
        for (const TyPtr& ty : enum_types(1))
          for (const TmPtr& t : enum_terms(d, ty, 2, 1))
            CHECK(alpha_eq(subst(t, lift_rnm(r)), rename(t, r)));
  }
  CHECK(lift_rnm(rnm_weaken(rnm_id(Ctxt()), io())).entries().empty());
}

TEST_CASE("lifting respects composition") {
  std::vector<Ctxt> cs = enum_ctxts(2, 1);
  for (const Ctxt& g : cs)
    for (const Ctxt& d : cs) {
      std::vector<Rnm> gd = enum_rnms(g, d);
      if (gd.empty()) continue;
      for (const Ctxt& h : cs)
        for (const Rnm& r : enum_rnms(d, h))
          for (const Rnm& s : gd)
            CHECK(subst_eq(lift_rnm(rnm_comp(r, s)), sub_comp(lift_rnm(r), lift_rnm(s))));
    }
}

TEST_CASE("mixed compositions agree with lifting") {
  TermEnum en;
  std::vector<Ctxt> cs = enum_ctxts(2, 1);
  for (const Ctxt& g : cs)
    for (const Ctxt& d : cs) {
      for (const Subst& s : en.substs(g, d, 2)) {
        CHECK(subst_eq(hcomp_sr(s, rnm_id(g)), s));
        CHECK(subst_eq(hcomp_rs(rnm_id(d), s), s));
      }
      std::vector<Rnm> rs = enum_rnms(g, d);
      if (rs.empty()) continue;
      for (const Ctxt& h : cs) {
        for (const Subst& s : en.substs(d, h, 2))
          for (const Rnm& r : rs) CHECK(subst_eq(hcomp_sr(s, r), sub_comp(s, lift_rnm(r))));
        for (const Subst& s : en.substs(h, g, 2))
          for (const Rnm& r : rs) CHECK(subst_eq(hcomp_rs(r, s), sub_comp(lift_rnm(r), s)));
      }
    }
}

TEST_CASE("beta substitution") {
  Ctxt g = Ctxt().snoc(io());
  TmPtr u = mk_var(Idx(g, 0));
  Ctxt gx = g.snoc(io());

  SECTION("index zero is replaced") {
    CHECK(alpha_eq(beta_subst(mk_var(Idx(gx, 0)), u), u));
  }
  SECTION("the variable below the binder survives as index zero") {
    TmPtr r = beta_subst(mk_var(Idx(gx, 1)), u);
    REQUIRE(r->kind() == Tm::Kind::Var);
    CHECK(r->var().depth() == 0);
  }
  SECTION("duplication") {
    Ctxt gf = Ctxt().snoc(fn()).snoc(Ty::arrow(io(), io()));
    // body (#0 applied twice is ill-typed at o; use #0 : o->o applied to a var)
    Ctxt inner = Ctxt().snoc(io()).snoc(fn());
    TmPtr body = mk_app(mk_var(Idx(inner, 0)), mk_app(mk_var(Idx(inner, 0)),
                                                      mk_var(Idx(inner, 1))));
    Ctxt og = Ctxt().snoc(io());
    TmPtr id_fn = mk_abs(mk_var(Idx(og.snoc(io()), 0)));
    TmPtr r = beta_subst(body, id_fn);
    REQUIRE(r->kind() == Tm::Kind::App);
    CHECK(alpha_eq(r->fn(), id_fn));
    REQUIRE(r->arg()->kind() == Tm::Kind::App);
    CHECK(alpha_eq(r->arg()->fn(), id_fn));
    CHECK(validate(r));
    (void)gf;
  }
  SECTION("type mismatch rejected") {
    Ctxt gy = g.snoc(fn());
    CHECK_THROWS_AS(beta_subst(mk_var(Idx(gy, 0)), u), TypeMismatch);
  }
}

TEST_CASE("shift introduces a fresh variable at index zero") {
  Ctxt g = Ctxt().snoc(io());
  TmPtr v = mk_var(Idx(g, 0));
  TmPtr s = shift(v, io());
  REQUIRE(s->kind() == Tm::Kind::Var);
  CHECK(s->var().depth() == 1);

  // a closed term keeps its structure
  TmPtr one = mk_abs(mk_var(Idx(Ctxt().snoc(fn()), 0)));
  TmPtr up = shift(one, io());
  REQUIRE(up->kind() == Tm::Kind::Abs);
  CHECK(up->body()->var().depth() == 0);
}

TEST_CASE("shift then substitute cancels") {
  TermEnum en;
  for (const Ctxt& g : enum_ctxts(2, 1))
    for (const TyPtr& ty : enum_types(1))
      for (const TmPtr& t : en.terms(g, ty, 2))
        for (const TyPtr& uty : enum_types(1))
          for (const TmPtr& u : en.terms(g, uty, 1))
            CHECK(alpha_eq(beta_subst(shift(t, uty), u), t));
}
