#include <catch2/catch_amalgamated.hpp>

#include "certnf/pcatlab.hpp"
#include "gen.hpp"

using namespace certnf;

namespace {
TyPtr io() { return Ty::iota(); }
TyPtr fn() { return Ty::arrow(io(), io()); }
}  // namespace

TEST_CASE("discrete PERs relate only equal elements") {
  PerRel d = per_discrete(2);
  CHECK(d.related(0, 0));
  CHECK_FALSE(d.related(0, 1));
  CHECK(check_per(d).passed());
}

TEST_CASE("the unit PER has one self-related element") {
  PerRel u = per_unit();
  CHECK(u.size() == 1);
  CHECK(u.related(0, 0));
  CHECK(check_per(u).passed());
}

TEST_CASE("products relate componentwise") {
  PerRel p = per_prod(per_discrete(2), per_discrete(3));
  CHECK(p.size() == 6);
  CHECK(p.related(0, 0));
  CHECK_FALSE(p.related(0, 1));
  CHECK(check_per(p).passed());
}

TEST_CASE("arrow PERs relate tables pointwise over discrete domains") {
  PerRel a = per_arrow(per_discrete(2), per_discrete(2));
  CHECK(a.size() == 4);
  for (std::size_t f = 0; f < 4; ++f)
    for (std::size_t g = 0; g < 4; ++g) CHECK(a.related(f, g) == (f == g));
  CHECK(check_per(a).passed());
}

TEST_CASE("sub-PERs forget elements outside the predicate") {
  PerRel s = per_sub(per_discrete(3), [](std::size_t i) { return i % 2 == 0; });
  CHECK(s.related(0, 0));
  CHECK_FALSE(s.related(1, 1));  // partiality: 1 is not self-related
  CHECK(s.related(2, 2));
  CHECK(check_per(s).passed());
}

TEST_CASE("check_per reports violations of an asymmetric relation") {
  PerRel bad(2, [](std::size_t i, std::size_t j) { return i <= j; });
  LawReport r = check_per(bad, "asymmetric");
  CHECK_FALSE(r.passed());
  REQUIRE_FALSE(r.failures.empty());
  CHECK(r.failures[0].what.find("symmetry") != std::string::npos);
}

TEST_CASE("composite PERs stay PERs over small carriers") {
  std::vector<PerRel> base;
  for (std::size_t n = 1; n <= 3; ++n) base.push_back(per_discrete(n));
  base.push_back(per_unit());
  base.push_back(per_sub(per_discrete(3), [](std::size_t i) { return i != 1; }));
  for (const PerRel& a : base)
    for (const PerRel& b : base) {
      CHECK(check_per(per_prod(a, b)).passed());
      CHECK(check_per(per_arrow(a, b)).passed());
      CHECK(check_per(per_sub(per_prod(a, b), [](std::size_t i) { return i % 2 == 0; })).passed());
    }
}

TEST_CASE("type enumeration at depth one") {
  std::vector<TyPtr> ts = enum_types(1);
  REQUIRE(ts.size() == 2);
  CHECK(ty_eq(ts[0], io()));
  CHECK(ty_eq(ts[1], fn()));
  CHECK(enum_types(2).size() == 5);
}

TEST_CASE("no closed terms of base type exist") {
  CHECK(enum_terms(Ctxt(), io(), 4).empty());
}

TEST_CASE("exactly one renaming between matching singletons") {
  Ctxt g = Ctxt().snoc(io());
  std::vector<Rnm> rs = enum_rnms(g, g);
  REQUIRE(rs.size() == 1);
  CHECK(rnm_eq(rs[0], rnm_id(g)));
}

TEST_CASE("context enumeration covers all lengths") {
  std::vector<Ctxt> cs = enum_ctxts(2, 1);
  CHECK(cs.size() == 1 + 2 + 4);
}

TEST_CASE("oracle closes one beta step") {
  Ctxt g = Ctxt().snoc(io());
  TmPtr u = mk_var(Idx(g, 0));
  TmPtr redex = mk_app(mk_abs(mk_var(Idx(g.snoc(io()), 0))), u);
  CHECK(conv_oracle(redex, u, 1) == Oracle::Convertible);
}

TEST_CASE("oracle finds the eta expansion of one") {
  TmPtr one = mk_abs(mk_var(Idx(Ctxt().snoc(fn()), 0)));
  Ctxt c = Ctxt().snoc(fn()).snoc(io());
  TmPtr expanded = mk_abs(mk_abs(mk_app(mk_var(Idx(c, 1)), mk_var(Idx(c, 0)))));
  CHECK(conv_oracle(one, expanded, 2) == Oracle::Convertible);
}

TEST_CASE("oracle separates distinct variables definitively") {
  Ctxt g = Ctxt().snoc(io()).snoc(io());
  CHECK(conv_oracle(mk_var(Idx(g, 0)), mk_var(Idx(g, 1)), 8) == Oracle::NotConvertible);
}

TEST_CASE("oracle reports inconclusive when the fuel runs out") {
  Ctxt g = Ctxt().snoc(io());
  TmPtr u = mk_var(Idx(g, 0));
  TmPtr redex = mk_app(mk_abs(mk_var(Idx(g.snoc(io()), 0))), u);
  // zero rounds: the redex's class is still open, so no verdict either way
  Ctxt g2 = Ctxt().snoc(io()).snoc(io());
  TmPtr other = mk_app(mk_abs(mk_var(Idx(g2.snoc(io()), 0))), mk_var(Idx(g2, 1)));
  TmPtr redex2 = mk_app(mk_abs(mk_var(Idx(g2.snoc(io()), 0))), mk_var(Idx(g2, 0)));
  CHECK(conv_oracle(redex2, other, 0) == Oracle::Unknown);
  CHECK(conv_oracle(redex, u, 0) == Oracle::Unknown);
  CHECK(conv_oracle(redex, u, 1) == Oracle::Convertible);
}

TEST_CASE("enumeration budgets are enforced") {
  TermEnum tiny(2, 16);
  Ctxt g = Ctxt().snoc(fn()).snoc(io());
  CHECK_THROWS_AS(tiny.terms(g, io(), 3), BudgetExceeded);
  CHECK_THROWS_AS(per_arrow(per_discrete(32), per_discrete(32)), BudgetExceeded);
}

TEST_CASE("oracle is symmetric and monotone in fuel") {
  testgen::Rng rng(59);
  for (int i = 0; i < 30; ++i) {
    Ctxt g = testgen::random_ctxt(rng, 1, 1);
    TmPtr t = testgen::random_term(rng, g, 3);
    TmPtr u = testgen::random_term(rng, g, 3);
    if (!ty_eq(t->ty(), u->ty())) continue;
    for (std::size_t fuel : {1u, 2u, 4u, 8u}) {
      Oracle a = conv_oracle(t, u, fuel);
      CHECK(a == conv_oracle(u, t, fuel));
      if (a == Oracle::Convertible) CHECK(conv_oracle(t, u, fuel * 2) == Oracle::Convertible);
    }
  }
}

TEST_CASE("long normal form predicate") {
  TmPtr one = mk_abs(mk_var(Idx(Ctxt().snoc(fn()), 0)));
  CHECK_FALSE(is_long_nf(one));  // body of arrow type is not an abstraction
  Ctxt c = Ctxt().snoc(fn()).snoc(io());
  TmPtr expanded = mk_abs(mk_abs(mk_app(mk_var(Idx(c, 1)), mk_var(Idx(c, 0)))));
  CHECK(is_long_nf(expanded));
  Ctxt g = Ctxt().snoc(io());
  TmPtr redex = mk_app(mk_abs(mk_var(Idx(g.snoc(io()), 0))), mk_var(Idx(g, 0)));
  CHECK_FALSE(is_long_nf(redex));
}

TEST_CASE("all law suites pass at the default bounds") {
  for (const LawReport& r : laws_all()) {
    INFO(r.suite);
    CHECK(r.cases > 0);
    CHECK(r.passed());
  }
}

TEST_CASE("a mutated composition fails the action laws with a counterexample") {
  // Break renaming composition: compose, then swap any two entries that
  // happen to have the same type (such renamings exist within the bounds).
  ActionHooks hooks;
  hooks.rnm_comp_fn = [](const Rnm& r, const Rnm& s) {
    Rnm out = rnm_comp(r, s);
    const auto& es = out.entries();
    for (std::size_t i = 0; i < es.size(); ++i)
      for (std::size_t j = i + 1; j < es.size(); ++j)
        if (ty_eq(es[i].ty(), es[j].ty()) && es[i].depth() != es[j].depth()) {
          std::vector<Idx> swapped = es;
          std::swap(swapped[i], swapped[j]);
          return Rnm(out.src(), out.tgt(), std::move(swapped));
        }
    return out;
  };
  LawReport r = laws_actions(Bounds{}, hooks);
  CHECK_FALSE(r.passed());
  REQUIRE_FALSE(r.failures.empty());
  CHECK_FALSE(r.failures[0].items.empty());
}
