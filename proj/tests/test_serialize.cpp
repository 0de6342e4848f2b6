#include <catch2/catch_amalgamated.hpp>

#include "certnf/pcatlab.hpp"
#include "certnf/serialize.hpp"
#include "gen.hpp"

using namespace certnf;

namespace {
TyPtr io() { return Ty::iota(); }
TyPtr fn() { return Ty::arrow(io(), io()); }
}  // namespace

TEST_CASE("type and term encodings") {
  CHECK(canonical_dump(ty_to_json(io())) == "[\"iota\"]");
  CHECK(canonical_dump(ty_to_json(fn())) == "[\"arr\",[\"iota\"],[\"iota\"]]");
  Ctxt g = Ctxt().snoc(io());
  CHECK(canonical_dump(tm_to_json(mk_var(Idx(g, 0)))) == "[\"var\",0]");
  TmPtr one = mk_abs(mk_var(Idx(Ctxt().snoc(fn()), 0)));
  CHECK(canonical_dump(tm_to_json(one)) ==
        "[\"abs\",[\"arr\",[\"iota\"],[\"iota\"]],[\"var\",0]]");
}

TEST_CASE("canonical round trips are bit-exact") {
  testgen::Rng rng(61);
  for (int i = 0; i < 60; ++i) {
    Ctxt g = testgen::random_ctxt(rng, 3, 2);
    TmPtr t = testgen::random_term(rng, g, 4);
    std::string dumped = canonical_dump(tm_to_json(t));
    TmPtr back = tm_from_json(nlohmann::json::parse(dumped), g);
    CHECK(alpha_eq(back, t));
    CHECK(canonical_dump(tm_to_json(back)) == dumped);

    std::string cdump = canonical_dump(ctxt_to_json(g));
    CHECK(canonical_dump(ctxt_to_json(ctxt_from_json(nlohmann::json::parse(cdump)))) == cdump);
  }
}

TEST_CASE("derivation round trips are bit-exact and preserve validity") {
  testgen::Rng rng(67);
  for (int i = 0; i < 60; ++i) {
    Ctxt g = testgen::random_ctxt(rng, 2, 2);
    TmPtr t = testgen::random_term(rng, g, 4);
    testgen::RewritePair p = testgen::random_rewrite_chain(rng, t, 3);
    std::string dumped = canonical_dump(deriv_to_json(p.deriv));
    DerivPtr back = deriv_from_json(nlohmann::json::parse(dumped), g);
    CHECK(canonical_dump(deriv_to_json(back)) == dumped);
    CheckResult orig = check_deriv(p.deriv);
    CheckResult re = check_deriv(back);
    REQUIRE(orig.ok());
    REQUIRE(re.ok());
    CHECK(alpha_eq(orig.lhs(), re.lhs()));
    CHECK(alpha_eq(orig.rhs(), re.rhs()));
  }
}

TEST_CASE("normalization results round trip through envelopes") {
  testgen::Rng rng(71);
  for (int i = 0; i < 30; ++i) {
    Ctxt g = testgen::random_ctxt(rng, 2, 2);
    TmPtr t = testgen::random_term(rng, g, 4);
    glue::NfResult r = glue::normalize(t);
    nlohmann::json doc = nfresult_to_json(r);
    EnvelopeCheck c = check_envelope(doc);
    INFO(c.path << ": " << c.reason);
    CHECK(c.ok);
    // reparse canonically
    EnvelopeCheck c2 = check_envelope(nlohmann::json::parse(canonical_dump(doc)));
    CHECK(c2.ok);
  }
}

TEST_CASE("plain envelopes validate derivations against claimed endpoints") {
  Ctxt g = Ctxt().snoc(io());
  TmPtr u = mk_var(Idx(g, 0));
  TmPtr body = mk_var(Idx(g.snoc(io()), 0));
  TmPtr redex = mk_app(mk_abs(body), u);
  nlohmann::json env = cert_envelope(redex, u, cbeta(body, u));
  CHECK(check_envelope(env).ok);

  SECTION("claiming the wrong endpoint fails") {
    nlohmann::json wrong = env;
    wrong["rhs"] = tm_to_json(redex);
    EnvelopeCheck c = check_envelope(wrong);
    CHECK_FALSE(c.ok);
  }
  SECTION("tampering with the stored beta argument fails") {
    nlohmann::json wrong = env;
    wrong["deriv"]["arg"] =
        nlohmann::json::array({"abs", ty_to_json(io()), nlohmann::json::array({"var", 0})});
    EnvelopeCheck c = check_envelope(wrong);
    CHECK_FALSE(c.ok);
  }
  SECTION("malformed documents raise codec errors") {
    nlohmann::json wrong = env;
    wrong.erase("lhs");
    CHECK_THROWS_AS(check_envelope(wrong), CodecError);
    CHECK_THROWS_AS(tm_from_json(nlohmann::json::array({"var", 7}), g), CodecError);
  }
}

TEST_CASE("substitutions round trip") {
  Ctxt g = Ctxt().snoc(fn()).snoc(io());
  Subst s = sub_id(g);
  std::string dumped = canonical_dump(subst_to_json(s));
  Subst back = subst_from_json(nlohmann::json::parse(dumped));
  CHECK(subst_eq(back, s));
  CHECK(canonical_dump(subst_to_json(back)) == dumped);
}

TEST_CASE("law reports serialize with counterexamples") {
  PerRel bad(2, [](std::size_t i, std::size_t j) { return i <= j; });
  LawReport r = check_per(bad, "asymmetric");
  nlohmann::json j = r.to_json();
  CHECK(j["suite"] == "asymmetric");
  CHECK(j["passed"] == false);
  CHECK(j["failures"].size() == r.failures.size());
}
