// JSON encodings for types, contexts, terms, substitutions, derivations and
// normalization results.
//
// Terms are bare de Bruijn trees: ["var",k], ["app",f,a], ["abs",T,b]; types
// are ["iota"] or ["arr",a,b]. A term tree is elaborated against an ambient
// context, which certificate envelopes carry explicitly. Derivations are
// tagged objects keyed by "rule". Canonical form is nlohmann's default dump
// (object keys sorted, integers only), so parse-then-print is bit-exact.

#pragma once

#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "certnf/conversion.hpp"
#include "certnf/glue.hpp"
#include "certnf/substitution.hpp"
#include "certnf/syntax.hpp"

namespace certnf {

struct CodecError : Error {
  using Error::Error;
};

inline nlohmann::json ty_to_json(const TyPtr& t) {
  if (!t->is_arrow()) return nlohmann::json::array({"iota"});
  return nlohmann::json::array({"arr", ty_to_json(t->dom()), ty_to_json(t->cod())});
}

inline TyPtr ty_from_json(const nlohmann::json& j) {
  if (!j.is_array() || j.empty() || !j[0].is_string())
    throw CodecError("type: expected tagged array");
  const std::string tag = j[0].get<std::string>();
  if (tag == "iota") {
    if (j.size() != 1) throw CodecError("type: iota takes no arguments");
    return Ty::iota();
  }
  if (tag == "arr") {
    if (j.size() != 3) throw CodecError("type: arr takes two arguments");
    return Ty::arrow(ty_from_json(j[1]), ty_from_json(j[2]));
  }
  throw CodecError("type: unknown tag '" + tag + "'");
}

inline nlohmann::json ctxt_to_json(const Ctxt& c) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& t : c.types()) out.push_back(ty_to_json(t));
  return out;
}

inline Ctxt ctxt_from_json(const nlohmann::json& j) {
  if (!j.is_array()) throw CodecError("context: expected array of types");
  Ctxt c;
  for (const auto& t : j) c = c.snoc(ty_from_json(t));
  return c;
}

inline nlohmann::json tm_to_json(const TmPtr& t) {
  switch (t->kind()) {
    case Tm::Kind::Var:
      return nlohmann::json::array({"var", t->var().depth()});
    case Tm::Kind::App:
      return nlohmann::json::array({"app", tm_to_json(t->fn()), tm_to_json(t->arg())});
    case Tm::Kind::Abs:
      return nlohmann::json::array(
          {"abs", ty_to_json(t->body()->ctxt().top()), tm_to_json(t->body())});
  }
  throw CodecError("term: unreachable");
}

inline TmPtr tm_from_json(const nlohmann::json& j, const Ctxt& ctxt) {
  if (!j.is_array() || j.empty() || !j[0].is_string())
    throw CodecError("term: expected tagged array");
  const std::string tag = j[0].get<std::string>();
  try {
    if (tag == "var") {
      if (j.size() != 2 || !j[1].is_number_integer() || j[1].get<long long>() < 0)
        throw CodecError("term: var takes one nonnegative index");
      return mk_var(Idx(ctxt, j[1].get<std::size_t>()));
    }
    if (tag == "app") {
      if (j.size() != 3) throw CodecError("term: app takes two arguments");
      return mk_app(tm_from_json(j[1], ctxt), tm_from_json(j[2], ctxt));
    }
    if (tag == "abs") {
      if (j.size() != 3) throw CodecError("term: abs takes a type and a body");
      TyPtr dom = ty_from_json(j[1]);
      return mk_abs(tm_from_json(j[2], ctxt.snoc(dom)));
    }
  } catch (const CodecError&) {
    throw;
  } catch (const Error& e) {
    throw CodecError(std::string("term: ") + e.what());
  }
  throw CodecError("term: unknown tag '" + tag + "'");
}

inline nlohmann::json subst_to_json(const Subst& s) {
  nlohmann::json entries = nlohmann::json::array();
  for (const auto& e : s.entries()) entries.push_back(tm_to_json(e));
  return nlohmann::json{{"entries", entries},
                        {"src", ctxt_to_json(s.src())},
                        {"tgt", ctxt_to_json(s.tgt())}};
}

inline Subst subst_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("src") || !j.contains("tgt") || !j.contains("entries"))
    throw CodecError("substitution: expected {src, tgt, entries}");
  Ctxt src = ctxt_from_json(j["src"]);
  Ctxt tgt = ctxt_from_json(j["tgt"]);
  std::vector<TmPtr> es;
  for (const auto& e : j["entries"]) es.push_back(tm_from_json(e, src));
  try {
    return Subst(std::move(src), std::move(tgt), std::move(es));
  } catch (const Error& e) {
    throw CodecError(std::string("substitution: ") + e.what());
  }
}

inline nlohmann::json deriv_to_json(const DerivPtr& d) {
  switch (d->rule()) {
    case Deriv::Rule::Var:
      return nlohmann::json{{"idx", d->idx().depth()}, {"rule", "Var"}};
    case Deriv::Rule::App:
      return nlohmann::json{
          {"arg", deriv_to_json(d->snd())}, {"fn", deriv_to_json(d->fst())}, {"rule", "App"}};
    case Deriv::Rule::Abs: {
      Ctxt inner = deriv_ctxt(d->inner());
      if (inner.empty()) throw CodecError("derivation: Abs over empty context");
      return nlohmann::json{{"body", deriv_to_json(d->inner())},
                            {"dom", ty_to_json(inner.top())},
                            {"rule", "Abs"}};
    }
    case Deriv::Rule::Beta:
      return nlohmann::json{{"arg", tm_to_json(d->beta_arg())},
                            {"body", tm_to_json(d->beta_body())},
                            {"rule", "Beta"}};
    case Deriv::Rule::Eta:
      return nlohmann::json{{"dom", ty_to_json(d->eta_dom())},
                            {"rule", "Eta"},
                            {"term", tm_to_json(d->eta_term())}};
    case Deriv::Rule::Symm:
      return nlohmann::json{{"inner", deriv_to_json(d->inner())}, {"rule", "Symm"}};
    case Deriv::Rule::Trans:
      return nlohmann::json{
          {"fst", deriv_to_json(d->fst())}, {"rule", "Trans"}, {"snd", deriv_to_json(d->snd())}};
  }
  throw CodecError("derivation: unreachable");
}

inline DerivPtr deriv_from_json(const nlohmann::json& j, const Ctxt& ctxt) {
  if (!j.is_object() || !j.contains("rule") || !j["rule"].is_string())
    throw CodecError("derivation: expected object with a rule tag");
  const std::string rule = j["rule"].get<std::string>();
  try {
    if (rule == "Var") {
      if (!j.at("idx").is_number_integer() || j.at("idx").get<long long>() < 0)
        throw CodecError("derivation: Var takes one nonnegative index");
      return cvar(Idx(ctxt, j.at("idx").get<std::size_t>()));
    }
    if (rule == "App")
      return capp(deriv_from_json(j.at("fn"), ctxt), deriv_from_json(j.at("arg"), ctxt));
    if (rule == "Abs") {
      TyPtr dom = ty_from_json(j.at("dom"));
      return cabs(deriv_from_json(j.at("body"), ctxt.snoc(dom)));
    }
    if (rule == "Beta") {
      TmPtr arg = tm_from_json(j.at("arg"), ctxt);
      TmPtr body = tm_from_json(j.at("body"), ctxt.snoc(arg->ty()));
      return cbeta(std::move(body), std::move(arg));
    }
    if (rule == "Eta")
      return ceta(tm_from_json(j.at("term"), ctxt), ty_from_json(j.at("dom")));
    if (rule == "Symm") return csymm(deriv_from_json(j.at("inner"), ctxt));
    if (rule == "Trans")
      return ctrans(deriv_from_json(j.at("fst"), ctxt), deriv_from_json(j.at("snd"), ctxt));
  } catch (const CodecError&) {
    throw;
  } catch (const nlohmann::json::exception& e) {
    throw CodecError(std::string("derivation: ") + e.what());
  } catch (const Error& e) {
    throw CodecError(std::string("derivation: ") + e.what());
  }
  throw CodecError("derivation: unknown rule '" + rule + "'");
}

// Self-contained claim that deriv proves lhs ~ rhs over ctxt.
inline nlohmann::json cert_envelope(const TmPtr& lhs, const TmPtr& rhs, const DerivPtr& d) {
  return nlohmann::json{{"ctxt", ctxt_to_json(lhs->ctxt())},
                        {"deriv", deriv_to_json(d)},
                        {"lhs", tm_to_json(lhs)},
                        {"rhs", tm_to_json(rhs)}};
}

inline nlohmann::json nfresult_to_json(const glue::NfResult& r) {
  return nlohmann::json{{"cert", deriv_to_json(r.cert)},
                        {"cert_in_wit", deriv_to_json(r.cert_in_wit)},
                        {"cert_wit_nf", deriv_to_json(r.cert_wit_nf)},
                        {"ctxt", ctxt_to_json(r.input->ctxt())},
                        {"input", tm_to_json(r.input)},
                        {"nf", tm_to_json(r.nf)},
                        {"witness", tm_to_json(r.witness)}};
}

struct EnvelopeCheck {
  bool ok;
  std::string path;
  std::string reason;
};

namespace detail {
inline EnvelopeCheck check_one_claim(const nlohmann::json& deriv, const Ctxt& ctxt,
                                     const TmPtr& lhs, const TmPtr& rhs, const std::string& label) {
  DerivPtr d = deriv_from_json(deriv, ctxt);
  CheckResult r = check_deriv(d);
  if (!r.ok()) return {false, label + ":" + r.error().path, r.error().reason};
  if (!alpha_eq(r.lhs(), lhs))
    return {false, label, "derivation proves a different left endpoint"};
  if (!alpha_eq(r.rhs(), rhs))
    return {false, label, "derivation proves a different right endpoint"};
  return {true, "", ""};
}
}  // namespace detail

// Accepts either a plain envelope {ctxt, lhs, rhs, deriv} or a full
// normalization result; validates every contained derivation against the
// claimed endpoints. Malformed documents raise CodecError.
inline EnvelopeCheck check_envelope(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("ctxt")) throw CodecError("envelope: expected {ctxt, ...}");
  Ctxt ctxt = ctxt_from_json(j["ctxt"]);
  if (j.contains("deriv")) {
    if (!j.contains("lhs") || !j.contains("rhs"))
      throw CodecError("envelope: expected lhs and rhs endpoints");
    TmPtr lhs = tm_from_json(j["lhs"], ctxt);
    TmPtr rhs = tm_from_json(j["rhs"], ctxt);
    return detail::check_one_claim(j["deriv"], ctxt, lhs, rhs, "deriv");
  }
  if (j.contains("cert")) {
    if (!j.contains("input") || !j.contains("nf") || !j.contains("witness") ||
        !j.contains("cert_in_wit") || !j.contains("cert_wit_nf"))
      throw CodecError("envelope: incomplete normalization result");
    TmPtr input = tm_from_json(j["input"], ctxt);
    TmPtr nf = tm_from_json(j["nf"], ctxt);
    TmPtr witness = tm_from_json(j["witness"], ctxt);
    EnvelopeCheck c = detail::check_one_claim(j["cert"], ctxt, input, nf, "cert");
    if (!c.ok) return c;
    c = detail::check_one_claim(j["cert_in_wit"], ctxt, input, witness, "cert_in_wit");
    if (!c.ok) return c;
    return detail::check_one_claim(j["cert_wit_nf"], ctxt, witness, nf, "cert_wit_nf");
  }
  throw CodecError("envelope: expected a 'deriv' claim or a normalization result");
}

inline std::string canonical_dump(const nlohmann::json& j) { return j.dump(); }

}  // namespace certnf
