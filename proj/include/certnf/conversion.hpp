// Beta-eta conversion derivations as explicit certificate trees.
//
// A Deriv is a finite tree whose nodes are the congruence rules (Var, App,
// Abs), the two axioms (Beta, Eta), and closure under symmetry and
// transitivity. Beta and Eta store only the data needed to recompute their
// endpoints, so a certificate cannot claim endpoints it does not prove.
// check_deriv recomputes every endpoint from scratch and is the sole
// authority on validity; the builders below do no checking of their own.

#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "certnf/substitution.hpp"
#include "certnf/syntax.hpp"

namespace certnf {

class Deriv;
using DerivPtr = std::shared_ptr<const Deriv>;

class Deriv {
public:
  enum class Rule { Var, App, Abs, Beta, Eta, Symm, Trans };

  Rule rule() const noexcept { return rule_; }

  const Idx& idx() const { return std::get<Idx>(data_); }              // Var
  const DerivPtr& fst() const { return std::get<Two>(data_).a; }      // App, Trans
  const DerivPtr& snd() const { return std::get<Two>(data_).b; }      // App, Trans
  const DerivPtr& inner() const { return std::get<One>(data_).d; }    // Abs, Symm
  const TmPtr& beta_body() const { return std::get<BetaData>(data_).body; }
  const TmPtr& beta_arg() const { return std::get<BetaData>(data_).arg; }
  const TmPtr& eta_term() const { return std::get<EtaData>(data_).t; }
  const TyPtr& eta_dom() const { return std::get<EtaData>(data_).dom; }

private:
  struct One {
    DerivPtr d;
  };
  struct Two {
    DerivPtr a, b;
  };
  struct BetaData {
    TmPtr body, arg;
  };
  struct EtaData {
    TmPtr t;
    TyPtr dom;
  };
  using Data = std::variant<Idx, One, Two, BetaData, EtaData>;

  Deriv(Rule r, Data d) : rule_(r), data_(std::move(d)) {}

  friend DerivPtr cvar(Idx);
  friend DerivPtr capp(DerivPtr, DerivPtr);
  friend DerivPtr cabs(DerivPtr);
  friend DerivPtr cbeta(TmPtr, TmPtr);
  friend DerivPtr ceta(TmPtr, TyPtr);
  friend DerivPtr csymm(DerivPtr);
  friend DerivPtr ctrans(DerivPtr, DerivPtr);

  Rule rule_;
  Data data_;
};

inline DerivPtr cvar(Idx i) {
  return DerivPtr(new Deriv(Deriv::Rule::Var, std::move(i)));
}
inline DerivPtr capp(DerivPtr fn, DerivPtr arg) {
  if (!fn || !arg) throw Error("capp: null derivation");
  return DerivPtr(new Deriv(Deriv::Rule::App, Deriv::Two{std::move(fn), std::move(arg)}));
}
inline DerivPtr cabs(DerivPtr body) {
  if (!body) throw Error("cabs: null derivation");
  return DerivPtr(new Deriv(Deriv::Rule::Abs, Deriv::One{std::move(body)}));
}
inline DerivPtr cbeta(TmPtr body, TmPtr arg) {
  if (!body || !arg) throw Error("cbeta: null term");
  return DerivPtr(new Deriv(Deriv::Rule::Beta, Deriv::BetaData{std::move(body), std::move(arg)}));
}
inline DerivPtr ceta(TmPtr t, TyPtr dom) {
  if (!t || !dom) throw Error("ceta: null argument");
  return DerivPtr(new Deriv(Deriv::Rule::Eta, Deriv::EtaData{std::move(t), std::move(dom)}));
}
inline DerivPtr csymm(DerivPtr d) {
  if (!d) throw Error("csymm: null derivation");
  return DerivPtr(new Deriv(Deriv::Rule::Symm, Deriv::One{std::move(d)}));
}
inline DerivPtr ctrans(DerivPtr fst, DerivPtr snd) {
  if (!fst || !snd) throw Error("ctrans: null derivation");
  return DerivPtr(new Deriv(Deriv::Rule::Trans, Deriv::Two{std::move(fst), std::move(snd)}));
}

struct CheckError {
  std::string path;    // field names from the root, e.g. "fst/arg"
  std::string reason;
};

class CheckResult {
public:
  static CheckResult success(TmPtr lhs, TmPtr rhs) {
    CheckResult r;
    r.v_ = Endpoints{std::move(lhs), std::move(rhs)};
    return r;
  }
  static CheckResult failure(std::string path, std::string reason) {
    CheckResult r;
    r.v_ = CheckError{std::move(path), std::move(reason)};
    return r;
  }

  bool ok() const noexcept { return v_.index() == 0; }
  const TmPtr& lhs() const { return std::get<0>(v_).lhs; }
  const TmPtr& rhs() const { return std::get<0>(v_).rhs; }
  const CheckError& error() const { return std::get<1>(v_); }

private:
  struct Endpoints {
    TmPtr lhs, rhs;
  };
  std::variant<Endpoints, CheckError> v_;
};

namespace detail {

inline std::string join_path(const std::string& base, const char* seg) {
  return base.empty() ? std::string(seg) : base + "/" + seg;
}

inline CheckResult check_rec(const DerivPtr& d, const std::string& path) {
  if (!d) return CheckResult::failure(path, "null derivation node");
  switch (d->rule()) {
    case Deriv::Rule::Var: {
      TmPtr v = mk_var(d->idx());
      return CheckResult::success(v, v);
    }
    case Deriv::Rule::App: {
      CheckResult f = check_rec(d->fst(), join_path(path, "fn"));
      if (!f.ok()) return f;
      CheckResult a = check_rec(d->snd(), join_path(path, "arg"));
      if (!a.ok()) return a;
      try {
        return CheckResult::success(mk_app(f.lhs(), a.lhs()), mk_app(f.rhs(), a.rhs()));
      } catch (const Error& e) {
        return CheckResult::failure(path, std::string("App endpoints do not compose: ") + e.what());
      }
    }
    case Deriv::Rule::Abs: {
      CheckResult b = check_rec(d->inner(), join_path(path, "body"));
      if (!b.ok()) return b;
      try {
        return CheckResult::success(mk_abs(b.lhs()), mk_abs(b.rhs()));
      } catch (const Error& e) {
        return CheckResult::failure(path, std::string("Abs endpoints unbindable: ") + e.what());
      }
    }
    case Deriv::Rule::Beta: {
      const TmPtr& body = d->beta_body();
      const TmPtr& arg = d->beta_arg();
      if (!validate(body) || !validate(arg))
        return CheckResult::failure(path, "Beta stores an ill-formed term");
      try {
        TmPtr lhs = mk_app(mk_abs(body), arg);
        TmPtr rhs = beta_subst(body, arg);
        return CheckResult::success(std::move(lhs), std::move(rhs));
      } catch (const Error& e) {
        return CheckResult::failure(path, std::string("Beta data mismatched: ") + e.what());
      }
    }
    case Deriv::Rule::Eta: {
      const TmPtr& t = d->eta_term();
      if (!validate(t)) return CheckResult::failure(path, "Eta stores an ill-formed term");
      if (!t->ty()->is_arrow())
        return CheckResult::failure(path, "Eta subject is not of arrow type");
      if (!ty_eq(t->ty()->dom(), d->eta_dom()))
        return CheckResult::failure(path, "Eta domain annotation disagrees with subject type");
      TmPtr ex = shift(t, d->eta_dom());
      TmPtr rhs = mk_abs(mk_app(ex, mk_var(Idx(ex->ctxt(), 0))));
      return CheckResult::success(t, std::move(rhs));
    }
    case Deriv::Rule::Symm: {
      CheckResult i = check_rec(d->inner(), join_path(path, "inner"));
      if (!i.ok()) return i;
      return CheckResult::success(i.rhs(), i.lhs());
    }
    case Deriv::Rule::Trans: {
      CheckResult a = check_rec(d->fst(), join_path(path, "fst"));
      if (!a.ok()) return a;
      CheckResult b = check_rec(d->snd(), join_path(path, "snd"));
      if (!b.ok()) return b;
      if (!alpha_eq(a.rhs(), b.lhs()))
        return CheckResult::failure(path, "Trans middle endpoints differ: " + show_tm(a.rhs()) +
                                              " vs " + show_tm(b.lhs()));
      return CheckResult::success(a.lhs(), b.rhs());
    }
  }
  return CheckResult::failure(path, "unknown rule");
}

}  // namespace detail

inline CheckResult check_deriv(const DerivPtr& d) { return detail::check_rec(d, ""); }

// Reflexivity is not a rule; it is derived by structural recursion through
// the congruences.
inline DerivPtr deriv_refl(const TmPtr& t) {
  switch (t->kind()) {
    case Tm::Kind::Var: return cvar(t->var());
    case Tm::Kind::App: return capp(deriv_refl(t->fn()), deriv_refl(t->arg()));
    case Tm::Kind::Abs: return cabs(deriv_refl(t->body()));
  }
  throw Error("deriv_refl: unreachable");
}

// Ambient context of a derivation (the context its endpoints live in),
// recovered by walking one spine. Only meaningful for structurally coherent
// trees such as those produced by the engines.
inline Ctxt deriv_ctxt(const DerivPtr& d) {
  switch (d->rule()) {
    case Deriv::Rule::Var: return d->idx().ctxt();
    case Deriv::Rule::App: return deriv_ctxt(d->fst());
    case Deriv::Rule::Abs: {
      Ctxt inner = deriv_ctxt(d->inner());
      if (inner.empty()) throw Error("deriv_ctxt: Abs over empty context");
      return inner.rest();
    }
    case Deriv::Rule::Beta: return d->beta_arg()->ctxt();
    case Deriv::Rule::Eta: return d->eta_term()->ctxt();
    case Deriv::Rule::Symm: return deriv_ctxt(d->inner());
    case Deriv::Rule::Trans: return deriv_ctxt(d->fst());
  }
  throw Error("deriv_ctxt: unreachable");
}

// Transports a derivation along a substitution: if d proves t ~ u then the
// result proves t[s] ~ u[s]. Variable nodes become reflexivity of the entry;
// the axioms commute with substitution by the action laws.
inline DerivPtr deriv_subst(const DerivPtr& d, const Subst& s) {
  switch (d->rule()) {
    case Deriv::Rule::Var: {
      if (!ctxt_eq(d->idx().ctxt(), s.tgt()))
        throw CtxtMismatch("deriv_subst: variable context disagrees with target");
      return deriv_refl(s.lookup(d->idx().depth()));
    }
    case Deriv::Rule::App:
      return capp(deriv_subst(d->fst(), s), deriv_subst(d->snd(), s));
    case Deriv::Rule::Abs: {
      Ctxt inner = deriv_ctxt(d->inner());
      if (inner.empty()) throw Error("deriv_subst: Abs over empty context");
      return cabs(deriv_subst(d->inner(), sub_lift(s, inner.top())));
    }
    case Deriv::Rule::Beta: {
      const TmPtr& arg = d->beta_arg();
      return cbeta(subst(d->beta_body(), sub_lift(s, arg->ty())), subst(arg, s));
    }
    case Deriv::Rule::Eta:
      return ceta(subst(d->eta_term(), s), d->eta_dom());
    case Deriv::Rule::Symm:
      return csymm(deriv_subst(d->inner(), s));
    case Deriv::Rule::Trans:
      return ctrans(deriv_subst(d->fst(), s), deriv_subst(d->snd(), s));
  }
  throw Error("deriv_subst: unreachable");
}

inline std::size_t deriv_size(const DerivPtr& d) {
  switch (d->rule()) {
    case Deriv::Rule::Var:
    case Deriv::Rule::Beta:
    case Deriv::Rule::Eta: return 1;
    case Deriv::Rule::Abs:
    case Deriv::Rule::Symm: return 1 + deriv_size(d->inner());
    case Deriv::Rule::App:
    case Deriv::Rule::Trans: return 1 + deriv_size(d->fst()) + deriv_size(d->snd());
  }
  return 1;
}

inline std::size_t count_rule(const DerivPtr& d, Deriv::Rule r) {
  std::size_t self = d->rule() == r ? 1 : 0;
  switch (d->rule()) {
    case Deriv::Rule::Var:
    case Deriv::Rule::Beta:
    case Deriv::Rule::Eta: return self;
    case Deriv::Rule::Abs:
    case Deriv::Rule::Symm: return self + count_rule(d->inner(), r);
    case Deriv::Rule::App:
    case Deriv::Rule::Trans:
      return self + count_rule(d->fst(), r) + count_rule(d->snd(), r);
  }
  return self;
}

// Pointwise conversion of two substitutions with the same shape.
struct SubstDeriv {
  Ctxt src, tgt;
  std::vector<DerivPtr> entries;  // bottom-first, matching Subst entries
};

class SubstCheckResult {
public:
  static SubstCheckResult success(Subst lhs, Subst rhs) {
    return SubstCheckResult(std::move(lhs), std::move(rhs));
  }
  static SubstCheckResult failure(std::string path, std::string reason) {
    SubstCheckResult r;
    r.err_ = CheckError{std::move(path), std::move(reason)};
    return r;
  }

  bool ok() const noexcept { return lhs_.has_value(); }
  const Subst& lhs() const { return *lhs_; }
  const Subst& rhs() const { return *rhs_; }
  const CheckError& error() const { return err_; }

private:
  SubstCheckResult() = default;
  SubstCheckResult(Subst l, Subst r) : lhs_(std::move(l)), rhs_(std::move(r)) {}
  std::optional<Subst> lhs_, rhs_;
  CheckError err_;
};

inline SubstCheckResult check_subst_deriv(const SubstDeriv& d) {
  if (d.entries.size() != d.tgt.size())
    return SubstCheckResult::failure("", "entry count does not match target context");
  std::vector<TmPtr> lhs, rhs;
  lhs.reserve(d.entries.size());
  rhs.reserve(d.entries.size());
  for (std::size_t k = 0; k < d.entries.size(); ++k) {
    std::string at = "entry[" + std::to_string(k) + "]";
    CheckResult r = detail::check_rec(d.entries[k], at);
    if (!r.ok()) return SubstCheckResult::failure(r.error().path, r.error().reason);
    if (!ctxt_eq(r.lhs()->ctxt(), d.src))
      return SubstCheckResult::failure(at, "endpoint context disagrees with source");
    if (!ty_eq(r.lhs()->ty(), d.tgt.at_depth(d.entries.size() - 1 - k)))
      return SubstCheckResult::failure(at, "endpoint type disagrees with target context");
    lhs.push_back(r.lhs());
    rhs.push_back(r.rhs());
  }
  return SubstCheckResult::success(Subst(d.src, d.tgt, std::move(lhs)),
                                   Subst(d.src, d.tgt, std::move(rhs)));
}

}  // namespace certnf
