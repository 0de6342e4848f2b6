// The glued normalizer: values carry a syntactic track (a representative
// term at the current world) alongside a canonical track, and every
// evaluation step emits a conversion derivation connecting the two.
//
// At the base type a value stores its canonical term and a certificate
// syn ~ canonical. At an arrow type it stores a closure whose every
// invocation returns, besides the result value, a step certificate
//
//   App(subst(syn, s), arg.syn) ~ result.syn .
//
// Certificates are assembled through a small internal wrapper that tracks
// endpoints and refuses to chain transitivity steps whose middles are not
// alpha-equal; such a failure means the engine itself is broken and
// surfaces as InvalidCert rather than being repaired.

#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <utility>
#include <vector>

#include "certnf/conversion.hpp"
#include "certnf/nbe.hpp"
#include "certnf/substitution.hpp"
#include "certnf/syntax.hpp"

namespace certnf::glue {

struct InvalidCert : Error {
  using Error::Error;
};

namespace detail {

// A derivation with its endpoints known by construction.
struct Cert {
  DerivPtr d;
  TmPtr lhs, rhs;
};

inline Cert jrefl(const TmPtr& t) { return Cert{deriv_refl(t), t, t}; }

inline Cert jsymm(const Cert& c) { return Cert{csymm(c.d), c.rhs, c.lhs}; }

inline Cert japp(const Cert& f, const Cert& a) {
  return Cert{capp(f.d, a.d), mk_app(f.lhs, a.lhs), mk_app(f.rhs, a.rhs)};
}

inline Cert jabs(const Cert& b) {
  return Cert{cabs(b.d), mk_abs(b.lhs), mk_abs(b.rhs)};
}

inline Cert jbeta(const TmPtr& body, const TmPtr& arg) {
  return Cert{cbeta(body, arg), mk_app(mk_abs(body), arg), beta_subst(body, arg)};
}

inline Cert jeta(const TmPtr& t, const TyPtr& dom) {
  TmPtr up = shift(t, dom);
  TmPtr rhs = mk_abs(mk_app(up, mk_var(Idx(up->ctxt(), 0))));
  return Cert{ceta(t, dom), t, std::move(rhs)};
}

inline Cert jtrans(const Cert& a, const Cert& b) {
  if (!alpha_eq(a.rhs, b.lhs))
    throw InvalidCert("certificate assembly: transitivity middles differ: " + show_tm(a.rhs) +
                      " vs " + show_tm(b.lhs));
  return Cert{ctrans(a.d, b.d), a.lhs, b.rhs};
}

}  // namespace detail

class GVal;

// Result of one application step of a glued arrow value.
struct GApp;
// Engine-internal variant that keeps the step certificate's endpoints.
struct GStep;

class GVal {
public:
  using Closure = std::function<GStep(const Subst&, const GVal&)>;

  static GVal base(TmPtr syn, TmPtr canon, DerivPtr cert) {
    if (syn->ty()->is_arrow()) throw TypeMismatch("GVal::base: not a base-type term");
    if (!ctxt_eq(syn->ctxt(), canon->ctxt()) || !ty_eq(syn->ty(), canon->ty()))
      throw TypeMismatch("GVal::base: tracks disagree in context or type");
    GVal v;
    v.ty_ = syn->ty();
    v.world_ = syn->ctxt();
    v.syn_ = std::move(syn);
    v.canon_ = std::move(canon);
    v.cert_ = std::move(cert);
    return v;
  }

  static GVal closure(Ctxt world, TyPtr ty, TmPtr syn, Closure fn) {
    if (!ty->is_arrow()) throw TypeMismatch("GVal::closure: type is not an arrow");
    if (!ctxt_eq(syn->ctxt(), world) || !ty_eq(syn->ty(), ty))
      throw TypeMismatch("GVal::closure: representative disagrees with stated type");
    GVal v;
    v.ty_ = std::move(ty);
    v.world_ = std::move(world);
    v.syn_ = std::move(syn);
    v.fn_ = std::make_shared<const Closure>(std::move(fn));
    return v;
  }

  const TyPtr& ty() const noexcept { return ty_; }
  const Ctxt& world() const noexcept { return world_; }
  const TmPtr& syn() const noexcept { return syn_; }

  const TmPtr& canon() const {
    if (!canon_) throw TypeMismatch("GVal::canon: not a base value");
    return canon_;
  }
  const DerivPtr& cert() const {
    if (!cert_) throw TypeMismatch("GVal::cert: not a base value");
    return cert_;
  }

  GApp apply(const Subst& to_here, const GVal& arg) const;

  // Engine-side application; verifies the step certificate's endpoints
  // against the closure contract.
  GStep apply_cert(const Subst& to_here, const GVal& arg) const;

private:
  GVal() = default;
  TyPtr ty_;
  Ctxt world_;
  TmPtr syn_;
  TmPtr canon_;
  DerivPtr cert_;
  std::shared_ptr<const Closure> fn_;
};

struct GApp {
  GVal result;
  DerivPtr step;
};

struct GStep {
  GVal result;
  detail::Cert step;
};

inline GStep GVal::apply_cert(const Subst& to_here, const GVal& arg) const {
  if (!fn_) throw TypeMismatch("GVal::apply: not an arrow value");
  if (!ctxt_eq(to_here.tgt(), world_))
    throw CtxtMismatch("GVal::apply: world map does not land in this world");
  if (!ctxt_eq(arg.world(), to_here.src()))
    throw CtxtMismatch("GVal::apply: argument lives at a different world");
  if (!ty_eq(arg.ty(), ty_->dom()))
    throw TypeMismatch("GVal::apply: argument type disagrees with domain");
  GStep out = (*fn_)(to_here, arg);
  TmPtr expect_lhs = mk_app(subst(syn_, to_here), arg.syn());
  if (!alpha_eq(out.step.lhs, expect_lhs))
    throw InvalidCert("application step certificate starts at " + show_tm(out.step.lhs) +
                      ", expected " + show_tm(expect_lhs));
  if (!alpha_eq(out.step.rhs, out.result.syn()))
    throw InvalidCert("application step certificate does not end at the result");
  return out;
}

inline GApp GVal::apply(const Subst& to_here, const GVal& arg) const {
  GStep s = apply_cert(to_here, arg);
  return GApp{std::move(s.result), std::move(s.step.d)};
}

struct GEnv {
  Ctxt world;
  Ctxt tgt;
  std::vector<GVal> values;  // bottom-first

  const GVal& lookup(std::size_t depth) const {
    if (depth >= values.size()) throw CtxtMismatch("GEnv::lookup: depth out of range");
    return values[values.size() - 1 - depth];
  }

  // The substitution formed by the syntactic tracks.
  Subst syn_subst() const {
    std::vector<TmPtr> es;
    es.reserve(values.size());
    for (const GVal& v : values) es.push_back(v.syn());
    return Subst(world, tgt, std::move(es));
  }
};

GVal greflect(const TmPtr& t);

struct Reified {
  TmPtr nf;
  DerivPtr cert;  // v.syn ~ nf
};

namespace detail {
struct ReifiedC {
  TmPtr nf;
  Cert cert;
};
ReifiedC greify_c(const GVal& v);
}  // namespace detail

inline GVal grestrict(const GVal& v, const Subst& s) {
  if (!ctxt_eq(s.tgt(), v.world()))
    throw CtxtMismatch("grestrict: map does not land in the value's world");
  TmPtr syn = subst(v.syn(), s);
  if (!v.ty()->is_arrow())
    return GVal::base(syn, subst(v.canon(), s), deriv_subst(v.cert(), s));
  return GVal::closure(s.src(), v.ty(), syn,
                       [v, s](const Subst& further, const GVal& arg) {
                         return v.apply_cert(sub_comp(s, further), arg);
                       });
}

inline GEnv grestrict_env(const GEnv& e, const Subst& s) {
  if (!ctxt_eq(s.tgt(), e.world))
    throw CtxtMismatch("grestrict_env: map does not land in the environment's world");
  std::vector<GVal> vs;
  vs.reserve(e.values.size());
  for (const GVal& v : e.values) vs.push_back(grestrict(v, s));
  return GEnv{s.src(), e.tgt, std::move(vs)};
}

// Embeds a term with itself as both tracks; applications reify the argument
// and record the rewrite of the argument position as the step certificate.
inline GVal greflect(const TmPtr& t) {
  if (!t->ty()->is_arrow()) return GVal::base(t, t, deriv_refl(t));
  return GVal::closure(t->ctxt(), t->ty(), t, [t](const Subst& s, const GVal& arg) {
    TmPtr f = subst(t, s);
    detail::ReifiedC r = detail::greify_c(arg);
    GVal result = greflect(mk_app(f, r.nf));
    detail::Cert step = detail::japp(detail::jrefl(f), r.cert);
    return GStep{std::move(result), std::move(step)};
  });
}

namespace detail {

inline ReifiedC greify_c(const GVal& v) {
  if (!v.ty()->is_arrow()) {
    CheckResult chk = check_deriv(v.cert());
    if (!chk.ok())
      throw InvalidCert("stored base certificate fails to check: " + chk.error().reason);
    if (!alpha_eq(chk.lhs(), v.syn()) || !alpha_eq(chk.rhs(), v.canon()))
      throw InvalidCert("stored base certificate has wrong endpoints");
    return ReifiedC{v.canon(), Cert{v.cert(), v.syn(), v.canon()}};
  }
  const TyPtr& dom = v.ty()->dom();
  Subst up = sub_weaken(sub_id(v.world()), dom);
  GVal fresh = greflect(mk_var(Idx(up.src(), 0)));
  GStep applied = v.apply_cert(up, fresh);
  ReifiedC body = greify_c(applied.result);
  // v.syn ~ \x. (shift v.syn) x ~ \x. body-nf, with the closure's step
  // certificate bridging the application under the binder.
  Cert under = jtrans(applied.step, body.cert);
  Cert whole = jtrans(jeta(v.syn(), dom), jabs(under));
  return ReifiedC{mk_abs(body.nf), std::move(whole)};
}

}  // namespace detail

inline Reified greify(const GVal& v) {
  detail::ReifiedC r = detail::greify_c(v);
  return Reified{std::move(r.nf), std::move(r.cert.d)};
}

struct Evald {
  GVal val;
  DerivPtr cert;  // subst(t, syn parts of env) ~ val.syn
};

namespace detail {
struct EvaldC {
  GVal val;
  Cert cert;
};

inline EvaldC geval_c(const TmPtr& t, const GEnv& e) {
  if (!ctxt_eq(t->ctxt(), e.tgt))
    throw CtxtMismatch("geval: term context disagrees with environment");
  switch (t->kind()) {
    case Tm::Kind::Var: {
      const GVal& v = e.lookup(t->var().depth());
      return EvaldC{v, jrefl(v.syn())};
    }
    case Tm::Kind::App: {
      EvaldC f = geval_c(t->fn(), e);
      EvaldC a = geval_c(t->arg(), e);
      GStep applied = f.val.apply_cert(sub_id(e.world), a.val);
      Cert cert = jtrans(japp(f.cert, a.cert), applied.step);
      return EvaldC{std::move(applied.result), std::move(cert)};
    }
    case Tm::Kind::Abs: {
      TmPtr body = t->body();
      TyPtr dom = body->ctxt().top();
      Subst env_syn = e.syn_subst();
      TmPtr syn = subst(t, env_syn);
      GEnv captured = e;
      GVal val = GVal::closure(
          e.world, t->ty(), syn, [body, dom, captured](const Subst& s, const GVal& arg) {
            GEnv inner = grestrict_env(captured, s);
            Subst moved = inner.syn_subst();
            inner.tgt = inner.tgt.snoc(dom);
            inner.values.push_back(arg);
            EvaldC b = geval_c(body, inner);
            // (\x. body[moved lifted]) arg.syn  ~beta~  body[moved, arg.syn]
            TmPtr under = subst(body, sub_lift(moved, dom));
            Cert step = jtrans(jbeta(under, arg.syn()), b.cert);
            return GStep{std::move(b.val), std::move(step)};
          });
      return EvaldC{std::move(val), jrefl(syn)};
    }
  }
  throw Error("geval: unreachable");
}
}  // namespace detail

inline Evald geval(const TmPtr& t, const GEnv& e) {
  detail::EvaldC r = detail::geval_c(t, e);
  return Evald{std::move(r.val), std::move(r.cert.d)};
}

inline GEnv greflect_env(const Ctxt& g) {
  std::vector<GVal> vs;
  vs.reserve(g.size());
  for (std::size_t k = 0; k < g.size(); ++k)
    vs.push_back(greflect(mk_var(Idx(g, g.size() - 1 - k))));
  return GEnv{g, g, std::move(vs)};
}

// A normalization outcome: the canonical form, the syntactic-track witness,
// and the three derivations connecting input, witness and normal form.
struct NfResult {
  TmPtr input;
  TmPtr nf;
  TmPtr witness;
  DerivPtr cert_in_wit;  // input ~ witness
  DerivPtr cert_wit_nf;  // witness ~ nf
  DerivPtr cert;         // input ~ nf, the transitive composite
};

inline NfResult normalize(const TmPtr& t) {
  GEnv env = greflect_env(t->ctxt());
  detail::EvaldC ev = detail::geval_c(t, env);
  detail::ReifiedC re = detail::greify_c(ev.val);
  detail::Cert in_wit = ev.cert;  // endpoints (t[id], witness); t[id] is t, node for node
  if (!alpha_eq(in_wit.lhs, t))
    throw InvalidCert("evaluation certificate does not start at the input");
  detail::Cert whole = detail::jtrans(in_wit, re.cert);
  return NfResult{t, re.nf, ev.val.syn(), in_wit.d, re.cert.d, whole.d};
}

inline std::vector<NfResult> normalize_subst(const Subst& s) {
  std::vector<NfResult> out;
  out.reserve(s.entries().size());
  for (const TmPtr& e : s.entries()) out.push_back(normalize(e));
  return out;
}

inline bool decide_conv(const TmPtr& t, const TmPtr& u) {
  if (!ctxt_eq(t->ctxt(), u->ctxt()) || !ty_eq(t->ty(), u->ty()))
    throw TypeMismatch("decide_conv: terms do not share a context and type");
  return alpha_eq(normalize(t).nf, normalize(u).nf);
}

}  // namespace certnf::glue
