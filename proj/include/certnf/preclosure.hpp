// Cartesian structure on contexts (concatenation, projections, pairing) and
// the pre-exponential: exponent contexts, one-binder abstraction/evaluation,
// and curry/uncurry on substitutions together with builders for the
// beta/eta round-trip certificates.
//
// curry and uncurry proceed by outer induction on the exponent context
// (peeling its snoc-most type first) and by the single-type maps abs1/ev1
// entrywise inside; both round-trip composites are beta-eta convertible to
// the identity, and curry_beta_cert / curry_eta_cert construct checkable
// witnesses of that, pointwise.

#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "certnf/conversion.hpp"
#include "certnf/renaming.hpp"
#include "certnf/substitution.hpp"
#include "certnf/syntax.hpp"

namespace certnf {

inline Ctxt ctxt_concat(const Ctxt& g, const Ctxt& d) {
  if (d.empty()) return g;
  return ctxt_concat(g, d.rest()).snoc(d.top());
}

// Renaming (g ++ d) -> g selecting the left block.
inline Rnm proj1(const Ctxt& g, const Ctxt& d) {
  Ctxt src = ctxt_concat(g, d);
  std::vector<Idx> es;
  es.reserve(g.size());
  for (std::size_t k = 0; k < g.size(); ++k)
    es.emplace_back(src, g.size() - 1 - k + d.size());
  return Rnm(std::move(src), g, std::move(es));
}

// Renaming (g ++ d) -> d selecting the right block.
inline Rnm proj2(const Ctxt& g, const Ctxt& d) {
  Ctxt src = ctxt_concat(g, d);
  std::vector<Idx> es;
  es.reserve(d.size());
  for (std::size_t k = 0; k < d.size(); ++k) es.emplace_back(src, d.size() - 1 - k);
  return Rnm(std::move(src), d, std::move(es));
}

inline Subst pair(const Subst& s1, const Subst& s2) {
  if (!ctxt_eq(s1.src(), s2.src()))
    throw CtxtMismatch("pair: sources disagree");
  std::vector<TmPtr> es = s1.entries();
  es.insert(es.end(), s2.entries().begin(), s2.entries().end());
  return Subst(s1.src(), ctxt_concat(s1.tgt(), s2.tgt()), std::move(es));
}

inline Rnm rnm_pair(const Rnm& r1, const Rnm& r2) {
  if (!ctxt_eq(r1.src(), r2.src()))
    throw CtxtMismatch("rnm_pair: sources disagree");
  std::vector<Idx> es = r1.entries();
  es.insert(es.end(), r2.entries().begin(), r2.entries().end());
  return Rnm(r1.src(), ctxt_concat(r1.tgt(), r2.tgt()), std::move(es));
}

// Pre-exponentiation of a context by a type: each type S in g becomes t->S.
inline Ctxt exp_ty(const Ctxt& g, const TyPtr& t) {
  if (g.empty()) return g;
  return exp_ty(g.rest(), t).snoc(Ty::arrow(t, g.top()));
}

// Pre-exponentiation of a context by a context, one exponent type at a time.
inline Ctxt exp_ctxt(const Ctxt& g, const Ctxt& d) {
  if (d.empty()) return g;
  return exp_ctxt(exp_ty(g, d.top()), d.rest());
}

inline TmPtr abs1(const TmPtr& t) { return mk_abs(t); }

// App (t weakened past one fresh variable) (Var 0).
inline TmPtr ev1(const TmPtr& t) {
  if (!t->ty()->is_arrow()) throw TypeMismatch("ev1: term is not of arrow type");
  TmPtr w = shift(t, t->ty()->dom());
  return mk_app(w, mk_var(Idx(w->ctxt(), 0)));
}

// Entrywise abs1: ((g,T)) -> th  becomes  g -> exp_ty(th,T).
inline Subst curry_ty(const Subst& s) {
  if (s.src().empty()) throw CtxtMismatch("curry_ty: source context is empty");
  const TyPtr& t = s.src().top();
  std::vector<TmPtr> es;
  es.reserve(s.entries().size());
  for (const TmPtr& e : s.entries()) es.push_back(abs1(e));
  return Subst(s.src().rest(), exp_ty(s.tgt(), t), std::move(es));
}

// Entrywise ev1 at binder type t: g -> exp_ty(th,t)  becomes  (g,t) -> th.
inline Subst uncurry_ty(const Subst& s, const TyPtr& t) {
  std::vector<TmPtr> es;
  std::vector<TyPtr> tgt_tys;
  es.reserve(s.entries().size());
  tgt_tys.reserve(s.entries().size());
  for (const TmPtr& e : s.entries()) {
    if (!e->ty()->is_arrow() || !ty_eq(e->ty()->dom(), t))
      throw TypeMismatch("uncurry_ty: entry is not an arrow from the exponent type");
    es.push_back(ev1(e));
    tgt_tys.push_back(e->ty()->cod());
  }
  return Subst(s.src().snoc(t), Ctxt::from_types(tgt_tys), std::move(es));
}

namespace detail {
// Splits c = front ++ suffix where suffix has the given length.
inline Ctxt drop_suffix(const Ctxt& c, std::size_t n) {
  Ctxt out = c;
  while (n--) {
    if (out.empty()) throw CtxtMismatch("curry: source shorter than exponent");
    out = out.rest();
  }
  return out;
}
}  // namespace detail

// (g ++ d) -> th  becomes  g -> exp_ctxt(th, d).
inline Subst curry(const Subst& s, const Ctxt& d) {
  if (d.empty()) return s;
  if (s.src().empty() || !ty_eq(s.src().top(), d.top()))
    throw CtxtMismatch("curry: source does not end with the exponent context");
  return curry(curry_ty(s), d.rest());
}

// g -> exp_ctxt(th, d)  becomes  (g ++ d) -> th.
inline Subst uncurry(const Subst& s, const Ctxt& th, const Ctxt& d) {
  if (d.empty()) {
    if (!ctxt_eq(s.tgt(), th)) throw CtxtMismatch("uncurry: target is not the stated context");
    return s;
  }
  Subst v = uncurry(s, exp_ty(th, d.top()), d.rest());
  Subst out = uncurry_ty(v, d.top());
  if (!ctxt_eq(out.tgt(), th)) throw CtxtMismatch("uncurry: reconstructed target disagrees");
  return out;
}

namespace detail {

// Transports pointwise certificates through one ev1 layer: from d : e ~ e'
// over src to CApp(d shifted, Var 0) : ev1(e) ~ ev1(e').
inline std::vector<DerivPtr> ev1_cong(const std::vector<DerivPtr>& ds, const Ctxt& src,
                                      const TyPtr& t) {
  Subst w = sub_weaken(sub_id(src), t);
  Idx z(src.snoc(t), 0);
  std::vector<DerivPtr> out;
  out.reserve(ds.size());
  for (const DerivPtr& d : ds) out.push_back(capp(deriv_subst(d, w), cvar(z)));
  return out;
}

inline std::vector<DerivPtr> abs1_cong(const std::vector<DerivPtr>& ds) {
  std::vector<DerivPtr> out;
  out.reserve(ds.size());
  for (const DerivPtr& d : ds) out.push_back(cabs(d));
  return out;
}

// Certificates through curry(-, d): one Abs wrapper per exponent type.
inline std::vector<DerivPtr> curry_cong(std::vector<DerivPtr> ds, const Ctxt& d) {
  for (std::size_t i = 0; i < d.size(); ++i) ds = abs1_cong(ds);
  return ds;
}

}  // namespace detail

// Pointwise certificate that uncurry(curry(s, d), s.tgt(), d) ~ s.
inline SubstDeriv curry_beta_cert(const Subst& s, const Ctxt& d) {
  if (d.empty()) {
    std::vector<DerivPtr> es;
    es.reserve(s.entries().size());
    for (const TmPtr& e : s.entries()) es.push_back(deriv_refl(e));
    return SubstDeriv{s.src(), s.tgt(), std::move(es)};
  }
  const TyPtr& t = d.top();
  Subst u = curry_ty(s);
  SubstDeriv ih = curry_beta_cert(u, d.rest());
  // Left leg: uncurry_ty applied to the inductive round trip.
  std::vector<DerivPtr> left = detail::ev1_cong(ih.entries, u.src(), t);
  // Right leg: the one-step beta collapse of ev1(abs1(e)) back to e.
  Subst lifted = sub_lift(sub_weaken(sub_id(s.src().rest()), t), t);
  std::vector<DerivPtr> es;
  es.reserve(s.entries().size());
  for (std::size_t k = 0; k < s.entries().size(); ++k) {
    TmPtr shifted_body = subst(s.entries()[k], lifted);
    DerivPtr beta = cbeta(shifted_body, mk_var(Idx(s.src(), 0)));
    es.push_back(ctrans(left[k], beta));
  }
  return SubstDeriv{s.src(), s.tgt(), std::move(es)};
}

// Pointwise certificate that curry(uncurry(u, th, d), d) ~ u.
inline SubstDeriv curry_eta_cert(const Subst& u, const Ctxt& th, const Ctxt& d) {
  if (d.empty()) {
    std::vector<DerivPtr> es;
    es.reserve(u.entries().size());
    for (const TmPtr& e : u.entries()) es.push_back(deriv_refl(e));
    return SubstDeriv{u.src(), u.tgt(), std::move(es)};
  }
  const TyPtr& t = d.top();
  Subst v = uncurry(u, exp_ty(th, t), d.rest());
  // abs1(ev1(v_k)) is exactly the eta expansion of v_k.
  std::vector<DerivPtr> inner;
  inner.reserve(v.entries().size());
  for (const TmPtr& e : v.entries()) inner.push_back(csymm(ceta(e, t)));
  std::vector<DerivPtr> lifted = detail::curry_cong(std::move(inner), d.rest());
  SubstDeriv ih = curry_eta_cert(u, exp_ty(th, t), d.rest());
  std::vector<DerivPtr> es;
  es.reserve(u.entries().size());
  for (std::size_t k = 0; k < u.entries().size(); ++k)
    es.push_back(ctrans(lifted[k], ih.entries[k]));
  return SubstDeriv{u.src(), u.tgt(), std::move(es)};
}

}  // namespace certnf
