// Context substitutions as explicit lists of terms, acting on terms, plus the
// lifting of renamings, mixed renaming/substitution compositions, and the
// single-variable helpers used by beta/eta conversion.

#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "certnf/renaming.hpp"
#include "certnf/syntax.hpp"

namespace certnf {

class Subst {
public:
  Subst(Ctxt src, Ctxt tgt, std::vector<TmPtr> entries)
      : src_(std::move(src)), tgt_(std::move(tgt)), entries_(std::move(entries)) {
    if (entries_.size() != tgt_.size())
      throw CtxtMismatch("Subst: entry count does not match target context");
    for (std::size_t k = 0; k < entries_.size(); ++k) {
      if (!entries_[k]) throw Error("Subst: null entry");
      if (!ctxt_eq(entries_[k]->ctxt(), src_))
        throw CtxtMismatch("Subst: entry context disagrees with source");
      if (!ty_eq(entries_[k]->ty(), tgt_.at_depth(entries_.size() - 1 - k)))
        throw TypeMismatch("Subst: entry type disagrees with target context");
    }
  }

  const Ctxt& src() const noexcept { return src_; }
  const Ctxt& tgt() const noexcept { return tgt_; }
  const std::vector<TmPtr>& entries() const noexcept { return entries_; }

  const TmPtr& lookup(std::size_t depth) const {
    if (depth >= entries_.size()) throw CtxtMismatch("Subst::lookup: depth out of range");
    return entries_[entries_.size() - 1 - depth];
  }

private:
  Ctxt src_, tgt_;
  std::vector<TmPtr> entries_;
};

inline bool subst_eq(const Subst& a, const Subst& b) {
  if (!ctxt_eq(a.src(), b.src()) || !ctxt_eq(a.tgt(), b.tgt())) return false;
  for (std::size_t k = 0; k < a.entries().size(); ++k)
    if (!alpha_eq(a.entries()[k], b.entries()[k])) return false;
  return true;
}

inline Subst sub_id(const Ctxt& g) {
  std::vector<TmPtr> es;
  es.reserve(g.size());
  for (std::size_t k = 0; k < g.size(); ++k) es.push_back(mk_var(Idx(g, g.size() - 1 - k)));
  return Subst(g, g, std::move(es));
}

inline Subst sub_weaken(const Subst& s, const TyPtr& t) {
  Rnm w = rnm_weaken(rnm_id(s.src()), t);
  std::vector<TmPtr> es;
  es.reserve(s.entries().size());
  for (const TmPtr& e : s.entries()) es.push_back(rename(e, w));
  return Subst(w.src(), s.tgt(), std::move(es));
}

// Extends the target by one entry.
inline Subst sub_snoc(const Subst& s, TmPtr t) {
  std::vector<TmPtr> es = s.entries();
  Ctxt tgt = s.tgt().snoc(t->ty());
  es.push_back(std::move(t));
  return Subst(s.src(), std::move(tgt), std::move(es));
}

// Pushes a substitution under one binder: weaken, then map the new variable
// to itself.
inline Subst sub_lift(const Subst& s, const TyPtr& t) {
  Subst w = sub_weaken(s, t);
  return sub_snoc(w, mk_var(Idx(w.src(), 0)));
}

namespace detail {
inline TmPtr subst_rec(const TmPtr& t, const Subst& s) {
  switch (t->kind()) {
    case Tm::Kind::Var:
      return s.lookup(t->var().depth());
    case Tm::Kind::App:
      return mk_app(subst_rec(t->fn(), s), subst_rec(t->arg(), s));
    case Tm::Kind::Abs:
      return mk_abs(subst_rec(t->body(), sub_lift(s, t->body()->ctxt().top())));
  }
  throw Error("subst: unreachable");
}
}  // namespace detail

inline TmPtr subst(const TmPtr& t, const Subst& s) {
  if (!ctxt_eq(t->ctxt(), s.tgt()))
    throw CtxtMismatch("subst: term context disagrees with substitution target");
  return detail::subst_rec(t, s);
}

inline Subst sub_comp(const Subst& s, const Subst& t) {
  if (!ctxt_eq(t.tgt(), s.src()))
    throw CtxtMismatch("sub_comp: middle contexts disagree");
  std::vector<TmPtr> es;
  es.reserve(s.entries().size());
  for (const TmPtr& e : s.entries()) es.push_back(subst(e, t));
  return Subst(t.src(), s.tgt(), std::move(es));
}

inline Subst lift_rnm(const Rnm& r) {
  std::vector<TmPtr> es;
  es.reserve(r.entries().size());
  for (const Idx& i : r.entries()) es.push_back(mk_var(i));
  return Subst(r.src(), r.tgt(), std::move(es));
}

// Mixed compositions. Both agree with composing through lift_rnm but avoid
// materializing the lifted substitution.
inline Subst hcomp_sr(const Subst& s, const Rnm& r) {
  if (!ctxt_eq(r.tgt(), s.src()))
    throw CtxtMismatch("hcomp_sr: middle contexts disagree");
  std::vector<TmPtr> es;
  es.reserve(s.entries().size());
  for (const TmPtr& e : s.entries()) es.push_back(rename(e, r));
  return Subst(r.src(), s.tgt(), std::move(es));
}

inline Subst hcomp_rs(const Rnm& r, const Subst& s) {
  if (!ctxt_eq(s.tgt(), r.src()))
    throw CtxtMismatch("hcomp_rs: middle contexts disagree");
  std::vector<TmPtr> es;
  es.reserve(r.entries().size());
  for (const Idx& i : r.entries()) es.push_back(s.lookup(i.depth()));
  return Subst(s.src(), r.tgt(), std::move(es));
}

// Substitutes arg for de Bruijn index zero of body, dropping the binder.
inline TmPtr beta_subst(const TmPtr& body, const TmPtr& arg) {
  if (body->ctxt().empty())
    throw TypeMismatch("beta_subst: body has no bound variable");
  if (!ctxt_eq(arg->ctxt(), body->ctxt().rest()))
    throw TypeMismatch("beta_subst: argument context disagrees with body context");
  if (!ty_eq(arg->ty(), body->ctxt().top()))
    throw TypeMismatch("beta_subst: argument type disagrees with bound variable");
  return subst(body, sub_snoc(sub_id(arg->ctxt()), arg));
}

// Introduces a new free variable at de Bruijn index zero.
inline TmPtr shift(const TmPtr& t, const TyPtr& t1) {
  return rename(t, rnm_weaken(rnm_id(t->ctxt()), t1));
}

}  // namespace certnf
