// Context renamings as explicit lists of indices, acting on terms.
//
// A renaming from Gamma to Delta stores one index into Gamma per type of
// Delta. Entries are kept bottom-first: entry k corresponds to the k-th type
// of Delta counting from the empty end, so the last entry answers de Bruijn
// depth 0.

#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "certnf/syntax.hpp"

namespace certnf {

class Rnm {
public:
  Rnm(Ctxt src, Ctxt tgt, std::vector<Idx> entries)
      : src_(std::move(src)), tgt_(std::move(tgt)), entries_(std::move(entries)) {
    if (entries_.size() != tgt_.size())
      throw CtxtMismatch("Rnm: entry count does not match target context");
    for (std::size_t k = 0; k < entries_.size(); ++k) {
      if (!ctxt_eq(entries_[k].ctxt(), src_))
        throw CtxtMismatch("Rnm: entry context disagrees with source");
      if (!ty_eq(entries_[k].ty(), tgt_.at_depth(entries_.size() - 1 - k)))
        throw TypeMismatch("Rnm: entry type disagrees with target context");
    }
  }

  const Ctxt& src() const noexcept { return src_; }
  const Ctxt& tgt() const noexcept { return tgt_; }
  const std::vector<Idx>& entries() const noexcept { return entries_; }

  // Image of the variable at the given depth into tgt.
  const Idx& lookup(std::size_t depth) const {
    if (depth >= entries_.size()) throw CtxtMismatch("Rnm::lookup: depth out of range");
    return entries_[entries_.size() - 1 - depth];
  }

private:
  Ctxt src_, tgt_;
  std::vector<Idx> entries_;
};

inline bool rnm_eq(const Rnm& a, const Rnm& b) {
  if (!ctxt_eq(a.src(), b.src()) || !ctxt_eq(a.tgt(), b.tgt())) return false;
  for (std::size_t k = 0; k < a.entries().size(); ++k)
    if (a.entries()[k].depth() != b.entries()[k].depth()) return false;
  return true;
}

inline Rnm rnm_id(const Ctxt& g) {
  std::vector<Idx> es;
  es.reserve(g.size());
  for (std::size_t k = 0; k < g.size(); ++k) es.emplace_back(g, g.size() - 1 - k);
  return Rnm(g, g, std::move(es));
}

inline Rnm rnm_weaken(const Rnm& r, const TyPtr& t) {
  Ctxt src = r.src().snoc(t);
  std::vector<Idx> es;
  es.reserve(r.entries().size());
  for (const Idx& i : r.entries()) es.emplace_back(src, i.depth() + 1);
  return Rnm(std::move(src), r.tgt(), std::move(es));
}

// Extends a renaming under one binder: the new variable maps to itself and
// everything else is weakened past it.
inline Rnm rnm_lift(const Rnm& r, const TyPtr& t) {
  Rnm w = rnm_weaken(r, t);
  std::vector<Idx> es = w.entries();
  es.emplace_back(w.src(), 0);
  return Rnm(w.src(), r.tgt().snoc(t), std::move(es));
}

inline Rnm rnm_comp(const Rnm& r, const Rnm& s) {
  if (!ctxt_eq(s.tgt(), r.src()))
    throw CtxtMismatch("rnm_comp: middle contexts disagree");
  std::vector<Idx> es;
  es.reserve(r.entries().size());
  for (const Idx& i : r.entries()) es.push_back(s.lookup(i.depth()));
  return Rnm(s.src(), r.tgt(), std::move(es));
}

namespace detail {
inline TmPtr rename_rec(const TmPtr& t, const Rnm& r) {
  switch (t->kind()) {
    case Tm::Kind::Var:
      return mk_var(r.lookup(t->var().depth()));
    case Tm::Kind::App:
      return mk_app(rename_rec(t->fn(), r), rename_rec(t->arg(), r));
    case Tm::Kind::Abs:
      return mk_abs(rename_rec(t->body(), rnm_lift(r, t->body()->ctxt().top())));
  }
  throw Error("rename: unreachable");
}
}  // namespace detail

inline TmPtr rename(const TmPtr& t, const Rnm& r) {
  if (!ctxt_eq(t->ctxt(), r.tgt()))
    throw CtxtMismatch("rename: term context disagrees with renaming target");
  return detail::rename_rec(t, r);
}

}  // namespace certnf
