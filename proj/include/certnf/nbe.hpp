// The pure Kripke normalizer: world-indexed semantic values over the
// category of substitutions, with evaluation, reify and reflect.
//
// A semantic value at the base type is just a term at its world; at an arrow
// type it is a closure that can be applied at any future world (any
// substitution into the current one). Values are immutable; closures capture
// their environment by value, so values may be shared across threads.

#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <utility>
#include <vector>

#include "certnf/preclosure.hpp"
#include "certnf/substitution.hpp"
#include "certnf/syntax.hpp"

namespace certnf::nbe {

class Sem {
public:
  using Closure = std::function<Sem(const Subst&, const Sem&)>;

  static Sem base(Ctxt world, TmPtr payload) {
    if (payload->ty()->is_arrow()) throw TypeMismatch("Sem::base: payload not of base type");
    if (!ctxt_eq(payload->ctxt(), world)) throw CtxtMismatch("Sem::base: payload world disagrees");
    Sem v;
    v.ty_ = payload->ty();
    v.world_ = std::move(world);
    v.payload_ = std::move(payload);
    return v;
  }

  static Sem closure(Ctxt world, TyPtr ty, Closure fn) {
    if (!ty->is_arrow()) throw TypeMismatch("Sem::closure: type is not an arrow");
    Sem v;
    v.ty_ = std::move(ty);
    v.world_ = std::move(world);
    v.fn_ = std::make_shared<const Closure>(std::move(fn));
    return v;
  }

  const TyPtr& ty() const noexcept { return ty_; }
  const Ctxt& world() const noexcept { return world_; }

  const TmPtr& payload() const {
    if (!payload_) throw TypeMismatch("Sem::payload: not a base value");
    return payload_;
  }

  // Applies an arrow value at the world reached by to_here.
  Sem apply(const Subst& to_here, const Sem& arg) const {
    if (!fn_) throw TypeMismatch("Sem::apply: not an arrow value");
    if (!ctxt_eq(to_here.tgt(), world_))
      throw CtxtMismatch("Sem::apply: world map does not land in this world");
    if (!ctxt_eq(arg.world(), to_here.src()))
      throw CtxtMismatch("Sem::apply: argument lives at a different world");
    if (!ty_eq(arg.ty(), ty_->dom()))
      throw TypeMismatch("Sem::apply: argument type disagrees with domain");
    return (*fn_)(to_here, arg);
  }

private:
  Sem() = default;
  TyPtr ty_;
  Ctxt world_;
  TmPtr payload_;
  std::shared_ptr<const Closure> fn_;
};

// Pointwise product of semantic values at a common world, one per type of
// the target context.
struct Env {
  Ctxt world;
  Ctxt tgt;
  std::vector<Sem> values;  // bottom-first, like Subst entries

  const Sem& lookup(std::size_t depth) const {
    if (depth >= values.size()) throw CtxtMismatch("Env::lookup: depth out of range");
    return values[values.size() - 1 - depth];
  }
};

// Functorial action: moves a value to the world reached by s.
inline Sem restrict_sem(const Sem& v, const Subst& s) {
  if (!ctxt_eq(s.tgt(), v.world()))
    throw CtxtMismatch("restrict_sem: map does not land in the value's world");
  if (!v.ty()->is_arrow()) return Sem::base(s.src(), subst(v.payload(), s));
  return Sem::closure(s.src(), v.ty(), [v, s](const Subst& further, const Sem& arg) {
    return v.apply(sub_comp(s, further), arg);
  });
}

inline Env restrict_env(const Env& e, const Subst& s) {
  if (!ctxt_eq(s.tgt(), e.world))
    throw CtxtMismatch("restrict_env: map does not land in the environment's world");
  std::vector<Sem> vs;
  vs.reserve(e.values.size());
  for (const Sem& v : e.values) vs.push_back(restrict_sem(v, s));
  return Env{s.src(), e.tgt, std::move(vs)};
}

Sem reflect(const TmPtr& t);
TmPtr reify(const Sem& v);

// Embeds a term as a semantic value of its own type and world.
inline Sem reflect(const TmPtr& t) {
  if (!t->ty()->is_arrow()) return Sem::base(t->ctxt(), t);
  return Sem::closure(t->ctxt(), t->ty(), [t](const Subst& s, const Sem& arg) {
    return reflect(mk_app(subst(t, s), reify(arg)));
  });
}

// Extracts a term from a semantic value; at arrow type by applying the
// closure to a fresh reflected variable one world up.
inline TmPtr reify(const Sem& v) {
  if (!v.ty()->is_arrow()) return v.payload();
  const TyPtr& dom = v.ty()->dom();
  Subst up = sub_weaken(sub_id(v.world()), dom);
  Sem fresh = reflect(mk_var(Idx(up.src(), 0)));
  return mk_abs(reify(v.apply(up, fresh)));
}

inline Sem eval(const TmPtr& t, const Env& e) {
  if (!ctxt_eq(t->ctxt(), e.tgt))
    throw CtxtMismatch("eval: term context disagrees with environment");
  switch (t->kind()) {
    case Tm::Kind::Var:
      return e.lookup(t->var().depth());
    case Tm::Kind::App: {
      Sem f = eval(t->fn(), e);
      Sem a = eval(t->arg(), e);
      return f.apply(sub_id(e.world), a);
    }
    case Tm::Kind::Abs: {
      TmPtr body = t->body();
      TyPtr dom = body->ctxt().top();
      Env captured = e;
      return Sem::closure(e.world, t->ty(),
                          [body, dom, captured](const Subst& s, const Sem& arg) {
                            Env inner = restrict_env(captured, s);
                            inner.tgt = inner.tgt.snoc(dom);
                            inner.values.push_back(arg);
                            return eval(body, inner);
                          });
    }
  }
  throw Error("eval: unreachable");
}

// The environment of reflected variables: the identity substitution seen
// semantically.
inline Env reflect_env(const Ctxt& g) {
  std::vector<Sem> vs;
  vs.reserve(g.size());
  for (std::size_t k = 0; k < g.size(); ++k)
    vs.push_back(reflect(mk_var(Idx(g, g.size() - 1 - k))));
  return Env{g, g, std::move(vs)};
}

inline TmPtr normalize(const TmPtr& t) {
  return reify(eval(t, reflect_env(t->ctxt())));
}

inline Subst normalize_subst(const Subst& s) {
  std::vector<TmPtr> es;
  es.reserve(s.entries().size());
  for (const TmPtr& e : s.entries()) es.push_back(normalize(e));
  return Subst(s.src(), s.tgt(), std::move(es));
}

// Cross-check route: curry the substitution down to closed terms through the
// pre-exponential, normalize those, and uncurry back.
inline Subst normalize_subst_curried(const Subst& s) {
  Subst closed = curry(s, s.src());
  Subst normed = normalize_subst(closed);
  return uncurry(normed, s.tgt(), s.src());
}

}  // namespace certnf::nbe
