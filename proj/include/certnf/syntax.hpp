// Core simply typed syntax: types, contexts, de Bruijn indices and terms.
//
// Every term node carries its full typing annotation (context and type), so
// well-typedness is a runtime invariant enforced by the smart constructors
// rather than by the host type system. All values are immutable and shared;
// they may be copied and used from multiple threads freely.

#pragma once

#include <cstddef>
#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace certnf {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// An application whose function side is not an arrow onto the argument type,
// an abstraction over an empty context, or similar typing violations.
struct TypeMismatch : Error {
  using Error::Error;
};

// Two context morphisms (or a term and a morphism) that do not compose.
struct CtxtMismatch : Error {
  using Error::Error;
};

class Ty;
using TyPtr = std::shared_ptr<const Ty>;

// Simple types over a single base type: iota or Arr(dom, cod).
class Ty {
public:
  bool is_arrow() const noexcept { return static_cast<bool>(dom_); }

  const TyPtr& dom() const {
    if (!is_arrow()) throw TypeMismatch("Ty::dom: not an arrow type");
    return dom_;
  }
  const TyPtr& cod() const {
    if (!is_arrow()) throw TypeMismatch("Ty::cod: not an arrow type");
    return cod_;
  }

  static const TyPtr& iota() {
    static const TyPtr t{new Ty()};
    return t;
  }
  static TyPtr arrow(TyPtr dom, TyPtr cod) {
    if (!dom || !cod) throw Error("Ty::arrow: null component");
    return TyPtr(new Ty(std::move(dom), std::move(cod)));
  }

private:
  Ty() = default;
  Ty(TyPtr d, TyPtr c) : dom_(std::move(d)), cod_(std::move(c)) {}

  TyPtr dom_;
  TyPtr cod_;
};

inline bool ty_eq(const TyPtr& a, const TyPtr& b) {
  if (a.get() == b.get()) return true;
  if (!a || !b) return false;
  if (a->is_arrow() != b->is_arrow()) return false;
  if (!a->is_arrow()) return true;
  return ty_eq(a->dom(), b->dom()) && ty_eq(a->cod(), b->cod());
}

inline std::size_t ty_size(const TyPtr& t) {
  return t->is_arrow() ? 1 + ty_size(t->dom()) + ty_size(t->cod()) : 1;
}

// Concrete syntax used only for diagnostics: "o", "o->o", "(o->o)->o".
inline std::string show_ty(const TyPtr& t) {
  if (!t->is_arrow()) return "o";
  std::string d = show_ty(t->dom());
  if (t->dom()->is_arrow()) d = "(" + d + ")";
  return d + "->" + show_ty(t->cod());
}

// Typing contexts: finite sequences of types extended on the right (snoc
// lists). Depth 0 addresses the most recently added (snoc-most) type.
class Ctxt {
  struct Node {
    std::shared_ptr<const Node> rest;
    TyPtr ty;
    std::size_t len;
  };

public:
  Ctxt() noexcept = default;

  bool empty() const noexcept { return !node_; }
  std::size_t size() const noexcept { return node_ ? node_->len : 0; }

  Ctxt snoc(TyPtr ty) const {
    if (!ty) throw Error("Ctxt::snoc: null type");
    Ctxt c;
    c.node_ = std::make_shared<const Node>(Node{node_, std::move(ty), size() + 1});
    return c;
  }

  const TyPtr& top() const {
    if (empty()) throw CtxtMismatch("Ctxt::top: empty context");
    return node_->ty;
  }
  Ctxt rest() const {
    if (empty()) throw CtxtMismatch("Ctxt::rest: empty context");
    Ctxt c;
    c.node_ = node_->rest;
    return c;
  }

  // Type at the given de Bruijn depth (0 = snoc-most).
  const TyPtr& at_depth(std::size_t d) const {
    const Node* n = node_.get();
    while (n) {
      if (d == 0) return n->ty;
      --d;
      n = n->rest.get();
    }
    throw CtxtMismatch("Ctxt::at_depth: depth out of range");
  }

  // Types listed bottom-first (entry 0 is the oldest binding).
  std::vector<TyPtr> types() const {
    std::vector<TyPtr> out(size());
    const Node* n = node_.get();
    for (std::size_t i = size(); i > 0; --i) {
      out[i - 1] = n->ty;
      n = n->rest.get();
    }
    return out;
  }

  static Ctxt from_types(const std::vector<TyPtr>& tys) {
    Ctxt c;
    for (const auto& t : tys) c = c.snoc(t);
    return c;
  }

  friend bool ctxt_eq(const Ctxt& a, const Ctxt& b) {
    if (a.size() != b.size()) return false;
    const Node* x = a.node_.get();
    const Node* y = b.node_.get();
    while (x) {
      if (x == y) return true;
      if (!ty_eq(x->ty, y->ty)) return false;
      x = x->rest.get();
      y = y->rest.get();
    }
    return true;
  }

private:
  std::shared_ptr<const Node> node_;
};

inline std::string show_ctxt(const Ctxt& c) {
  std::string out = "[";
  bool first = true;
  for (const auto& t : c.types()) {
    if (!first) out += ", ";
    out += show_ty(t);
    first = false;
  }
  return out + "]";
}

// A well-scoped, well-typed de Bruijn index: a depth into a context together
// with the type found there. The type is computed, never trusted.
class Idx {
public:
  Idx(Ctxt ctxt, std::size_t depth)
      : ctxt_(std::move(ctxt)), depth_(depth), ty_(ctxt_.at_depth(depth)) {}

  const Ctxt& ctxt() const noexcept { return ctxt_; }
  std::size_t depth() const noexcept { return depth_; }
  const TyPtr& ty() const noexcept { return ty_; }

private:
  Ctxt ctxt_;
  std::size_t depth_;
  TyPtr ty_;
};

inline bool idx_eq(const Idx& a, const Idx& b) {
  return a.depth() == b.depth() && ctxt_eq(a.ctxt(), b.ctxt());
}

class Tm;
using TmPtr = std::shared_ptr<const Tm>;

TmPtr mk_var(Idx i);
TmPtr mk_app(TmPtr fn, TmPtr arg);
TmPtr mk_abs(TmPtr body);

// Terms with a variable, application, or abstraction node. Constructed only
// through mk_var / mk_app / mk_abs, which compute the annotations.
class Tm {
public:
  enum class Kind { Var, App, Abs };

  Kind kind() const noexcept { return static_cast<Kind>(node_.index()); }
  const Ctxt& ctxt() const noexcept { return ctxt_; }
  const TyPtr& ty() const noexcept { return ty_; }

  const Idx& var() const { return std::get<VarNode>(node_).idx; }
  const TmPtr& fn() const { return std::get<AppNode>(node_).fn; }
  const TmPtr& arg() const { return std::get<AppNode>(node_).arg; }
  const TmPtr& body() const { return std::get<AbsNode>(node_).body; }

private:
  struct VarNode {
    Idx idx;
  };
  struct AppNode {
    TmPtr fn, arg;
  };
  struct AbsNode {
    TmPtr body;
  };

  Tm(Ctxt c, TyPtr t, std::variant<VarNode, AppNode, AbsNode> n)
      : ctxt_(std::move(c)), ty_(std::move(t)), node_(std::move(n)) {}

  friend TmPtr mk_var(Idx);
  friend TmPtr mk_app(TmPtr, TmPtr);
  friend TmPtr mk_abs(TmPtr);

  Ctxt ctxt_;
  TyPtr ty_;
  std::variant<VarNode, AppNode, AbsNode> node_;
};

inline TmPtr mk_var(Idx i) {
  Ctxt c = i.ctxt();
  TyPtr t = i.ty();
  return TmPtr(new Tm(std::move(c), std::move(t), Tm::VarNode{std::move(i)}));
}

inline TmPtr mk_app(TmPtr fn, TmPtr arg) {
  if (!fn || !arg) throw Error("mk_app: null argument");
  if (!ctxt_eq(fn->ctxt(), arg->ctxt()))
    throw TypeMismatch("mk_app: function and argument contexts disagree");
  if (!fn->ty()->is_arrow())
    throw TypeMismatch("mk_app: function type " + show_ty(fn->ty()) + " is not an arrow");
  if (!ty_eq(fn->ty()->dom(), arg->ty()))
    throw TypeMismatch("mk_app: expected argument of type " + show_ty(fn->ty()->dom()) +
                       ", got " + show_ty(arg->ty()));
  Ctxt c = fn->ctxt();
  TyPtr t = fn->ty()->cod();
  return TmPtr(new Tm(std::move(c), std::move(t), Tm::AppNode{std::move(fn), std::move(arg)}));
}

inline TmPtr mk_abs(TmPtr body) {
  if (!body) throw Error("mk_abs: null body");
  if (body->ctxt().empty())
    throw TypeMismatch("mk_abs: body context is empty, nothing to bind");
  Ctxt c = body->ctxt().rest();
  TyPtr t = Ty::arrow(body->ctxt().top(), body->ty());
  return TmPtr(new Tm(std::move(c), std::move(t), Tm::AbsNode{std::move(body)}));
}

// Structural identity of annotated terms (with de Bruijn binding this is
// exactly alpha-equivalence).
inline bool alpha_eq(const TmPtr& a, const TmPtr& b) {
  if (a.get() == b.get()) return true;
  if (!a || !b) return false;
  if (a->kind() != b->kind()) return false;
  if (!ty_eq(a->ty(), b->ty()) || !ctxt_eq(a->ctxt(), b->ctxt())) return false;
  switch (a->kind()) {
    case Tm::Kind::Var:
      return a->var().depth() == b->var().depth();
    case Tm::Kind::App:
      return alpha_eq(a->fn(), b->fn()) && alpha_eq(a->arg(), b->arg());
    case Tm::Kind::Abs:
      return alpha_eq(a->body(), b->body());
  }
  return false;
}

// Re-checks every node's invariant from scratch; anything built through the
// smart constructors passes.
inline bool validate(const TmPtr& t) {
  if (!t) return false;
  switch (t->kind()) {
    case Tm::Kind::Var: {
      const Idx& i = t->var();
      if (!ctxt_eq(i.ctxt(), t->ctxt())) return false;
      if (i.depth() >= t->ctxt().size()) return false;
      return ty_eq(t->ctxt().at_depth(i.depth()), i.ty()) && ty_eq(i.ty(), t->ty());
    }
    case Tm::Kind::App: {
      const TmPtr& f = t->fn();
      const TmPtr& a = t->arg();
      if (!validate(f) || !validate(a)) return false;
      if (!ctxt_eq(f->ctxt(), t->ctxt()) || !ctxt_eq(a->ctxt(), t->ctxt())) return false;
      if (!f->ty()->is_arrow()) return false;
      return ty_eq(f->ty()->dom(), a->ty()) && ty_eq(f->ty()->cod(), t->ty());
    }
    case Tm::Kind::Abs: {
      const TmPtr& b = t->body();
      if (!validate(b)) return false;
      if (b->ctxt().empty()) return false;
      if (!ctxt_eq(b->ctxt().rest(), t->ctxt())) return false;
      if (!t->ty()->is_arrow()) return false;
      return ty_eq(t->ty()->dom(), b->ctxt().top()) && ty_eq(t->ty()->cod(), b->ty());
    }
  }
  return false;
}

inline std::size_t tm_size(const TmPtr& t) {
  switch (t->kind()) {
    case Tm::Kind::Var: return 1;
    case Tm::Kind::App: return 1 + tm_size(t->fn()) + tm_size(t->arg());
    case Tm::Kind::Abs: return 1 + tm_size(t->body());
  }
  return 1;
}

// Compact de Bruijn rendering for diagnostics, e.g. "(\o. (#1 #0))".
inline std::string show_tm(const TmPtr& t) {
  switch (t->kind()) {
    case Tm::Kind::Var: return "#" + std::to_string(t->var().depth());
    case Tm::Kind::App: return "(" + show_tm(t->fn()) + " " + show_tm(t->arg()) + ")";
    case Tm::Kind::Abs:
      return "(\\" + show_ty(t->body()->ctxt().top()) + ". " + show_tm(t->body()) + ")";
  }
  return "?";
}

}  // namespace certnf
