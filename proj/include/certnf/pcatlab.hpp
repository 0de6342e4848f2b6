// Executable PER combinators over finite carriers, exhaustive enumerators
// for the syntactic calculus, a bounded rewrite-closure conversion oracle,
// and the finite-instance law suites for the categorical structure of
// renamings and substitutions.
//
// Suite bounds: exact laws over renamings run at the full bounds; laws
// quantifying over several substitutions at once use assoc_ty_depth /
// assoc_tm_depth (enumerated substitution spaces grow multiplicatively, the
// smaller defaults keep the exhaustive runs in seconds). All bounds are
// caller-adjustable.

#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include <json.hpp>

#include "certnf/conversion.hpp"
#include "certnf/glue.hpp"
#include "certnf/nbe.hpp"
#include "certnf/preclosure.hpp"
#include "certnf/serialize.hpp"

namespace certnf {

struct BudgetExceeded : Error {
  using Error::Error;
};

// ---------------------------------------------------------------------------
// PERs over finite carriers

class PerRel {
public:
  PerRel(std::size_t size, std::function<bool(std::size_t, std::size_t)> rel,
         std::vector<std::string> labels = {})
      : size_(size), rel_(std::move(rel)), labels_(std::move(labels)) {}

  std::size_t size() const noexcept { return size_; }
  bool related(std::size_t i, std::size_t j) const { return rel_(i, j); }
  std::string label(std::size_t i) const {
    return i < labels_.size() ? labels_[i] : "#" + std::to_string(i);
  }

private:
  std::size_t size_;
  std::function<bool(std::size_t, std::size_t)> rel_;
  std::vector<std::string> labels_;
};

inline PerRel per_discrete(std::size_t n) {
  return PerRel(n, [](std::size_t i, std::size_t j) { return i == j; });
}

inline PerRel per_unit() {
  return PerRel(1, [](std::size_t, std::size_t) { return true; }, {"*"});
}

inline PerRel per_prod(const PerRel& a, const PerRel& b) {
  std::size_t bn = b.size();
  std::vector<std::string> labels;
  labels.reserve(a.size() * bn);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < bn; ++j) labels.push_back("(" + a.label(i) + "," + b.label(j) + ")");
  return PerRel(a.size() * bn,
                [a, b, bn](std::size_t x, std::size_t y) {
                  return a.related(x / bn, y / bn) && b.related(x % bn, y % bn);
                },
                std::move(labels));
}

// Functions as explicit tables: element e encodes the table k -> (e / b^k) % b.
inline PerRel per_arrow(const PerRel& a, const PerRel& b) {
  std::size_t count = 1;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (count > 1000000 / (b.size() ? b.size() : 1))
      throw BudgetExceeded("per_arrow: table space too large");
    count *= b.size();
  }
  auto entry = [bn = b.size(), an = a.size()](std::size_t f, std::size_t k) {
    for (std::size_t i = 0; i < k; ++i) f /= bn;
    return f % bn;
  };
  std::vector<std::string> labels;
  labels.reserve(count);
  for (std::size_t f = 0; f < count; ++f) {
    std::string l = "[";
    for (std::size_t k = 0; k < a.size(); ++k) {
      if (k) l += ",";
      l += std::to_string(k) + ">" + b.label(entry(f, k));
    }
    labels.push_back(l + "]");
  }
  std::size_t an = a.size();
  return PerRel(count,
                [a, b, entry, an](std::size_t f, std::size_t g) {
                  for (std::size_t x = 0; x < an; ++x)
                    for (std::size_t y = 0; y < an; ++y)
                      if (a.related(x, y) && !b.related(entry(f, x), entry(g, y))) return false;
                  return true;
                },
                std::move(labels));
}

inline PerRel per_sub(const PerRel& a, std::function<bool(std::size_t)> pred) {
  std::vector<std::string> labels;
  labels.reserve(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) labels.push_back(a.label(i));
  return PerRel(a.size(),
                [a, pred](std::size_t i, std::size_t j) {
                  return a.related(i, j) && pred(i) && pred(j);
                },
                std::move(labels));
}

// ---------------------------------------------------------------------------
// Law reports

struct LawFailure {
  std::string what;
  std::vector<nlohmann::json> items;
};

struct LawReport {
  std::string suite;
  std::size_t cases = 0;
  std::vector<LawFailure> failures;
  std::vector<std::string> notes;

  bool passed() const noexcept { return failures.empty(); }

  nlohmann::json to_json() const {
    nlohmann::json fs = nlohmann::json::array();
    for (const auto& f : failures) {
      nlohmann::json items = nlohmann::json::array();
      for (const auto& i : f.items) items.push_back(i);
      fs.push_back(nlohmann::json{{"items", items}, {"what", f.what}});
    }
    return nlohmann::json{{"cases", cases},
                          {"failures", fs},
                          {"notes", notes},
                          {"passed", passed()},
                          {"suite", suite}};
  }
};

// Exhaustive symmetry and transitivity check over the carrier.
inline LawReport check_per(const PerRel& r, std::string name = "per") {
  LawReport rep;
  rep.suite = std::move(name);
  for (std::size_t i = 0; i < r.size(); ++i)
    for (std::size_t j = 0; j < r.size(); ++j) {
      ++rep.cases;
      if (r.related(i, j) && !r.related(j, i))
        rep.failures.push_back(
            {"symmetry: " + r.label(i) + " ~ " + r.label(j) + " but not conversely", {}});
    }
  for (std::size_t i = 0; i < r.size(); ++i)
    for (std::size_t j = 0; j < r.size(); ++j) {
      if (!r.related(i, j)) continue;
      for (std::size_t k = 0; k < r.size(); ++k) {
        ++rep.cases;
        if (r.related(j, k) && !r.related(i, k))
          rep.failures.push_back({"transitivity: " + r.label(i) + " ~ " + r.label(j) + " ~ " +
                                      r.label(k) + " but ends unrelated",
                                  {}});
      }
    }
  return rep;
}

// ---------------------------------------------------------------------------
// Enumerators

inline std::vector<TyPtr> enum_types(std::size_t depth) {
  std::vector<TyPtr> out{Ty::iota()};
  std::unordered_set<std::string> seen{show_ty(Ty::iota())};
  for (std::size_t d = 0; d < depth; ++d) {
    std::vector<TyPtr> prev = out;
    for (const auto& a : prev)
      for (const auto& b : prev) {
        TyPtr t = Ty::arrow(a, b);
        if (seen.insert(show_ty(t)).second) out.push_back(t);
      }
  }
  return out;
}

inline std::vector<Ctxt> enum_ctxts(std::size_t maxlen, std::size_t depth) {
  std::vector<TyPtr> tys = enum_types(depth);
  std::vector<Ctxt> out{Ctxt()};
  std::size_t begin = 0;
  for (std::size_t len = 1; len <= maxlen; ++len) {
    std::size_t end = out.size();
    for (std::size_t i = begin; i < end; ++i)
      for (const auto& t : tys) out.push_back(out[i].snoc(t));
    begin = end;
  }
  return out;
}

// Memoizing exhaustive term enumerator. Application argument types range
// over enum_types(arg_ty_depth); depth counts nodes (a variable has depth 0).
class TermEnum {
public:
  explicit TermEnum(std::size_t arg_ty_depth = 2, std::size_t budget = 2000000)
      : doms_(enum_types(arg_ty_depth)), budget_(budget) {}

  const std::vector<TmPtr>& terms(const Ctxt& g, const TyPtr& t, std::size_t depth) {
    std::string key = show_ctxt(g) + "|" + show_ty(t) + "|" + std::to_string(depth);
    auto it = memo_.find(key);
    if (it != memo_.end()) return *it->second;
    auto out = std::make_shared<std::vector<TmPtr>>();
    for (std::size_t d = 0; d < g.size(); ++d)
      if (ty_eq(g.at_depth(d), t)) out->push_back(mk_var(Idx(g, d)));
    if (depth > 0) {
      if (t->is_arrow())
        for (const auto& b : terms(g.snoc(t->dom()), t->cod(), depth - 1))
          out->push_back(mk_abs(b));
      for (const auto& s : doms_) {
        TyPtr fn_ty = Ty::arrow(s, t);
        // Recurse on arguments first so the memo warms bottom-up.
        const std::vector<TmPtr>& fs = terms(g, fn_ty, depth - 1);
        if (fs.empty()) continue;
        const std::vector<TmPtr>& as = terms(g, s, depth - 1);
        for (const auto& f : fs)
          for (const auto& a : as) out->push_back(mk_app(f, a));
      }
    }
    produced_ += out->size();
    if (produced_ > budget_) throw BudgetExceeded("TermEnum: enumeration budget exceeded");
    memo_[key] = out;
    return *memo_[key];
  }

  std::vector<Subst> substs(const Ctxt& g, const Ctxt& d, std::size_t depth) {
    std::vector<const std::vector<TmPtr>*> slots;
    std::size_t total = 1;
    for (const auto& t : d.types()) {
      slots.push_back(&terms(g, t, depth));
      if (slots.back()->empty()) return {};
      total *= slots.back()->size();
      if (total > budget_) throw BudgetExceeded("TermEnum: substitution space too large");
    }
    std::vector<Subst> out;
    out.reserve(total);
    std::vector<std::size_t> odo(slots.size(), 0);
    while (true) {
      std::vector<TmPtr> es;
      es.reserve(slots.size());
      for (std::size_t k = 0; k < slots.size(); ++k) es.push_back((*slots[k])[odo[k]]);
      out.emplace_back(g, d, std::move(es));
      std::size_t k = 0;
      for (; k < odo.size(); ++k) {
        if (++odo[k] < slots[k]->size()) break;
        odo[k] = 0;
      }
      if (k == odo.size()) break;
      if (odo.empty()) break;
    }
    return out;
  }

private:
  std::vector<TyPtr> doms_;
  std::size_t budget_;
  std::size_t produced_ = 0;
  std::map<std::string, std::shared_ptr<std::vector<TmPtr>>> memo_;
};

inline std::vector<TmPtr> enum_terms(const Ctxt& g, const TyPtr& t, std::size_t depth,
                                     std::size_t arg_ty_depth = 2) {
  TermEnum e(arg_ty_depth);
  return e.terms(g, t, depth);
}

inline std::vector<Rnm> enum_rnms(const Ctxt& g, const Ctxt& d) {
  std::vector<std::vector<Idx>> slots;
  for (const auto& t : d.types()) {
    std::vector<Idx> cand;
    for (std::size_t k = 0; k < g.size(); ++k)
      if (ty_eq(g.at_depth(k), t)) cand.emplace_back(g, k);
    if (cand.empty()) return {};
    slots.push_back(std::move(cand));
  }
  std::vector<Rnm> out;
  std::vector<std::size_t> odo(slots.size(), 0);
  while (true) {
    std::vector<Idx> es;
    es.reserve(slots.size());
    for (std::size_t k = 0; k < slots.size(); ++k) es.push_back(slots[k][odo[k]]);
    out.emplace_back(g, d, std::move(es));
    std::size_t k = 0;
    for (; k < odo.size(); ++k) {
      if (++odo[k] < slots[k].size()) break;
      odo[k] = 0;
    }
    if (k == odo.size()) break;
    if (odo.empty()) break;
  }
  return out;
}

inline std::vector<Subst> enum_substs(const Ctxt& g, const Ctxt& d, std::size_t depth,
                                      std::size_t arg_ty_depth = 2) {
  TermEnum e(arg_ty_depth);
  return e.substs(g, d, depth);
}

// ---------------------------------------------------------------------------
// Single rewrite steps and the bounded conversion oracle

struct RwStep {
  DerivPtr deriv;
  TmPtr to;
};

namespace detail {

// Eta expansion is offered only where it makes progress towards the long
// form: never on an abstraction and never on the function side of an
// application, which keeps the combined beta/eta closure finite.
inline void rewrite_steps_rec(const TmPtr& t, bool fn_position, std::vector<RwStep>& out) {
  if (t->kind() == Tm::Kind::App && t->fn()->kind() == Tm::Kind::Abs) {
    const TmPtr& body = t->fn()->body();
    out.push_back({cbeta(body, t->arg()), beta_subst(body, t->arg())});
  }
  if (t->ty()->is_arrow() && t->kind() != Tm::Kind::Abs && !fn_position) {
    const TyPtr& dom = t->ty()->dom();
    TmPtr up = shift(t, dom);
    out.push_back({ceta(t, dom), mk_abs(mk_app(up, mk_var(Idx(up->ctxt(), 0))))});
  }
  switch (t->kind()) {
    case Tm::Kind::Var: break;
    case Tm::Kind::App: {
      std::vector<RwStep> sub;
      rewrite_steps_rec(t->fn(), true, sub);
      for (auto& s : sub)
        out.push_back({capp(s.deriv, deriv_refl(t->arg())), mk_app(s.to, t->arg())});
      sub.clear();
      rewrite_steps_rec(t->arg(), false, sub);
      for (auto& s : sub)
        out.push_back({capp(deriv_refl(t->fn()), s.deriv), mk_app(t->fn(), s.to)});
      break;
    }
    case Tm::Kind::Abs: {
      std::vector<RwStep> sub;
      rewrite_steps_rec(t->body(), false, sub);
      for (auto& s : sub) out.push_back({cabs(s.deriv), mk_abs(s.to)});
      break;
    }
  }
}

inline std::string key_ty(const TyPtr& t) { return show_ty(t); }

inline void key_tm_rec(const TmPtr& t, std::string& out) {
  switch (t->kind()) {
    case Tm::Kind::Var:
      out += "v";
      out += std::to_string(t->var().depth());
      out += ";";
      return;
    case Tm::Kind::App:
      out += "a(";
      key_tm_rec(t->fn(), out);
      key_tm_rec(t->arg(), out);
      out += ")";
      return;
    case Tm::Kind::Abs:
      out += "l[";
      out += key_ty(t->body()->ctxt().top());
      out += "]";
      key_tm_rec(t->body(), out);
      return;
  }
}

inline std::string key_tm(const TmPtr& t) {
  std::string out;
  key_tm_rec(t, out);
  return out;
}

}  // namespace detail

inline std::vector<RwStep> rewrite_steps(const TmPtr& t) {
  std::vector<RwStep> out;
  detail::rewrite_steps_rec(t, false, out);
  return out;
}

enum class Oracle { Convertible, NotConvertible, Unknown };

// The rewrite closure of one term, expanded breadth-first for at most fuel
// rounds. saturated means no rewrite leads outside the recorded set.
struct ConvClass {
  std::unordered_set<std::string> keys;
  bool saturated = false;
};

inline ConvClass conv_class(const TmPtr& t, std::size_t fuel, std::size_t max_members = 20000) {
  ConvClass c;
  std::vector<TmPtr> frontier{t};
  c.keys.insert(detail::key_tm(t));
  for (std::size_t round = 0; round < fuel; ++round) {
    std::vector<TmPtr> next;
    for (const TmPtr& x : frontier) {
      for (const RwStep& s : rewrite_steps(x)) {
        if (c.keys.size() >= max_members) return c;
        if (c.keys.insert(detail::key_tm(s.to)).second) next.push_back(s.to);
      }
    }
    if (next.empty()) {
      c.saturated = true;
      return c;
    }
    frontier = std::move(next);
  }
  // Fuel ran out with work left; report unsaturated unless the frontier
  // turns out to be closed.
  for (const TmPtr& x : frontier)
    for (const RwStep& s : rewrite_steps(x))
      if (!c.keys.count(detail::key_tm(s.to))) return c;
  c.saturated = true;
  return c;
}

inline Oracle classes_meet(const ConvClass& a, const ConvClass& b) {
  const auto& small = a.keys.size() <= b.keys.size() ? a.keys : b.keys;
  const auto& big = a.keys.size() <= b.keys.size() ? b.keys : a.keys;
  for (const auto& k : small)
    if (big.count(k)) return Oracle::Convertible;
  if (a.saturated && b.saturated) return Oracle::NotConvertible;
  return Oracle::Unknown;
}

// Bounded decision by rewrite closure: sound when it answers Convertible or
// NotConvertible, Unknown when the fuel ran out first.
inline Oracle conv_oracle(const TmPtr& t, const TmPtr& u, std::size_t fuel) {
  if (!ctxt_eq(t->ctxt(), u->ctxt()) || !ty_eq(t->ty(), u->ty()))
    throw TypeMismatch("conv_oracle: terms do not share a context and type");
  return classes_meet(conv_class(t, fuel), conv_class(u, fuel));
}

// Structural characterization used by the harness: fully eta-expanded and
// beta-normal.
inline bool is_long_nf(const TmPtr& t);

inline bool is_neutral_spine(const TmPtr& t) {
  switch (t->kind()) {
    case Tm::Kind::Var: return true;
    case Tm::Kind::App: return is_neutral_spine(t->fn()) && is_long_nf(t->arg());
    case Tm::Kind::Abs: return false;
  }
  return false;
}

inline bool is_long_nf(const TmPtr& t) {
  if (t->ty()->is_arrow()) return t->kind() == Tm::Kind::Abs && is_long_nf(t->body());
  return is_neutral_spine(t);
}

// ---------------------------------------------------------------------------
// Law suites

struct Bounds {
  std::size_t ty_depth = 2;        // types in enumerated contexts
  std::size_t ctxt_len = 2;        // context length
  std::size_t tm_depth = 3;        // terms quantified over singly
  std::size_t subst_tm_depth = 2;  // entries of enumerated substitutions
  std::size_t assoc_ty_depth = 1;  // contexts where several substitutions multiply
  std::size_t assoc_tm_depth = 1;  // entries in those substitution tuples
  std::size_t fuel = 8;            // conversion oracle rounds
};

// Test hooks: the law suites check whatever operations they are handed, so a
// deliberately broken operation demonstrates that violations are caught.
struct ActionHooks {
  std::function<TmPtr(const TmPtr&, const Rnm&)> rename_fn;
  std::function<Rnm(const Rnm&, const Rnm&)> rnm_comp_fn;
  std::function<TmPtr(const TmPtr&, const Subst&)> subst_fn;
  std::function<Subst(const Subst&, const Subst&)> sub_comp_fn;
};

namespace detail {

inline nlohmann::json rnm_item(const Rnm& r) {
  nlohmann::json depths = nlohmann::json::array();
  for (const auto& i : r.entries()) depths.push_back(i.depth());
  return nlohmann::json{{"entries", depths},
                        {"src", ctxt_to_json(r.src())},
                        {"tgt", ctxt_to_json(r.tgt())}};
}

struct CtxtTable {
  std::vector<Ctxt> ctxts;
  // morphisms[src][tgt]
  std::vector<std::vector<std::vector<Rnm>>> rnms;
  std::vector<std::vector<std::vector<Subst>>> substs;
};

inline CtxtTable rnm_table(std::size_t maxlen, std::size_t ty_depth) {
  CtxtTable t;
  t.ctxts = enum_ctxts(maxlen, ty_depth);
  t.rnms.resize(t.ctxts.size());
  for (std::size_t i = 0; i < t.ctxts.size(); ++i) {
    t.rnms[i].resize(t.ctxts.size());
    for (std::size_t j = 0; j < t.ctxts.size(); ++j)
      t.rnms[i][j] = enum_rnms(t.ctxts[i], t.ctxts[j]);
  }
  return t;
}

inline CtxtTable subst_table(std::size_t maxlen, std::size_t ty_depth, std::size_t tm_depth,
                             TermEnum& en) {
  CtxtTable t;
  t.ctxts = enum_ctxts(maxlen, ty_depth);
  t.substs.resize(t.ctxts.size());
  for (std::size_t i = 0; i < t.ctxts.size(); ++i) {
    t.substs[i].resize(t.ctxts.size());
    for (std::size_t j = 0; j < t.ctxts.size(); ++j)
      t.substs[i][j] = en.substs(t.ctxts[i], t.ctxts[j], tm_depth);
  }
  return t;
}

}  // namespace detail

inline LawReport laws_rnm_category(const Bounds& b = {}) {
  LawReport rep;
  rep.suite = "rnm_category";
  detail::CtxtTable t = detail::rnm_table(b.ctxt_len, b.ty_depth);
  std::size_t n = t.ctxts.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (const Rnm& r : t.rnms[i][j]) {
        ++rep.cases;
        if (!rnm_eq(rnm_comp(rnm_id(t.ctxts[j]), r), r))
          rep.failures.push_back({"left identity fails", {detail::rnm_item(r)}});
        if (!rnm_eq(rnm_comp(r, rnm_id(t.ctxts[i])), r))
          rep.failures.push_back({"right identity fails", {detail::rnm_item(r)}});
      }
  for (std::size_t g = 0; g < n; ++g)
    for (std::size_t d = 0; d < n; ++d) {
      if (t.rnms[g][d].empty()) continue;
      for (std::size_t h = 0; h < n; ++h) {
        if (t.rnms[d][h].empty()) continue;
        for (std::size_t x = 0; x < n; ++x) {
          if (t.rnms[h][x].empty()) continue;
          for (const Rnm& c : t.rnms[g][d])
            for (const Rnm& bm : t.rnms[d][h])
              for (const Rnm& a : t.rnms[h][x]) {
                ++rep.cases;
                if (!rnm_eq(rnm_comp(rnm_comp(a, bm), c), rnm_comp(a, rnm_comp(bm, c))))
                  rep.failures.push_back({"associativity fails",
                                          {detail::rnm_item(a), detail::rnm_item(bm),
                                           detail::rnm_item(c)}});
              }
        }
      }
    }
  return rep;
}

inline LawReport laws_subst_category(const Bounds& b = {}) {
  LawReport rep;
  rep.suite = "subst_category";
  TermEnum en;
  {
    // Identity laws at the wider bounds.
    detail::CtxtTable t = detail::subst_table(b.ctxt_len, b.ty_depth, b.subst_tm_depth, en);
    std::size_t n = t.ctxts.size();
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        for (const Subst& s : t.substs[i][j]) {
          ++rep.cases;
          if (!subst_eq(sub_comp(sub_id(t.ctxts[j]), s), s))
            rep.failures.push_back({"left identity fails", {subst_to_json(s)}});
          if (!subst_eq(sub_comp(s, sub_id(t.ctxts[i])), s))
            rep.failures.push_back({"right identity fails", {subst_to_json(s)}});
        }
  }
  {
    // Associativity over triples at the narrower bounds.
    detail::CtxtTable t = detail::subst_table(b.ctxt_len, b.assoc_ty_depth, b.assoc_tm_depth, en);
    std::size_t n = t.ctxts.size();
    for (std::size_t g = 0; g < n; ++g)
      for (std::size_t d = 0; d < n; ++d) {
        if (t.substs[g][d].empty()) continue;
        for (std::size_t h = 0; h < n; ++h) {
          if (t.substs[d][h].empty()) continue;
          for (std::size_t x = 0; x < n; ++x) {
            if (t.substs[h][x].empty()) continue;
            for (const Subst& c : t.substs[g][d])
              for (const Subst& bm : t.substs[d][h])
                for (const Subst& a : t.substs[h][x]) {
                  ++rep.cases;
                  if (!subst_eq(sub_comp(sub_comp(a, bm), c), sub_comp(a, sub_comp(bm, c))))
                    rep.failures.push_back(
                        {"associativity fails",
                         {subst_to_json(a), subst_to_json(bm), subst_to_json(c)}});
                }
          }
        }
      }
  }
  return rep;
}

inline LawReport laws_actions(const Bounds& b = {}, const ActionHooks& hooks = {}) {
  LawReport rep;
  rep.suite = "actions";
  auto do_rename = hooks.rename_fn ? hooks.rename_fn
                                   : [](const TmPtr& t, const Rnm& r) { return rename(t, r); };
  auto do_rnm_comp = hooks.rnm_comp_fn
                         ? hooks.rnm_comp_fn
                         : [](const Rnm& r, const Rnm& s) { return rnm_comp(r, s); };
  auto do_subst = hooks.subst_fn ? hooks.subst_fn
                                 : [](const TmPtr& t, const Subst& s) { return subst(t, s); };
  auto do_sub_comp = hooks.sub_comp_fn
                         ? hooks.sub_comp_fn
                         : [](const Subst& s, const Subst& u) { return sub_comp(s, u); };
  TermEnum en;
  std::vector<TyPtr> tys = enum_types(b.ty_depth);

  // Unit action laws at the wider bounds.
  for (const Ctxt& g : enum_ctxts(b.ctxt_len, b.ty_depth))
    for (const TyPtr& ty : tys)
      for (const TmPtr& t : en.terms(g, ty, b.tm_depth)) {
        ++rep.cases;
        if (!alpha_eq(do_rename(t, rnm_id(g)), t))
          rep.failures.push_back({"renaming by the identity changes the term", {tm_to_json(t)}});
        if (!alpha_eq(do_subst(t, sub_id(g)), t))
          rep.failures.push_back({"substituting the identity changes the term", {tm_to_json(t)}});
      }

  // Composition action laws: terms one level shallower, since each case
  // quantifies over two morphisms as well.
  {
    detail::CtxtTable rt = detail::rnm_table(b.ctxt_len, b.ty_depth);
    std::size_t n = rt.ctxts.size();
    std::size_t depth = b.tm_depth > 0 ? b.tm_depth - 1 : 0;
    for (std::size_t g = 0; g < n; ++g)
      for (std::size_t d = 0; d < n; ++d) {
        if (rt.rnms[g][d].empty()) continue;
        for (std::size_t h = 0; h < n; ++h) {
          if (rt.rnms[d][h].empty()) continue;
          for (const TyPtr& ty : tys)
            for (const TmPtr& t : en.terms(rt.ctxts[h], ty, depth))
              for (const Rnm& r : rt.rnms[d][h])
                for (const Rnm& phi : rt.rnms[g][d]) {
                  ++rep.cases;
                  if (!alpha_eq(do_rename(t, do_rnm_comp(r, phi)),
                                do_rename(do_rename(t, r), phi)))
                    rep.failures.push_back({"renaming action does not respect composition",
                                            {tm_to_json(t), detail::rnm_item(r),
                                             detail::rnm_item(phi)}});
                }
        }
      }
  }
  {
    detail::CtxtTable st = detail::subst_table(b.ctxt_len, b.assoc_ty_depth, b.assoc_tm_depth, en);
    std::size_t n = st.ctxts.size();
    std::vector<TyPtr> small_tys = enum_types(b.assoc_ty_depth);
    for (std::size_t g = 0; g < n; ++g)
      for (std::size_t d = 0; d < n; ++d) {
        if (st.substs[g][d].empty()) continue;
        for (std::size_t h = 0; h < n; ++h) {
          if (st.substs[d][h].empty()) continue;
          for (const TyPtr& ty : small_tys)
            for (const TmPtr& t : en.terms(st.ctxts[h], ty, b.subst_tm_depth))
              for (const Subst& s : st.substs[d][h])
                for (const Subst& u : st.substs[g][d]) {
                  ++rep.cases;
                  if (!alpha_eq(do_subst(t, do_sub_comp(s, u)), do_subst(do_subst(t, s), u)))
                    rep.failures.push_back({"substitution action does not respect composition",
                                            {tm_to_json(t), subst_to_json(s), subst_to_json(u)}});
                }
        }
      }
  }

  // Lifting of renamings and the mixed compositions the engines rely on.
  {
    detail::CtxtTable rt = detail::rnm_table(b.ctxt_len, b.assoc_ty_depth);
    std::size_t n = rt.ctxts.size();
    for (std::size_t g = 0; g < n; ++g) {
      ++rep.cases;
      if (!subst_eq(lift_rnm(rnm_id(rt.ctxts[g])), sub_id(rt.ctxts[g])))
        rep.failures.push_back({"lifting the identity renaming is not the identity substitution",
                                {ctxt_to_json(rt.ctxts[g])}});
    }
    for (std::size_t g = 0; g < n; ++g)
      for (std::size_t d = 0; d < n; ++d) {
        if (rt.rnms[g][d].empty()) continue;
        // lift respects composition
        for (std::size_t h = 0; h < n; ++h) {
          if (rt.rnms[d][h].empty()) continue;
          for (const Rnm& r : rt.rnms[d][h])
            for (const Rnm& s : rt.rnms[g][d]) {
              ++rep.cases;
              if (!subst_eq(lift_rnm(rnm_comp(r, s)), sub_comp(lift_rnm(r), lift_rnm(s))))
                rep.failures.push_back({"lifting does not respect composition",
                                        {detail::rnm_item(r), detail::rnm_item(s)}});
            }
        }
        // lifted action agrees with renaming
        std::vector<TyPtr> small_tys = enum_types(b.assoc_ty_depth);
        for (const TyPtr& ty : small_tys)
          for (const TmPtr& t : en.terms(rt.ctxts[d], ty, b.subst_tm_depth))
            for (const Rnm& r : rt.rnms[g][d]) {
              ++rep.cases;
              if (!alpha_eq(subst(t, lift_rnm(r)), rename(t, r)))
                rep.failures.push_back({"lifted renaming acts differently from the renaming",
                                        {tm_to_json(t), detail::rnm_item(r)}});
            }
      }
  }
  {
    TermEnum en2;
    detail::CtxtTable st = detail::subst_table(b.ctxt_len, b.assoc_ty_depth, b.subst_tm_depth, en2);
    detail::CtxtTable rt = detail::rnm_table(b.ctxt_len, b.assoc_ty_depth);
    std::size_t n = st.ctxts.size();
    for (std::size_t g = 0; g < n; ++g)
      for (std::size_t d = 0; d < n; ++d)
        for (const Subst& s : st.substs[g][d]) {
          ++rep.cases;
          if (!subst_eq(hcomp_sr(s, rnm_id(st.ctxts[g])), s))
            rep.failures.push_back({"hcomp_sr with the identity is not neutral", {subst_to_json(s)}});
          if (!subst_eq(hcomp_rs(rnm_id(st.ctxts[d]), s), s))
            rep.failures.push_back({"hcomp_rs with the identity is not neutral", {subst_to_json(s)}});
        }
    for (std::size_t g = 0; g < n; ++g)
      for (std::size_t d = 0; d < n; ++d) {
        if (rt.rnms[g][d].empty()) continue;
        for (std::size_t h = 0; h < n; ++h) {
          for (const Subst& s : st.substs[d][h])
            for (const Rnm& r : rt.rnms[g][d]) {
              ++rep.cases;
              if (!subst_eq(hcomp_sr(s, r), sub_comp(s, lift_rnm(r))))
                rep.failures.push_back({"hcomp_sr disagrees with lifted composition",
                                        {subst_to_json(s), detail::rnm_item(r)}});
            }
        }
        for (std::size_t h = 0; h < n; ++h) {
          if (st.substs[h][g].empty()) continue;
          for (const Subst& s : st.substs[h][g])
            for (const Rnm& r : rt.rnms[g][d]) {
              ++rep.cases;
              if (!subst_eq(hcomp_rs(r, s), sub_comp(lift_rnm(r), s)))
                rep.failures.push_back({"hcomp_rs disagrees with lifted composition",
                                        {detail::rnm_item(r), subst_to_json(s)}});
            }
        }
      }
    // Weakening as a mixed composition, and the cancellation laws used when
    // assembling beta certificates.
    std::vector<TyPtr> small_tys = enum_types(b.assoc_ty_depth);
    for (std::size_t g = 0; g < n; ++g)
      for (std::size_t d = 0; d < n; ++d)
        for (const Subst& s : st.substs[g][d])
          for (const TyPtr& ty : small_tys) {
            ++rep.cases;
            if (!subst_eq(sub_weaken(s, ty),
                          hcomp_sr(s, rnm_weaken(rnm_id(st.ctxts[g]), ty))))
              rep.failures.push_back({"weakening disagrees with mixed composition",
                                      {subst_to_json(s), ty_to_json(ty)}});
          }
    for (std::size_t g = 0; g < n; ++g)
      for (std::size_t d = 0; d < n; ++d)
        for (const Subst& s : st.substs[g][d])
          for (const TyPtr& ty : small_tys)
            for (const TmPtr& t : en2.terms(st.ctxts[d], ty, b.subst_tm_depth))
              for (const TmPtr& u : en2.terms(st.ctxts[g], ty, 1)) {
                ++rep.cases;
                // shift-then-extend cancels back to the original action
                if (!alpha_eq(subst(shift(t, u->ty()), sub_snoc(s, u)), subst(t, s)))
                  rep.failures.push_back({"extended substitution does not cancel a shift",
                                          {tm_to_json(t), subst_to_json(s), tm_to_json(u)}});
              }
    // Beta commutes with substitution.
    for (std::size_t g = 0; g < n; ++g)
      for (std::size_t d = 0; d < n; ++d)
        for (const Subst& s : st.substs[g][d])
          for (const TyPtr& dom : small_tys)
            for (const TyPtr& cod : small_tys)
              for (const TmPtr& body :
                   en2.terms(st.ctxts[d].snoc(dom), cod, b.assoc_tm_depth))
                for (const TmPtr& arg : en2.terms(st.ctxts[d], dom, b.assoc_tm_depth)) {
                  ++rep.cases;
                  TmPtr lhs = subst(beta_subst(body, arg), s);
                  TmPtr rhs = beta_subst(subst(body, sub_lift(s, dom)), subst(arg, s));
                  if (!alpha_eq(lhs, rhs))
                    rep.failures.push_back({"beta substitution does not commute with substitution",
                                            {tm_to_json(body), tm_to_json(arg), subst_to_json(s)}});
                }
  }
  rep.notes.push_back(
      "unchecked optional mixed-composition associativity laws: "
      "hcomp_sr(hcomp_sr(s,r),r') = hcomp_sr(s, rnm_comp(r,r')); "
      "hcomp_rs(rnm_comp(r,r'), s) = hcomp_rs(r, hcomp_rs(r', s)); "
      "hcomp_sr(hcomp_rs(r,s), r') = hcomp_rs(r, hcomp_sr(s,r')); "
      "only the identities exercised by the normalization engines are asserted above");
  return rep;
}

inline LawReport laws_cartesian(const Bounds& b = {}) {
  LawReport rep;
  rep.suite = "cartesian";
  TermEnum en;
  std::vector<Ctxt> cs = enum_ctxts(b.ctxt_len, b.assoc_ty_depth);
  // Terminal object: exactly one morphism into the empty context.
  for (const Ctxt& g : cs) {
    ++rep.cases;
    if (enum_rnms(g, Ctxt()).size() != 1)
      rep.failures.push_back({"empty context is not renaming-terminal", {ctxt_to_json(g)}});
    ++rep.cases;
    if (en.substs(g, Ctxt(), b.assoc_tm_depth).size() != 1)
      rep.failures.push_back({"empty context is not substitution-terminal", {ctxt_to_json(g)}});
  }
  // Concatenation units.
  for (const Ctxt& g : cs) {
    ++rep.cases;
    if (!ctxt_eq(ctxt_concat(g, Ctxt()), g) || !ctxt_eq(ctxt_concat(Ctxt(), g), g))
      rep.failures.push_back({"concatenation unit fails", {ctxt_to_json(g)}});
  }
  for (const Ctxt& g : cs)
    for (const Ctxt& t1 : cs)
      for (const Ctxt& t2 : cs) {
        // Renaming product laws.
        std::vector<Rnm> r1s = enum_rnms(g, t1);
        std::vector<Rnm> r2s = enum_rnms(g, t2);
        for (const Rnm& r1 : r1s)
          for (const Rnm& r2 : r2s) {
            ++rep.cases;
            Rnm paired = rnm_pair(r1, r2);
            if (!rnm_eq(rnm_comp(proj1(t1, t2), paired), r1) ||
                !rnm_eq(rnm_comp(proj2(t1, t2), paired), r2))
              rep.failures.push_back(
                  {"renaming projections do not recover the pair",
                   {detail::rnm_item(r1), detail::rnm_item(r2)}});
          }
        for (const Rnm& r : enum_rnms(g, ctxt_concat(t1, t2))) {
          ++rep.cases;
          if (!rnm_eq(rnm_pair(rnm_comp(proj1(t1, t2), r), rnm_comp(proj2(t1, t2), r)), r))
            rep.failures.push_back(
                {"renaming pairing of projections is not the identity", {detail::rnm_item(r)}});
        }
        // Substitution product laws, exact and through conversion.
        std::vector<Subst> s1s = en.substs(g, t1, b.assoc_tm_depth);
        std::vector<Subst> s2s = en.substs(g, t2, b.assoc_tm_depth);
        for (const Subst& s1 : s1s)
          for (const Subst& s2 : s2s) {
            ++rep.cases;
            Subst paired = pair(s1, s2);
            Subst back1 = hcomp_rs(proj1(t1, t2), paired);
            Subst back2 = hcomp_rs(proj2(t1, t2), paired);
            if (!subst_eq(back1, s1) || !subst_eq(back2, s2)) {
              rep.failures.push_back({"substitution projections do not recover the pair",
                                      {subst_to_json(s1), subst_to_json(s2)}});
              continue;
            }
            bool conv_ok = true;
            for (std::size_t k = 0; k < back1.entries().size() && conv_ok; ++k)
              conv_ok = glue::decide_conv(back1.entries()[k], s1.entries()[k]);
            ++rep.cases;
            if (!conv_ok)
              rep.failures.push_back({"projection law fails even up to conversion",
                                      {subst_to_json(s1), subst_to_json(s2)}});
          }
        for (const Subst& s : en.substs(g, ctxt_concat(t1, t2), b.assoc_tm_depth)) {
          ++rep.cases;
          if (!subst_eq(pair(hcomp_rs(proj1(t1, t2), s), hcomp_rs(proj2(t1, t2), s)), s))
            rep.failures.push_back(
                {"substitution pairing of projections is not the identity", {subst_to_json(s)}});
        }
      }
  return rep;
}

inline LawReport laws_ccc(const Bounds& b = {}) {
  LawReport rep;
  rep.suite = "ccc";
  TermEnum en;
  // A seeded tour of exponent shapes: singleton contexts plus two two-type
  // contexts so currying recurses through several layers.
  std::vector<Ctxt> cs = enum_ctxts(1, b.assoc_ty_depth);
  TyPtr io = Ty::iota();
  cs.push_back(Ctxt().snoc(io).snoc(io));
  cs.push_back(Ctxt().snoc(Ty::arrow(io, io)).snoc(io));
  for (const Ctxt& g : cs)
    for (const Ctxt& d : cs)
      for (const Ctxt& th : cs) {
        Ctxt gd = ctxt_concat(g, d);
        for (const Subst& s : en.substs(gd, th, b.assoc_tm_depth)) {
          ++rep.cases;
          Subst curried = curry(s, d);
          if (!ctxt_eq(curried.tgt(), exp_ctxt(th, d)) || !ctxt_eq(curried.src(), g)) {
            rep.failures.push_back({"curry lands in the wrong hom", {subst_to_json(s)}});
            continue;
          }
          Subst back = uncurry(curried, th, d);
          SubstDeriv cert = curry_beta_cert(s, d);
          SubstCheckResult chk = check_subst_deriv(cert);
          if (!chk.ok()) {
            rep.failures.push_back(
                {"beta round-trip certificate fails: " + chk.error().reason, {subst_to_json(s)}});
            continue;
          }
          if (!subst_eq(chk.lhs(), back) || !subst_eq(chk.rhs(), s)) {
            rep.failures.push_back({"beta round-trip certificate has wrong endpoints",
                                    {subst_to_json(s)}});
            continue;
          }
          bool conv_ok = true;
          for (std::size_t k = 0; k < s.entries().size() && conv_ok; ++k)
            conv_ok = glue::decide_conv(back.entries()[k], s.entries()[k]);
          if (!conv_ok)
            rep.failures.push_back({"uncurry . curry is not the identity up to conversion",
                                    {subst_to_json(s), subst_to_json(back)}});
        }
        for (const Subst& u : en.substs(g, exp_ctxt(th, d), b.assoc_tm_depth)) {
          ++rep.cases;
          Subst down = uncurry(u, th, d);
          Subst back = curry(down, d);
          SubstDeriv cert = curry_eta_cert(u, th, d);
          SubstCheckResult chk = check_subst_deriv(cert);
          if (!chk.ok()) {
            rep.failures.push_back(
                {"eta round-trip certificate fails: " + chk.error().reason, {subst_to_json(u)}});
            continue;
          }
          if (!subst_eq(chk.lhs(), back) || !subst_eq(chk.rhs(), u)) {
            rep.failures.push_back({"eta round-trip certificate has wrong endpoints",
                                    {subst_to_json(u)}});
            continue;
          }
          bool conv_ok = true;
          for (std::size_t k = 0; k < u.entries().size() && conv_ok; ++k)
            conv_ok = glue::decide_conv(back.entries()[k], u.entries()[k]);
          if (!conv_ok)
            rep.failures.push_back({"curry . uncurry is not the identity up to conversion",
                                    {subst_to_json(u), subst_to_json(back)}});
        }
      }
  return rep;
}

inline LawReport laws_qu_naturality(const Bounds& b = {}) {
  LawReport rep;
  rep.suite = "qu_naturality";
  TermEnum en;
  detail::CtxtTable rt = detail::rnm_table(b.ctxt_len, b.assoc_ty_depth);
  std::vector<TyPtr> tys = enum_types(b.assoc_ty_depth);
  std::size_t n = rt.ctxts.size();
  std::size_t depth = b.tm_depth > 0 ? b.tm_depth - 1 : 0;
  for (std::size_t g = 0; g < n; ++g)
    for (std::size_t d = 0; d < n; ++d) {
      if (rt.rnms[g][d].empty()) continue;
      for (const TyPtr& ty : tys)
        for (const TmPtr& t : en.terms(rt.ctxts[d], ty, depth)) {
          TmPtr nf = nbe::normalize(t);
          for (const Rnm& r : rt.rnms[g][d]) {
            ++rep.cases;
            if (!alpha_eq(rename(nf, r), nbe::normalize(rename(t, r))))
              rep.failures.push_back({"normalization does not commute with renaming",
                                      {tm_to_json(t), detail::rnm_item(r)}});
          }
        }
    }
  // Base-type strictness: reify and reflect are identities at the base type.
  for (const Ctxt& g : enum_ctxts(b.ctxt_len, b.ty_depth))
    for (const TmPtr& t : en.terms(g, Ty::iota(), b.tm_depth)) {
      ++rep.cases;
      if (!alpha_eq(nbe::reify(nbe::reflect(t)), t))
        rep.failures.push_back({"reify . reflect is not the identity at the base type",
                                {tm_to_json(t)}});
      glue::Reified r = glue::greify(glue::greflect(t));
      ++rep.cases;
      if (!alpha_eq(r.nf, t))
        rep.failures.push_back({"glued reify . reflect is not the identity at the base type",
                                {tm_to_json(t)}});
    }
  return rep;
}

inline std::vector<LawReport> laws_all(const Bounds& b = {}) {
  return {laws_rnm_category(b), laws_subst_category(b), laws_actions(b),
          laws_cartesian(b),    laws_ccc(b),            laws_qu_naturality(b)};
}

}  // namespace certnf
