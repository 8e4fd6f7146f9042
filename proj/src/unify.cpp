#include "lftrans/unify.hpp"

#include <optional>
#include <stdexcept>

namespace lftrans::hohh {

Term Store::new_lvar(int level, SimpleType type, std::string hint) {
  int id = static_cast<int>(infos_.size());
  infos_.push_back({level, type, hint});
  bindings_.resize(infos_.size());
  return mk_lvar(id, level, std::move(type), std::move(hint));
}

Term Store::new_eigen(int level, SimpleType type, std::string hint) {
  return mk_eigen(eigens_++, level, std::move(type), std::move(hint));
}

void Store::bind(int id, Term value) {
  auto& slot = bindings_.at(static_cast<std::size_t>(id));
  if (slot) throw std::logic_error("logic variable bound twice");
  slot = std::move(value);
  trail_.push_back(id);
}

void Store::undo(const Mark& m) {
  while (trail_.size() > m.trail) {
    bindings_[static_cast<std::size_t>(trail_.back())] = nullptr;
    trail_.pop_back();
  }
  infos_.resize(m.lvars);
  bindings_.resize(m.lvars);
  eigens_ = m.eigens;
  residuals_ = m.residuals;
}

Term Store::whnf(const Term& t) const {
  Term cur = t;
  for (;;) {
    const Term& h = head_of(cur);
    if (h->is(TermTag::LVar) && static_cast<std::size_t>(h->index) < bindings_.size() && bindings_[static_cast<std::size_t>(h->index)]) {
      cur = apply_term(bindings_[static_cast<std::size_t>(h->index)], args_of(cur));
      continue;
    }
    if (h->is(TermTag::Lam) && cur->is(TermTag::App)) {
      cur = apply_term(h, cur->args);
      continue;
    }
    return cur;
  }
}

Term Store::resolve(const Term& t) const {
  Term w = whnf(t);
  switch (w->tag) {
    case TermTag::Lam:
      return mk_lam(w->type, resolve(w->body), w->name);
    case TermTag::App: {
      std::vector<Term> args;
      args.reserve(w->args.size());
      for (const auto& a : w->args) args.push_back(resolve(a));
      return mk_app(w->head, args);
    }
    default:
      return w;
  }
}

namespace {

bool atoms_within(const Term& t, int level) {
  switch (t->tag) {
    case TermTag::Eigen:
    case TermTag::LVar:
      return t->level <= level;
    case TermTag::Lam:
      return atoms_within(t->body, level);
    case TermTag::App:
      if (!atoms_within(t->head, level)) return false;
      for (const auto& a : t->args)
        if (!atoms_within(a, level)) return false;
      return true;
    default:
      return true;
  }
}

}  // namespace

bool Store::level_sound() const {
  for (std::size_t i = 0; i < bindings_.size(); ++i)
    if (bindings_[i] && !atoms_within(resolve(bindings_[i]), infos_[i].level)) return false;
  return true;
}

// ---------------------------------------------------------------------------

enum class Walk { Ok, Fail, Defer };

class Unifier {
 public:
  explicit Unifier(Store& s, bool postpone) : s_(s), postpone_(postpone) {}

  bool deferred = false;

  bool unify(const Term& a0, const Term& b0) {
    Term a = s_.whnf(a0);
    Term b = s_.whnf(b0);
    if (a->is(TermTag::Lam) || b->is(TermTag::Lam)) {
      SimpleType ty = a->is(TermTag::Lam) ? a->type : b->type;
      Term ab = a->is(TermTag::Lam) ? a->body : mk_app(shift(a, 1), {mk_bvar(0)});
      Term bb = b->is(TermTag::Lam) ? b->body : mk_app(shift(b, 1), {mk_bvar(0)});
      locals_.push_back(ty);
      bool r = unify(ab, bb);
      locals_.pop_back();
      return r;
    }
    const Term& ha = head_of(a);
    const Term& hb = head_of(b);
    bool fa = ha->is(TermTag::LVar);
    bool fb = hb->is(TermTag::LVar);
    if (!fa && !fb) {
      if (!same_rigid(ha, hb)) return false;
      const auto& xa = args_of(a);
      const auto& xb = args_of(b);
      if (xa.size() != xb.size()) return false;
      for (std::size_t i = 0; i < xa.size(); ++i)
        if (!unify(xa[i], xb[i])) return false;
      return true;
    }
    if (fa && fb && ha->index == hb->index) return flex_same(a, b);
    if (fa) {
      Walk w = pattern(ha, args_of(a)) ? solve(ha, args_of(a), b) : Walk::Defer;
      if (w == Walk::Defer && fb && pattern(hb, args_of(b))) w = solve(hb, args_of(b), a);
      return finish(w, a, b);
    }
    Walk w = pattern(hb, args_of(b)) ? solve(hb, args_of(b), a) : Walk::Defer;
    return finish(w, a, b);
  }

 private:
  bool finish(Walk w, const Term& a, const Term& b) {
    if (w == Walk::Ok) return true;
    if (w == Walk::Fail) return false;
    deferred = true;
    if (postpone_) s_.residuals_.push_back({close(a), close(b)});
    return true;
  }

  Term close(const Term& t) const {
    Term c = t;
    for (std::size_t i = locals_.size(); i-- > 0;) c = mk_lam(locals_[i], c);
    return c;
  }

  static bool same_rigid(const Term& a, const Term& b) {
    if (a->tag != b->tag) return false;
    if (a->is(TermTag::Const)) return a->name == b->name;
    return a->index == b->index;
  }

  // A bound variable or eigenvariable hidden behind an eta-expansion.
  Term contract(const Term& t) const {
    Term w = s_.whnf(t);
    int m = 0;
    Term cur = w;
    while (cur->is(TermTag::Lam)) {
      cur = cur->body;
      ++m;
    }
    if (m == 0) return w;
    cur = s_.whnf(cur);
    const auto& args = args_of(cur);
    if (args.size() < static_cast<std::size_t>(m)) return w;
    std::size_t keep = args.size() - static_cast<std::size_t>(m);
    for (int k = 0; k < m; ++k) {
      Term a = contract(args[keep + static_cast<std::size_t>(k)]);
      if (!a->is(TermTag::BVar) || a->index != m - 1 - k) return w;
    }
    Term h = head_of(cur);
    if (!h->is(TermTag::BVar) && !h->is(TermTag::Eigen)) return w;
    if (keep != 0) return w;
    if (h->is(TermTag::BVar)) {
      if (h->index < m) return w;
      return mk_bvar(h->index - m);
    }
    return h;
  }

  static bool same_atom(const Term& a, const Term& b) {
    return a->tag == b->tag && a->index == b->index;
  }

  bool pattern(const Term& x, const std::vector<Term>& args) const {
    std::vector<Term> seen;
    for (const auto& a0 : args) {
      Term a = contract(a0);
      if (a->is(TermTag::Eigen)) {
        if (a->level <= x->level) return false;
      } else if (!a->is(TermTag::BVar)) {
        return false;
      }
      for (const auto& s : seen)
        if (same_atom(s, a)) return false;
      seen.push_back(a);
    }
    return true;
  }

  SimpleType type_after(SimpleType t, std::size_t n) const {
    for (std::size_t i = 0; i < n; ++i) {
      if (!t->is_arrow()) throw std::logic_error("logic variable applied to too many arguments");
      t = t->cod;
    }
    return t;
  }

  Term lambdas(const std::vector<SimpleType>& doms, std::size_t n, Term body) const {
    for (std::size_t i = n; i-- > 0;) body = mk_lam(doms[i], body);
    return body;
  }

  bool flex_same(const Term& a, const Term& b) {
    const Term& x = head_of(a);
    const auto& xa = args_of(a);
    const auto& xb = args_of(b);
    if (!pattern(x, xa) || !pattern(x, xb) || xa.size() != xb.size()) return finish(Walk::Defer, a, b);
    const LVarInfo& info = s_.info(x->index);
    auto doms = arg_types(info.type);
    std::size_t n = xa.size();
    std::vector<Term> kept;
    std::vector<SimpleType> kept_types;
    for (std::size_t i = 0; i < n; ++i) {
      if (same_atom(contract(xa[i]), contract(xb[i]))) {
        kept.push_back(mk_bvar(static_cast<int>(n - 1 - i)));
        kept_types.push_back(doms[i]);
      }
    }
    if (kept.size() == n) return true;
    Term h = s_.new_lvar(info.level, arrow_type(kept_types, type_after(info.type, n)), info.hint);
    s_.bind(x->index, lambdas(doms, n, mk_app(h, kept)));
    return true;
  }

  // Binds x so that x args = t.
  Walk solve(const Term& x, const std::vector<Term>& args, const Term& t) {
    std::vector<Term> xa;
    for (const auto& a : args) xa.push_back(contract(a));
    std::optional<Term> body;
    Walk w = walk(x, xa, t, 0, true, body);
    if (w != Walk::Ok) return w;
    const LVarInfo& info = s_.info(x->index);
    s_.bind(x->index, lambdas(arg_types(info.type), xa.size(), *body));
    return Walk::Ok;
  }

  // Position of an outer atom among x's arguments.
  static std::optional<std::size_t> position(const std::vector<Term>& xa, const Term& atom) {
    for (std::size_t i = 0; i < xa.size(); ++i)
      if (same_atom(xa[i], atom)) return i;
    return std::nullopt;
  }

  // Translates an atom (bound variable relative to depth d, or eigenvariable)
  // into the body of x's binding.
  std::optional<Term> translate_atom(const Term& x, const std::vector<Term>& xa, const Term& atom, int d) const {
    int n = static_cast<int>(xa.size());
    if (atom->is(TermTag::BVar)) {
      if (atom->index < d) return atom;
      if (auto i = position(xa, mk_bvar(atom->index - d))) return mk_bvar(d + n - 1 - static_cast<int>(*i));
      return std::nullopt;
    }
    if (atom->is(TermTag::Eigen)) {
      if (auto i = position(xa, atom)) return mk_bvar(d + n - 1 - static_cast<int>(*i));
      if (atom->level <= x->level) return atom;
      return std::nullopt;
    }
    return atom;
  }

  Walk walk(const Term& x, const std::vector<Term>& xa, const Term& t0, int d, bool rigid, std::optional<Term>& out) {
    Term t = s_.whnf(t0);
    Walk bad = rigid ? Walk::Fail : Walk::Defer;
    if (t->is(TermTag::Lam)) {
      std::optional<Term> b;
      Walk w = walk(x, xa, t->body, d + 1, rigid, b);
      if (w != Walk::Ok) return w;
      out = mk_lam(t->type, *b, t->name);
      return Walk::Ok;
    }
    const Term& h = head_of(t);
    const auto& args = args_of(t);
    if (h->is(TermTag::LVar)) {
      if (h->index == x->index) return bad;
      // The shift keeps bound variables relative to the outer context.
      if (pattern_at(h, args, d)) return walk_pattern_var(x, xa, h, args, d, rigid, out);
      std::vector<Term> na;
      for (const auto& a : args) {
        std::optional<Term> r;
        Walk w = walk(x, xa, a, d, false, r);
        if (w != Walk::Ok) return w == Walk::Fail && rigid ? Walk::Defer : w;
        na.push_back(*r);
      }
      if (h->level > x->level) return Walk::Defer;
      out = mk_app(h, na);
      return Walk::Ok;
    }
    auto nh = translate_atom(x, xa, h, d);
    if (!nh) return bad;
    std::vector<Term> na;
    for (const auto& a : args) {
      std::optional<Term> r;
      Walk w = walk(x, xa, a, d, rigid, r);
      if (w != Walk::Ok) return w;
      na.push_back(*r);
    }
    out = mk_app(*nh, na);
    return Walk::Ok;
  }

  // Pattern test for a variable met at depth d inside the term being solved.
  bool pattern_at(const Term& y, const std::vector<Term>& args, int) const { return pattern(y, args); }

  Walk walk_pattern_var(const Term& x, const std::vector<Term>& xa, const Term& y, const std::vector<Term>& args,
                        int d, bool rigid, std::optional<Term>& out) {
    std::vector<Term> ya;
    for (const auto& a : args) ya.push_back(contract(a));
    std::vector<Term> kept_args;
    std::vector<std::size_t> kept_pos;
    for (std::size_t i = 0; i < ya.size(); ++i) {
      if (auto r = translate_atom(x, xa, ya[i], d)) {
        kept_args.push_back(*r);
        kept_pos.push_back(i);
      }
    }
    if (kept_pos.size() == ya.size() && y->level <= x->level) {
      out = mk_app(y, kept_args);
      return Walk::Ok;
    }
    if (!rigid) return Walk::Defer;
    const LVarInfo& info = s_.info(y->index);
    auto doms = arg_types(info.type);
    std::size_t m = ya.size();
    std::vector<SimpleType> kept_types;
    std::vector<Term> inner;
    for (std::size_t p : kept_pos) {
      kept_types.push_back(doms[p]);
      inner.push_back(mk_bvar(static_cast<int>(m - 1 - p)));
    }
    int level = std::min(info.level, x->level);
    // raising: eigenvariables y may see but y2 cannot become extra arguments
    std::vector<Term> raised_inner, raised_args;
    std::vector<SimpleType> raised_types;
    if (info.level > level) {
      for (const auto& e : xa) {
        if (!e->is(TermTag::Eigen) || e->level > info.level || e->level <= level) continue;
        if (position(ya, e)) continue;
        raised_inner.push_back(e);
        raised_types.push_back(e->type);
        raised_args.push_back(*translate_atom(x, xa, e, d));
      }
    }
    for (std::size_t i = 0; i < raised_inner.size(); ++i) raised_inner[i] = shift(raised_inner[i], static_cast<int>(m));
    raised_inner.insert(raised_inner.end(), inner.begin(), inner.end());
    raised_args.insert(raised_args.end(), kept_args.begin(), kept_args.end());
    raised_types.insert(raised_types.end(), kept_types.begin(), kept_types.end());
    Term y2 = s_.new_lvar(level, arrow_type(raised_types, type_after(info.type, m)), info.hint);
    s_.bind(y->index, lambdas(doms, m, mk_app(y2, raised_inner)));
    out = mk_app(y2, raised_args);
    return Walk::Ok;
  }

  Store& s_;
  bool postpone_;
  std::vector<SimpleType> locals_;
};

bool Store::unify(const Term& a, const Term& b) {
  Unifier u(*this, true);
  if (!u.unify(a, b)) return false;
  return settle();
}

bool Store::settle() {
  for (;;) {
    if (residuals_.empty()) return true;
    std::size_t before = trail_.size();
    auto pending = std::move(residuals_);
    residuals_.clear();
    for (const auto& eq : pending) {
      Unifier u(*this, true);
      if (!u.unify(eq.lhs, eq.rhs)) return false;
    }
    if (trail_.size() == before) return true;
  }
}

UnifyOutcome pattern_unify(Store& store, const Term& a, const Term& b) {
  Unifier u(store, false);
  if (!u.unify(a, b)) return UnifyOutcome::Failure;
  return u.deferred ? UnifyOutcome::Residual : UnifyOutcome::Unified;
}

}  // namespace lftrans::hohh
