#include "lftrans/lf_kernel.hpp"

namespace lftrans::lf {

namespace {

Expr rebuild_binder(const Expr& binder, std::string x, Expr a, Expr b) {
  return binder->is_pi() ? pi(std::move(x), std::move(a), std::move(b))
                         : lam(std::move(x), std::move(a), std::move(b));
}

Expr subst(const Expr& e, const Bindings& s) {
  switch (e->tag()) {
    case Tag::Type:
    case Tag::Const:
      return e;
    case Tag::Var: {
      auto it = s.find(e->name());
      return it == s.end() ? e : it->second;
    }
    case Tag::App: {
      Expr f = subst(e->fun(), s);
      Expr a = subst(e->arg(), s);
      if (f == e->fun() && a == e->arg()) return e;
      return app(std::move(f), std::move(a));
    }
    case Tag::Pi:
    case Tag::Lam: {
      Expr a = subst(e->binder_type(), s);
      Bindings inner;
      for (const auto& [x, v] : s)
        if (x != e->name() && occurs_free(x, e->body())) inner.emplace(x, v);
      if (inner.empty()) {
        if (a == e->binder_type()) return e;
        return rebuild_binder(e, e->name(), a, e->body());
      }
      std::set<std::string> range_fv;
      for (const auto& [x, v] : inner) {
        auto fv = free_vars(v);
        range_fv.insert(fv.begin(), fv.end());
      }
      std::string x = e->name();
      if (range_fv.count(x)) {
        auto avoid = range_fv;
        auto body_fv = free_vars(e->body());
        avoid.insert(body_fv.begin(), body_fv.end());
        for (const auto& [k, v] : inner) avoid.insert(k);
        x = fresh_name(e->name(), avoid);
        inner.emplace(e->name(), var(x));
      }
      return rebuild_binder(e, x, a, subst(e->body(), inner));
    }
  }
  return e;
}

Expr normalize(const Expr& e, std::uint64_t& fuel) {
  switch (e->tag()) {
    case Tag::Type:
    case Tag::Const:
    case Tag::Var:
      return e;
    case Tag::App: {
      Expr f = normalize(e->fun(), fuel);
      Expr a = normalize(e->arg(), fuel);
      if (f->is_lam()) {
        if (fuel == 0) throw NormalizationLimit();
        --fuel;
        return normalize(substitute(f->body(), f->name(), a), fuel);
      }
      if (f == e->fun() && a == e->arg()) return e;
      return app(std::move(f), std::move(a));
    }
    case Tag::Pi:
    case Tag::Lam: {
      Expr a = normalize(e->binder_type(), fuel);
      Expr b = normalize(e->body(), fuel);
      if (a == e->binder_type() && b == e->body()) return e;
      return rebuild_binder(e, e->name(), std::move(a), std::move(b));
    }
  }
  return e;
}

}  // namespace

Expr substitute(const Expr& e, const Bindings& bindings) {
  if (bindings.empty()) return e;
  return subst(e, bindings);
}

Expr substitute(const Expr& e, const std::string& x, const Expr& value) {
  return subst(e, Bindings{{x, value}});
}

Expr beta_normalize(const Expr& e, std::uint64_t fuel) { return normalize(e, fuel); }

bool is_beta_normal(const Expr& e) {
  switch (e->tag()) {
    case Tag::App:
      return !e->fun()->is_lam() && is_beta_normal(e->fun()) && is_beta_normal(e->arg());
    case Tag::Pi:
    case Tag::Lam:
      return is_beta_normal(e->binder_type()) && is_beta_normal(e->body());
    default:
      return true;
  }
}

bool is_kind(const Expr& e) {
  Expr cur = e;
  while (cur->is_pi()) cur = cur->body();
  return cur->is_type();
}

namespace {

// Pushes a binding for the binder of `binder`, renaming it if its name is
// already in the context. Returns the (possibly renamed) body and name.
struct Opened {
  std::string name;
  Expr body;
};

Opened open_binder(Context& ctx, const std::string& x, const Expr& body, const Expr& type) {
  if (!ctx.contains(x)) {
    ctx.push(x, type);
    return {x, body};
  }
  auto avoid = ctx.names();
  auto fv = free_vars(body);
  avoid.insert(fv.begin(), fv.end());
  std::string y = fresh_name(x, avoid);
  ctx.push(y, type);
  return {y, substitute(body, x, var(y))};
}

struct ContextGuard {
  Context& ctx;
  ~ContextGuard() { ctx.pop(); }
};

const Expr& lookup_classifier(const Signature& sig, const Context& ctx, const Expr& head,
                              const char* rule) {
  if (head->is_var()) {
    const Expr* t = ctx.lookup(head->name());
    if (t == nullptr) throw TypeError(rule, "unbound variable `" + head->name() + "`");
    return *t;
  }
  if (head->is_const()) {
    const Decl* d = sig.find(head->name());
    if (d == nullptr) throw TypeError(rule, "unknown constant `" + head->name() + "`");
    return d->classifier;
  }
  throw TypeError(rule, "`" + to_string(head) + "` cannot be applied");
}

void check_against(const Signature& sig, Context& ctx, const Object& m, const Family& expected,
                   const char* rule) {
  Expr actual = synth_object(sig, ctx, m);
  if (!types_equal(sig, ctx, actual, expected)) {
    throw TypeError(rule, "type mismatch: `" + to_string(m) + "` has type `" + to_string(actual) +
                              "`, expected `" + to_string(expected) + "`");
  }
}

void expect_type(const Signature& sig, Context& ctx, const Family& a, const char* rule) {
  Expr k = synth_family(sig, ctx, a);
  if (!k->is_type()) {
    bool partial = a->is_app() || a->is_const();
    throw TypeError(partial ? "app-fam" : rule, "kind mismatch: `" + to_string(a) + "` has kind `" +
                                                    to_string(k) + "`, expected `type`" +
                                                    (partial ? " (type family not fully applied)" : ""));
  }
}

}  // namespace

Expr synth_family(const Signature& sig, Context& ctx, const Family& a) {
  switch (a->tag()) {
    case Tag::Const: {
      const Decl* d = sig.find(a->name());
      if (d == nullptr) throw TypeError("var-fam", "unknown constant `" + a->name() + "`");
      if (!is_kind(d->classifier))
        throw TypeError("var-fam", "`" + a->name() + "` is an object constant, expected a type family");
      return d->classifier;
    }
    case Tag::Var:
      throw TypeError("var-fam", "variable `" + a->name() + "` used as a type family");
    case Tag::Pi: {
      expect_type(sig, ctx, a->binder_type(), "pi-fam");
      Expr dom = beta_normalize(a->binder_type());
      auto opened = open_binder(ctx, a->name(), a->body(), dom);
      ContextGuard guard{ctx};
      expect_type(sig, ctx, opened.body, "pi-fam");
      return type_kind();
    }
    case Tag::App: {
      Expr k = synth_family(sig, ctx, a->fun());
      if (!k->is_pi())
        throw TypeError("app-fam", "kind mismatch: `" + to_string(a->fun()) + "` has kind `" + to_string(k) +
                                       "` and cannot be applied to `" + to_string(a->arg()) + "`");
      check_against(sig, ctx, a->arg(), k->binder_type(), "app-fam");
      return beta_normalize(substitute(k->body(), k->name(), a->arg()));
    }
    case Tag::Type:
    case Tag::Lam:
      break;
  }
  throw TypeError("var-fam", "expected a type family, found `" + to_string(a) + "`");
}

Expr synth_object(const Signature& sig, Context& ctx, const Object& m) {
  switch (m->tag()) {
    case Tag::Const: {
      const Decl* d = sig.find(m->name());
      if (d == nullptr) throw TypeError("var-obj", "unknown constant `" + m->name() + "`");
      if (is_kind(d->classifier))
        throw TypeError("var-obj", "`" + m->name() + "` is a type constant, expected an object");
      return d->classifier;
    }
    case Tag::Var: {
      const Expr* t = ctx.lookup(m->name());
      if (t == nullptr) throw TypeError("var-obj", "unbound variable `" + m->name() + "`");
      return *t;
    }
    case Tag::Lam: {
      expect_type(sig, ctx, m->binder_type(), "abs-obj");
      Expr dom = beta_normalize(m->binder_type());
      auto opened = open_binder(ctx, m->name(), m->body(), dom);
      ContextGuard guard{ctx};
      Expr b = synth_object(sig, ctx, opened.body);
      return pi(opened.name, dom, b);
    }
    case Tag::App: {
      Expr f = synth_object(sig, ctx, m->fun());
      if (!f->is_pi())
        throw TypeError("app-obj", "`" + to_string(m->fun()) + "` has type `" + to_string(f) +
                                       "` and cannot be applied to `" + to_string(m->arg()) + "`");
      check_object_against(sig, ctx, m->arg(), f->binder_type());
      return beta_normalize(substitute(f->body(), f->name(), m->arg()));
    }
    case Tag::Type:
    case Tag::Pi:
      break;
  }
  throw TypeError("var-obj", "expected an object, found `" + to_string(m) + "`");
}

void check_kind(const Signature& sig, Context& ctx, const Kind& k) {
  if (k->is_type()) return;
  if (!k->is_pi()) throw TypeError("pi-kind", "expected a kind, found `" + to_string(k) + "`");
  expect_type(sig, ctx, k->binder_type(), "pi-kind");
  auto opened = open_binder(ctx, k->name(), k->body(), beta_normalize(k->binder_type()));
  ContextGuard guard{ctx};
  check_kind(sig, ctx, opened.body);
}

void check_object_against(const Signature& sig, Context& ctx, const Object& m, const Family& expected) {
  check_against(sig, ctx, m, expected, "app-obj");
}

namespace {

JudgmentResult failure(const TypeError& e) {
  JudgmentResult r;
  r.ok = false;
  r.rule = e.rule();
  r.message = e.what();
  return r;
}

JudgmentResult success(Expr classifier) {
  JudgmentResult r;
  r.ok = true;
  r.classifier = std::move(classifier);
  return r;
}

}  // namespace

JudgmentResult check_context(const Signature& sig, const Context& ctx) {
  Context prefix;
  try {
    for (const auto& [x, a] : ctx.bindings()) {
      if (prefix.contains(x)) throw TypeError("type-ctx", "variable `" + x + "` bound twice in context");
      expect_type(sig, prefix, a, "type-ctx");
      prefix.push(x, beta_normalize(a));
    }
  } catch (const TypeError& e) {
    return failure(e);
  }
  return success(nullptr);
}

JudgmentResult check_signature(const Signature& sig) {
  Signature checked;
  for (const auto& d : sig.decls()) {
    bool kind_decl = is_kind(d.classifier);
    JudgmentResult r;
    try {
      if (checked.contains(d.name))
        throw TypeError(kind_decl ? "kind-sig" : "type-sig", "duplicate declaration `" + d.name + "`");
      Context ctx;
      if (kind_decl)
        check_kind(checked, ctx, d.classifier);
      else
        expect_type(checked, ctx, d.classifier, "type-sig");
      checked.add(Decl{d.name, beta_normalize(d.classifier), d.pos});
      continue;
    } catch (const TypeError& e) {
      r = failure(e);
    } catch (const NormalizationLimit& e) {
      r.rule = kind_decl ? "kind-sig" : "type-sig";
      r.message = e.what();
    }
    r.decl = d.name;
    r.pos = d.pos;
    return r;
  }
  return success(nullptr);
}

Signature checked_signature(const Signature& sig) {
  auto r = check_signature(sig);
  if (!r) {
    throw TypeError(r.rule, std::to_string(r.pos.line) + ":" + std::to_string(r.pos.column) + ": in `" +
                                r.decl + "`: " + r.message);
  }
  Signature out;
  for (const auto& d : sig.decls()) out.add(Decl{d.name, beta_normalize(d.classifier), d.pos});
  return out;
}

JudgmentResult check_type(const Signature& sig, const Context& ctx, const Family& a) {
  if (auto c = check_context(sig, ctx); !c) return c;
  Context local = ctx;
  try {
    return success(synth_family(sig, local, a));
  } catch (const TypeError& e) {
    return failure(e);
  }
}

JudgmentResult check_object(const Signature& sig, const Context& ctx, const Object& m) {
  if (auto c = check_context(sig, ctx); !c) return c;
  Context local = ctx;
  try {
    return success(synth_object(sig, local, m));
  } catch (const TypeError& e) {
    return failure(e);
  }
}

// ---------------------------------------------------------------------------
// Canonical forms

Expr canonical_object(const Signature& sig, const Context& ctx_in, const Object& m, const Family& type) {
  Context ctx = ctx_in;
  if (type->is_pi()) {
    const Expr& dom = type->binder_type();
    if (m->is_lam()) {
      auto opened = open_binder(ctx, m->name(), m->body(), m->binder_type());
      Expr cod = substitute(type->body(), type->name(), var(opened.name));
      Expr body = canonical_object(sig, ctx, opened.body, cod);
      ctx.pop();
      return lam(opened.name, canonical_family(sig, ctx, m->binder_type()), body);
    }
    auto avoid = ctx.names();
    auto fv = free_vars(m);
    avoid.insert(fv.begin(), fv.end());
    auto fv_type = free_vars(type);
    avoid.insert(fv_type.begin(), fv_type.end());
    std::string y = fresh_name(type->name(), avoid);
    ctx.push(y, dom);
    Expr cod = substitute(type->body(), type->name(), var(y));
    Expr body = canonical_object(sig, ctx, app(m, var(y)), cod);
    ctx.pop();
    return lam(y, canonical_family(sig, ctx, dom), body);
  }
  auto sp = spine(m);
  if (!sp.head->is_const() && !sp.head->is_var())
    throw TypeError("app-obj", "cannot canonicalize `" + to_string(m) + "` at base type");
  Expr h = lookup_classifier(sig, ctx, sp.head, "var-obj");
  std::vector<Expr> args;
  args.reserve(sp.args.size());
  for (const auto& a : sp.args) {
    if (!h->is_pi()) throw TypeError("app-obj", "too many arguments in `" + to_string(m) + "`");
    args.push_back(canonical_object(sig, ctx, a, h->binder_type()));
    h = beta_normalize(substitute(h->body(), h->name(), a));
  }
  return apply_args(sp.head, args);
}

Expr canonical_family(const Signature& sig, const Context& ctx_in, const Family& a) {
  Context ctx = ctx_in;
  if (a->is_pi()) {
    Expr dom = canonical_family(sig, ctx, a->binder_type());
    auto opened = open_binder(ctx, a->name(), a->body(), a->binder_type());
    return pi(opened.name, dom, canonical_family(sig, ctx, opened.body));
  }
  auto sp = spine(a);
  if (!sp.head->is_const()) throw TypeError("var-fam", "`" + to_string(a) + "` is not a base type");
  Expr k = lookup_classifier(sig, ctx, sp.head, "var-fam");
  std::vector<Expr> args;
  args.reserve(sp.args.size());
  for (const auto& m : sp.args) {
    if (!k->is_pi()) throw TypeError("app-fam", "too many arguments in `" + to_string(a) + "`");
    args.push_back(canonical_object(sig, ctx, m, k->binder_type()));
    k = beta_normalize(substitute(k->body(), k->name(), m));
  }
  return apply_args(sp.head, args);
}

Expr canonical_kind(const Signature& sig, const Context& ctx_in, const Kind& k) {
  if (k->is_type()) return k;
  Context ctx = ctx_in;
  Expr dom = canonical_family(sig, ctx, k->binder_type());
  auto opened = open_binder(ctx, k->name(), k->body(), k->binder_type());
  return pi(opened.name, dom, canonical_kind(sig, ctx, opened.body));
}

Expr canonicalize(const Signature& sig, const Context& ctx, const Expr& e, const Expr& classifier) {
  if (is_kind(e)) return canonical_kind(sig, ctx, e);
  if (classifier && is_kind(classifier)) return canonical_family(sig, ctx, e);
  return canonical_object(sig, ctx, e, classifier);
}

bool types_equal(const Signature& sig, const Context& ctx, const Family& a, const Family& b) {
  if (alpha_equal(a, b)) return true;
  return alpha_equal(canonical_family(sig, ctx, beta_normalize(a)), canonical_family(sig, ctx, beta_normalize(b)));
}

bool kinds_equal(const Signature& sig, const Context& ctx, const Kind& a, const Kind& b) {
  if (alpha_equal(a, b)) return true;
  return alpha_equal(canonical_kind(sig, ctx, beta_normalize(a)), canonical_kind(sig, ctx, beta_normalize(b)));
}

bool objects_equal(const Signature& sig, const Context& ctx, const Object& a, const Object& b,
                   const Family& type) {
  if (alpha_equal(a, b)) return true;
  Expr t = beta_normalize(type);
  return alpha_equal(canonical_object(sig, ctx, beta_normalize(a), t),
                     canonical_object(sig, ctx, beta_normalize(b), t));
}

}  // namespace lftrans::lf
