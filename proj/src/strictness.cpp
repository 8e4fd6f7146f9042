#include "lftrans/strictness.hpp"

#include "lftrans/lf_kernel.hpp"

namespace lftrans::strictness {

using namespace lf;

namespace {

bool distinct_locals(const std::vector<Expr>& args, const std::set<std::string>& delta) {
  std::set<std::string> seen;
  for (const auto& a : args) {
    if (!a->is_var() || !delta.count(a->name()) || !seen.insert(a->name()).second) return false;
  }
  return true;
}

std::optional<std::string> object_rule(std::set<std::string> candidates, std::set<std::string> delta,
                                       const std::string& x, const Expr& m) {
  if (m->is_lam()) {
    const std::string& y = m->name();
    if (y == x) return std::nullopt;
    candidates.erase(y);
    delta.insert(y);
    auto inner = object_rule(std::move(candidates), std::move(delta), x, m->body());
    if (!inner) return std::nullopt;
    return "ABS_o(" + *inner + ")";
  }
  Spine sp = spine(m);
  if (sp.head->is_var() && sp.head->name() == x) {
    if (distinct_locals(sp.args, delta)) return std::string("INIT_o");
    return std::nullopt;
  }
  bool rigid = sp.head->is_const() || (sp.head->is_var() && !candidates.count(sp.head->name()));
  if (!rigid) return std::nullopt;
  for (std::size_t i = 0; i < sp.args.size(); ++i) {
    if (auto r = object_rule(candidates, delta, x, sp.args[i]))
      return "APP_o(" + sp.head->name() + " arg " + std::to_string(i + 1) + ": " + *r + ")";
  }
  return std::nullopt;
}

struct TypeJudge {
  std::optional<std::string> judge(Context& ctx, const std::string& x, const Expr& a) {
    if (a->is_pi()) {
      std::string y = a->name();
      Expr body = a->body();
      if (y == x || ctx.contains(y)) {
        auto avoid = ctx.names();
        avoid.insert(x);
        auto fv = free_vars(body);
        avoid.insert(fv.begin(), fv.end());
        y = fresh_name(y, avoid);
        body = substitute(body, a->name(), var(y));
      }
      ctx.push(y, a->binder_type());
      auto r = judge(ctx, x, body);
      ctx.pop();
      return r;
    }
    Spine sp = spine(a);
    if (!sp.head->is_const()) return std::nullopt;
    auto names = ctx.names();
    names.insert(x);
    for (std::size_t i = 0; i < sp.args.size(); ++i) {
      if (auto r = object_rule(names, {}, x, sp.args[i]))
        return "APP_t(" + sp.head->name() + " arg " + std::to_string(i + 1) + ": " + *r + ")";
    }
    // CTX_t: x strict in the type of some binder y that is strict in a.
    const auto& bs = ctx.bindings();
    for (std::size_t j = 0; j < bs.size(); ++j) {
      const auto& [y, b] = bs[j];
      if (y == x || !b || !occurs_free(x, b)) continue;
      Context prefix(std::vector<Context::Binding>(bs.begin(), bs.begin() + static_cast<std::ptrdiff_t>(j)));
      auto in_b = judge(prefix, x, b);
      if (!in_b) continue;
      auto y_in_a = judge(ctx, y, a);
      if (!y_in_a) continue;
      return "CTX_t(" + y + ": " + *y_in_a + "; " + x + " in type of " + y + ": " + *in_b + ")";
    }
    return std::nullopt;
  }
};

}  // namespace

bool strict_in_object(const std::set<std::string>& candidates, const std::set<std::string>& delta,
                      const std::string& x, const Expr& m) {
  return object_rule(candidates, delta, x, m).has_value();
}

std::optional<std::string> explain_in_type(const Context& ctx, const std::string& x, const Expr& a) {
  Context c = ctx;
  return TypeJudge{}.judge(c, x, a);
}

bool strict_in_type(const Context& ctx, const std::string& x, const Expr& a) {
  return explain_in_type(ctx, x, a).has_value();
}

std::vector<BinderVerdict> explain_binders(const Expr& classifier) {
  std::vector<BinderVerdict> out;
  Context prefix;
  Expr cur = classifier;
  while (cur->is_pi()) {
    BinderVerdict v{cur->name(), cur->binder_type(), false, {}};
    if (!occurs_free(cur->name(), cur->body())) {
      v.why = "does not occur in the rest of the type";
    } else if (auto r = explain_in_type(prefix, cur->name(), cur->body())) {
      v.strict = true;
      v.why = *r;
    } else {
      v.why = "no rigid occurrence";
    }
    out.push_back(std::move(v));
    prefix.push(cur->name(), cur->binder_type());
    cur = cur->body();
  }
  return out;
}

std::set<std::size_t> strict_binders(const Expr& classifier) {
  std::set<std::size_t> out;
  auto vs = explain_binders(classifier);
  for (std::size_t i = 0; i < vs.size(); ++i)
    if (vs[i].strict) out.insert(i);
  return out;
}

}  // namespace lftrans::strictness
