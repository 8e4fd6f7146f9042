#include "lftrans/pipeline.hpp"

#include "lftrans/inverter.hpp"

namespace lftrans::pipeline {

using hohh::SimpleType;
using hohh::Term;

namespace {

bool is_free(const lf::Query& q, const std::string& x) {
  for (const auto& v : q.free_vars)
    if (v == x) return true;
  return false;
}

// Walks the query collecting simple types for its free variables.
class SimpleWalk {
 public:
  SimpleWalk(const lf::Signature& sig, const lf::Query& q) : sig_(sig), q_(q) {}

  void walk(lf::Context& ctx, const lf::Expr& e, const lf::Expr& expected) {
    if (e->is_pi()) {
      walk(ctx, e->binder_type(), nullptr);
      ctx.push(e->name(), e->binder_type());
      walk(ctx, e->body(), nullptr);
      ctx.pop();
      return;
    }
    if (e->is_lam()) {
      ctx.push(e->name(), e->binder_type());
      walk(ctx, e->body(), expected && expected->is_pi() ? expected->body() : nullptr);
      ctx.pop();
      return;
    }
    auto sp = lf::spine(e);
    const std::string& h = sp.head->name();
    lf::Expr cls;
    if (sp.head->is_var() && !ctx.contains(h) && is_free(q_, h)) {
      if (sp.args.empty() && expected) {
        direct[h] = translate::phi(expected);
      } else if (!applied.count(h)) {
        applied[h] = hohh::arrow_type(std::vector<SimpleType>(sp.args.size(), hohh::lf_obj()), hohh::lf_obj());
      }
    } else if (sp.head->is_var()) {
      if (const lf::Expr* a = ctx.lookup(h)) cls = *a;
    } else if (const lf::Decl* d = sig_.find(h)) {
      cls = d->classifier;
    }
    for (const auto& a : sp.args) {
      lf::Expr dom = cls && cls->is_pi() ? cls->binder_type() : nullptr;
      walk(ctx, a, dom);
      if (cls && cls->is_pi()) cls = cls->body();
    }
  }

  std::map<std::string, SimpleType> direct, applied;

 private:
  const lf::Signature& sig_;
  const lf::Query& q_;
};

// Recovers LF types and values for the free variables of a solved query.
class Align {
 public:
  Align(const lf::Signature& sig, const hohh::Program& p, const lf::Query& q, const Goal& g, const hohh::Solution& s)
      : sig_(sig), p_(p), q_(q) {
    for (std::size_t i = 0; i < q.free_vars.size(); ++i) raw_[q.free_vars[i]] = {s.values[i + 1], g.var_types[i]};
  }

  void run() {
    for (bool progress = true; progress;) {
      std::size_t before = values.size() + errors.size();
      lf::Context ctx;
      walk(ctx, q_.type, nullptr);
      progress = values.size() + errors.size() > before;
    }
  }

  lf::Expr inst(const lf::Expr& e) const { return lf::beta_normalize(lf::substitute(e, values)); }

  std::map<std::string, lf::Expr> values;
  std::map<std::string, std::string> errors;

 private:
  bool resolved(const lf::Expr& e) const {
    for (const auto& x : lf::free_vars(e))
      if (is_free(q_, x) && !values.count(x)) return false;
    return true;
  }

  bool pending(const std::string& x) const { return !values.count(x) && !errors.count(x); }

  void assign(const std::string& x, const lf::Expr& type) {
    try {
      const auto& [t, st] = raw_.at(x);
      Term m = invert::eta_expand_answer(p_, t, st);
      values[x] = invert::invert(sig_, {}, m, type);
      types_[x] = type;
    } catch (const std::exception& e) {
      errors[x] = e.what();
    }
  }

  void walk(lf::Context& ctx, const lf::Expr& e, const lf::Expr& expected) {
    if (e->is_pi()) {
      walk(ctx, e->binder_type(), nullptr);
      ctx.push(e->name(), inst(e->binder_type()));
      walk(ctx, e->body(), nullptr);
      ctx.pop();
      return;
    }
    if (e->is_lam()) {
      lf::Expr body_type;
      if (expected && expected->is_pi())
        body_type = lf::substitute(expected->body(), expected->name(), lf::var(e->name()));
      ctx.push(e->name(), inst(e->binder_type()));
      walk(ctx, e->body(), body_type);
      ctx.pop();
      return;
    }
    auto sp = lf::spine(e);
    const std::string& h = sp.head->name();
    lf::Expr cls;
    if (sp.head->is_var() && !ctx.contains(h) && is_free(q_, h)) {
      if (pending(h) && expected && resolved(expected) && ctx.size() == 0) {
        std::vector<lf::Expr> doms;
        bool ok = true;
        for (const auto& a : sp.args) {
          if (!resolved(a)) {
            ok = false;
            break;
          }
          auto r = lf::check_object(sig_, ctx, inst(a));
          if (!r) {
            ok = false;
            break;
          }
          doms.push_back(r.classifier);
        }
        if (ok) {
          lf::Expr t = inst(expected);
          for (std::size_t i = doms.size(); i-- > 0;) t = lf::arrow(doms[i], t);
          assign(h, t);
        }
      }
      auto it = types_.find(h);
      if (it != types_.end()) cls = it->second;
    } else if (sp.head->is_var()) {
      if (const lf::Expr* a = ctx.lookup(h)) cls = *a;
    } else if (const lf::Decl* d = sig_.find(h)) {
      cls = d->classifier;
    }
    for (const auto& a : sp.args) {
      if (!cls || !cls->is_pi()) {
        walk(ctx, a, nullptr);
        continue;
      }
      walk(ctx, a, cls->binder_type());
      cls = lf::substitute(cls->body(), cls->name(), inst(a));
    }
  }

  const lf::Signature& sig_;
  const hohh::Program& p_;
  const lf::Query& q_;
  std::map<std::string, std::pair<Term, SimpleType>> raw_;
  std::map<std::string, lf::Expr> types_;
};

}  // namespace

std::map<std::string, SimpleType> free_var_types(const lf::Signature& sig, const lf::Query& q) {
  SimpleWalk w(sig, q);
  lf::Context ctx;
  w.walk(ctx, q.type, nullptr);
  std::map<std::string, SimpleType> out;
  for (const auto& x : q.free_vars) {
    if (w.direct.count(x))
      out[x] = w.direct[x];
    else if (w.applied.count(x))
      out[x] = w.applied[x];
    else
      out[x] = hohh::lf_obj();
  }
  return out;
}

Goal make_goal(hohh::Store& store, const lf::Signature& sig, const lf::Query& q, translate::Mode mode) {
  Goal g;
  g.subject_type = translate::phi(q.type);
  Term m = store.new_lvar(0, g.subject_type, "M");
  g.watch.push_back(m);
  translate::Scope scope;
  auto types = free_var_types(sig, q);
  for (const auto& x : q.free_vars) {
    Term v = store.new_lvar(0, types[x], x);
    g.watch.push_back(v);
    g.var_types.push_back(types[x]);
    scope.free[x] = v;
  }
  g.formula = translate::simplify_top(translate::translate_goal(q.type, m, mode, scope));
  return g;
}

Answer read_answer(const lf::Signature& sig, const hohh::Program& p, const lf::Query& q, const Goal& g,
                   const hohh::Solution& s) {
  Answer a;
  a.cost = s.cost;
  a.solution = s;
  a.raw_inhabitant = s.values[0];
  for (std::size_t i = 0; i < q.free_vars.size(); ++i) a.raw_values.emplace_back(q.free_vars[i], s.values[i + 1]);
  for (const auto& eq : s.residuals) a.residuals.push_back(hohh::to_string(eq.lhs) + " = " + hohh::to_string(eq.rhs));
  if (!s.residuals.empty()) {
    a.error = "unresolved constraints";
    return a;
  }
  Align al(sig, p, q, g, s);
  al.run();
  for (const auto& x : q.free_vars) {
    if (al.errors.count(x)) {
      a.error = x + ": " + al.errors[x];
      return a;
    }
    if (!al.values.count(x)) {
      a.error = "cannot determine the type of " + x;
      return a;
    }
    a.values.emplace_back(x, al.values[x]);
  }
  try {
    a.type = al.inst(q.type);
    Term m = invert::eta_expand_answer(p, s.values[0], g.subject_type);
    a.inhabitant = invert::invert(sig, {}, m, a.type);
    a.closed = true;
  } catch (const std::exception& e) {
    a.error = e.what();
  }
  return a;
}

Result solve_query(const lf::Signature& sig, const hohh::Program& p, const lf::Query& q, translate::Mode mode,
                   const hohh::Limits& limits) {
  hohh::Solver solver(p);
  Result r;
  r.goal = make_goal(solver.store(), sig, q, mode);
  hohh::SolveReport rep = solver.solve(r.goal.formula, r.goal.watch, limits);
  r.status = rep.status;
  r.depth = rep.depth;
  for (const auto& s : rep.solutions) r.answers.push_back(read_answer(sig, p, q, r.goal, s));
  for (const auto& s : rep.suspended) r.suspended.push_back(read_answer(sig, p, q, r.goal, s));
  return r;
}

}  // namespace lftrans::pipeline
