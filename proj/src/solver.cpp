#include "lftrans/solver.hpp"

#include <memory>
#include <set>

namespace lftrans::hohh {

const char* to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::Solved:
      return "solved";
    case SolveStatus::NoSolution:
      return "no";
    case SolveStatus::DepthExhausted:
      return "depth exhausted";
    case SolveStatus::Suspended:
      return "suspended";
  }
  return "?";
}

namespace {

template <class T>
struct Cons {
  T head;
  std::shared_ptr<const Cons> tail;
};
template <class T>
using List = std::shared_ptr<const Cons<T>>;

template <class T>
List<T> cons(T head, List<T> tail) {
  return std::make_shared<const Cons<T>>(Cons<T>{std::move(head), std::move(tail)});
}

struct GoalItem {
  Formula f;
  List<Formula> assumptions;
  int level;
};

// Head clash on rigid structure, looked at up to a small depth. Clause-side
// bound variables stand for quantified variables and never clash.
bool may_match(const Store& s, const Term& goal, const Term& clause, int depth) {
  if (depth == 0) return true;
  Term g = s.whnf(goal);
  const Term& ch = head_of(clause);
  const Term& gh = head_of(g);
  if (!ch->is(TermTag::Const) || !gh->is(TermTag::Const)) return true;
  if (ch->name != gh->name) return false;
  const auto& ca = args_of(clause);
  const auto& ga = args_of(g);
  if (ca.size() != ga.size()) return true;
  for (std::size_t i = 0; i < ca.size(); ++i)
    if (!may_match(s, ga[i], ca[i], depth - 1)) return false;
  return true;
}

// The head atom of a clause with its quantifiers left as bound variables.
const FormulaNode* clause_head(const Formula& d) {
  const FormulaNode* f = d.get();
  while (f->tag != FormTag::Atom) f = f->right.get();
  return f;
}

}  // namespace

struct Solver::Impl {
  const Program& program;
  Store& store;
  const std::vector<Term>& watch;
  const std::function<bool(const Solution&)>& on_solution;
  SolveReport& report;
  int max_solutions;
  int bound = 0;
  bool cut = false;
  std::vector<TraceStep> trace;

  Solution snapshot(int cost) const {
    Solution s;
    for (const auto& w : watch) s.values.push_back(store.resolve(w));
    s.trace = trace;
    for (auto& step : s.trace)
      for (auto& t : step.instances) t = store.resolve(t);
    s.cost = cost;
    for (const auto& eq : store.residuals()) s.residuals.push_back({store.resolve(eq.lhs), store.resolve(eq.rhs)});
    return s;
  }

  // Returns false when the search should stop.
  bool run(const List<GoalItem>& goals, int used) {
    if (!goals) {
      if (used != bound) return true;
      Solution s = snapshot(used);
      if (!s.residuals.empty()) {
        report.suspended.push_back(std::move(s));
        return true;
      }
      report.solutions.push_back(s);
      if (on_solution && !on_solution(s)) return false;
      return max_solutions == 0 || static_cast<int>(report.solutions.size()) < max_solutions;
    }
    const GoalItem& g = goals->head;
    const auto& rest = goals->tail;
    switch (g.f->tag) {
      case FormTag::Top:
        return run(rest, used);
      case FormTag::Imp:
        return run(cons(GoalItem{g.f->right, cons(g.f->left, g.assumptions), g.level}, rest), used);
      case FormTag::All: {
        auto m = store.mark();
        Term e = store.new_eigen(g.level + 1, g.f->type, g.f->hint);
        TraceStep step;
        step.kind = TraceStep::Kind::AllRight;
        step.eigen = e->index;
        trace.push_back(step);
        bool r = run(cons(GoalItem{f_subst(g.f->right, 0, e), g.assumptions, g.level + 1}, rest), used);
        trace.pop_back();
        store.undo(m);
        return r;
      }
      case FormTag::Atom:
        return backchain(g, rest, used);
    }
    return true;
  }

  bool backchain(const GoalItem& g, const List<GoalItem>& rest, int used) {
    if (used + 1 > bound) {
      cut = true;
      return true;
    }
    int k = 0;
    for (auto a = g.assumptions; a; a = a->tail, ++k)
      if (!try_clause(g, rest, used, a->head, true, k)) return false;
    for (std::size_t i = 0; i < program.clauses.size(); ++i)
      if (!try_clause(g, rest, used, program.clauses[i], false, static_cast<int>(i))) return false;
    return true;
  }

  bool try_clause(const GoalItem& g, const List<GoalItem>& rest, int used, const Formula& clause, bool dynamic,
                  int index) {
    const FormulaNode* head = clause_head(clause);
    if (head->pred != g.f->pred || head->args.size() != g.f->args.size()) return true;
    for (std::size_t i = 0; i < head->args.size(); ++i)
      if (!may_match(store, g.f->args[i], head->args[i], 3)) return true;

    auto m = store.mark();
    TraceStep step;
    step.dynamic = dynamic;
    step.clause = index;
    std::vector<Formula> premises;
    Formula d = clause;
    while (d->tag != FormTag::Atom) {
      if (d->tag == FormTag::All) {
        Term v = store.new_lvar(g.level, d->type, d->hint);
        step.instances.push_back(v);
        d = f_subst(d->right, 0, v);
      } else {
        premises.push_back(d->left);
        d = d->right;
      }
    }
    bool ok = true;
    for (std::size_t i = 0; ok && i < d->args.size(); ++i) ok = store.unify(g.f->args[i], d->args[i]);
    bool r = true;
    if (ok) {
      List<GoalItem> next = rest;
      for (std::size_t i = premises.size(); i-- > 0;) next = cons(GoalItem{premises[i], g.assumptions, g.level}, next);
      trace.push_back(std::move(step));
      r = run(next, used + 1);
      trace.pop_back();
    }
    store.undo(m);
    return r;
  }
};

Solver::Solver(const Program& program) : program_(program) {}

SolveReport Solver::solve(const Formula& goal, const std::vector<Term>& watch, const Limits& limits,
                          const std::function<bool(const Solution&)>& on_solution) {
  SolveReport report;
  Impl impl{program_, store_, watch, on_solution, report, limits.max_solutions, 0, false, {}};
  bool exhausted = false;
  for (int d = 0; d <= limits.max_depth; ++d) {
    impl.bound = d;
    impl.cut = false;
    report.depth = d;
    bool go_on = impl.run(cons(GoalItem{goal, nullptr, 0}, List<GoalItem>{}), 0);
    if (!go_on) break;
    if (!impl.cut) {
      exhausted = true;
      break;
    }
  }
  if (!report.solutions.empty())
    report.status = SolveStatus::Solved;
  else if (!report.suspended.empty())
    report.status = SolveStatus::Suspended;
  else
    report.status = exhausted ? SolveStatus::NoSolution : SolveStatus::DepthExhausted;
  return report;
}

// ---------------------------------------------------------------------------
// Replay

Term replace_lvars(const Term& t, const std::map<int, Term>& values) {
  switch (t->tag) {
    case TermTag::LVar: {
      auto it = values.find(t->index);
      return it == values.end() ? t : it->second;
    }
    case TermTag::Lam:
      return mk_lam(t->type, replace_lvars(t->body, values), t->name);
    case TermTag::App: {
      std::vector<Term> args;
      for (const auto& a : t->args) args.push_back(replace_lvars(a, values));
      return apply_term(replace_lvars(t->head, values), args);
    }
    default:
      return t;
  }
}

Formula replace_lvars(const Formula& f, const std::map<int, Term>& values) {
  switch (f->tag) {
    case FormTag::Top:
      return f;
    case FormTag::Atom: {
      std::vector<Term> args;
      for (const auto& a : f->args) args.push_back(replace_lvars(a, values));
      return f_atom(f->pred, std::move(args));
    }
    case FormTag::Imp:
      return f_imp(replace_lvars(f->left, values), replace_lvars(f->right, values));
    case FormTag::All:
      return f_all(f->hint, f->type, replace_lvars(f->right, values));
  }
  return f;
}

namespace {

bool eigens_ok(const Term& t, int level, const std::set<int>& known) {
  switch (t->tag) {
    case TermTag::Eigen:
      return t->level <= level && known.count(t->index) > 0;
    case TermTag::Lam:
      return eigens_ok(t->body, level, known);
    case TermTag::App:
      if (!eigens_ok(t->head, level, known)) return false;
      for (const auto& a : t->args)
        if (!eigens_ok(a, level, known)) return false;
      return true;
    default:
      return true;
  }
}

}  // namespace

bool validate_solution(const Program& program, const Formula& goal, const std::vector<Term>& watch,
                       const Solution& solution) {
  if (solution.values.size() != watch.size()) return false;
  std::map<int, Term> values;
  for (std::size_t i = 0; i < watch.size(); ++i) {
    if (!watch[i]->is(TermTag::LVar)) return false;
    values[watch[i]->index] = solution.values[i];
  }
  std::vector<GoalItem> stack{{replace_lvars(goal, values), nullptr, 0}};
  std::set<int> eigens;
  std::size_t pos = 0;
  int cost = 0;
  while (!stack.empty()) {
    GoalItem g = stack.back();
    stack.pop_back();
    switch (g.f->tag) {
      case FormTag::Top:
        break;
      case FormTag::Imp:
        stack.push_back({g.f->right, cons(g.f->left, g.assumptions), g.level});
        break;
      case FormTag::All: {
        if (pos >= solution.trace.size()) return false;
        const TraceStep& st = solution.trace[pos++];
        if (st.kind != TraceStep::Kind::AllRight || eigens.count(st.eigen)) return false;
        eigens.insert(st.eigen);
        Term e = mk_eigen(st.eigen, g.level + 1, g.f->type, g.f->hint);
        stack.push_back({f_subst(g.f->right, 0, e), g.assumptions, g.level + 1});
        break;
      }
      case FormTag::Atom: {
        if (pos >= solution.trace.size()) return false;
        const TraceStep& st = solution.trace[pos++];
        if (st.kind != TraceStep::Kind::Backchain) return false;
        Formula d;
        if (st.dynamic) {
          auto a = g.assumptions;
          for (int k = 0; a && k < st.clause; ++k) a = a->tail;
          if (!a) return false;
          d = a->head;
        } else {
          if (st.clause < 0 || static_cast<std::size_t>(st.clause) >= program.clauses.size()) return false;
          d = program.clauses[static_cast<std::size_t>(st.clause)];
        }
        std::vector<Formula> premises;
        std::size_t inst = 0;
        while (d->tag != FormTag::Atom) {
          if (d->tag == FormTag::All) {
            if (inst >= st.instances.size()) return false;
            const Term& t = st.instances[inst++];
            if (has_loose_bvars(t) || !eigens_ok(t, g.level, eigens)) return false;
            d = f_subst(d->right, 0, t);
          } else {
            premises.push_back(d->left);
            d = d->right;
          }
        }
        if (inst != st.instances.size()) return false;
        if (d->pred != g.f->pred || d->args.size() != g.f->args.size()) return false;
        for (std::size_t i = 0; i < d->args.size(); ++i)
          if (!term_eq_eta(beta_normal(d->args[i]), beta_normal(g.f->args[i]))) return false;
        ++cost;
        for (std::size_t i = premises.size(); i-- > 0;) stack.push_back({premises[i], g.assumptions, g.level});
        break;
      }
    }
  }
  return pos == solution.trace.size() && cost == solution.cost;
}

}  // namespace lftrans::hohh
