// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// nonzero if any fails.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

#include "lftrans/inverter.hpp"
#include "lftrans/lf_kernel.hpp"
#include "lftrans/pipeline.hpp"
#include "lftrans/solver.hpp"
#include "lftrans/strictness.hpp"
#include "lftrans/translator.hpp"
#include "lftrans/unify.hpp"
#include "support/lf_enum.hpp"

using namespace lftrans;
using testing::load_signature;

namespace {

struct Verdict {
  bool ok = true;
  std::string detail;
};

struct Failure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void require(bool cond, const std::string& what) {
  if (!cond) throw Failure(what);
}

std::string golden(const std::string& name) {
  return testing::read_file(std::string(LFTRANS_TEST_DIR) + "/golden/" + name);
}

hohh::Program translate_file(const std::string& file, translate::Mode mode) {
  return translate::translate_signature(load_signature(file), {mode, true});
}

const hohh::Formula& clause_for(const hohh::Program& p, const std::string& c) {
  for (const auto& f : p.clauses) {
    const hohh::FormulaNode* n = f.get();
    while (n->tag != hohh::FormTag::Atom) n = n->right.get();
    const hohh::Term& h = hohh::head_of(n->args[0]);
    if (h->is(hohh::TermTag::Const) && h->name == c) return f;
  }
  throw Failure("no clause for " + c);
}

std::vector<hohh::Formula> premises_of(const hohh::Formula& f) {
  std::vector<hohh::Formula> out;
  for (const hohh::FormulaNode* g = f.get(); g->tag != hohh::FormTag::Atom; g = g->right.get())
    if (g->tag == hohh::FormTag::Imp) out.push_back(g->left);
  return out;
}

int quantifiers(const hohh::Formula& f) {
  int n = 0;
  for (const hohh::FormulaNode* g = f.get(); g->tag != hohh::FormTag::Atom; g = g->right.get())
    if (g->tag == hohh::FormTag::All) ++n;
  return n;
}

bool same_clause(const hohh::Formula& a, const hohh::Formula& b) {
  hohh::Program x, y;
  x.clauses = {a};
  y.clauses = {b};
  return translate::same_program(x, y);
}

pipeline::Result solve(const lf::Signature& sig, const hohh::Program& p, const std::string& query,
                       translate::Mode mode, int depth, int n) {
  lf::Query q = lf::parse_query(query, sig);
  hohh::Limits lim;
  lim.max_depth = depth;
  lim.max_solutions = n;
  return pipeline::solve_query(sig, p, q, mode, lim);
}

std::string show(const pipeline::Answer& a) {
  std::string s;
  if (!a.closed) return "<open: " + a.error + ">";
  for (const auto& [x, v] : a.values) s += x + "=" + lf::to_string(v) + " ";
  return s + "M=" + lf::to_string(a.inhabitant);
}

// ---------------------------------------------------------------------------

Verdict naive_golden() {
  hohh::Program p = translate_file("append.elf", translate::Mode::Naive);
  hohh::Program emitted = translate::read_lambdaprolog(translate::emit_lambdaprolog(p));
  hohh::Program g = translate::read_lambdaprolog(golden("append_naive.lp"));
  std::string why;
  require(translate::same_program(emitted, g, &why), why);
  const char* entries[][2] = {{"nat", "lf_type"},
                              {"z", "lf_obj"},
                              {"s", "lf_obj -> lf_obj"},
                              {"list", "lf_type"},
                              {"nil", "lf_obj"},
                              {"cons", "lf_obj -> lf_obj -> lf_obj"},
                              {"append", "lf_obj -> lf_obj -> lf_obj -> lf_type"},
                              {"appNil", "lf_obj -> lf_obj"},
                              {"appCons", "lf_obj -> lf_obj -> lf_obj -> lf_obj -> lf_obj -> lf_obj"}};
  for (const auto& e : entries) {
    const hohh::SimpleType* t = emitted.constant_type(e[0]);
    require(t && hohh::to_string(*t) == e[1], std::string("signature entry ") + e[0]);
  }
  require(emitted.clauses.size() == 6, "clause count");
  return {true, "9 signature entries, 6 clauses"};
}

Verdict optimized_golden() {
  hohh::Program p = translate_file("append.elf", translate::Mode::Optimized);
  hohh::Program emitted = translate::read_lambdaprolog(translate::emit_lambdaprolog(p));
  hohh::Program g = translate::read_lambdaprolog(golden("append_optimized.lp"));
  std::string why;
  require(translate::same_program(emitted, g, &why), why);
  require(premises_of(clause_for(p, "appNil")).empty(), "appNil has premises");
  auto prem = premises_of(clause_for(p, "appCons"));
  require(prem.size() == 1, "appCons premise count");
  // pi x\ pi l\ pi k\ pi m\ pi a\: a is #0, l #3, k #2, m #1
  hohh::Formula want = hohh::f_atom(
      "hastype", {hohh::mk_bvar(0), hohh::mk_app(hohh::mk_const("append"),
                                                 {hohh::mk_bvar(3), hohh::mk_bvar(2), hohh::mk_bvar(1)})});
  require(hohh::formula_equal(prem[0], want), "appCons premise is " + hohh::to_string(prem[0]));
  return {true, "appNil 0 premises, appCons 1"};
}

Verdict strict_f() {
  lf::Signature sig = load_signature("strict_f.elf");
  const lf::Decl* f = sig.find("f");
  require(f, "no f");
  auto verdicts = strictness::explain_binders(f->classifier);
  require(verdicts.size() == 2 && verdicts[0].name == "x", "binders of f");
  require(verdicts[0].strict, "x not strict");
  require(verdicts[0].why.rfind("CTX_t", 0) == 0, "x justified by " + verdicts[0].why);
  hohh::Program p = translate::translate_signature(sig, {});
  const hohh::Formula& c = clause_for(p, "f");
  hohh::Formula want = translate::read_formula("pi x\\ pi y\\ hastype (f x y) (d (y\\ y) (w\\ y\\ x (w y)) y)");
  require(same_clause(c, want), "clause is " + hohh::to_string(c));
  require(quantifiers(c) == 2 && premises_of(c).empty(), "shape");
  return {true, "x strict by CTX_t; " + hohh::to_string(c)};
}

Verdict worked_query() {
  lf::Signature sig = load_signature("append.elf");
  hohh::Program p = translate::translate_signature(sig, {});
  auto r = solve(sig, p, "append (cons z nil) nil (cons z nil)", translate::Mode::Optimized, 32, 1);
  require(r.status == hohh::SolveStatus::Solved, "not solved");
  const auto& a = r.answers.at(0);
  require(a.closed, a.error);
  require(lf::to_string(a.inhabitant) == "appCons z nil nil nil (appNil nil)", lf::to_string(a.inhabitant));
  auto chk = lf::check_object(sig, {}, a.inhabitant);
  require(chk.ok, "inhabitant does not check: " + chk.message);
  require(lf::types_equal(sig, {}, chk.classifier, a.type), "type mismatch");
  require(hohh::validate_solution(p, r.goal.formula, r.goal.watch, a.solution), "replay failed");
  return {true, lf::to_string(a.inhabitant)};
}

Verdict existential_query() {
  lf::Signature sig = load_signature("append.elf");
  hohh::Program p = translate::translate_signature(sig, {});
  auto r = solve(sig, p, "append (cons (s z) nil) (cons z nil) L", translate::Mode::Optimized, 8, 1);
  require(r.status == hohh::SolveStatus::Solved, "not solved within depth 8");
  const auto& a = r.answers.at(0);
  require(a.closed, a.error);
  require(a.values.size() == 1 && lf::to_string(a.values[0].second) == "cons (s z) (cons z nil)", show(a));
  require(lf::to_string(a.inhabitant) == "appCons (s z) nil (cons z nil) (cons z nil) (appNil (cons z nil))",
          lf::to_string(a.inhabitant));
  require(lf::check_object(sig, {}, a.inhabitant).ok, "inhabitant does not check");
  return {true, show(a) + " at depth " + std::to_string(a.cost)};
}

Verdict divergence() {
  {
    lf::Signature sig = load_signature("foo1.elf");
    hohh::Program p = translate::translate_signature(sig, {});
    auto r = solve(sig, p, "bar z", translate::Mode::Optimized, 32, 1);
    require(r.status == hohh::SolveStatus::NoSolution, std::string("foo1: ") + hohh::to_string(r.status));
  }
  {
    lf::Signature sig = load_signature("foo2.elf");
    hohh::Program p = translate::translate_signature(sig, {});
    auto r = solve(sig, p, "bar Y", translate::Mode::Optimized, 32, 1);
    require(r.status == hohh::SolveStatus::Solved, "foo2 not solved");
    const auto& a = r.answers.at(0);
    const hohh::Term& m = a.raw_inhabitant;
    require(m->is(hohh::TermTag::App) && m->head->name == "foo" && m->args.size() == 1, "foo2 inhabitant");
    require(m->args[0]->is(hohh::TermTag::LVar), "foo2 argument is bound");
    require(hohh::term_equal(m->args[0], a.raw_values.at(0).second), "foo2 Y differs from the argument");
    require(hohh::validate_solution(p, r.goal.formula, r.goal.watch, a.solution), "foo2 replay");
  }
  lf::Signature sig = load_signature("foo_fy.elf");
  hohh::Program p = translate::translate_signature(sig, {});
  auto r = solve(sig, p, "bar z", translate::Mode::Optimized, 4, 0);
  require(r.status == hohh::SolveStatus::Solved, "F-Y not solved");
  bool id = false, konst = false;
  for (const auto& a : r.answers) {
    require(a.closed, a.error);
    require(hohh::validate_solution(p, r.goal.formula, r.goal.watch, a.solution), "F-Y replay");
    auto sp = lf::spine(a.inhabitant);
    require(sp.args.size() == 2, "F-Y inhabitant");
    lf::Expr y = sp.args[0], f = sp.args[1];
    // the residual F Y = z
    require(lf::alpha_equal(lf::beta_normalize(lf::app(f, y)), lf::constant("z")), "F Y is not z");
    if (lf::alpha_equal(y, lf::constant("z"))) {
      lf::Expr fv = lf::beta_normalize(lf::app(f, lf::var("v")));
      id = id || lf::alpha_equal(fv, lf::var("v"));
      konst = konst || lf::alpha_equal(fv, lf::constant("z"));
    }
  }
  require(id && konst, "missing a substitution pair");
  return {true, "foo1 no; foo2 open argument; F-Y " + std::to_string(r.answers.size()) + " pairs within depth 4"};
}

Verdict round_trip() {
  lf::Signature sig = load_signature("append.elf");
  const char* types[] = {"nat",          "list",          "nat -> nat",         "list -> list",
                         "nat -> list",  "nat -> list -> list", "list -> nat -> list", "list -> list -> list",
                         "(nat -> nat) -> nat", "(nat -> list) -> list"};
  int n = 0;
  for (const char* t : types) {
    lf::Expr type = lf::parse_expr(t);
    for (const auto& o : testing::enumerate_objects(sig, {}, type, 6)) {
      lf::Expr back = invert::invert(sig, {}, translate::encode(o.term), type);
      require(lf::alpha_equal(back, o.term), "round trip changed " + lf::to_string(o.term));
      ++n;
    }
  }
  require(n >= 200, "only " + std::to_string(n) + " cases");
  return {true, std::to_string(n) + " objects"};
}

const char* const kCorpus[] = {
    // solvable
    "append nil nil nil",
    "append (cons z nil) nil (cons z nil)",
    "append (cons z nil) (cons (s z) nil) L",
    "append L (cons z nil) (cons z (cons z nil))",
    "append (cons (s z) nil) (cons z nil) L",
    "append L M (cons z nil)",
    "append (cons z (cons z nil)) nil L",
    "append nil (cons (s (s z)) nil) L",
    "plus z z z",
    "plus (s z) (s z) N",
    "plus X (s z) (s (s z))",
    "plus (s (s z)) z N",
    "plus X Y (s z)",
    "plus (s z) X (s (s (s z)))",
    // unsolvable
    "append (cons z nil) nil nil",
    "append nil (cons z nil) nil",
    "append (cons z nil) L (cons (s z) nil)",
    "plus (s z) z z",
    "plus (s (s z)) X (s z)",
    "append L (cons (s z) nil) (cons z nil)",
};

constexpr int kModeDepth = 24;

Verdict mode_equivalence() {
  lf::Signature sig = load_signature("plus_append.elf");
  hohh::Program pn = translate::translate_signature(sig, {translate::Mode::Naive, true});
  hohh::Program po = translate::translate_signature(sig, {translate::Mode::Optimized, true});
  int solved = 0, unsolved = 0;
  for (const char* q : kCorpus) {
    auto rn = solve(sig, pn, q, translate::Mode::Naive, kModeDepth, 1);
    auto ro = solve(sig, po, q, translate::Mode::Optimized, kModeDepth, 1);
    bool sn = rn.status == hohh::SolveStatus::Solved, so = ro.status == hohh::SolveStatus::Solved;
    require(sn == so, std::string(q) + ": naive " + hohh::to_string(rn.status) + ", optimized " +
                          hohh::to_string(ro.status));
    if (!sn) {
      ++unsolved;
      continue;
    }
    ++solved;
    const auto& an = rn.answers.at(0);
    const auto& ao = ro.answers.at(0);
    require(an.closed && ao.closed, std::string(q) + ": open answer");
    require(lf::alpha_equal(an.inhabitant, ao.inhabitant), std::string(q) + ": " + show(an) + " vs " + show(ao));
    for (std::size_t i = 0; i < an.values.size(); ++i)
      require(lf::alpha_equal(an.values[i].second, ao.values[i].second), std::string(q) + ": values differ");
  }
  require(solved > 0 && unsolved > 0, "corpus must mix solvable and unsolvable queries");
  return {true, std::to_string(solved) + " solvable, " + std::to_string(unsolved) + " unsolvable, depth " +
                    std::to_string(kModeDepth)};
}

bool has_lvar(const hohh::Term& t) {
  switch (t->tag) {
    case hohh::TermTag::LVar:
      return true;
    case hohh::TermTag::Lam:
      return has_lvar(t->body);
    case hohh::TermTag::App:
      if (has_lvar(t->head)) return true;
      for (const auto& a : t->args)
        if (has_lvar(a)) return true;
      return false;
    default:
      return false;
  }
}

struct Probe {
  int instances = 0;
  int checked = 0;
  std::vector<std::string> failures;
};

// Instantiates the binders of `c` so that its target equals `target`, and
// checks the strict ones. Returns false if `target` is not an instance.
bool probe_instance(const lf::Signature& sig, const lf::Decl& c, const lf::Expr& target, Probe& pr) {
  auto pp = lf::pi_prefix(c.classifier);
  std::set<std::size_t> strict = strictness::strict_binders(c.classifier);
  hohh::Store st;
  translate::Scope scope;
  std::vector<hohh::Term> vars;
  for (const auto& [x, b] : pp.binders) {
    vars.push_back(st.new_lvar(0, translate::phi(b), x));
    scope.free[x] = vars.back();
  }
  if (!st.unify(translate::encode(pp.target, scope), translate::encode(target))) return false;
  hohh::Program p = translate::translate_signature(sig, {});
  lf::Bindings sigma;
  std::vector<std::string> notes;
  for (std::size_t i = 0; i < pp.binders.size(); ++i) {
    const auto& [x, b0] = pp.binders[i];
    lf::Expr b = lf::beta_normalize(lf::substitute(b0, sigma));
    hohh::Term v = st.resolve(vars[i]);
    std::optional<lf::Expr> value;
    if (!has_lvar(v)) {
      try {
        value = invert::invert(sig, {}, invert::eta_expand_answer(p, v, translate::phi(b)), b);
        auto chk = lf::check_object(sig, {}, *value);
        if (!chk.ok || !lf::types_equal(sig, {}, chk.classifier, b)) value.reset();
      } catch (const invert::InversionError&) {
      }
      if (!value && strict.count(i)) {
        notes.push_back(c.name + ": strict " + x + " = " + hohh::to_string(v) + " does not check at " +
                        lf::to_string(b) + " for target " + lf::to_string(target));
        value = lf::constant("?");
      }
    }
    if (!value) {
      // undetermined by the target: any well-typed object will do
      auto objs = testing::enumerate_objects(sig, {}, b, 4);
      if (objs.empty()) return false;
      value = objs[0].term;
    }
    sigma[x] = *value;
  }
  lf::Expr inst = lf::beta_normalize(lf::substitute(pp.target, sigma));
  if (!notes.empty()) {
    pr.failures.insert(pr.failures.end(), notes.begin(), notes.end());
    ++pr.instances;
    return true;
  }
  if (!lf::types_equal(sig, {}, inst, target)) return false;
  ++pr.instances;
  pr.checked += static_cast<int>(strict.size());
  return true;
}

constexpr int kTargetBudget = 7;

Verdict strictness_probe() {
  Probe pr;
  int constants = 0;
  for (const char* file :
       {"append.elf", "plus_append.elf", "strict_f.elf", "foo1.elf", "foo2.elf", "foo_fy.elf", "stlc.elf"}) {
    lf::Signature sig = load_signature(file);
    for (const auto& d : sig.decls()) {
      if (lf::is_kind(d.classifier) || strictness::strict_binders(d.classifier).empty()) continue;
      ++constants;
      lf::Expr tgt = lf::pi_prefix(d.classifier).target;
      auto sp = lf::spine(tgt);
      const lf::Decl* fam = sig.find(sp.head->name());
      auto kp = lf::pi_prefix(fam->classifier);
      // closed, well-formed instances of the target family
      std::vector<std::vector<lf::Expr>> pools;
      for (const auto& [y, k] : kp.binders) {
        std::vector<lf::Expr> pool;
        for (const auto& o : testing::enumerate_objects(sig, {}, k, kTargetBudget)) pool.push_back(o.term);
        pools.push_back(pool);
      }
      std::vector<std::size_t> idx(pools.size(), 0);
      bool empty = false;
      for (const auto& pl : pools) empty = empty || pl.empty();
      if (empty) continue;
      for (;;) {
        std::vector<lf::Expr> args;
        for (std::size_t k = 0; k < pools.size(); ++k) args.push_back(pools[k][idx[k]]);
        lf::Expr t = lf::apply_args(sp.head, args);
        auto chk = lf::check_type(sig, {}, t);
        if (chk.ok && chk.classifier->is_type()) probe_instance(sig, d, t, pr);
        std::size_t k = 0;
        while (k < idx.size() && ++idx[k] == pools[k].size()) idx[k++] = 0;
        if (k == idx.size()) break;
      }
    }
  }
  if (!pr.failures.empty()) throw Failure(std::to_string(pr.failures.size()) + " failures, first: " + pr.failures[0]);
  require(pr.instances >= 50, "only " + std::to_string(pr.instances) + " instances");
  return {true, std::to_string(pr.instances) + " instances over " + std::to_string(constants) + " constants, " +
                    std::to_string(pr.checked) + " strict binder checks"};
}

// --- exhaustive derivation enumeration --------------------------------------

bool match(const lf::Expr& pat, const lf::Expr& t, const std::set<std::string>& vars, lf::Bindings& sigma) {
  if (pat->is_var() && vars.count(pat->name())) {
    auto it = sigma.find(pat->name());
    if (it != sigma.end()) return lf::alpha_equal(it->second, t);
    sigma[pat->name()] = t;
    return true;
  }
  if (pat->tag() != t->tag()) return false;
  switch (pat->tag()) {
    case lf::Tag::Const:
    case lf::Tag::Var:
      return pat->name() == t->name();
    case lf::Tag::App:
      return match(pat->fun(), t->fun(), vars, sigma) && match(pat->arg(), t->arg(), vars, sigma);
    default:
      throw Failure("matching supports first-order signatures only");
  }
}

struct Derivation {
  lf::Expr object;
  int cost;
};

class Oracle {
 public:
  Oracle(const lf::Signature& sig, translate::Mode mode) : sig_(sig), mode_(mode) {}

  // Cost of deriving hastype v T for a closed canonical v.
  int cost_of(const lf::Expr& v) const {
    auto sp = lf::spine(v);
    const lf::Decl* d = sig_.find(sp.head->name());
    auto strict = strictness::strict_binders(d->classifier);
    int c = 1;
    for (std::size_t i = 0; i < sp.args.size(); ++i)
      if (counted(strict, i)) c += cost_of(sp.args[i]);
    return c;
  }

  // All objects of the closed base type t whose derivation costs at most budget.
  std::vector<Derivation> enumerate(const lf::Expr& t, int budget) const {
    std::vector<Derivation> out;
    if (budget < 1) return out;
    std::string head = lf::spine(t).head->name();
    for (const auto& d : sig_.decls()) {
      if (lf::is_kind(d.classifier)) continue;
      auto pp = lf::pi_prefix(d.classifier);
      if (lf::spine(pp.target).head->name() != head) continue;
      std::set<std::string> vars;
      for (const auto& b : pp.binders) vars.insert(b.first);
      lf::Bindings sigma;
      if (!match(pp.target, t, vars, sigma)) continue;
      auto strict = strictness::strict_binders(d.classifier);
      std::function<void(std::size_t, lf::Bindings, lf::Expr, int)> go = [&](std::size_t i, lf::Bindings chosen,
                                                                             lf::Expr acc, int cost) {
        if (cost > budget) return;
        if (i == pp.binders.size()) {
          lf::Expr ty = lf::beta_normalize(lf::substitute(pp.target, chosen));
          if (lf::types_equal(sig_, {}, ty, t)) out.push_back({acc, cost});
          return;
        }
        const auto& [x, b0] = pp.binders[i];
        lf::Expr b = lf::beta_normalize(lf::substitute(b0, chosen));
        auto it = sigma.find(x);
        if (it != sigma.end()) {
          auto chk = lf::check_object(sig_, {}, it->second);
          if (!chk.ok || !lf::types_equal(sig_, {}, chk.classifier, b)) return;
          chosen[x] = it->second;
          go(i + 1, chosen, lf::app(acc, it->second), cost + (counted(strict, i) ? cost_of(it->second) : 0));
          return;
        }
        for (const auto& sub : enumerate(b, budget - cost)) {
          lf::Bindings next = chosen;
          next[x] = sub.object;
          go(i + 1, next, lf::app(acc, sub.object), cost + (counted(strict, i) ? sub.cost : 0));
        }
      };
      go(0, {}, lf::constant(d.name), 1);
    }
    return out;
  }

 private:
  bool counted(const std::set<std::size_t>& strict, std::size_t i) const {
    return mode_ == translate::Mode::Naive || !strict.count(i);
  }

  const lf::Signature& sig_;
  translate::Mode mode_;
};

// Values for free query variables: all nats up to 4 and lists of up to four
// elements drawn from z, s z, s (s z).
std::map<std::string, std::vector<lf::Expr>> value_pools() {
  std::vector<lf::Expr> nats, elems, lists;
  lf::Expr n = lf::constant("z");
  for (int i = 0; i <= 4; ++i, n = lf::app(lf::constant("s"), n)) nats.push_back(n);
  elems.assign(nats.begin(), nats.begin() + 3);
  std::vector<lf::Expr> layer{lf::constant("nil")};
  lists = layer;
  for (int len = 1; len <= 4; ++len) {
    std::vector<lf::Expr> next;
    for (const auto& e : elems)
      for (const auto& l : layer) next.push_back(lf::apply_args(lf::constant("cons"), {e, l}));
    lists.insert(lists.end(), next.begin(), next.end());
    layer = next;
  }
  return {{"nat", nats}, {"list", lists}};
}

Verdict solver_fidelity() {
  lf::Signature sig = load_signature("plus_append.elf");
  auto pools = value_pools();
  int compared = 0, solutions = 0;
  for (translate::Mode mode : {translate::Mode::Optimized, translate::Mode::Naive}) {
    hohh::Program p = translate::translate_signature(sig, {mode, true});
    Oracle oracle(sig, mode);
    for (const char* qtext : kCorpus) {
      lf::Query q = lf::parse_query(qtext, sig);
      for (int depth = 0; depth <= 5; ++depth) {
        // solver side
        auto r = solve(sig, p, qtext, mode, depth, 0);
        std::multiset<std::string> got;
        for (const auto& a : r.answers) {
          require(hohh::validate_solution(p, r.goal.formula, r.goal.watch, a.solution),
                  std::string(qtext) + ": replay failed");
          require(a.closed, std::string(qtext) + ": open answer " + a.error);
          got.insert(show(a) + " @" + std::to_string(a.cost));
        }
        require(r.suspended.empty(), std::string(qtext) + ": suspended answers");
        // oracle side: free variables range over the pools
        auto sp = lf::spine(q.type);
        auto kp = lf::pi_prefix(sig.find(sp.head->name())->classifier);
        std::vector<std::pair<std::string, const std::vector<lf::Expr>*>> fv;
        for (const auto& x : q.free_vars)
          for (std::size_t i = 0; i < sp.args.size(); ++i)
            if (sp.args[i]->is_var() && sp.args[i]->name() == x) {
              fv.emplace_back(x, &pools.at(kp.binders[i].second->name()));
              break;
            }
        require(fv.size() == q.free_vars.size(), std::string(qtext) + ": free variable not an argument");
        std::multiset<std::string> want;
        std::vector<std::size_t> idx(fv.size(), 0);
        for (;;) {
          lf::Bindings vals;
          for (std::size_t k = 0; k < fv.size(); ++k) vals[fv[k].first] = (*fv[k].second)[idx[k]];
          lf::Expr t = lf::beta_normalize(lf::substitute(q.type, vals));
          for (const auto& d : oracle.enumerate(t, depth)) {
            std::string s;
            for (const auto& x : q.free_vars) s += x + "=" + lf::to_string(vals[x]) + " ";
            want.insert(s + "M=" + lf::to_string(d.object) + " @" + std::to_string(d.cost));
          }
          std::size_t k = 0;
          while (k < idx.size() && ++idx[k] == fv[k].second->size()) idx[k++] = 0;
          if (k == idx.size()) break;
        }
        if (got != want) {
          std::ostringstream m;
          m << qtext << " (" << (mode == translate::Mode::Naive ? "naive" : "optimized") << ", depth " << depth
            << "): solver " << got.size() << ", oracle " << want.size();
          for (const auto& s : want)
            if (!got.count(s)) m << "; missing " << s;
          for (const auto& s : got)
            if (!want.count(s)) m << "; extra " << s;
          throw Failure(m.str());
        }
        ++compared;
        solutions += static_cast<int>(got.size());
      }
    }
  }
  return {true, std::to_string(compared) + " query/depth/mode runs, " + std::to_string(solutions) +
                    " solutions, all replayed"};
}

}  // namespace

int main(int argc, char** argv) {
  std::set<int> only;
  for (int i = 1; i < argc; ++i) only.insert(std::atoi(argv[i]));
  struct Item {
    int id;
    const char* name;
    Verdict (*run)();
  };
  const Item items[] = {
      {1, "naive translation of append matches the golden file", naive_golden},
      {2, "optimized translation of append matches the golden file", optimized_golden},
      {3, "strictness through the context for f", strict_f},
      {4, "worked append query and checked inhabitant", worked_query},
      {5, "existential append query", existential_query},
      {6, "divergence examples", divergence},
      {7, "invert after encode is the identity", round_trip},
      {8, "naive and optimized modes agree", mode_equivalence},
      {9, "strict binders are typed by the target", strictness_probe},
      {10, "solver agrees with exhaustive enumeration", solver_fidelity},
  };
  int failed = 0, ran = 0;
  for (const auto& it : items) {
    if (!only.empty() && !only.count(it.id)) continue;
    Verdict v;
    auto t0 = std::chrono::steady_clock::now();
    try {
      v = it.run();
    } catch (const std::exception& e) {
      v = {false, e.what()};
    }
    ++ran;
    if (!v.ok) ++failed;
    double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    std::printf("%s %2d  %s: %s (%.0f ms)\n", v.ok ? "PASS" : "FAIL", it.id, it.name, v.detail.c_str(), ms);
    std::fflush(stdout);
  }
  std::printf("%d/%d criteria passed\n", ran - failed, ran);
  return failed == 0 ? 0 : 1;
}
