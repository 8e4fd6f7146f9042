#include <doctest.h>

#include "lftrans/lf_kernel.hpp"
#include "lftrans/translator.hpp"
#include "support/lf_enum.hpp"

using namespace lftrans;
using namespace lftrans::translate;
using lftrans::testing::load_signature;
using lftrans::testing::read_file;

namespace {

std::string golden(const std::string& name) { return read_file(std::string(LFTRANS_TEST_DIR) + "/golden/" + name); }

const hohh::Formula& clause_for(const hohh::Program& p, const std::string& c) {
  for (const auto& f : p.clauses) {
    const hohh::FormulaNode* n = f.get();
    while (n->tag != hohh::FormTag::Atom) n = n->right.get();
    const hohh::Term& h = hohh::head_of(n->args[0]);
    if (h->is(hohh::TermTag::Const) && h->name == c) return f;
  }
  throw std::runtime_error("no clause for " + c);
}

int premises(const hohh::Formula& f) {
  int n = 0;
  for (const hohh::FormulaNode* g = f.get(); g->tag != hohh::FormTag::Atom; g = g->right.get())
    if (g->tag == hohh::FormTag::Imp) ++n;
  return n;
}

const char* const kCorpus[] = {"append.elf", "plus_append.elf", "strict_f.elf", "foo1.elf",
                               "foo2.elf",   "foo_fy.elf",      "stlc.elf"};

}  // namespace

TEST_SUITE("translator") {

TEST_CASE("type translation") {
  CHECK(hohh::to_string(phi(lf::type_kind())) == "lf_type");
  CHECK(hohh::to_string(phi(lf::parse_expr("nat"))) == "lf_obj");
  CHECK(hohh::to_string(phi(lf::parse_expr("append nil l l", {"l"}))) == "lf_obj");
  CHECK(hohh::to_string(phi(lf::parse_expr("{x:nat} list -> type"))) == "lf_obj -> lf_obj -> lf_type");
  CHECK(hohh::to_string(phi(lf::parse_expr("(nat -> nat) -> nat"))) == "(lf_obj -> lf_obj) -> lf_obj");
}

TEST_CASE("term encoding") {
  Scope s;
  s.bound = {"l"};
  CHECK(hohh::to_string(encode(lf::parse_expr("cons z l", {"l"}), s)) == "cons z #0");
  hohh::Term e = encode(lf::parse_expr("[x:nat] s x"));
  REQUIRE(e->is(hohh::TermTag::Lam));
  CHECK(hohh::same_type(e->type, hohh::lf_obj()));
  CHECK(hohh::term_equal(e->body, hohh::mk_app(hohh::mk_const("s"), {hohh::mk_bvar(0)})));
  Scope f;
  f.free["L"] = hohh::mk_lvar(0, 0, hohh::lf_obj(), "L");
  f.bound = {"x"};
  CHECK(hohh::to_string(encode(lf::parse_expr("cons x L", {"x", "L"}), f)) == "cons #0 _L0");
  CHECK_THROWS_AS(encode(lf::parse_expr("q", {"q"})), std::invalid_argument);
}

TEST_CASE("encoding is injective on canonical objects") {
  lf::Signature sig = load_signature("plus_append.elf");
  std::vector<lf::Expr> objs;
  for (const char* t : {"nat", "list", "plus (s z) (s z) (s (s z))", "append (cons z nil) nil (cons z nil)"})
    for (const auto& o : testing::enumerate_objects(sig, {}, lf::parse_expr(t), 10)) objs.push_back(o.term);
  REQUIRE(objs.size() > 50);
  int pairs = 0;
  for (std::size_t i = 0; i < objs.size(); ++i)
    for (std::size_t j = i + 1; j < objs.size(); ++j) {
      CHECK(!hohh::term_equal(encode(objs[i]), encode(objs[j])));
      ++pairs;
    }
  CHECK(pairs > 1000);
}

TEST_CASE("encoding commutes with substitution") {
  lf::Signature sig = load_signature("stlc.elf");
  auto funs = testing::enumerate_objects(sig, {}, lf::parse_expr("tm -> tm"), 4);
  auto args = testing::enumerate_objects(sig, {}, lf::parse_expr("tm"), 5);
  REQUIRE(funs.size() > 5);
  REQUIRE(args.size() > 3);
  int n = 0;
  for (const auto& f : funs)
    for (const auto& a : args) {
      lf::Expr lhs = lf::beta_normalize(lf::app(f.term, a.term));
      CHECK(hohh::term_equal(encode(lhs), hohh::apply_term(encode(f.term), {encode(a.term)})));
      ++n;
    }
  CHECK(n >= 50);
}

TEST_CASE("naive translation of append matches the golden file") {
  hohh::Program p = translate_signature(load_signature("append.elf"), {Mode::Naive, true});
  hohh::Program g = read_lambdaprolog(golden("append_naive.lp"));
  std::string why;
  CHECK_MESSAGE(same_program(p, g, &why), why);
  CHECK(p.clauses.size() == 6);
  // nine signature entries besides hastype
  CHECK(p.constants.size() == 10);
}

TEST_CASE("optimized translation of append matches the golden file") {
  hohh::Program p = translate_signature(load_signature("append.elf"), {Mode::Optimized, true});
  hohh::Program g = read_lambdaprolog(golden("append_optimized.lp"));
  std::string why;
  CHECK_MESSAGE(same_program(p, g, &why), why);
  CHECK(premises(clause_for(p, "appNil")) == 0);
  CHECK(premises(clause_for(p, "appCons")) == 1);
  CHECK(premises(clause_for(p, "cons")) == 2);
}

TEST_CASE("golden comparison detects a changed clause") {
  hohh::Program p = translate_signature(load_signature("append.elf"), {Mode::Naive, true});
  hohh::Program g = read_lambdaprolog(golden("append_optimized.lp"));
  std::string why;
  CHECK(!same_program(p, g, &why));
  CHECK(why.find("clause 5") != std::string::npos);
}

TEST_CASE("the reduced clause for f") {
  hohh::Program p = translate_signature(load_signature("strict_f.elf"), {});
  hohh::Formula want = read_formula("pi x\\ pi y\\ hastype (f x y) (d (y\\ y) (w\\ y\\ x (w y)) y)");
  std::string why;
  hohh::Program a, b;
  a.clauses = {clause_for(p, "f")};
  b.clauses = {want};
  CHECK_MESSAGE(same_program(a, b, &why), why);
}

TEST_CASE("foo clause of the F-Y example keeps both premises") {
  hohh::Program p = translate_signature(load_signature("foo_fy.elf"), {});
  const hohh::Formula& c = clause_for(p, "foo");
  CHECK(premises(c) == 2);
  hohh::Formula want = read_formula(
      "pi Y\\ hastype Y nat => pi F\\ (pi X1\\ hastype X1 nat => hastype (F X1) nat) => hastype (foo Y F) (bar (F Y))");
  hohh::Program a, b;
  a.clauses = {c};
  b.clauses = {want};
  CHECK(same_program(a, b));
}

TEST_CASE("without simplification the true premises stay") {
  hohh::Program p = translate_signature(load_signature("append.elf"), {Mode::Optimized, false});
  std::string s = hohh::to_string(clause_for(p, "appNil"));
  CHECK(s == "pi L\\ (true => hastype (appNil L) (append nil L L))");
  CHECK(premises(clause_for(p, "appCons")) == 5);
  hohh::Program q = translate_signature(load_signature("append.elf"), {Mode::Optimized, true});
  for (std::size_t i = 0; i < p.clauses.size(); ++i)
    CHECK(hohh::formula_equal(simplify_top(p.clauses[i]), q.clauses[i]));
}

TEST_CASE("simplification") {
  hohh::Formula a = hohh::f_atom("p", {});
  CHECK(hohh::formula_equal(simplify_top(hohh::f_imp(hohh::f_top(), a)), a));
  hohh::Formula nested = hohh::f_imp(hohh::f_imp(hohh::f_top(), a), hohh::f_imp(hohh::f_top(), a));
  CHECK(hohh::to_string(simplify_top(nested)) == "p => p");
  CHECK(hohh::formula_equal(simplify_top(hohh::f_top()), hohh::f_top()));
}

TEST_CASE("negative translation of a dependent goal") {
  lf::Expr t = lf::parse_expr("{l:list} append nil l l");
  hohh::Term m = hohh::mk_lvar(0, 0, hohh::lf_obj(), "M");
  CHECK(hohh::to_string(translate_neg(t, m)) == "pi L\\ (hastype L list => hastype (_M0 L) (append nil L L))");
  CHECK(hohh::to_string(translate_naive(t, m)) == "pi L\\ (hastype L list => hastype (_M0 L) (append nil L L))");
}

TEST_CASE("emission reads back for every signature and mode") {
  for (const char* name : kCorpus) {
    lf::Signature sig = load_signature(name);
    for (Mode mode : {Mode::Naive, Mode::Optimized})
      for (bool simplify : {true, false}) {
        hohh::Program p = translate_signature(sig, {mode, simplify});
        std::string text = emit_lambdaprolog(p);
        CHECK(text == emit_lambdaprolog(translate_signature(sig, {mode, simplify})));
        std::string why;
        CHECK_MESSAGE(same_program(p, read_lambdaprolog(text), &why), name << ": " << why);
        auto split = emit_split(p, "m");
        CHECK(split.sig.rfind("sig m.", 0) == 0);
        CHECK(split.mod.rfind("module m.", 0) == 0);
        CHECK(same_program(p, read_lambdaprolog(split.sig + split.mod)));
      }
  }
}

TEST_CASE("emitted header") {
  std::string text = emit_lambdaprolog(translate_signature(load_signature("foo1.elf"), {}));
  CHECK(text.rfind("kind lf_obj type.\nkind lf_type type.\ntype hastype lf_obj -> lf_type -> o.\n", 0) == 0);
  CHECK(text.find("type bar lf_obj -> lf_type.") != std::string::npos);
}

TEST_CASE("reader errors") {
  CHECK_THROWS_AS(read_lambdaprolog("hastype z nat"), ReadError);
  CHECK_THROWS_AS(read_lambdaprolog("pi x hastype x nat."), ReadError);
  CHECK_THROWS_AS(read_lambdaprolog("type s lf_obj ->."), ReadError);
  CHECK_THROWS_AS(read_formula("hastype z nat ) "), ReadError);
  CHECK_THROWS_AS(read_lambdaprolog("hastype z nat & p."), ReadError);
  CHECK_NOTHROW(read_lambdaprolog("% only a comment\n"));
}

}
