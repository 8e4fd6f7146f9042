#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

// Simply typed lambda terms and hereditary Harrop formulas.
//
// Bound variables are de Bruijn indices; binder names are kept only as hints
// for printing. Terms are kept in spine form: an App node has a non-App head
// and at least one argument.

namespace lftrans::hohh {

struct SimpleTypeNode;
using SimpleType = std::shared_ptr<const SimpleTypeNode>;

struct SimpleTypeNode {
  std::string atom;  // empty for an arrow
  SimpleType dom;
  SimpleType cod;
  bool is_arrow() const { return atom.empty(); }
};

SimpleType atom_type(const std::string& name);
SimpleType arrow_type(SimpleType a, SimpleType b);
SimpleType arrow_type(const std::vector<SimpleType>& args, SimpleType result);
SimpleType lf_obj();
SimpleType lf_type();
SimpleType prop();  // o
bool same_type(const SimpleType& a, const SimpleType& b);
std::vector<SimpleType> arg_types(const SimpleType& t);
SimpleType result_type(const SimpleType& t);
std::string to_string(const SimpleType& t);

enum class TermTag { Const, Eigen, LVar, BVar, Lam, App };

struct TermNode;
using Term = std::shared_ptr<const TermNode>;

struct TermNode {
  TermTag tag;
  std::string name;  // constant name, or a hint for the other kinds
  int index = 0;     // bvar index; eigen / logic variable id
  int level = 0;     // eigen / logic variable level
  SimpleType type;   // lambda binder type; eigen / logic variable type
  Term body;         // Lam
  Term head;         // App
  std::vector<Term> args;

  bool is(TermTag t) const { return tag == t; }
};

Term mk_const(const std::string& name);
Term mk_eigen(int id, int level, SimpleType type, std::string hint = "");
Term mk_lvar(int id, int level, SimpleType type, std::string hint = "");
Term mk_bvar(int index);
Term mk_lam(SimpleType type, Term body, std::string hint = "");
// Builds an application in spine form without reducing.
Term mk_app(const Term& head, const std::vector<Term>& args);

const Term& head_of(const Term& t);
const std::vector<Term>& args_of(const Term& t);

// Adds d to every bound variable index >= cutoff.
Term shift(const Term& t, int d, int cutoff = 0);
// Replaces bound variable j by u, lowering the indices above j, and reduces
// any redex this creates.
Term subst(const Term& t, int j, const Term& u);
// Beta-reducing application.
Term apply_term(const Term& f, const std::vector<Term>& args);
Term beta_normal(const Term& t);

bool has_loose_bvars(const Term& t, int depth = 0);
bool occurs_lvar(int id, const Term& t);
// Syntactic equality (alpha-equivalence, as indices are nameless).
bool term_equal(const Term& a, const Term& b);
// Equality up to eta; both arguments beta-normal.
bool term_eq_eta(const Term& a, const Term& b);

// Eta-long form, using `const_type` for constants and the recorded types of
// eigenvariables and logic variables. `t` is beta-normal of type `ty`.
using ConstTypes = std::map<std::string, SimpleType>;
Term eta_long(const Term& t, const SimpleType& ty, const ConstTypes& const_type);

// Formulas: G ::= T | A | D => G | pi x\ G, D ::= A | G => D | pi x\ D.
enum class FormTag { Top, Atom, Imp, All };

struct FormulaNode;
using Formula = std::shared_ptr<const FormulaNode>;

struct FormulaNode {
  FormTag tag;
  std::string pred;        // Atom
  std::vector<Term> args;  // Atom
  Formula left;            // Imp: premise
  Formula right;           // Imp: conclusion; All: body
  std::string hint;        // All
  SimpleType type;         // All
};

Formula f_top();
Formula f_atom(std::string pred, std::vector<Term> args);
Formula f_imp(Formula premise, Formula conclusion);
Formula f_all(std::string hint, SimpleType type, Formula body);

Formula f_shift(const Formula& f, int d, int cutoff = 0);
Formula f_subst(const Formula& f, int j, const Term& u);
bool formula_equal(const Formula& a, const Formula& b);

struct Program {
  // Declared constants in declaration order (the hohh signature).
  std::vector<std::pair<std::string, SimpleType>> constants;
  // Atomic type names declared with `kind`.
  std::vector<std::string> kinds;
  std::vector<Formula> clauses;

  const SimpleType* constant_type(const std::string& name) const;
  ConstTypes constant_types() const;
};

// Printing in lambda Prolog concrete syntax. Bound names come from the hints.
std::string to_string(const Term& t);
std::string to_string(const Formula& f);

}  // namespace lftrans::hohh
