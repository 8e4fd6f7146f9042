#include "lftrans/hohh_term.hpp"

#include <cctype>
#include <set>
#include <stdexcept>

namespace lftrans::hohh {

SimpleType atom_type(const std::string& name) {
  return std::make_shared<SimpleTypeNode>(SimpleTypeNode{name, nullptr, nullptr});
}

SimpleType arrow_type(SimpleType a, SimpleType b) {
  return std::make_shared<SimpleTypeNode>(SimpleTypeNode{"", std::move(a), std::move(b)});
}

SimpleType arrow_type(const std::vector<SimpleType>& args, SimpleType result) {
  SimpleType t = std::move(result);
  for (std::size_t i = args.size(); i-- > 0;) t = arrow_type(args[i], t);
  return t;
}

SimpleType lf_obj() {
  static const SimpleType t = atom_type("lf_obj");
  return t;
}
SimpleType lf_type() {
  static const SimpleType t = atom_type("lf_type");
  return t;
}
SimpleType prop() {
  static const SimpleType t = atom_type("o");
  return t;
}

bool same_type(const SimpleType& a, const SimpleType& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->is_arrow() != b->is_arrow()) return false;
  if (!a->is_arrow()) return a->atom == b->atom;
  return same_type(a->dom, b->dom) && same_type(a->cod, b->cod);
}

std::vector<SimpleType> arg_types(const SimpleType& t) {
  std::vector<SimpleType> out;
  for (SimpleType c = t; c && c->is_arrow(); c = c->cod) out.push_back(c->dom);
  return out;
}

SimpleType result_type(const SimpleType& t) {
  SimpleType c = t;
  while (c && c->is_arrow()) c = c->cod;
  return c;
}

std::string to_string(const SimpleType& t) {
  if (!t) return "?";
  if (!t->is_arrow()) return t->atom;
  std::string d = to_string(t->dom);
  if (t->dom->is_arrow()) d = "(" + d + ")";
  return d + " -> " + to_string(t->cod);
}

// ---------------------------------------------------------------------------
// Terms

namespace {

Term node(TermNode n) { return std::make_shared<const TermNode>(std::move(n)); }

}  // namespace

Term mk_const(const std::string& name) { return node({TermTag::Const, name, 0, 0, nullptr, nullptr, nullptr, {}}); }

Term mk_eigen(int id, int level, SimpleType type, std::string hint) {
  return node({TermTag::Eigen, std::move(hint), id, level, std::move(type), nullptr, nullptr, {}});
}

Term mk_lvar(int id, int level, SimpleType type, std::string hint) {
  return node({TermTag::LVar, std::move(hint), id, level, std::move(type), nullptr, nullptr, {}});
}

Term mk_bvar(int index) { return node({TermTag::BVar, "", index, 0, nullptr, nullptr, nullptr, {}}); }

Term mk_lam(SimpleType type, Term body, std::string hint) {
  return node({TermTag::Lam, std::move(hint), 0, 0, std::move(type), std::move(body), nullptr, {}});
}

Term mk_app(const Term& head, const std::vector<Term>& args) {
  if (args.empty()) return head;
  if (head->is(TermTag::App)) {
    std::vector<Term> all = head->args;
    all.insert(all.end(), args.begin(), args.end());
    return node({TermTag::App, "", 0, 0, nullptr, nullptr, head->head, std::move(all)});
  }
  return node({TermTag::App, "", 0, 0, nullptr, nullptr, head, args});
}

const Term& head_of(const Term& t) { return t->is(TermTag::App) ? t->head : t; }

const std::vector<Term>& args_of(const Term& t) {
  static const std::vector<Term> none;
  return t->is(TermTag::App) ? t->args : none;
}

Term shift(const Term& t, int d, int cutoff) {
  if (d == 0) return t;
  switch (t->tag) {
    case TermTag::BVar:
      return t->index >= cutoff ? mk_bvar(t->index + d) : t;
    case TermTag::Lam:
      return mk_lam(t->type, shift(t->body, d, cutoff + 1), t->name);
    case TermTag::App: {
      std::vector<Term> args;
      args.reserve(t->args.size());
      for (const auto& a : t->args) args.push_back(shift(a, d, cutoff));
      return mk_app(shift(t->head, d, cutoff), args);
    }
    default:
      return t;
  }
}

namespace {

Term subst_at(const Term& t, int j, const Term& u, int depth) {
  switch (t->tag) {
    case TermTag::BVar: {
      int i = t->index;
      if (i < depth) return t;
      if (i == j + depth) return shift(u, depth);
      if (i > j + depth) return mk_bvar(i - 1);
      return t;
    }
    case TermTag::Lam:
      return mk_lam(t->type, subst_at(t->body, j, u, depth + 1), t->name);
    case TermTag::App: {
      std::vector<Term> args;
      args.reserve(t->args.size());
      for (const auto& a : t->args) args.push_back(subst_at(a, j, u, depth));
      Term h = subst_at(t->head, j, u, depth);
      if (h->is(TermTag::Lam)) return apply_term(h, args);
      return mk_app(h, args);
    }
    default:
      return t;
  }
}

}  // namespace

Term subst(const Term& t, int j, const Term& u) { return subst_at(t, j, u, 0); }

Term apply_term(const Term& f, const std::vector<Term>& args) {
  Term cur = f;
  std::size_t i = 0;
  while (i < args.size() && cur->is(TermTag::Lam)) {
    cur = subst(cur->body, 0, args[i]);
    ++i;
  }
  if (i == args.size()) return cur;
  return mk_app(cur, std::vector<Term>(args.begin() + static_cast<std::ptrdiff_t>(i), args.end()));
}

Term beta_normal(const Term& t) {
  switch (t->tag) {
    case TermTag::Lam:
      return mk_lam(t->type, beta_normal(t->body), t->name);
    case TermTag::App: {
      std::vector<Term> args;
      for (const auto& a : t->args) args.push_back(beta_normal(a));
      return apply_term(beta_normal(t->head), args);
    }
    default:
      return t;
  }
}

bool has_loose_bvars(const Term& t, int depth) {
  switch (t->tag) {
    case TermTag::BVar:
      return t->index >= depth;
    case TermTag::Lam:
      return has_loose_bvars(t->body, depth + 1);
    case TermTag::App:
      if (has_loose_bvars(t->head, depth)) return true;
      for (const auto& a : t->args)
        if (has_loose_bvars(a, depth)) return true;
      return false;
    default:
      return false;
  }
}

bool occurs_lvar(int id, const Term& t) {
  switch (t->tag) {
    case TermTag::LVar:
      return t->index == id;
    case TermTag::Lam:
      return occurs_lvar(id, t->body);
    case TermTag::App:
      if (occurs_lvar(id, t->head)) return true;
      for (const auto& a : t->args)
        if (occurs_lvar(id, a)) return true;
      return false;
    default:
      return false;
  }
}

bool term_equal(const Term& a, const Term& b) {
  if (a == b) return true;
  if (a->tag != b->tag) return false;
  switch (a->tag) {
    case TermTag::Const:
      return a->name == b->name;
    case TermTag::Eigen:
    case TermTag::LVar:
    case TermTag::BVar:
      return a->index == b->index;
    case TermTag::Lam:
      return term_equal(a->body, b->body);
    case TermTag::App:
      if (a->args.size() != b->args.size() || !term_equal(a->head, b->head)) return false;
      for (std::size_t i = 0; i < a->args.size(); ++i)
        if (!term_equal(a->args[i], b->args[i])) return false;
      return true;
  }
  return false;
}

bool term_eq_eta(const Term& a, const Term& b) {
  if (a->is(TermTag::Lam) && b->is(TermTag::Lam)) return term_eq_eta(a->body, b->body);
  if (a->is(TermTag::Lam)) return term_eq_eta(a->body, mk_app(shift(b, 1), {mk_bvar(0)}));
  if (b->is(TermTag::Lam)) return term_eq_eta(mk_app(shift(a, 1), {mk_bvar(0)}), b->body);
  const Term& ha = head_of(a);
  const Term& hb = head_of(b);
  if (!term_equal(ha, hb)) return false;
  const auto& xa = args_of(a);
  const auto& xb = args_of(b);
  if (xa.size() != xb.size()) return false;
  for (std::size_t i = 0; i < xa.size(); ++i)
    if (!term_eq_eta(xa[i], xb[i])) return false;
  return true;
}

namespace {

struct EtaLong {
  const ConstTypes& consts;
  std::vector<SimpleType> locals;  // innermost last

  SimpleType head_type(const Term& h) {
    switch (h->tag) {
      case TermTag::Const: {
        auto it = consts.find(h->name);
        if (it == consts.end()) throw std::invalid_argument("eta_long: unknown constant " + h->name);
        return it->second;
      }
      case TermTag::Eigen:
      case TermTag::LVar:
        return h->type;
      case TermTag::BVar:
        return locals.at(locals.size() - 1 - static_cast<std::size_t>(h->index));
      default:
        throw std::invalid_argument("eta_long: term is not beta-normal");
    }
  }

  Term run(const Term& t, const SimpleType& ty) {
    if (ty->is_arrow()) {
      if (t->is(TermTag::Lam)) {
        locals.push_back(ty->dom);
        Term b = run(t->body, ty->cod);
        locals.pop_back();
        return mk_lam(ty->dom, b, t->name);
      }
      Term expanded = mk_app(shift(t, 1), {mk_bvar(0)});
      locals.push_back(ty->dom);
      Term b = run(expanded, ty->cod);
      locals.pop_back();
      return mk_lam(ty->dom, b, "x");
    }
    if (t->is(TermTag::Lam)) throw std::invalid_argument("eta_long: abstraction at a base type");
    const Term& h = head_of(t);
    SimpleType ht = head_type(h);
    std::vector<Term> args;
    for (const auto& a : args_of(t)) {
      if (!ht->is_arrow()) throw std::invalid_argument("eta_long: too many arguments");
      args.push_back(run(a, ht->dom));
      ht = ht->cod;
    }
    return mk_app(h, args);
  }
};

}  // namespace

Term eta_long(const Term& t, const SimpleType& ty, const ConstTypes& const_type) {
  EtaLong e{const_type, {}};
  return e.run(t, ty);
}

// ---------------------------------------------------------------------------
// Formulas

namespace {

Formula fnode(FormulaNode n) { return std::make_shared<const FormulaNode>(std::move(n)); }

}  // namespace

Formula f_top() { return fnode({FormTag::Top, "", {}, nullptr, nullptr, "", nullptr}); }

Formula f_atom(std::string pred, std::vector<Term> args) {
  return fnode({FormTag::Atom, std::move(pred), std::move(args), nullptr, nullptr, "", nullptr});
}

Formula f_imp(Formula premise, Formula conclusion) {
  return fnode({FormTag::Imp, "", {}, std::move(premise), std::move(conclusion), "", nullptr});
}

Formula f_all(std::string hint, SimpleType type, Formula body) {
  return fnode({FormTag::All, "", {}, nullptr, std::move(body), std::move(hint), std::move(type)});
}

Formula f_shift(const Formula& f, int d, int cutoff) {
  switch (f->tag) {
    case FormTag::Top:
      return f;
    case FormTag::Atom: {
      std::vector<Term> args;
      for (const auto& a : f->args) args.push_back(shift(a, d, cutoff));
      return f_atom(f->pred, std::move(args));
    }
    case FormTag::Imp:
      return f_imp(f_shift(f->left, d, cutoff), f_shift(f->right, d, cutoff));
    case FormTag::All:
      return f_all(f->hint, f->type, f_shift(f->right, d, cutoff + 1));
  }
  return f;
}

Formula f_subst(const Formula& f, int j, const Term& u) {
  switch (f->tag) {
    case FormTag::Top:
      return f;
    case FormTag::Atom: {
      std::vector<Term> args;
      for (const auto& a : f->args) args.push_back(subst(a, j, u));
      return f_atom(f->pred, std::move(args));
    }
    case FormTag::Imp:
      return f_imp(f_subst(f->left, j, u), f_subst(f->right, j, u));
    case FormTag::All:
      return f_all(f->hint, f->type, f_subst(f->right, j + 1, u));
  }
  return f;
}

bool formula_equal(const Formula& a, const Formula& b) {
  if (a->tag != b->tag) return false;
  switch (a->tag) {
    case FormTag::Top:
      return true;
    case FormTag::Atom:
      if (a->pred != b->pred || a->args.size() != b->args.size()) return false;
      for (std::size_t i = 0; i < a->args.size(); ++i)
        if (!term_equal(a->args[i], b->args[i])) return false;
      return true;
    case FormTag::Imp:
      return formula_equal(a->left, b->left) && formula_equal(a->right, b->right);
    case FormTag::All:
      return same_type(a->type, b->type) && formula_equal(a->right, b->right);
  }
  return false;
}

const SimpleType* Program::constant_type(const std::string& name) const {
  for (const auto& [c, t] : constants)
    if (c == name) return &t;
  return nullptr;
}

ConstTypes Program::constant_types() const {
  ConstTypes m(constants.begin(), constants.end());
  return m;
}

// ---------------------------------------------------------------------------
// Printing

namespace {

class Printer {
 public:
  std::string term(const Term& t, bool atomic) {
    switch (t->tag) {
      case TermTag::Const:
        return t->name;
      case TermTag::Eigen:
        return t->name.empty() ? "c" + std::to_string(t->index) : t->name;
      case TermTag::LVar:
        return "_" + (t->name.empty() ? std::string("G") : t->name) + std::to_string(t->index);
      case TermTag::BVar: {
        auto i = static_cast<std::size_t>(t->index);
        if (i < names_.size()) return names_[names_.size() - 1 - i];
        return "#" + std::to_string(t->index);
      }
      case TermTag::Lam: {
        std::string x = bind(t->name);
        std::string s = x + "\\ " + term(t->body, false);
        names_.pop_back();
        return atomic ? "(" + s + ")" : s;
      }
      case TermTag::App: {
        std::string s = term(t->head, true);
        for (const auto& a : t->args) s += " " + term(a, true);
        return atomic ? "(" + s + ")" : s;
      }
    }
    return "?";
  }

  std::string formula(const Formula& f, bool atomic) {
    switch (f->tag) {
      case FormTag::Top:
        return "true";
      case FormTag::Atom: {
        std::string s = f->pred;
        for (const auto& a : f->args) s += " " + term(a, true);
        return atomic && !f->args.empty() ? "(" + s + ")" : s;
      }
      case FormTag::Imp: {
        std::string p = formula(f->left, f->left->tag == FormTag::Imp || f->left->tag == FormTag::All);
        std::string c = formula(f->right, f->right->tag == FormTag::All);
        std::string s = p + " => " + c;
        return atomic ? "(" + s + ")" : s;
      }
      case FormTag::All: {
        std::string x = bind(f->hint);
        std::string s = "pi " + x + "\\ (" + formula(f->right, false) + ")";
        names_.pop_back();
        return atomic ? "(" + s + ")" : s;
      }
    }
    return "?";
  }

 private:
  std::string bind(const std::string& hint) {
    std::string base = hint.empty() ? "X" : hint;
    base[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(base[0])));
    std::set<std::string> used(names_.begin(), names_.end());
    std::string x = base;
    for (int k = 1; used.count(x); ++k) x = base + std::to_string(k);
    names_.push_back(x);
    return x;
  }

  std::vector<std::string> names_;
};

}  // namespace

std::string to_string(const Term& t) {
  Printer p;
  return p.term(t, false);
}

std::string to_string(const Formula& f) {
  Printer p;
  return p.formula(f, false);
}

}  // namespace lftrans::hohh
