#include "lftrans/translator.hpp"

#include <cctype>
#include <sstream>
#include <stdexcept>

#include "lftrans/lf_kernel.hpp"
#include "lftrans/strictness.hpp"

namespace lftrans::translate {

using hohh::Formula;
using hohh::SimpleType;
using hohh::Term;

SimpleType phi(const lf::Expr& e) {
  if (e->is_type()) return hohh::lf_type();
  if (e->is_pi()) return hohh::arrow_type(phi(e->binder_type()), phi(e->body()));
  return hohh::lf_obj();
}

namespace {

Scope pushed(const Scope& s, const std::string& x) {
  Scope out = s;
  out.bound.push_back(x);
  return out;
}

Term apply_to_bvar0(const Term& subject) { return hohh::apply_term(hohh::shift(subject, 1), {hohh::mk_bvar(0)}); }

Formula hastype(const Term& subject, const lf::Expr& base, const Scope& scope) {
  return hohh::f_atom(kHastype, {subject, encode(base, scope)});
}

}  // namespace

Term encode(const lf::Expr& e, const Scope& scope) {
  switch (e->tag()) {
    case lf::Tag::Const:
      return hohh::mk_const(e->name());
    case lf::Tag::Var: {
      const auto& b = scope.bound;
      for (std::size_t i = b.size(); i-- > 0;)
        if (b[i] == e->name()) return hohh::mk_bvar(static_cast<int>(b.size() - 1 - i));
      auto it = scope.free.find(e->name());
      if (it != scope.free.end()) return hohh::shift(it->second, static_cast<int>(b.size()));
      throw std::invalid_argument("encode: unbound variable " + e->name());
    }
    case lf::Tag::Lam:
      return hohh::mk_lam(phi(e->binder_type()), encode(e->body(), pushed(scope, e->name())), e->name());
    case lf::Tag::App: {
      auto sp = lf::spine(e);
      std::vector<Term> args;
      for (const auto& a : sp.args) args.push_back(encode(a, scope));
      return hohh::apply_term(encode(sp.head, scope), args);
    }
    case lf::Tag::Type:
    case lf::Tag::Pi:
      break;
  }
  throw std::invalid_argument("encode: not an object or base type: " + lf::to_string(e));
}

Formula translate_naive(const lf::Expr& type, const Term& subject, const Scope& scope) {
  if (!type->is_pi()) return hastype(subject, type, scope);
  Formula premise = translate_naive(type->binder_type(), hohh::mk_bvar(0), pushed(scope, ""));
  Formula rest = translate_naive(type->body(), apply_to_bvar0(subject), pushed(scope, type->name()));
  return hohh::f_all(type->name(), phi(type->binder_type()), hohh::f_imp(premise, rest));
}

Formula translate_pos(const lf::Context& gamma, const lf::Expr& type, const Term& subject, const Scope& scope) {
  if (!type->is_pi()) return hastype(subject, type, scope);
  const std::string& x = type->name();
  Formula premise = strictness::strict_in_type(gamma, x, type->body())
                        ? hohh::f_top()
                        : translate_neg(type->binder_type(), hohh::mk_bvar(0), pushed(scope, ""));
  lf::Context inner = gamma;
  inner.push(x, type->binder_type());
  Formula rest = translate_pos(inner, type->body(), apply_to_bvar0(subject), pushed(scope, x));
  return hohh::f_all(x, phi(type->binder_type()), hohh::f_imp(premise, rest));
}

Formula translate_neg(const lf::Expr& type, const Term& subject, const Scope& scope) {
  if (!type->is_pi()) return hastype(subject, type, scope);
  Formula premise = translate_pos({}, type->binder_type(), hohh::mk_bvar(0), pushed(scope, ""));
  Formula rest = translate_neg(type->body(), apply_to_bvar0(subject), pushed(scope, type->name()));
  return hohh::f_all(type->name(), phi(type->binder_type()), hohh::f_imp(premise, rest));
}

Formula translate_goal(const lf::Expr& type, const Term& subject, Mode mode, const Scope& scope) {
  return mode == Mode::Naive ? translate_naive(type, subject, scope) : translate_neg(type, subject, scope);
}

Formula simplify_top(const Formula& f) {
  switch (f->tag) {
    case hohh::FormTag::Imp:
      if (f->left->tag == hohh::FormTag::Top) return simplify_top(f->right);
      return hohh::f_imp(simplify_top(f->left), simplify_top(f->right));
    case hohh::FormTag::All:
      return hohh::f_all(f->hint, f->type, simplify_top(f->right));
    default:
      return f;
  }
}

hohh::Program translate_signature(const lf::Signature& sig, const Options& options) {
  hohh::Program p;
  p.kinds = {"lf_obj", "lf_type"};
  p.constants.emplace_back(kHastype, hohh::arrow_type({hohh::lf_obj(), hohh::lf_type()}, hohh::prop()));
  for (const auto& d : sig.decls()) {
    p.constants.emplace_back(d.name, phi(d.classifier));
    if (lf::is_kind(d.classifier)) continue;
    Term c = hohh::mk_const(d.name);
    Formula clause = options.mode == Mode::Naive ? translate_naive(d.classifier, c) : translate_pos({}, d.classifier, c);
    if (options.simplify) clause = simplify_top(clause);
    p.clauses.push_back(clause);
  }
  return p;
}

// ---------------------------------------------------------------------------
// Emission

namespace {

void emit_decls(std::ostream& out, const hohh::Program& p) {
  for (const auto& k : p.kinds) out << "kind " << k << " type.\n";
  for (const auto& [c, t] : p.constants) out << "type " << c << " " << hohh::to_string(t) << ".\n";
}

void emit_clauses(std::ostream& out, const hohh::Program& p) {
  for (const auto& c : p.clauses) out << hohh::to_string(c) << ".\n";
}

}  // namespace

std::string emit_lambdaprolog(const hohh::Program& p) {
  std::ostringstream out;
  emit_decls(out, p);
  out << "\n";
  emit_clauses(out, p);
  return out.str();
}

SplitModule emit_split(const hohh::Program& p, const std::string& name) {
  std::ostringstream sig, mod;
  sig << "sig " << name << ".\n\n";
  emit_decls(sig, p);
  mod << "module " << name << ".\n\n";
  emit_clauses(mod, p);
  return {sig.str(), mod.str()};
}

// ---------------------------------------------------------------------------
// Reading

namespace {

enum class Tk { Ident, LParen, RParen, Backslash, Arrow, Imp, Dot, End };

struct Token {
  Tk kind;
  std::string text;
  int line;
};

std::vector<Token> tokenize(const std::string& s) {
  std::vector<Token> out;
  int line = 1;
  std::size_t i = 0;
  auto ident_char = [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\''; };
  while (i < s.size()) {
    char c = s[i];
    if (c == '\n') {
      ++line;
      ++i;
    } else if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
    } else if (c == '%') {
      while (i < s.size() && s[i] != '\n') ++i;
    } else if (c == '(') {
      out.push_back({Tk::LParen, "(", line});
      ++i;
    } else if (c == ')') {
      out.push_back({Tk::RParen, ")", line});
      ++i;
    } else if (c == '\\') {
      out.push_back({Tk::Backslash, "\\", line});
      ++i;
    } else if (c == '.') {
      out.push_back({Tk::Dot, ".", line});
      ++i;
    } else if (s.compare(i, 2, "->") == 0) {
      out.push_back({Tk::Arrow, "->", line});
      i += 2;
    } else if (s.compare(i, 2, "=>") == 0) {
      out.push_back({Tk::Imp, "=>", line});
      i += 2;
    } else if (ident_char(c)) {
      std::size_t j = i;
      while (j < s.size() && ident_char(s[j])) ++j;
      out.push_back({Tk::Ident, s.substr(i, j - i), line});
      i = j;
    } else {
      throw ReadError("line " + std::to_string(line) + ": unexpected character '" + std::string(1, c) + "'");
    }
  }
  out.push_back({Tk::End, "", line});
  return out;
}

class Reader {
 public:
  explicit Reader(std::vector<Token> toks) : toks_(std::move(toks)) {}

  const Token& peek(std::size_t k = 0) const { return toks_[std::min(pos_ + k, toks_.size() - 1)]; }
  bool at(Tk k) const { return peek().kind == k; }

  const Token& expect(Tk k, const char* what) {
    if (!at(k)) throw ReadError("line " + std::to_string(peek().line) + ": expected " + what + ", found '" + peek().text + "'");
    return toks_[pos_++];
  }

  SimpleType type() {
    SimpleType a = type_atom();
    if (at(Tk::Arrow)) {
      ++pos_;
      return hohh::arrow_type(a, type());
    }
    return a;
  }

  SimpleType type_atom() {
    if (at(Tk::LParen)) {
      ++pos_;
      SimpleType t = type();
      expect(Tk::RParen, "')'");
      return t;
    }
    return hohh::atom_type(expect(Tk::Ident, "a type").text);
  }

  Formula formula() {
    Formula f = formula_atom();
    if (at(Tk::Imp)) {
      ++pos_;
      return hohh::f_imp(f, formula());
    }
    return f;
  }

  Formula formula_atom() {
    if (at(Tk::LParen)) {
      ++pos_;
      Formula f = formula();
      expect(Tk::RParen, "')'");
      return f;
    }
    const Token& t = expect(Tk::Ident, "a formula");
    if (t.text == "true") return hohh::f_top();
    if (t.text == "pi") {
      bool paren = at(Tk::LParen);
      if (paren) ++pos_;
      std::string x = expect(Tk::Ident, "a bound variable").text;
      expect(Tk::Backslash, "'\\'");
      names_.push_back(x);
      Formula body = formula();
      names_.pop_back();
      if (paren) expect(Tk::RParen, "')'");
      return hohh::f_all(x, nullptr, body);
    }
    std::vector<Term> args;
    while (starts_term()) args.push_back(term_atom());
    return hohh::f_atom(t.text, std::move(args));
  }

  bool starts_term() const { return at(Tk::Ident) || at(Tk::LParen); }

  Term term() {
    if (at(Tk::Ident) && peek(1).kind == Tk::Backslash) {
      std::string x = toks_[pos_].text;
      pos_ += 2;
      names_.push_back(x);
      Term body = term();
      names_.pop_back();
      return hohh::mk_lam(nullptr, body, x);
    }
    Term head = term_atom();
    std::vector<Term> args;
    while (starts_term()) args.push_back(term_atom());
    return hohh::apply_term(head, args);
  }

  Term term_atom() {
    if (at(Tk::LParen)) {
      ++pos_;
      Term t = term();
      expect(Tk::RParen, "')'");
      return t;
    }
    std::string x = expect(Tk::Ident, "a term").text;
    for (std::size_t i = names_.size(); i-- > 0;)
      if (names_[i] == x) return hohh::mk_bvar(static_cast<int>(names_.size() - 1 - i));
    return hohh::mk_const(x);
  }

  hohh::Program program() {
    hohh::Program p;
    while (!at(Tk::End)) {
      if (at(Tk::Ident) && (peek().text == "sig" || peek().text == "module") && peek(1).kind == Tk::Ident &&
          peek(2).kind == Tk::Dot) {
        pos_ += 3;
        continue;
      }
      if (at(Tk::Ident) && peek().text == "kind") {
        ++pos_;
        std::string name = expect(Tk::Ident, "a kind name").text;
        std::string t = expect(Tk::Ident, "'type'").text;
        if (t != "type") throw ReadError("only `type` kinds are supported");
        expect(Tk::Dot, "'.'");
        p.kinds.push_back(name);
        continue;
      }
      if (at(Tk::Ident) && peek().text == "type" && peek(1).kind == Tk::Ident) {
        ++pos_;
        std::string name = expect(Tk::Ident, "a constant").text;
        SimpleType t = type();
        expect(Tk::Dot, "'.'");
        p.constants.emplace_back(name, t);
        continue;
      }
      p.clauses.push_back(formula());
      expect(Tk::Dot, "'.'");
    }
    return p;
  }

  bool done() const { return at(Tk::End); }

 private:
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  std::vector<std::string> names_;
};

bool formula_shape_equal(const Formula& a, const Formula& b) {
  if (a->tag != b->tag) return false;
  switch (a->tag) {
    case hohh::FormTag::Top:
      return true;
    case hohh::FormTag::Atom:
      if (a->pred != b->pred || a->args.size() != b->args.size()) return false;
      for (std::size_t i = 0; i < a->args.size(); ++i)
        if (!hohh::term_equal(a->args[i], b->args[i])) return false;
      return true;
    case hohh::FormTag::Imp:
      return formula_shape_equal(a->left, b->left) && formula_shape_equal(a->right, b->right);
    case hohh::FormTag::All:
      return formula_shape_equal(a->right, b->right);
  }
  return false;
}

}  // namespace

hohh::Program read_lambdaprolog(const std::string& text) {
  Reader r(tokenize(text));
  return r.program();
}

Formula read_formula(const std::string& text) {
  Reader r(tokenize(text));
  Formula f = r.formula();
  if (r.at(Tk::Dot)) r.expect(Tk::Dot, "'.'");
  if (!r.done()) throw ReadError("trailing input after formula");
  return f;
}

bool same_program(const hohh::Program& a, const hohh::Program& b, std::string* why) {
  auto fail = [&](const std::string& m) {
    if (why) *why = m;
    return false;
  };
  if (a.kinds != b.kinds) return fail("kind declarations differ");
  if (a.constants.size() != b.constants.size()) return fail("number of type declarations differs");
  for (std::size_t i = 0; i < a.constants.size(); ++i) {
    if (a.constants[i].first != b.constants[i].first) return fail("declaration " + std::to_string(i + 1) + ": " + a.constants[i].first + " vs " + b.constants[i].first);
    if (!hohh::same_type(a.constants[i].second, b.constants[i].second))
      return fail("type of " + a.constants[i].first + " differs");
  }
  if (a.clauses.size() != b.clauses.size()) return fail("number of clauses differs");
  for (std::size_t i = 0; i < a.clauses.size(); ++i)
    if (!formula_shape_equal(a.clauses[i], b.clauses[i]))
      return fail("clause " + std::to_string(i + 1) + " differs: " + hohh::to_string(a.clauses[i]) + "  vs  " +
                  hohh::to_string(b.clauses[i]));
  return true;
}

}  // namespace lftrans::translate
