#include "lftrans/lf_syntax.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace lftrans::lf {

Expr type_kind() {
  static const Expr t = std::make_shared<const Node>(Tag::Type, "type", nullptr, nullptr);
  return t;
}
Expr constant(std::string name) {
  return std::make_shared<const Node>(Tag::Const, std::move(name), nullptr, nullptr);
}
Expr var(std::string name) {
  return std::make_shared<const Node>(Tag::Var, std::move(name), nullptr, nullptr);
}
Expr pi(std::string x, Expr a, Expr b) {
  return std::make_shared<const Node>(Tag::Pi, std::move(x), std::move(a), std::move(b));
}
Expr lam(std::string x, Expr a, Expr m) {
  return std::make_shared<const Node>(Tag::Lam, std::move(x), std::move(a), std::move(m));
}
Expr app(Expr f, Expr a) {
  return std::make_shared<const Node>(Tag::App, std::string{}, std::move(f), std::move(a));
}
Expr apply_args(Expr head, const std::vector<Expr>& args) {
  for (const auto& a : args) head = app(std::move(head), a);
  return head;
}
Expr arrow(Expr a, Expr b) {
  auto avoid = free_vars(b);
  auto fa = free_vars(a);
  avoid.insert(fa.begin(), fa.end());
  return pi(fresh_name("x", avoid), std::move(a), std::move(b));
}

Spine spine(const Expr& e) {
  Spine s;
  Expr cur = e;
  while (cur->is_app()) {
    s.args.push_back(cur->arg());
    cur = cur->fun();
  }
  std::reverse(s.args.begin(), s.args.end());
  s.head = cur;
  return s;
}

PiPrefix pi_prefix(const Expr& e) {
  PiPrefix p;
  Expr cur = e;
  while (cur->is_pi()) {
    p.binders.emplace_back(cur->name(), cur->binder_type());
    cur = cur->body();
  }
  p.target = cur;
  return p;
}

namespace {

void collect_free(const Expr& e, std::vector<std::string>& bound, std::set<std::string>& out) {
  switch (e->tag()) {
    case Tag::Type:
    case Tag::Const:
      return;
    case Tag::Var:
      if (std::find(bound.begin(), bound.end(), e->name()) == bound.end()) out.insert(e->name());
      return;
    case Tag::Pi:
    case Tag::Lam:
      collect_free(e->binder_type(), bound, out);
      bound.push_back(e->name());
      collect_free(e->body(), bound, out);
      bound.pop_back();
      return;
    case Tag::App:
      collect_free(e->fun(), bound, out);
      collect_free(e->arg(), bound, out);
      return;
  }
}

bool occurs_free_impl(const std::string& x, const Expr& e) {
  switch (e->tag()) {
    case Tag::Type:
    case Tag::Const:
      return false;
    case Tag::Var:
      return e->name() == x;
    case Tag::Pi:
    case Tag::Lam:
      if (occurs_free_impl(x, e->binder_type())) return true;
      return e->name() != x && occurs_free_impl(x, e->body());
    case Tag::App:
      return occurs_free_impl(x, e->fun()) || occurs_free_impl(x, e->arg());
  }
  return false;
}

void collect_consts(const Expr& e, std::set<std::string>& out) {
  switch (e->tag()) {
    case Tag::Type:
    case Tag::Var:
      return;
    case Tag::Const:
      out.insert(e->name());
      return;
    case Tag::Pi:
    case Tag::Lam:
      collect_consts(e->binder_type(), out);
      collect_consts(e->body(), out);
      return;
    case Tag::App:
      collect_consts(e->fun(), out);
      collect_consts(e->arg(), out);
      return;
  }
}

}  // namespace

std::set<std::string> free_vars(const Expr& e) {
  std::vector<std::string> bound;
  std::set<std::string> out;
  collect_free(e, bound, out);
  return out;
}

bool occurs_free(const std::string& x, const Expr& e) { return occurs_free_impl(x, e); }

std::set<std::string> constants(const Expr& e) {
  std::set<std::string> out;
  collect_consts(e, out);
  return out;
}

namespace {

using BinderEnv = std::vector<std::pair<std::string, std::string>>;

// Position of the innermost binding of x, counted from the inside; -1 if free.
int bound_depth(const BinderEnv& env, const std::string& x, bool left) {
  for (std::size_t i = env.size(); i-- > 0;) {
    const auto& name = left ? env[i].first : env[i].second;
    if (name == x) return static_cast<int>(env.size() - 1 - i);
  }
  return -1;
}

bool alpha_eq(const Expr& a, const Expr& b, BinderEnv& env) {
  if (a->tag() != b->tag()) return false;
  switch (a->tag()) {
    case Tag::Type:
      return true;
    case Tag::Const:
      return a->name() == b->name();
    case Tag::Var: {
      int da = bound_depth(env, a->name(), true);
      int db = bound_depth(env, b->name(), false);
      if (da < 0 && db < 0) return a->name() == b->name();
      return da == db;
    }
    case Tag::Pi:
    case Tag::Lam: {
      if (!alpha_eq(a->binder_type(), b->binder_type(), env)) return false;
      env.emplace_back(a->name(), b->name());
      bool ok = alpha_eq(a->body(), b->body(), env);
      env.pop_back();
      return ok;
    }
    case Tag::App:
      return alpha_eq(a->fun(), b->fun(), env) && alpha_eq(a->arg(), b->arg(), env);
  }
  return false;
}

}  // namespace

bool alpha_equal(const Expr& a, const Expr& b) {
  BinderEnv env;
  return alpha_eq(a, b, env);
}

std::string fresh_name(const std::string& base, const std::set<std::string>& avoid) {
  if (!avoid.count(base)) return base;
  std::string stem = base;
  while (!stem.empty() && std::isdigit(static_cast<unsigned char>(stem.back()))) stem.pop_back();
  if (stem.empty()) stem = "x";
  for (int i = 1;; ++i) {
    std::string candidate = stem + std::to_string(i);
    if (!avoid.count(candidate)) return candidate;
  }
}

bool is_capitalized(std::string_view name) {
  return !name.empty() && std::isupper(static_cast<unsigned char>(name.front()));
}

ParseError::ParseError(const std::string& what, SourcePos pos)
    : std::runtime_error(std::to_string(pos.line) + ":" + std::to_string(pos.column) + ": " + what),
      pos_(pos) {}

void Signature::add(Decl d) {
  if (index_.count(d.name)) throw std::invalid_argument("duplicate declaration `" + d.name + "`");
  index_.emplace(d.name, decls_.size());
  decls_.push_back(std::move(d));
}

const Decl* Signature::find(const std::string& name) const {
  auto it = index_.find(name);
  return it == index_.end() ? nullptr : &decls_[it->second];
}

const Expr* Context::lookup(const std::string& x) const {
  for (std::size_t i = bindings_.size(); i-- > 0;)
    if (bindings_[i].first == x) return &bindings_[i].second;
  return nullptr;
}

std::set<std::string> Context::names() const {
  std::set<std::string> out;
  for (const auto& [x, a] : bindings_) out.insert(x);
  return out;
}

// ---------------------------------------------------------------------------
// Lexer

namespace {

enum class Tok { Ident, Type, LBrace, RBrace, LBrack, RBrack, LParen, RParen, Colon, Dot, Arrow, End };

struct Token {
  Tok kind;
  std::string text;
  SourcePos pos;
};

bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
}

std::vector<Token> lex(std::string_view src) {
  std::vector<Token> out;
  int line = 1, col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k, ++i) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  while (i < src.size()) {
    char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    if (c == '%') {
      while (i < src.size() && src[i] != '\n') advance(1);
      continue;
    }
    SourcePos pos{line, col};
    auto single = [&](Tok t) {
      out.push_back({t, std::string(1, c), pos});
      advance(1);
    };
    switch (c) {
      case '{': single(Tok::LBrace); continue;
      case '}': single(Tok::RBrace); continue;
      case '[': single(Tok::LBrack); continue;
      case ']': single(Tok::RBrack); continue;
      case '(': single(Tok::LParen); continue;
      case ')': single(Tok::RParen); continue;
      case ':': single(Tok::Colon); continue;
      case '.': single(Tok::Dot); continue;
      default: break;
    }
    if (c == '-' && i + 1 < src.size() && src[i + 1] == '>') {
      out.push_back({Tok::Arrow, "->", pos});
      advance(2);
      continue;
    }
    if (ident_char(c)) {
      std::size_t start = i;
      while (i < src.size() && ident_char(src[i])) advance(1);
      std::string text(src.substr(start, i - start));
      out.push_back({text == "type" ? Tok::Type : Tok::Ident, text, pos});
      continue;
    }
    throw ParseError(std::string("unexpected character '") + c + "'", pos);
  }
  out.push_back({Tok::End, "", {line, col}});
  return out;
}

const char* describe(Tok t) {
  switch (t) {
    case Tok::Ident: return "identifier";
    case Tok::Type: return "`type`";
    case Tok::LBrace: return "`{`";
    case Tok::RBrace: return "`}`";
    case Tok::LBrack: return "`[`";
    case Tok::RBrack: return "`]`";
    case Tok::LParen: return "`(`";
    case Tok::RParen: return "`)`";
    case Tok::Colon: return "`:`";
    case Tok::Dot: return "`.`";
    case Tok::Arrow: return "`->`";
    case Tok::End: return "end of input";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Parser

class Parser {
 public:
  Parser(const std::vector<Token>& toks, std::size_t pos, std::set<std::string> avoid)
      : toks_(toks), pos_(pos), avoid_(std::move(avoid)) {}

  // Identifiers that resolve to variables when unbound.
  std::set<std::string> free_candidates;
  std::vector<std::string> free_seen;

  std::size_t position() const { return pos_; }
  const Token& peek() const { return toks_[pos_]; }

  Expr term() {
    const Token& t = peek();
    if (t.kind == Tok::LBrace || t.kind == Tok::LBrack) {
      bool is_pi = t.kind == Tok::LBrace;
      Tok close = is_pi ? Tok::RBrace : Tok::RBrack;
      ++pos_;
      const Token& x = expect(Tok::Ident);
      expect(Tok::Colon);
      Expr a = term();
      expect_closing(close, t);
      std::string internal = bind_name(x.text);
      scope_.emplace_back(x.text, internal);
      Expr b = term();
      scope_.pop_back();
      return is_pi ? pi(internal, a, b) : lam(internal, a, b);
    }
    Expr lhs = application();
    if (peek().kind == Tok::Arrow) {
      ++pos_;
      Expr rhs = term();
      std::string x = fresh_name("x", avoid_);
      avoid_.insert(x);
      return pi(x, lhs, rhs);
    }
    return lhs;
  }

  const Token& expect(Tok kind) {
    const Token& t = peek();
    if (t.kind != kind) {
      throw ParseError(std::string("expected ") + describe(kind) + ", found " + describe(t.kind) +
                           (t.text.empty() ? "" : " `" + t.text + "`"),
                       t.pos);
    }
    ++pos_;
    return t;
  }

 private:
  bool starts_atom(Tok k) const { return k == Tok::Ident || k == Tok::Type || k == Tok::LParen; }

  Expr application() {
    Expr head = atom();
    while (starts_atom(peek().kind)) head = app(head, atom());
    return head;
  }

  Expr atom() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::Ident:
        ++pos_;
        return resolve(t.text);
      case Tok::Type:
        ++pos_;
        return type_kind();
      case Tok::LParen: {
        ++pos_;
        Expr e = term();
        expect_closing(Tok::RParen, t);
        return e;
      }
      default:
        throw ParseError(std::string("expected an expression, found ") + describe(t.kind), t.pos);
    }
  }

  void expect_closing(Tok close, const Token& open) {
    if (peek().kind != close) {
      throw ParseError(std::string("unbalanced delimiter: ") + describe(open.kind) + " opened at " +
                           std::to_string(open.pos.line) + ":" + std::to_string(open.pos.column) +
                           " is not closed by " + describe(close) + " (found " +
                           describe(peek().kind) + ")",
                       peek().pos);
    }
    ++pos_;
  }

  std::string bind_name(const std::string& x) {
    bool shadows = std::any_of(scope_.begin(), scope_.end(), [&](const auto& b) { return b.first == x; });
    std::string internal = shadows ? fresh_name(x, avoid_) : x;
    avoid_.insert(internal);
    return internal;
  }

  Expr resolve(const std::string& x) {
    for (std::size_t i = scope_.size(); i-- > 0;)
      if (scope_[i].first == x) return var(scope_[i].second);
    if (free_candidates.count(x)) {
      if (std::find(free_seen.begin(), free_seen.end(), x) == free_seen.end()) free_seen.push_back(x);
      return var(x);
    }
    return constant(x);
  }

  const std::vector<Token>& toks_;
  std::size_t pos_;
  std::set<std::string> avoid_;
  std::vector<std::pair<std::string, std::string>> scope_;
};

// Identifier texts between `from` and the next top-level `.` (or the end).
std::set<std::string> identifiers_until_dot(const std::vector<Token>& toks, std::size_t from) {
  std::set<std::string> out;
  for (std::size_t i = from; i < toks.size() && toks[i].kind != Tok::Dot; ++i)
    if (toks[i].kind == Tok::Ident) out.insert(toks[i].text);
  return out;
}

}  // namespace

Signature parse_signature(std::string_view text) {
  auto toks = lex(text);
  Signature sig;
  std::set<std::string> declared;
  std::size_t pos = 0;
  while (toks[pos].kind != Tok::End) {
    const Token& name = toks[pos];
    if (name.kind != Tok::Ident) {
      throw ParseError(std::string("free token at top level: ") + describe(name.kind) +
                           (name.text.empty() ? "" : " `" + name.text + "`"),
                       name.pos);
    }
    if (toks[pos + 1].kind != Tok::Colon) {
      throw ParseError("free token at top level: `" + name.text + "` is not followed by `:`", name.pos);
    }
    auto avoid = identifiers_until_dot(toks, pos);
    avoid.insert(declared.begin(), declared.end());
    Parser p(toks, pos + 2, std::move(avoid));
    Expr classifier = p.term();
    p.expect(Tok::Dot);
    pos = p.position();
    if (declared.count(name.text))
      throw ParseError("duplicate declaration `" + name.text + "`", name.pos);
    declared.insert(name.text);
    sig.add(Decl{name.text, classifier, name.pos});
  }
  return sig;
}

namespace {

bool is_kind(const Expr& e) {
  Expr cur = e;
  while (cur->is_pi()) cur = cur->body();
  return cur->is_type();
}

}  // namespace

Query parse_query(std::string_view text, const Signature& sig) {
  auto toks = lex(text);
  std::set<std::string> avoid;
  for (const auto& d : sig.decls()) avoid.insert(d.name);
  std::set<std::string> candidates;
  for (const auto& t : toks) {
    if (t.kind != Tok::Ident) continue;
    avoid.insert(t.text);
    if (is_capitalized(t.text) && !sig.contains(t.text)) candidates.insert(t.text);
  }
  Parser p(toks, 0, std::move(avoid));
  p.free_candidates = candidates;
  Expr type = p.term();
  if (p.peek().kind == Tok::Dot) p.expect(Tok::Dot);
  if (p.peek().kind != Tok::End)
    throw ParseError(std::string("unexpected ") + describe(p.peek().kind) + " after query", p.peek().pos);

  // Variables bound by binders in the query shadow candidates, so only the
  // ones actually resolved as free are reported.
  Query q{p.free_seen, type};
  Expr head = spine(pi_prefix(type).target).head;
  if (!head->is_const()) throw ParseError("query head is not a type constant", {1, 1});
  const Decl* d = sig.find(head->name());
  if (d == nullptr || !is_kind(d->classifier))
    throw ParseError("query head `" + head->name() + "` is not a declared type constant", {1, 1});
  return q;
}

Expr parse_expr(std::string_view text, const std::set<std::string>& free) {
  auto toks = lex(text);
  std::set<std::string> avoid;
  for (const auto& t : toks)
    if (t.kind == Tok::Ident) avoid.insert(t.text);
  Parser p(toks, 0, std::move(avoid));
  p.free_candidates = free;
  Expr e = p.term();
  if (p.peek().kind != Tok::End)
    throw ParseError(std::string("unexpected ") + describe(p.peek().kind) + " after expression",
                     p.peek().pos);
  return e;
}

// ---------------------------------------------------------------------------
// Printer

namespace {

enum Prec { kTop = 0, kArrowLhs = 1, kAtom = 2 };

class Printer {
 public:
  std::string print(const Expr& e, int prec) {
    switch (e->tag()) {
      case Tag::Type:
        return "type";
      case Tag::Const:
        return e->name();
      case Tag::Var: {
        for (std::size_t i = scope_.size(); i-- > 0;)
          if (scope_[i].first == e->name()) return scope_[i].second;
        return e->name();
      }
      case Tag::App: {
        std::string s = print(e->fun(), kArrowLhs) + " " + print(e->arg(), kAtom);
        return prec > kArrowLhs ? "(" + s + ")" : s;
      }
      case Tag::Pi:
      case Tag::Lam: {
        std::string a = print(e->binder_type(), kTop);
        std::string s;
        if (e->is_pi() && !occurs_free(e->name(), e->body())) {
          s = print(e->binder_type(), kArrowLhs) + " -> " + print(e->body(), kTop);
        } else {
          std::string shown = display_name(e);
          scope_.emplace_back(e->name(), shown);
          std::string body = print(e->body(), kTop);
          scope_.pop_back();
          s = (e->is_pi() ? "{" : "[") + shown + ":" + a + (e->is_pi() ? "} " : "] ") + body;
        }
        return prec > kTop ? "(" + s + ")" : s;
      }
    }
    return "?";
  }

 private:
  // A binder must not capture a constant of the same name when re-read.
  std::string display_name(const Expr& binder) {
    auto consts = constants(binder->body());
    if (!consts.count(binder->name())) return binder->name();
    auto avoid = consts;
    auto fv = free_vars(binder->body());
    avoid.insert(fv.begin(), fv.end());
    for (const auto& [x, shown] : scope_) avoid.insert(shown);
    return fresh_name(binder->name(), avoid);
  }

  std::vector<std::pair<std::string, std::string>> scope_;
};

}  // namespace

std::string to_string(const Expr& e) {
  Printer p;
  return p.print(e, kTop);
}

std::string to_string(const Signature& sig) {
  std::ostringstream out;
  for (const auto& d : sig.decls()) out << d.name << " : " << to_string(d.classifier) << ".\n";
  return out.str();
}

}  // namespace lftrans::lf
