#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

// Abstract syntax for LF kinds, type families and objects, plus a reader and
// printer for the Twelf-like concrete syntax:
//
//   nat : type.
//   s : nat -> nat.
//   appNil : {l:list} append nil l l.
//   id : {f:nat -> nat} eq f ([x:nat] f x).
//
// All three expression layers share one node type. The layer an expression
// belongs to is decided by the kernel, not by the parser.

namespace lftrans::lf {

enum class Tag { Type, Const, Var, Pi, Lam, App };

class Node;
using Expr = std::shared_ptr<const Node>;

// Names used for documentation; all are the same representation.
using Kind = Expr;
using Family = Expr;
using Object = Expr;

class Node {
 public:
  Node(Tag tag, std::string name, Expr left, Expr right)
      : tag_(tag), name_(std::move(name)), left_(std::move(left)), right_(std::move(right)) {}

  Tag tag() const { return tag_; }
  const std::string& name() const { return name_; }

  // Pi / Lam
  const Expr& binder_type() const { return left_; }
  const Expr& body() const { return right_; }
  // App
  const Expr& fun() const { return left_; }
  const Expr& arg() const { return right_; }

  bool is_type() const { return tag_ == Tag::Type; }
  bool is_const() const { return tag_ == Tag::Const; }
  bool is_var() const { return tag_ == Tag::Var; }
  bool is_pi() const { return tag_ == Tag::Pi; }
  bool is_lam() const { return tag_ == Tag::Lam; }
  bool is_app() const { return tag_ == Tag::App; }

 private:
  Tag tag_;
  std::string name_;
  Expr left_;
  Expr right_;
};

Expr type_kind();
Expr constant(std::string name);
Expr var(std::string name);
Expr pi(std::string x, Expr a, Expr b);
Expr lam(std::string x, Expr a, Expr m);
Expr app(Expr f, Expr a);
Expr apply_args(Expr head, const std::vector<Expr>& args);
// A -> B, with a binder name that does not occur free in B.
Expr arrow(Expr a, Expr b);

struct Spine {
  Expr head;
  std::vector<Expr> args;
};
Spine spine(const Expr& e);

// Strips a Pi prefix: {x1:A1}...{xn:An} B  ->  ([(x1,A1)...], B).
struct PiPrefix {
  std::vector<std::pair<std::string, Expr>> binders;
  Expr target;
};
PiPrefix pi_prefix(const Expr& e);

std::set<std::string> free_vars(const Expr& e);
bool occurs_free(const std::string& x, const Expr& e);
// Constants mentioned anywhere in e.
std::set<std::string> constants(const Expr& e);

// Equality up to renaming of bound variables.
bool alpha_equal(const Expr& a, const Expr& b);

// Returns `base` or a suffixed variant of it that is not in `avoid`.
std::string fresh_name(const std::string& base, const std::set<std::string>& avoid);

bool is_capitalized(std::string_view name);

struct SourcePos {
  int line = 0;
  int column = 0;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, SourcePos pos);
  SourcePos pos() const { return pos_; }

 private:
  SourcePos pos_;
};

struct Decl {
  std::string name;
  Expr classifier;
  SourcePos pos;
};

// Ordered declarations; names are pairwise distinct.
class Signature {
 public:
  // Throws std::invalid_argument on a duplicate name.
  void add(Decl d);
  const Decl* find(const std::string& name) const;
  bool contains(const std::string& name) const { return find(name) != nullptr; }
  const std::vector<Decl>& decls() const { return decls_; }
  std::size_t size() const { return decls_.size(); }
  bool empty() const { return decls_.empty(); }

 private:
  std::vector<Decl> decls_;
  std::unordered_map<std::string, std::size_t> index_;
};

// Ordered variable bindings.
class Context {
 public:
  using Binding = std::pair<std::string, Expr>;

  Context() = default;
  explicit Context(std::vector<Binding> b) : bindings_(std::move(b)) {}

  void push(std::string x, Expr a) { bindings_.emplace_back(std::move(x), std::move(a)); }
  void pop() { bindings_.pop_back(); }
  // Innermost binding wins.
  const Expr* lookup(const std::string& x) const;
  bool contains(const std::string& x) const { return lookup(x) != nullptr; }
  const std::vector<Binding>& bindings() const { return bindings_; }
  std::size_t size() const { return bindings_.size(); }
  std::set<std::string> names() const;

 private:
  std::vector<Binding> bindings_;
};

Signature parse_signature(std::string_view text);

struct Query {
  // Capitalized identifiers that are neither bound nor declared, in order of
  // first occurrence.
  std::vector<std::string> free_vars;
  Family type;
};

// Parses a query type against `sig`. The head of the query (under any Pi
// prefix) must be a declared type constant, i.e. one whose classifier is a
// kind.
Query parse_query(std::string_view text, const Signature& sig);

// Parses a single expression. Unbound identifiers become constants unless
// they are listed in `free`, in which case they become variables.
Expr parse_expr(std::string_view text, const std::set<std::string>& free = {});

std::string to_string(const Expr& e);
std::string to_string(const Signature& sig);

}  // namespace lftrans::lf
