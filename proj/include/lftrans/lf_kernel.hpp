#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>

#include "lftrans/lf_syntax.hpp"

// Substitution, normalization and the LF typing judgments.
//
// Checking is bidirectional: the synthesis functions follow the
// syntax-directed rules (var-fam, pi-fam, app-fam, var-obj, abs-obj,
// app-obj) and compare classifiers by beta-eta equality, which is computed by
// beta-normalizing, eta-expanding to long form and comparing up to alpha.

namespace lftrans::lf {

inline constexpr std::uint64_t kDefaultFuel = 100000;

using Bindings = std::map<std::string, Expr>;

// Capture-avoiding simultaneous substitution. The result may contain redexes.
Expr substitute(const Expr& e, const Bindings& bindings);
Expr substitute(const Expr& e, const std::string& x, const Expr& value);

class NormalizationLimit : public std::runtime_error {
 public:
  NormalizationLimit() : std::runtime_error("normalization step limit exceeded") {}
};

// Beta-normal form. Throws NormalizationLimit after `fuel` contractions.
Expr beta_normalize(const Expr& e, std::uint64_t fuel = kDefaultFuel);
bool is_beta_normal(const Expr& e);

// Whether the Pi prefix of `e` ends in `type`.
bool is_kind(const Expr& e);

// A failed judgment. `rule` names the inference rule whose premise could not
// be established.
class TypeError : public std::runtime_error {
 public:
  TypeError(std::string rule, const std::string& message)
      : std::runtime_error(message), rule_(std::move(rule)) {}
  const std::string& rule() const { return rule_; }

 private:
  std::string rule_;
};

struct JudgmentResult {
  bool ok = false;
  // Synthesized classifier (beta-normal) on success.
  Expr classifier;
  // On failure.
  std::string rule;
  std::string message;
  std::string decl;
  SourcePos pos;

  explicit operator bool() const { return ok; }
};

// Accepts iff `sig` is a valid signature; each classifier is checked in the
// prefix of the signature preceding it.
JudgmentResult check_signature(const Signature& sig);

// The same signature with every classifier beta-normalized. Throws TypeError
// (or std::invalid_argument for a duplicate name) if it does not check.
Signature checked_signature(const Signature& sig);

// Kind synthesis for a type family. `sig` must be checked.
JudgmentResult check_type(const Signature& sig, const Context& ctx, const Family& a);
// Type synthesis for an object. `sig` must be checked.
JudgmentResult check_object(const Signature& sig, const Context& ctx, const Object& m);
// Validates `ctx` against `sig` (rule type-ctx for every binding).
JudgmentResult check_context(const Signature& sig, const Context& ctx);

// Throwing variants used internally and by other modules. They assume the
// context has been validated.
Expr synth_family(const Signature& sig, Context& ctx, const Family& a);
Expr synth_object(const Signature& sig, Context& ctx, const Object& m);
void check_kind(const Signature& sig, Context& ctx, const Kind& k);
void check_object_against(const Signature& sig, Context& ctx, const Object& m, const Family& expected);

// Eta-long form of a beta-normal, well-typed expression. `classifier` is the
// kind of a family, the type of an object, or null for a kind.
Expr canonicalize(const Signature& sig, const Context& ctx, const Expr& e, const Expr& classifier);
Expr canonical_object(const Signature& sig, const Context& ctx, const Object& m, const Family& type);
Expr canonical_family(const Signature& sig, const Context& ctx, const Family& a);
Expr canonical_kind(const Signature& sig, const Context& ctx, const Kind& k);

// Beta-eta equality of two well-formed families (kind `type`) or kinds.
bool types_equal(const Signature& sig, const Context& ctx, const Family& a, const Family& b);
bool kinds_equal(const Signature& sig, const Context& ctx, const Kind& a, const Kind& b);
// Beta-eta equality of two objects of the given type.
bool objects_equal(const Signature& sig, const Context& ctx, const Object& a, const Object& b,
                   const Family& type);

}  // namespace lftrans::lf
