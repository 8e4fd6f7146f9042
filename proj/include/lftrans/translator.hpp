#pragma once

#include <map>
#include <string>
#include <vector>

#include "lftrans/hohh_term.hpp"
#include "lftrans/lf_syntax.hpp"

// Translation of LF signatures and types into hereditary Harrop programs and
// goals over the predicate `hastype : lf_obj -> lf_type -> o`.

namespace lftrans::translate {

enum class Mode { Naive, Optimized };

struct Options {
  Mode mode = Mode::Optimized;
  bool simplify = true;
};

inline const char* kHastype = "hastype";

// lf_obj for base types, lf_type for `type`, arrows for Pi.
hohh::SimpleType phi(const lf::Expr& e);

// Names of LF variables in scope. `bound` lists binders innermost last and
// maps to de Bruijn indices; an empty entry is a binder invisible to LF.
// `free` maps the remaining variables to terms (e.g. logic variables).
struct Scope {
  std::vector<std::string> bound;
  std::map<std::string, hohh::Term> free;
};

// Type-erasing encoding of a beta-normal object or base type.
hohh::Term encode(const lf::Expr& e, const Scope& scope = {});

// The naive translation of `type` applied to `subject`.
hohh::Formula translate_naive(const lf::Expr& type, const hohh::Term& subject, const Scope& scope = {});
// Positive translation; `gamma` holds the binders crossed so far with their
// types, used for strictness.
hohh::Formula translate_pos(const lf::Context& gamma, const lf::Expr& type, const hohh::Term& subject,
                            const Scope& scope = {});
hohh::Formula translate_neg(const lf::Expr& type, const hohh::Term& subject, const Scope& scope = {});

// Goal for an inhabitant `subject` of `type`, as used for queries.
hohh::Formula translate_goal(const lf::Expr& type, const hohh::Term& subject, Mode mode, const Scope& scope = {});

// Removes every `true =>` premise.
hohh::Formula simplify_top(const hohh::Formula& f);

// `sig` must be checked. Kinds contribute declarations only; each typed
// constant contributes a declaration and one clause, in order.
hohh::Program translate_signature(const lf::Signature& sig, const Options& options = {});

// lambda Prolog source for the program.
std::string emit_lambdaprolog(const hohh::Program& p);

struct SplitModule {
  std::string sig;
  std::string mod;
};
SplitModule emit_split(const hohh::Program& p, const std::string& name);

// Reader for the lambda Prolog subset produced by the emitter: `kind` and
// `type` declarations, `sig`/`module` headers and clauses built from `pi`,
// `=>`, `true`, abstraction and application. Binder types are not recorded.
struct ReadError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
hohh::Program read_lambdaprolog(const std::string& text);

// A single formula in the same syntax.
hohh::Formula read_formula(const std::string& text);

// Structural comparison ignoring binder names and binder types.
bool same_program(const hohh::Program& a, const hohh::Program& b, std::string* why = nullptr);

}  // namespace lftrans::translate
