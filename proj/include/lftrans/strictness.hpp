#pragma once

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "lftrans/lf_syntax.hpp"

// Strict occurrences of bound variables in types and objects.
//
// The object judgment takes the candidate binders (variables whose instances
// are unknown), a set of locally abstracted variables and the variable x:
//
//   INIT_o   x y1 ... yk with distinct yi drawn from the local set
//   APP_o    y M1 ... Mk with y neither x nor a candidate, x strict in some Mi
//   ABS_o    [y:A] M when x is strict in M with y added to the local set
//
// The type judgment is APP_t (x strict in an argument of a constant headed
// base type), PI_t (descend under Pi) and CTX_t (x strict in the type of an
// earlier binder which is itself strict in the type).

namespace lftrans::strictness {

// `candidates` need not mention x; x is always treated as one.
bool strict_in_object(const std::set<std::string>& candidates, const std::set<std::string>& delta,
                      const std::string& x, const lf::Expr& m);

// Whether x occurs strictly in `a`, where `ctx` lists the binders in scope
// (x itself may or may not be among them).
bool strict_in_type(const lf::Context& ctx, const std::string& x, const lf::Expr& a);

// Same as strict_in_type, returning the rule chain that justifies it.
std::optional<std::string> explain_in_type(const lf::Context& ctx, const std::string& x, const lf::Expr& a);

// Positions (0-based) of the Pi binders of a constant's classifier that occur
// strictly in the rest of the type.
std::set<std::size_t> strict_binders(const lf::Expr& classifier);

struct BinderVerdict {
  std::string name;
  lf::Expr type;
  bool strict = false;
  std::string why;  // rule chain, or the reason it is not strict
};

std::vector<BinderVerdict> explain_binders(const lf::Expr& classifier);

}  // namespace lftrans::strictness
