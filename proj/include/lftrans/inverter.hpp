#pragma once

#include <stdexcept>
#include <string>

#include "lftrans/hohh_term.hpp"
#include "lftrans/lf_kernel.hpp"

// Reads canonical hohh terms back as LF objects and families.
namespace lftrans::invert {

class InversionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// `m` is an eta-long, beta-normal term whose loose bound variables stand for
// the bindings of `gamma`, innermost last. `type` is an LF type well formed
// in `gamma`. Returns the object of that type encoded by `m`, or throws.
lf::Expr invert(const lf::Signature& sig, const lf::Context& gamma, const hohh::Term& m, const lf::Expr& type);

// The same for a base type family; the result has kind `type`.
lf::Expr invert_family(const lf::Signature& sig, const lf::Context& gamma, const hohh::Term& a);

// Eta-long form of an answer term of simple type `ty`.
hohh::Term eta_expand_answer(const hohh::Program& p, const hohh::Term& m, const hohh::SimpleType& ty);

}  // namespace lftrans::invert
