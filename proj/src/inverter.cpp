#include "lftrans/inverter.hpp"

#include "lftrans/translator.hpp"

namespace lftrans::invert {

namespace {

std::set<std::string> avoid_set(const lf::Signature& sig, const lf::Context& gamma) {
  std::set<std::string> out = gamma.names();
  for (const auto& d : sig.decls()) out.insert(d.name);
  return out;
}

lf::Expr head_of(const lf::Signature& sig, const lf::Context& gamma, const hohh::Term& h, lf::Expr* classifier) {
  switch (h->tag) {
    case hohh::TermTag::Const: {
      const lf::Decl* d = sig.find(h->name);
      if (!d) throw InversionError("unknown constant " + h->name);
      *classifier = d->classifier;
      return lf::constant(h->name);
    }
    case hohh::TermTag::BVar: {
      const auto& b = gamma.bindings();
      auto i = static_cast<std::size_t>(h->index);
      if (i >= b.size()) throw InversionError("loose bound variable");
      const auto& [x, a] = b[b.size() - 1 - i];
      *classifier = a;
      return lf::var(x);
    }
    case hohh::TermTag::Eigen:
    case hohh::TermTag::LVar:
      throw InversionError("answer not closed: " + hohh::to_string(h));
    default:
      throw InversionError("not in canonical form: " + hohh::to_string(h));
  }
}

// Inverts the spine of an atomic term; returns the LF term and its classifier.
lf::Expr spine(const lf::Signature& sig, const lf::Context& gamma, const hohh::Term& t, lf::Expr* classifier) {
  if (t->is(hohh::TermTag::Lam)) throw InversionError("unexpected abstraction at base type");
  lf::Expr cls;
  lf::Expr out = head_of(sig, gamma, hohh::head_of(t), &cls);
  for (const auto& a : hohh::args_of(t)) {
    if (!cls->is_pi()) throw InversionError("too many arguments for " + lf::to_string(out));
    lf::Expr n = invert(sig, gamma, a, cls->binder_type());
    out = lf::app(out, n);
    cls = lf::beta_normalize(lf::substitute(cls->body(), cls->name(), n));
  }
  *classifier = cls;
  return out;
}

}  // namespace

lf::Expr invert(const lf::Signature& sig, const lf::Context& gamma, const hohh::Term& m, const lf::Expr& type) {
  if (type->is_pi()) {
    if (!m->is(hohh::TermTag::Lam)) throw InversionError("not eta-long: " + hohh::to_string(m));
    std::string base = m->name.empty() ? type->name() : m->name;
    if (base.empty() || base == "_") base = "x";
    base[0] = static_cast<char>(std::tolower(static_cast<unsigned char>(base[0])));
    std::string x = lf::fresh_name(base, avoid_set(sig, gamma));
    lf::Expr body_type = lf::substitute(type->body(), type->name(), lf::var(x));
    lf::Context inner = gamma;
    inner.push(x, type->binder_type());
    return lf::lam(x, type->binder_type(), invert(sig, inner, m->body, body_type));
  }
  lf::Expr cls;
  lf::Expr out = spine(sig, gamma, m, &cls);
  if (cls->is_pi()) throw InversionError("not eta-long: " + lf::to_string(out) + " is not fully applied");
  if (lf::is_kind(cls)) throw InversionError("a type family where an object was expected: " + lf::to_string(out));
  if (!lf::types_equal(sig, gamma, cls, type))
    throw InversionError("target mismatch: " + lf::to_string(out) + " : " + lf::to_string(cls) + ", expected " +
                         lf::to_string(type));
  return out;
}

lf::Expr invert_family(const lf::Signature& sig, const lf::Context& gamma, const hohh::Term& a) {
  lf::Expr cls;
  lf::Expr out = spine(sig, gamma, a, &cls);
  if (!cls->is_type()) throw InversionError("not a base type: " + lf::to_string(out));
  return out;
}

hohh::Term eta_expand_answer(const hohh::Program& p, const hohh::Term& m, const hohh::SimpleType& ty) {
  return hohh::eta_long(hohh::beta_normal(m), ty, p.constant_types());
}

}  // namespace lftrans::invert
