#pragma once

#include <map>
#include <string>
#include <vector>

#include "lftrans/hohh_term.hpp"

// Logic variable store and higher-order pattern unification.
//
// Every logic variable and eigenvariable carries a level. A logic variable
// may only be bound to a term whose eigenvariables have a level no greater
// than its own. Equations outside the pattern fragment are kept as residuals
// and retried whenever the store gains bindings.

namespace lftrans::hohh {

struct LVarInfo {
  int level = 0;
  SimpleType type;
  std::string hint;
};

// A postponed equation between two closed terms.
struct Equation {
  Term lhs;
  Term rhs;
};

enum class UnifyOutcome { Unified, Residual, Failure };

class Store {
 public:
  Term new_lvar(int level, SimpleType type, std::string hint = "");
  Term new_eigen(int level, SimpleType type, std::string hint = "");

  bool is_bound(int id) const { return bindings_.at(static_cast<std::size_t>(id)) != nullptr; }
  const Term& binding(int id) const { return bindings_.at(static_cast<std::size_t>(id)); }
  const LVarInfo& info(int id) const { return infos_.at(static_cast<std::size_t>(id)); }
  int lvar_count() const { return static_cast<int>(infos_.size()); }
  int eigen_count() const { return eigens_; }

  void bind(int id, Term value);

  // Replaces bound logic variables at the head until the head is rigid or an
  // unbound logic variable.
  Term whnf(const Term& t) const;
  // Applies the store to every subterm; the result is beta-normal.
  Term resolve(const Term& t) const;

  // Unifies a and b, postponing non-pattern equations. False on failure.
  bool unify(const Term& a, const Term& b);
  // Retries postponed equations until no new bindings arise.
  bool settle();
  const std::vector<Equation>& residuals() const { return residuals_; }

  // Whether every binding respects the level discipline.
  bool level_sound() const;

  struct Mark {
    std::size_t trail;
    std::size_t lvars;
    int eigens;
    std::vector<Equation> residuals;
  };
  Mark mark() const { return {trail_.size(), infos_.size(), eigens_, residuals_}; }
  void undo(const Mark& m);
  std::size_t trail_size() const { return trail_.size(); }

 private:
  friend class Unifier;
  std::vector<Term> bindings_;
  std::vector<LVarInfo> infos_;
  std::vector<int> trail_;
  std::vector<Equation> residuals_;
  int eigens_ = 0;
};

// One unification problem without postponement: reports whether the two
// terms were unified (store extended), lie outside the pattern fragment
// (store may contain prunings that every unifier needs) or have no unifier.
UnifyOutcome pattern_unify(Store& store, const Term& a, const Term& b);

}  // namespace lftrans::hohh
