#pragma once

#include <functional>
#include <vector>

#include "lftrans/hohh_term.hpp"
#include "lftrans/unify.hpp"

// Goal-directed proof search for hereditary Harrop programs.
//
// Goals are solved left to right. An implication adds its premise to the
// program for the conclusion, a universal introduces a fresh eigenvariable
// one level up, and an atomic goal backchains on the assumed clauses
// (innermost first) and then on the program clauses in order. Search is
// depth first, with iterative deepening on the number of backchaining steps.

namespace lftrans::hohh {

struct Limits {
  int max_depth = 32;
  // 0 means no limit.
  int max_solutions = 1;
};

enum class SolveStatus { Solved, NoSolution, DepthExhausted, Suspended };

const char* to_string(SolveStatus s);

struct TraceStep {
  enum class Kind { AllRight, Backchain };
  Kind kind = Kind::Backchain;
  int eigen = -1;             // AllRight
  bool dynamic = false;       // Backchain: assumed clause?
  int clause = -1;            // program index, or assumption index from the innermost
  std::vector<Term> instances;  // Backchain: one term per quantifier of the clause
};

struct Solution {
  std::vector<Term> values;  // resolved values of the watched variables
  std::vector<TraceStep> trace;
  int cost = 0;  // backchaining steps
  std::vector<Equation> residuals;  // nonempty only for suspended answers
};

struct SolveReport {
  SolveStatus status = SolveStatus::NoSolution;
  std::vector<Solution> solutions;
  std::vector<Solution> suspended;
  int depth = 0;  // last bound searched
};

class Solver {
 public:
  explicit Solver(const Program& program);

  // Logic variables occurring in the goal are created here, at level 0.
  Store& store() { return store_; }

  // Solutions are delivered in order of cost, and in search order for equal
  // cost. The callback may return false to stop the search.
  SolveReport solve(const Formula& goal, const std::vector<Term>& watch, const Limits& limits,
                    const std::function<bool(const Solution&)>& on_solution = {});

 private:
  struct Impl;
  const Program& program_;
  Store store_;
};

// Re-derives the goal with the watched variables replaced by the solution's
// values, following the recorded trace with equality in place of
// unification.
bool validate_solution(const Program& program, const Formula& goal, const std::vector<Term>& watch,
                       const Solution& solution);

// Replaces logic variables by the given terms and beta-normalizes.
Term replace_lvars(const Term& t, const std::map<int, Term>& values);
Formula replace_lvars(const Formula& f, const std::map<int, Term>& values);

}  // namespace lftrans::hohh
