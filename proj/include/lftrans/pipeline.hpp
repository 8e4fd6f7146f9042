#pragma once

#include <map>
#include <string>
#include <vector>

#include "lftrans/hohh_term.hpp"
#include "lftrans/lf_kernel.hpp"
#include "lftrans/solver.hpp"
#include "lftrans/translator.hpp"

// Query answering: LF query -> hohh goal -> solver -> LF answers.
namespace lftrans::pipeline {

// A query goal over a translated signature. watch[0] is the inhabitant,
// watch[i + 1] the i-th free variable of the query.
struct Goal {
  hohh::Formula formula;
  std::vector<hohh::Term> watch;
  hohh::SimpleType subject_type;
  std::vector<hohh::SimpleType> var_types;
};

// Simple types for the free variables of a query: the translated argument
// type where a variable occurs as an argument, otherwise lf_obj^k -> lf_obj
// for a variable applied to k arguments.
std::map<std::string, hohh::SimpleType> free_var_types(const lf::Signature& sig, const lf::Query& q);

Goal make_goal(hohh::Store& store, const lf::Signature& sig, const lf::Query& q, translate::Mode mode);

struct Answer {
  int cost = 0;
  hohh::Solution solution;
  // Set when every value inverts.
  bool closed = false;
  std::string error;
  std::vector<std::pair<std::string, lf::Expr>> values;
  lf::Expr inhabitant;
  lf::Expr type;  // the query with its free variables instantiated
  // Raw solver values, always set.
  std::vector<std::pair<std::string, hohh::Term>> raw_values;
  hohh::Term raw_inhabitant;
  std::vector<std::string> residuals;
};

struct Result {
  hohh::SolveStatus status = hohh::SolveStatus::NoSolution;
  int depth = 0;
  Goal goal;
  std::vector<Answer> answers;
  std::vector<Answer> suspended;
};

// Reads a solver solution back as LF. Never throws; failures are recorded in
// the answer.
Answer read_answer(const lf::Signature& sig, const hohh::Program& p, const lf::Query& q, const Goal& g,
                   const hohh::Solution& s);

// `sig` must be checked and `p` its translation in `mode`.
Result solve_query(const lf::Signature& sig, const hohh::Program& p, const lf::Query& q, translate::Mode mode,
                   const hohh::Limits& limits);

}  // namespace lftrans::pipeline
