#pragma once

#include "blockcs/model.hpp"

namespace blockcs {

struct OracleResult {
  CxVec x;
  double objective = 0.0;
  SupportSet support;
  long long supports_evaluated = 0;  // product of per-block combination counts
};

// Minimum-norm least squares restricted to the columns in T; coordinates off
// T are exact zeros. An empty T yields x = 0 with objective ||y||^2.
OracleResult ls_on_support(const Problem& p, const SupportSet& T);

// Global minimizer by enumeration: every combination of s_i coordinates per
// block, in lexicographic order, each solved by ls_on_support; the first
// support attaining the best objective wins, so ties go to the
// lexicographically smallest support. Refuses instances with more than 1e6
// combinations.
OracleResult exhaustive_solve(const Problem& p);

// Stationarity test via the per-block first-order conditions: in a block
// carrying its full budget the gradient vanishes on the support (within tol)
// and stays below (s_i-th largest block modulus) / tau off it; in a block
// below budget the gradient vanishes on the whole block. Equivalent to
// membership of x in the hard-threshold projection of x - tau grad f(x),
// which stationary_by_projection checks directly.
bool verify_stationary(const Problem& p, const CxVec& x, double tau,
                       double tol = 1e-8);
bool stationary_by_projection(const Problem& p, const CxVec& x, double tau,
                              double tol = 1e-8);

}  // namespace blockcs
