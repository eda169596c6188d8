#pragma once

#include <vector>

#include "blockcs/model.hpp"

namespace blockcs {

struct SolverConfig {
  double tau = 0.0;         // step used in support selection; <= 0 picks auto_tau
  double eta = 0.1;         // momentum weight on the previous direction
  double gamma = 0.01;      // margin in the Newton acceptance test
  double armijo_sigma = 1e-4;
  double armijo_beta = 0.5;
  double epsilon = 1e-6;    // halting threshold on the stationarity statistic
  int max_iter = 100;
  int max_backtracks = 50;
};

enum class DirectionKind { newton, gradient };
enum class HaltReason { tolerance, max_iter };

struct IterationRecord {
  double objective;         // f at the iterate the step started from
  double tolerance;         // halting statistic at that iterate and support
  double alpha;             // accepted step length (0 when the search failed)
  DirectionKind kind;
  double dir_derivative;    // 2 Re<d, grad f>, slope the line search tested
  double search_objective;  // f(x + alpha d), the value the search accepted
  double objective_after;   // f at the updated (re-thresholded) iterate
  bool feasible;            // updated iterate respects every block budget
};

struct SolveResult {
  CxVec x_hat;   // block-feasible estimate
  CxVec x_raw;   // unprojected final iterate (equals x_hat for this solver)
  int iterations = 0;
  HaltReason reason = HaltReason::max_iter;
  bool line_search_failed = false;
  bool diverged = false;  // residual blew past the guard (baseline only)
  std::vector<IterationRecord> history;
  double wall_time = 0.0;  // seconds, reported out-of-band by the harness
};

// Default step: half the descent-lemma bound, 1 / (4 lambda_max).
double auto_tau(const Problem& p);

// Support of the gradient-shifted point x - tau * grad f(x): per block the
// s_i entries of largest modulus, lowest index on ties.
SupportSet select_support(const Problem& p, const CxVec& x, double tau);

// Momentum-damped gradient direction. On T it is the negative gradient of
// the reduced objective ||A_T u - y||^2 at u = x_T plus eta times the
// previous direction; off T it is -x so a unit step clears stale entries.
CxVec gradient_direction(const Problem& p, const CxVec& x, const SupportSet& T,
                         const CxVec& prev_d, double eta);

struct NewtonDirection {
  CxVec d;
  bool solvable = false;
};

// Solves (A^H A)_{T,T} d_T = (A^H A)_{T,Tc} x_Tc - grad_T f(x), d_Tc = -x_Tc.
// A full step along d lands exactly on the least-squares fit over T. The
// Hermitian system gets a one-time ridge of 1e-10 * trace / |T|; if the
// factorization fails or the relative residual exceeds 1e-6 the direction is
// reported unsolvable and the caller falls back to the gradient.
NewtonDirection newton_direction(const Problem& p, const CxVec& x,
                                 const SupportSet& T);

// Accepts the Newton direction when its on-support slope is steep enough:
// Re<grad_T f, d_T> <= -gamma ||d||^2 + ||x_Tc||^2 / (4 tau).
bool newton_switch(const Problem& p, const CxVec& x, const SupportSet& T,
                   const CxVec& d_newton, double gamma, double tau);

struct ArmijoResult {
  double alpha = 0.0;
  bool accepted = false;
};

// Backtracking line search: the largest alpha = beta^l, l = 0, 1, ..., with
// f(x + alpha d) <= f(x) + sigma * alpha * 2 Re<d, grad f(x)>.
ArmijoResult armijo_search(const Problem& p, const CxVec& x, const CxVec& d,
                           const SolverConfig& cfg);

// Block-sparse pursuit: alternate support selection, a Newton or damped
// gradient step restricted to the support, and a hard re-threshold. Halts
// when the stationarity statistic drops below cfg.epsilon or after
// cfg.max_iter iterations; a failed line search on the gradient branch stops
// the run with line_search_failed set.
SolveResult bnhtp_solve(const Problem& p, const SolverConfig& cfg = {},
                        const CxVec* x0 = nullptr);

const char* to_string(DirectionKind k);
const char* to_string(HaltReason r);

}  // namespace blockcs
