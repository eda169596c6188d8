#pragma once

#include <memory>

#include "blockcs/types.hpp"

namespace blockcs {

// Dense complex sensing operator. Construction computes the largest
// eigenvalue of A^H A by power iteration (capped at 200 sweeps or a relative
// change below 1e-10, then inflated by a relative 1e-6 safety margin so the
// step-size bound stays valid when the iteration stops early) and caches
// alpha_f = 1 / (2 lambda_max), the Lipschitz-derived step bound.
class SensingMatrix {
 public:
  explicit SensingMatrix(CxMat A);

  const CxMat& mat() const { return A_; }
  int rows() const { return static_cast<int>(A_.rows()); }
  int cols() const { return static_cast<int>(A_.cols()); }
  double lambda_max() const { return lambda_max_; }
  double alpha_f() const { return alpha_f_; }

 private:
  CxMat A_;
  double lambda_max_ = 0.0;
  double alpha_f_ = 0.0;
};

// One recovery instance: operator, measurements, block layout. The operator
// sits behind a shared_ptr so benchmark trials that share a matrix also share
// its spectral precomputation.
struct Problem {
  std::shared_ptr<const SensingMatrix> A;
  CxVec y;
  BlockStructure bs;
};

Problem make_problem(CxMat A, CxVec y, BlockStructure bs);
Problem make_problem(std::shared_ptr<const SensingMatrix> A, CxVec y,
                     BlockStructure bs);

// f(x) = ||Ax - y||^2
double objective(const Problem& p, const CxVec& x);

// Gradient A^H (Ax - y). Descent conditions below pair it with directions
// through the real inner product, which doubles it relative to the real case.
CxVec gradient(const Problem& p, const CxVec& x);

// Re <u, v> = sum of Re(u_j) Re(v_j) + Im(u_j) Im(v_j).
double real_inner(const CxVec& u, const CxVec& v);

// Nearest block-feasible point: per block, keep the s_i entries of largest
// modulus (ties resolved toward the lowest index) and zero the rest exactly.
CxVec block_project(const CxVec& x, const BlockStructure& bs);

// k-th largest modulus of v, 1-based, duplicates counted.
double kth_largest_magnitude(const CxVec& v, int k);

// F_tau(x; T): gradient entries on T, x entries off T, assembled by position.
// Zero exactly at a point that is stationary relative to the support T.
CxVec stationarity_map(const Problem& p, const CxVec& x, const SupportSet& T,
                       double tau);

// Halting statistic: ||F_tau(x; T)|| plus the worst off-support gradient
// excess max(|grad_i| - M(|x|)/tau, 0), where M(|x|) is the largest modulus
// of x. Zero iff the support-relative stationarity conditions hold.
double halting_tolerance(const Problem& p, const CxVec& x, const SupportSet& T,
                         double tau);
// Overload reusing a precomputed gradient(p, x).
double halting_tolerance(const Problem& p, const CxVec& x, const SupportSet& T,
                         double tau, const CxVec& grad);

// Quadratic upper bound: f(q1) <= f(q2) + 2 Re<q1-q2, grad f(q2)>
//                                 + (1/tau) ||q1-q2||^2, valid for
// tau <= alpha_f / 2. Requires tau in (0, alpha_f / 2].
bool check_descent_lemma(const Problem& p, const CxVec& q1, const CxVec& q2,
                         double tau);

// Convexity lower bound: f(q1) >= f(q2) + 2 Re<q1-q2, grad f(q2)>.
bool check_convexity_lemma(const Problem& p, const CxVec& q1, const CxVec& q2);

// Gradient Lipschitz bound ||grad f(q1) - grad f(q2)|| <= (1/alpha_f)
// ||q1 - q2||; holds with a factor-2 margin by construction of alpha_f.
bool check_lipschitz(const Problem& p, const CxVec& q1, const CxVec& q2);

}  // namespace blockcs
