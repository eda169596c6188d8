#include "blockcs/model.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "blockcs/rng.hpp"

namespace blockcs {

namespace {

// Largest eigenvalue of A^H A. Deterministic start vector so repeated
// construction from the same matrix yields the same cached constants.
double power_lambda_max(const CxMat& A) {
  const Eigen::Index n = A.cols();
  Rng rng(derive_seed(0xB10C5EEDULL, static_cast<std::uint64_t>(n)));
  CxVec v(n);
  for (Eigen::Index j = 0; j < n; ++j) v[j] = rng.cnormal(1.0);
  v.normalize();

  double lambda = 0.0;
  for (int it = 0; it < 200; ++it) {
    CxVec w = A.adjoint() * (A * v);
    double nw = w.norm();
    if (nw == 0.0) return 0.0;  // A == 0
    double prev = lambda;
    lambda = nw;  // Rayleigh quotient of the normalized iterate
    v = w / nw;
    if (it > 0 && std::abs(lambda - prev) < 1e-10 * lambda) break;
  }
  return lambda;
}

}  // namespace

SensingMatrix::SensingMatrix(CxMat A) : A_(std::move(A)) {
  if (A_.size() == 0)
    throw std::invalid_argument("SensingMatrix: empty matrix");
  if (!A_.allFinite())
    throw std::invalid_argument("SensingMatrix: non-finite entry");
  lambda_max_ = power_lambda_max(A_) * (1.0 + 1e-6);
  if (lambda_max_ <= 0.0)
    throw std::invalid_argument("SensingMatrix: zero operator");
  alpha_f_ = 1.0 / (2.0 * lambda_max_);
}

Problem make_problem(CxMat A, CxVec y, BlockStructure bs) {
  return make_problem(std::make_shared<SensingMatrix>(std::move(A)),
                      std::move(y), std::move(bs));
}

Problem make_problem(std::shared_ptr<const SensingMatrix> A, CxVec y,
                     BlockStructure bs) {
  if (!A) throw std::invalid_argument("make_problem: null matrix");
  if (y.size() != A->rows())
    throw std::invalid_argument("make_problem: y length != rows of A");
  if (bs.total_len() != A->cols())
    throw std::invalid_argument("make_problem: block layout != cols of A");
  return Problem{std::move(A), std::move(y), std::move(bs)};
}

double objective(const Problem& p, const CxVec& x) {
  return (p.A->mat() * x - p.y).squaredNorm();
}

CxVec gradient(const Problem& p, const CxVec& x) {
  const CxMat& A = p.A->mat();
  return A.adjoint() * (A * x - p.y);
}

double real_inner(const CxVec& u, const CxVec& v) {
  if (u.size() != v.size())
    throw std::invalid_argument("real_inner: size mismatch");
  return u.dot(v).real();  // Eigen's dot conjugates the first argument
}

namespace {

// Indices of the s largest moduli within [0, len), lowest index wins ties.
void top_s_indices(const CxVec& x, int offset, int len, int s,
                   std::vector<int>& out) {
  out.resize(len);
  std::iota(out.begin(), out.end(), 0);
  std::stable_sort(out.begin(), out.end(), [&](int a, int b) {
    return std::abs(x[offset + a]) > std::abs(x[offset + b]);
  });
  out.resize(s);
  for (int& j : out) j += offset;
}

}  // namespace

CxVec block_project(const CxVec& x, const BlockStructure& bs) {
  if (x.size() != bs.total_len())
    throw std::invalid_argument("block_project: length != block layout");
  CxVec out = CxVec::Zero(x.size());
  std::vector<int> keep;
  for (int i = 0; i < bs.blocks(); ++i) {
    top_s_indices(x, bs.offset(i), bs.length(i), bs.sparsity(i), keep);
    for (int j : keep) out[j] = x[j];
  }
  return out;
}

double kth_largest_magnitude(const CxVec& v, int k) {
  if (k < 1 || k > v.size())
    throw std::out_of_range("kth_largest_magnitude: k outside [1, len]");
  std::vector<double> mags(v.size());
  for (Eigen::Index j = 0; j < v.size(); ++j) mags[j] = std::abs(v[j]);
  std::nth_element(mags.begin(), mags.begin() + (k - 1), mags.end(),
                   std::greater<double>());
  return mags[k - 1];
}

CxVec stationarity_map(const Problem& p, const CxVec& x, const SupportSet& T,
                       double tau) {
  if (tau <= 0.0) throw std::invalid_argument("stationarity_map: tau <= 0");
  CxVec g = gradient(p, x);
  CxVec F = x;
  for (int j : T.indices) F[j] = g[j];
  return F;
}

double halting_tolerance(const Problem& p, const CxVec& x, const SupportSet& T,
                         double tau) {
  return halting_tolerance(p, x, T, tau, gradient(p, x));
}

double halting_tolerance(const Problem& p, const CxVec& x, const SupportSet& T,
                         double tau, const CxVec& grad) {
  if (tau <= 0.0) throw std::invalid_argument("halting_tolerance: tau <= 0");
  CxVec F = x;
  for (int j : T.indices) F[j] = grad[j];
  double m_top = x.size() > 0 ? kth_largest_magnitude(x, 1) : 0.0;
  double excess = 0.0;
  size_t pos = 0;
  for (int j = 0; j < static_cast<int>(x.size()); ++j) {
    if (pos < T.indices.size() && T.indices[pos] == j) {
      ++pos;
      continue;
    }
    excess = std::max(excess, std::abs(grad[j]) - m_top / tau);
  }
  return F.norm() + std::max(excess, 0.0);
}

bool check_descent_lemma(const Problem& p, const CxVec& q1, const CxVec& q2,
                         double tau) {
  if (tau <= 0.0 || tau > p.A->alpha_f() / 2.0)
    throw std::invalid_argument(
        "check_descent_lemma: tau outside (0, alpha_f / 2]");
  CxVec diff = q1 - q2;
  double lhs = objective(p, q1);
  double rhs = objective(p, q2) + 2.0 * real_inner(diff, gradient(p, q2)) +
               diff.squaredNorm() / tau;
  return lhs <= rhs;
}

bool check_convexity_lemma(const Problem& p, const CxVec& q1,
                           const CxVec& q2) {
  CxVec diff = q1 - q2;
  double lhs = objective(p, q1);
  double rhs = objective(p, q2) + 2.0 * real_inner(diff, gradient(p, q2));
  return lhs >= rhs;
}

bool check_lipschitz(const Problem& p, const CxVec& q1, const CxVec& q2) {
  double lhs = (gradient(p, q1) - gradient(p, q2)).norm();
  double rhs = (q1 - q2).norm() / p.A->alpha_f();
  return lhs <= rhs;
}

}  // namespace blockcs
