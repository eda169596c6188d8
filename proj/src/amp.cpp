#include "blockcs/amp.hpp"

#include <chrono>
#include <cmath>
#include <stdexcept>

namespace blockcs {

CxVec soft_threshold(const CxVec& v, double t) {
  if (t < 0.0) throw std::invalid_argument("soft_threshold: t < 0");
  CxVec out(v.size());
  for (Eigen::Index j = 0; j < v.size(); ++j) {
    double mag = std::abs(v[j]);
    out[j] = mag > t ? v[j] * (1.0 - t / mag) : Cx(0.0, 0.0);
  }
  return out;
}

SolveResult amp_solve(const Problem& p, const AmpConfig& cfg) {
  if (cfg.max_iter < 1) throw std::invalid_argument("AmpConfig: max_iter < 1");
  if (cfg.threshold_scale <= 0.0)
    throw std::invalid_argument("AmpConfig: threshold_scale <= 0");
  if (cfg.damping < 0.0 || cfg.damping >= 1.0)
    throw std::invalid_argument("AmpConfig: damping outside [0, 1)");
  if (cfg.tol < 0.0) throw std::invalid_argument("AmpConfig: tol < 0");

  const auto t_start = std::chrono::steady_clock::now();
  const CxMat& A = p.A->mat();
  const int m = p.A->rows();
  const int n = p.A->cols();
  const double y_norm = p.y.norm();
  const double sqrt_m = std::sqrt(static_cast<double>(m));

  // The message-passing fixed point assumes unit-norm columns, so the
  // iteration runs on the column-equilibrated operator A D^{-1} in the scaled
  // variable u = D x. Residuals are identical in both coordinate systems and
  // the returned estimate is mapped back through D.
  Eigen::VectorXd D(n);
  for (Eigen::Index j = 0; j < n; ++j) {
    double c = A.col(j).norm();
    D[j] = c > 0.0 ? c : 1.0;
  }

  CxVec x = CxVec::Zero(n);  // scaled iterate u = D x
  CxVec r = p.y;
  double f_prev = r.squaredNorm();

  SolveResult res;
  for (int it = 1; it <= cfg.max_iter; ++it) {
    CxVec v = x + (A.adjoint() * r).cwiseQuotient(D.cast<Cx>());
    double thr = cfg.threshold_scale * r.norm() / sqrt_m;

    CxVec x_next = soft_threshold(v, thr);
    double onsager = 0.0;
    for (Eigen::Index j = 0; j < n; ++j) {
      double mag = std::abs(v[j]);
      if (mag > thr) onsager += 1.0 - thr / (2.0 * mag);
    }
    onsager /= static_cast<double>(m);

    if (cfg.damping > 0.0)
      x_next = (1.0 - cfg.damping) * x_next + cfg.damping * x;

    CxVec data_residual = p.y - A * x_next.cwiseQuotient(D.cast<Cx>());
    CxVec r_next = data_residual + onsager * r;

    double denom = std::max(x_next.norm(), 1e-12);
    double rel_change = (x_next - x).norm() / denom;
    double f_next = data_residual.squaredNorm();

    IterationRecord rec;
    rec.objective = f_prev;
    rec.tolerance = rel_change;
    rec.alpha = thr;
    rec.kind = DirectionKind::gradient;
    rec.dir_derivative = onsager;
    rec.search_objective = r_next.squaredNorm();
    rec.objective_after = f_next;
    rec.feasible = true;
    res.history.push_back(rec);
    res.iterations = it;

    x = std::move(x_next);
    r = std::move(r_next);
    f_prev = f_next;

    if (r.norm() > 1e6 * y_norm) {
      res.diverged = true;
      res.reason = HaltReason::max_iter;
      break;
    }
    if (rel_change < cfg.tol) {
      res.reason = HaltReason::tolerance;
      break;
    }
    res.reason = HaltReason::max_iter;
  }

  CxVec x_orig = x.cwiseQuotient(D.cast<Cx>());
  res.x_hat = block_project(x_orig, p.bs);
  res.x_raw = std::move(x_orig);
  res.wall_time =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start)
          .count();
  return res;
}

}  // namespace blockcs
