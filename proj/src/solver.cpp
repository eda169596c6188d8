#include "blockcs/solver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace blockcs {

namespace {

void validate(const SolverConfig& cfg) {
  if (cfg.eta < 0.0) throw std::invalid_argument("SolverConfig: eta < 0");
  if (cfg.gamma <= 0.0) throw std::invalid_argument("SolverConfig: gamma <= 0");
  if (cfg.armijo_sigma <= 0.0 || cfg.armijo_sigma >= 1.0)
    throw std::invalid_argument("SolverConfig: armijo_sigma outside (0, 1)");
  if (cfg.armijo_beta <= 0.0 || cfg.armijo_beta >= 1.0)
    throw std::invalid_argument("SolverConfig: armijo_beta outside (0, 1)");
  if (cfg.epsilon < 0.0) throw std::invalid_argument("SolverConfig: epsilon < 0");
  if (cfg.max_iter < 1) throw std::invalid_argument("SolverConfig: max_iter < 1");
  if (cfg.max_backtracks < 0)
    throw std::invalid_argument("SolverConfig: max_backtracks < 0");
}

CxMat columns(const CxMat& A, const std::vector<int>& idx) {
  CxMat out(A.rows(), idx.size());
  for (size_t k = 0; k < idx.size(); ++k)
    out.col(static_cast<Eigen::Index>(k)) = A.col(idx[k]);
  return out;
}

SupportSet select_support_of_shifted(const CxVec& shifted,
                                     const BlockStructure& bs) {
  std::vector<int> chosen;
  chosen.reserve(bs.total_sparsity());
  std::vector<int> order;
  for (int i = 0; i < bs.blocks(); ++i) {
    const int off = bs.offset(i);
    const int len = bs.length(i);
    order.resize(len);
    std::iota(order.begin(), order.end(), 0);
    // stable sort on descending modulus keeps the lowest index first on ties
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
      return std::abs(shifted[off + a]) > std::abs(shifted[off + b]);
    });
    for (int k = 0; k < bs.sparsity(i); ++k) chosen.push_back(off + order[k]);
  }
  return SupportSet::from_indices(std::move(chosen), bs);
}

struct SearchOutcome {
  double alpha = 0.0;
  bool accepted = false;
  double slope = 0.0;       // 2 Re<d, grad>
  double f_candidate = 0.0; // f(x + alpha d) for the accepted alpha
  CxVec candidate;
};

SearchOutcome backtrack(const Problem& p, const CxVec& x, const CxVec& d,
                        const CxVec& grad, double f0,
                        const SolverConfig& cfg) {
  SearchOutcome out;
  out.slope = 2.0 * real_inner(d, grad);
  double alpha = 1.0;
  for (int l = 0; l <= cfg.max_backtracks; ++l) {
    CxVec cand = x + alpha * d;
    double fc = objective(p, cand);
    if (fc <= f0 + cfg.armijo_sigma * alpha * out.slope) {
      out.alpha = alpha;
      out.accepted = true;
      out.f_candidate = fc;
      out.candidate = std::move(cand);
      return out;
    }
    alpha *= cfg.armijo_beta;
  }
  return out;
}

}  // namespace

double auto_tau(const Problem& p) { return p.A->alpha_f() / 2.0; }

SupportSet select_support(const Problem& p, const CxVec& x, double tau) {
  if (tau <= 0.0) throw std::invalid_argument("select_support: tau <= 0");
  CxVec shifted = x - tau * gradient(p, x);
  return select_support_of_shifted(shifted, p.bs);
}

CxVec gradient_direction(const Problem& p, const CxVec& x, const SupportSet& T,
                         const CxVec& prev_d, double eta) {
  const CxMat& A = p.A->mat();
  CxMat At = columns(A, T.indices);
  CxVec xt = gather(x, T.indices);
  CxVec reduced_grad = At.adjoint() * (At * xt - p.y);

  CxVec d = -x;  // off the support a unit step clears stale entries
  for (size_t k = 0; k < T.indices.size(); ++k) {
    int j = T.indices[k];
    Cx momentum = prev_d.size() == x.size() ? prev_d[j] : Cx(0.0, 0.0);
    d[j] = -reduced_grad[static_cast<Eigen::Index>(k)] + eta * momentum;
  }
  return d;
}

NewtonDirection newton_direction(const Problem& p, const CxVec& x,
                                 const SupportSet& T) {
  const CxMat& A = p.A->mat();
  const int t = T.size();
  CxMat At = columns(A, T.indices);
  CxVec xt = gather(x, T.indices);

  CxMat G = At.adjoint() * At;
  // Right-hand side (A^H A)_{T,Tc} x_Tc - (A^H (Ax - y))_T collapses to the
  // reduced least-squares gradient below; the off-support terms cancel.
  CxVec rhs = At.adjoint() * (p.y - At * xt);

  double ridge = 1e-10 * G.trace().real() / static_cast<double>(t);
  CxMat G_ridged = G + ridge * CxMat::Identity(t, t);

  NewtonDirection nd;
  nd.d = -x;  // d_Tc = -x_Tc
  Eigen::LDLT<CxMat> ldlt(G_ridged);
  if (ldlt.info() != Eigen::Success) return nd;
  CxVec dt = ldlt.solve(rhs);
  if (!dt.allFinite()) return nd;

  double rhs_norm = rhs.norm();
  double residual = (G * dt - rhs).norm();
  if (rhs_norm > 0.0 && residual > 1e-6 * rhs_norm) return nd;

  for (size_t k = 0; k < T.indices.size(); ++k)
    nd.d[T.indices[k]] = dt[static_cast<Eigen::Index>(k)];
  nd.solvable = true;
  return nd;
}

bool newton_switch(const Problem& p, const CxVec& x, const SupportSet& T,
                   const CxVec& d_newton, double gamma, double tau) {
  if (tau <= 0.0) throw std::invalid_argument("newton_switch: tau <= 0");
  CxVec grad = gradient(p, x);
  double lhs = real_inner(gather(grad, T.indices), gather(d_newton, T.indices));
  double x_off_sq = 0.0;
  size_t pos = 0;
  for (int j = 0; j < static_cast<int>(x.size()); ++j) {
    if (pos < T.indices.size() && T.indices[pos] == j) {
      ++pos;
      continue;
    }
    x_off_sq += std::norm(x[j]);
  }
  return lhs <= -gamma * d_newton.squaredNorm() + x_off_sq / (4.0 * tau);
}

ArmijoResult armijo_search(const Problem& p, const CxVec& x, const CxVec& d,
                           const SolverConfig& cfg) {
  validate(cfg);
  SearchOutcome out =
      backtrack(p, x, d, gradient(p, x), objective(p, x), cfg);
  return ArmijoResult{out.alpha, out.accepted};
}

SolveResult bnhtp_solve(const Problem& p, const SolverConfig& cfg,
                        const CxVec* x0) {
  validate(cfg);
  const auto t_start = std::chrono::steady_clock::now();
  const int n = p.A->cols();
  const double tau = cfg.tau > 0.0 ? cfg.tau : auto_tau(p);

  CxVec x = x0 ? *x0 : CxVec::Zero(n);
  if (x.size() != n)
    throw std::invalid_argument("bnhtp_solve: x0 length != cols of A");
  CxVec prev_d;

  SolveResult res;
  for (int k = 1; k <= cfg.max_iter; ++k) {
    const CxMat& A = p.A->mat();
    CxVec residual = A * x - p.y;
    double f0 = residual.squaredNorm();
    CxVec grad = A.adjoint() * residual;

    SupportSet T = select_support_of_shifted(x - tau * grad, p.bs);
    double tol = halting_tolerance(p, x, T, tau, grad);

    DirectionKind kind = DirectionKind::gradient;
    CxVec d;
    NewtonDirection nd = newton_direction(p, x, T);
    if (nd.solvable && newton_switch(p, x, T, nd.d, cfg.gamma, tau)) {
      kind = DirectionKind::newton;
      d = std::move(nd.d);
    } else {
      d = gradient_direction(p, x, T, prev_d, cfg.eta);
    }

    SearchOutcome search = backtrack(p, x, d, grad, f0, cfg);
    if (!search.accepted && kind == DirectionKind::newton) {
      kind = DirectionKind::gradient;
      d = gradient_direction(p, x, T, prev_d, cfg.eta);
      search = backtrack(p, x, d, grad, f0, cfg);
    }

    IterationRecord rec;
    rec.objective = f0;
    rec.tolerance = tol;
    rec.kind = kind;
    rec.dir_derivative = search.slope;

    if (!search.accepted) {
      rec.alpha = 0.0;
      rec.search_objective = f0;
      rec.objective_after = f0;
      rec.feasible = true;  // iterate unchanged
      res.history.push_back(rec);
      res.iterations = k;
      res.reason = HaltReason::max_iter;
      res.line_search_failed = true;
      break;
    }

    CxVec xt = gather(x, T.indices) + search.alpha * gather(d, T.indices);
    x = scatter(xt, T.indices, n);
    prev_d = std::move(d);

    rec.alpha = search.alpha;
    rec.search_objective = search.f_candidate;
    rec.objective_after = objective(p, x);
    rec.feasible = true;
    for (int i = 0; i < p.bs.blocks() && rec.feasible; ++i) {
      int nz = 0;
      for (int j = 0; j < p.bs.length(i); ++j)
        if (x[p.bs.offset(i) + j] != Cx(0.0, 0.0)) ++nz;
      if (nz > p.bs.sparsity(i)) rec.feasible = false;
    }
    res.history.push_back(rec);
    res.iterations = k;

    if (tol < cfg.epsilon) {
      res.reason = HaltReason::tolerance;
      break;
    }
    res.reason = HaltReason::max_iter;
  }

  res.x_hat = x;
  res.x_raw = std::move(x);
  res.wall_time =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start)
          .count();
  return res;
}

const char* to_string(DirectionKind k) {
  return k == DirectionKind::newton ? "newton" : "gradient";
}

const char* to_string(HaltReason r) {
  return r == HaltReason::tolerance ? "tolerance" : "max_iter";
}

}  // namespace blockcs
