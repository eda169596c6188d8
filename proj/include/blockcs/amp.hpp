#pragma once

#include "blockcs/solver.hpp"

namespace blockcs {

struct AmpConfig {
  int max_iter = 100;
  double threshold_scale = 1.0;  // multiplies ||r|| / sqrt(m)
  double damping = 0.0;          // fraction of the previous iterate kept
  double tol = 1e-6;             // relative-change halting threshold
};

// Entrywise complex soft threshold v * max(1 - t / |v|, 0); exact zero at
// and below the threshold, phase preserved above it.
CxVec soft_threshold(const CxVec& v, double t);

// Approximate message passing baseline. Iterates
//   x <- eta_t(x + A^H r),   r <- y - A x + (b_t) r
// with the threshold t = threshold_scale * ||r|| / sqrt(m) and the Onsager
// factor b_t = (1/m) sum over surviving entries of (1 - t / (2 |v_j|)), the
// divergence of the complex soft threshold. The fixed point assumes columns
// of unit norm, so internally the iteration runs on the column-equilibrated
// operator and the returned estimate is mapped back to the original
// coordinates (the residual sequence is the same either way). Block
// structure plays no part in the iteration; the returned x_hat is the block
// projection of the final iterate and x_raw the iterate itself.
//
// History reuses the solver's record layout: objective / objective_after are
// f before and after the sweep, tolerance is the relative iterate change,
// alpha the threshold applied, dir_derivative the Onsager factor and
// search_objective the squared norm of the updated AMP residual.
SolveResult amp_solve(const Problem& p, const AmpConfig& cfg = {});

}  // namespace blockcs
