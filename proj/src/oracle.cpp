#include "blockcs/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace blockcs {

OracleResult ls_on_support(const Problem& p, const SupportSet& T) {
  const CxMat& A = p.A->mat();
  OracleResult out;
  out.support = T;
  if (T.size() == 0) {
    out.x = CxVec::Zero(A.cols());
    out.objective = p.y.squaredNorm();
    return out;
  }
  CxMat At(A.rows(), T.size());
  for (int k = 0; k < T.size(); ++k) At.col(k) = A.col(T.indices[k]);
  Eigen::CompleteOrthogonalDecomposition<CxMat> cod;
  // Rank cutoff well above roundoff so duplicated columns (exact objective
  // ties) reliably fall into the minimum-norm branch instead of producing
  // huge canceling coefficients; the default cutoff sits at machine epsilon
  // and misclassifies them on some draws.
  cod.setThreshold(1e-12);
  cod.compute(At);
  CxVec coef = cod.solve(p.y);
  out.x = scatter(coef, T.indices, static_cast<int>(A.cols()));
  out.objective = (At * coef - p.y).squaredNorm();
  return out;
}

namespace {

// Advance a sorted s-subset of {0, ..., d-1} to its lexicographic successor;
// false once the last combination has been passed.
bool next_combination(std::vector<int>& c, int d) {
  const int s = static_cast<int>(c.size());
  for (int i = s - 1; i >= 0; --i) {
    if (c[i] < d - (s - i)) {
      ++c[i];
      for (int j = i + 1; j < s; ++j) c[j] = c[j - 1] + 1;
      return true;
    }
  }
  return false;
}

double combination_count(int d, int s) {
  double c = 1.0;
  for (int i = 0; i < s; ++i) c = c * (d - i) / (i + 1);
  return c;
}

}  // namespace

OracleResult exhaustive_solve(const Problem& p) {
  const BlockStructure& bs = p.bs;
  double total = 1.0;
  for (int i = 0; i < bs.blocks(); ++i) {
    total *= combination_count(bs.length(i), bs.sparsity(i));
    if (total > 1e6)
      throw std::invalid_argument(
          "exhaustive_solve: more than 1e6 support combinations");
  }

  // Odometer over per-block combinations, last block advancing fastest, so
  // supports come out in lexicographic order.
  std::vector<std::vector<int>> combo(bs.blocks());
  for (int i = 0; i < bs.blocks(); ++i) {
    combo[i].resize(bs.sparsity(i));
    std::iota(combo[i].begin(), combo[i].end(), 0);
  }

  OracleResult best;
  bool first = true;
  long long evaluated = 0;
  std::vector<int> idx;
  idx.reserve(bs.total_sparsity());
  while (true) {
    idx.clear();
    for (int i = 0; i < bs.blocks(); ++i)
      for (int c : combo[i]) idx.push_back(bs.offset(i) + c);
    OracleResult cur = ls_on_support(p, SupportSet::from_indices(idx, bs));
    ++evaluated;
    if (first || cur.objective < best.objective) {
      best = std::move(cur);
      first = false;
    }
    int b = bs.blocks() - 1;
    while (b >= 0 && !next_combination(combo[b], bs.length(b))) {
      std::iota(combo[b].begin(), combo[b].end(), 0);
      --b;
    }
    if (b < 0) break;
  }
  best.supports_evaluated = evaluated;
  return best;
}

bool verify_stationary(const Problem& p, const CxVec& x, double tau,
                       double tol) {
  if (tau <= 0.0) throw std::invalid_argument("verify_stationary: tau <= 0");
  if (x.size() != p.bs.total_len())
    throw std::invalid_argument("verify_stationary: length != block layout");
  CxVec g = gradient(p, x);
  const BlockStructure& bs = p.bs;
  for (int i = 0; i < bs.blocks(); ++i) {
    const int off = bs.offset(i);
    const int len = bs.length(i);
    const int s = bs.sparsity(i);
    int nonzeros = 0;
    for (int j = 0; j < len; ++j)
      if (x[off + j] != Cx(0.0, 0.0)) ++nonzeros;
    if (nonzeros > s) return false;

    if (nonzeros == s) {
      CxVec xb = x.segment(off, len);
      double bound = kth_largest_magnitude(xb, s) / tau;
      for (int j = 0; j < len; ++j) {
        double gm = std::abs(g[off + j]);
        if (x[off + j] != Cx(0.0, 0.0)) {
          if (gm > tol) return false;
        } else if (gm > bound + tol) {
          return false;
        }
      }
    } else {
      for (int j = 0; j < len; ++j)
        if (std::abs(g[off + j]) > tol) return false;
      CxVec xb = x.segment(off, len);
      if (kth_largest_magnitude(xb, s) > tol) return false;
    }
  }
  return true;
}

bool stationary_by_projection(const Problem& p, const CxVec& x, double tau,
                              double tol) {
  if (tau <= 0.0)
    throw std::invalid_argument("stationary_by_projection: tau <= 0");
  if (x.size() != p.bs.total_len())
    throw std::invalid_argument(
        "stationary_by_projection: length != block layout");
  CxVec u = x - tau * gradient(p, x);
  const BlockStructure& bs = p.bs;
  for (int i = 0; i < bs.blocks(); ++i) {
    const int off = bs.offset(i);
    const int len = bs.length(i);
    const int s = bs.sparsity(i);
    int nonzeros = 0;
    for (int j = 0; j < len; ++j)
      if (x[off + j] != Cx(0.0, 0.0)) ++nonzeros;
    if (nonzeros > s) return false;

    if (nonzeros == s) {
      // x must equal u on its support, and the kept moduli must dominate
      // every dropped modulus (up to ties) for the support to be a valid
      // hard-threshold selection.
      double min_kept = std::numeric_limits<double>::infinity();
      double max_dropped = 0.0;
      for (int j = 0; j < len; ++j) {
        if (x[off + j] != Cx(0.0, 0.0)) {
          if (std::abs(x[off + j] - u[off + j]) > tol) return false;
          min_kept = std::min(min_kept, std::abs(u[off + j]));
        } else {
          max_dropped = std::max(max_dropped, std::abs(u[off + j]));
        }
      }
      if (min_kept < max_dropped - tol) return false;
    } else {
      // Below budget the projection of u is u itself, so x must equal u.
      for (int j = 0; j < len; ++j)
        if (std::abs(x[off + j] - u[off + j]) > tol) return false;
    }
  }
  return true;
}

}  // namespace blockcs
