#include <doctest.h>

#include <cmath>
#include <complex>
#include <stdexcept>

#include "blockcs/amp.hpp"
#include "blockcs/datagen.hpp"
#include "blockcs/metrics.hpp"
#include "blockcs/rng.hpp"

using namespace blockcs;

namespace {

bool is_block_feasible(const CxVec& x, const BlockStructure& bs) {
  for (int b = 0; b < bs.blocks(); ++b) {
    int nz = 0;
    for (int j = 0; j < bs.length(b); ++j)
      if (x(bs.offset(b) + j) != Cx(0, 0)) ++nz;
    if (nz > bs.sparsity(b)) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("soft_threshold shrinks moduli and preserves phases") {
  CxVec v(4);
  v << Cx(3, 4), Cx(0.5, 0), Cx(0, -2), Cx(-1, 0);
  CxVec w = soft_threshold(v, 1.0);
  // |3+4i| = 5 -> 4, phase kept
  CHECK(std::abs(std::abs(w(0)) - 4.0) < 1e-14);
  CHECK(std::abs(w(0) / v(0) - Cx(0.8, 0)) < 1e-14);
  // at or below the threshold: exact zero
  CHECK(w(1) == Cx(0, 0));
  CHECK(w(3) == Cx(0, 0));
  CHECK(std::abs(w(2) - Cx(0, -1)) < 1e-14);
  // t = 0 is the identity
  CxVec w0 = soft_threshold(v, 0.0);
  for (int i = 0; i < 4; ++i) CHECK(w0(i) == v(i));
  CHECK_THROWS_AS(soft_threshold(v, -0.5), std::invalid_argument);
}

TEST_CASE("soft_threshold boundary: modulus equal to t maps to zero") {
  CxVec v(1);
  v << Cx(0, 1.0);
  CHECK(soft_threshold(v, 1.0)(0) == Cx(0, 0));
}

TEST_CASE("zero measurements converge immediately to zero") {
  Rng rng(3);
  CxMat A(6, 10);
  for (int j = 0; j < 10; ++j)
    for (int i = 0; i < 6; ++i) A(i, j) = rng.cnormal(1.0);
  Problem p = make_problem(A, CxVec::Zero(6), BlockStructure::uniform(2, 5, 2));
  SolveResult res = amp_solve(p);
  CHECK(res.iterations == 1);
  CHECK(res.x_hat.norm() == 0.0);
  CHECK_FALSE(res.diverged);
}

TEST_CASE("identity operator with well-separated signal is denoised") {
  const int n = 16;
  CxVec y = CxVec::Zero(n);
  y(1) = Cx(10, 0);
  y(6) = Cx(0, -8);
  y(12) = Cx(7, 7);
  BlockStructure bs = BlockStructure::uniform(4, 4, 1);
  Problem p = make_problem(CxMat::Identity(n, n), y, bs);
  AmpConfig cfg;
  cfg.threshold_scale = 0.5;
  cfg.max_iter = 200;
  SolveResult res = amp_solve(p, cfg);
  CHECK(relative_error(res.x_hat, y) <= 1e-3);
  CHECK_FALSE(res.diverged);
}

TEST_CASE("estimates are equivariant under a global phase on y") {
  ScenarioParams sp;
  sp.kind = MatrixKind::gaussian;
  sp.m = 40;
  sp.bs = BlockStructure::uniform(8, 10, 1);
  sp.s_bar = 3;
  sp.sigma_noise = 0.01;
  sp.seed = 17;
  Instance inst = gen_instance(sp);
  const Problem& p = inst.problem;
  SolveResult base = amp_solve(p);

  const Cx phase = std::polar(1.0, M_PI / 3.0);
  Problem rotated = make_problem(p.A, CxVec(phase * p.y), p.bs);
  SolveResult rot = amp_solve(rotated);
  CHECK(rot.iterations == base.iterations);
  CHECK((rot.x_hat - phase * base.x_hat).norm() <=
        1e-8 * std::max(1.0, base.x_hat.norm()));
  CHECK((rot.x_raw - phase * base.x_raw).norm() <=
        1e-8 * std::max(1.0, base.x_raw.norm()));
}

TEST_CASE("returned estimate is block-feasible, raw iterate is kept too") {
  ScenarioParams sp;
  sp.kind = MatrixKind::gaussian;
  sp.m = 30;
  sp.bs = BlockStructure::uniform(6, 8, 2);
  sp.s_bar = 2;
  sp.sigma_noise = 0.005;
  sp.seed = 23;
  Instance inst = gen_instance(sp);
  SolveResult res = amp_solve(inst.problem);
  CHECK(is_block_feasible(res.x_hat, sp.bs));
  // x_hat is exactly the block projection of the raw iterate
  CxVec proj = block_project(res.x_raw, sp.bs);
  CHECK((res.x_hat - proj).norm() == 0.0);
}

TEST_CASE("moderate Gaussian undersampling is recovered accurately") {
  // planted sparse signal, 2x oversampling relative to total sparsity
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    ScenarioParams sp;
    sp.kind = MatrixKind::gaussian;
    sp.m = 64;
    sp.bs = BlockStructure::uniform(16, 8, 1);
    sp.s_bar = 4;
    sp.sigma_noise = 0.0;
    sp.seed = seed;
    Instance inst = gen_instance(sp);
    SolveResult res = amp_solve(inst.problem);
    CAPTURE(seed);
    CHECK_FALSE(res.diverged);
    CHECK(relative_error(res.x_hat, inst.x_true) <= 1e-2);
  }
}

TEST_CASE("history records the residual-driven objective decrease") {
  ScenarioParams sp;
  sp.kind = MatrixKind::gaussian;
  sp.m = 40;
  sp.bs = BlockStructure::uniform(8, 10, 1);
  sp.s_bar = 3;
  sp.sigma_noise = 0.001;
  sp.seed = 29;
  Instance inst = gen_instance(sp);
  SolveResult res = amp_solve(inst.problem);
  REQUIRE_FALSE(res.history.empty());
  CHECK(static_cast<int>(res.history.size()) == res.iterations);
  // the final data residual is far below the initial one
  CHECK(res.history.back().objective < 0.01 * res.history.front().objective);
}
