#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "blockcs/model.hpp"

namespace blockcs {

// The four sensing-matrix ensembles of the benchmark, named A1..A4 in
// configs: complex Gaussian, random partial DCT, and the two deterministic
// banded-exponential designs (839 x 2048 and 839 x 5952).
enum class MatrixKind { gaussian, partial_dct, exp_type1, exp_type2 };

MatrixKind matrix_kind_from_string(const std::string& s);
const char* to_string(MatrixKind k);

struct ScenarioParams {
  int m = 839;
  BlockStructure bs = BlockStructure::uniform(64, 32, 1);
  int s_bar = 20;              // number of active blocks (users)
  double beta_signal = 1.0;    // variance of planted CN(0, beta) values
  double sigma_noise = 0.0;    // noise is CN(0, sigma^2) per measurement
  MatrixKind kind = MatrixKind::gaussian;
  std::uint64_t seed = 0;
  bool normalize_columns = false;
};

struct Instance {
  Problem problem;
  CxVec x_true;
  std::vector<int> active_blocks;  // ascending
  CxVec noise;
};

// Entries i.i.d. CN(0, 1), drawn column by column from the given seed.
CxMat gen_gaussian(int m, int n, std::uint64_t seed);

// Row m has A(m, n) = cos(2 pi (n-1) psi_m) + i cos(2 pi (n-1) phi_m) with
// psi_m, phi_m independent uniforms on [0, 1), drawn row by row (psi before
// phi). Exposed separately from the sampling so tests can pin the phases.
CxMat gen_partial_dct(int m, int n, std::uint64_t seed);
CxMat partial_dct_from_phases(int n, const std::vector<double>& psi,
                              const std::vector<double>& phi);

// Deterministic banded designs: entry exp(j c_b pi m(m-1) / 839) *
// exp(j 2 pi (m-1)(n - n_b) / 839) with 1-based row m and column n, band
// constant c_b and band origin n_b. The phase is an integer multiple of
// pi / 839; it is reduced mod 2 pi in integer arithmetic, so no precision is
// lost at large m (m-1).
CxMat gen_exp_type1();  // 839 x 2048, 3 bands
CxMat gen_exp_type2();  // 839 x 5952, 8 bands

// Dispatch on params.kind; derives the matrix seed from params.seed via the
// matrix stream tag. The exponential kinds require the 839-row shapes.
CxMat make_matrix(const ScenarioParams& params);

// Planted block-sparse instance: s_bar active blocks chosen uniformly
// without replacement (signal stream), each given s_i distinct uniform
// positions and CN(0, beta) values, plus CN(0, sigma^2) measurement noise
// (noise stream). The second form reuses a prebuilt operator so a matrix and
// its spectral constants can be shared across trials.
Instance gen_instance(const ScenarioParams& params);
Instance gen_instance(const ScenarioParams& params,
                      std::shared_ptr<const SensingMatrix> A);

// Binary matrix interchange format: magic "BCSM", u32 version = 1, u32 rows,
// u32 cols, then row-major float64 (re, im) pairs, all little-endian.
void save_matrix(const CxMat& A, const std::string& path);
CxMat load_matrix(const std::string& path);

}  // namespace blockcs
