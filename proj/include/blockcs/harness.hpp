#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "blockcs/amp.hpp"
#include "blockcs/datagen.hpp"
#include "blockcs/metrics.hpp"
#include "blockcs/solver.hpp"

namespace blockcs {

// Small-instance verification battery driven by `blockcs oracle`. One active
// block per instance by default: with the support-selection step tied to
// tau <= alpha_f/2 the pursuit commits to its first proxy support, and denser
// plants on 8 measurements routinely stop at non-global stationary points.
struct OracleSuiteParams {
  int instances = 100;
  int m = 8;
  int blocks = 3;
  int block_len = 4;
  int block_sparsity = 1;
  int s_bar = 1;
};

// Everything a benchmark run needs, read from a JSON config. Unknown keys
// are rejected by name; anything unspecified keeps the defaults below.
struct ExperimentSpec {
  std::vector<MatrixKind> kinds = {MatrixKind::gaussian};
  bool kinds_explicit = false;  // detect falls back to A3 when unset
  std::vector<int> s_bars = {20};
  std::vector<double> sigmas = {0.001};
  int trials = 5;
  std::uint64_t seed = 0;
  std::string out_dir = "results";
  int threads = 0;        // 0 = hardware count; BLOCKCS_THREADS wins over both
  int m = 839;
  int blocks = 64;
  int block_len = 0;      // 0 = auto: 32, or 93 for the A4 shape
  int block_sparsity = 1;
  double beta_signal = 1.0;
  double target_fap = 0.001;
  int detect_s_bar = 20;
  bool normalize_columns = false;
  bool r_error_true_denominator = false;
  double zero_tol = 1e-8;
  SolverConfig bnhtp;
  AmpConfig amp;
  OracleSuiteParams oracle;
};

// Reads and validates a JSON config file. Malformed syntax reports the line
// number; unknown keys and out-of-range values report the offending field.
ExperimentSpec parse_config(const std::string& path);
ExperimentSpec parse_config_text(const std::string& text,
                                 const std::string& origin);

// Full config with every field spelled out; parse_config_text inverts it.
std::string emit_config(const ExperimentSpec& spec);

// Benchmark grid (matrix kind x s_bar x sigma, both solvers). Writes
// <out>/table.csv, one JSON-lines file of raw trial records per cell and
// solver under <out>/trials/, and measured wall times to <out>/timing.log.
// Everything except timing.log is byte-deterministic for a given spec; the
// CSV time_s column is a fixed placeholder for that reason, real timings
// live in the log.
void run_table(const ExperimentSpec& spec);

// Activity-detection protocol: for each sigma, recover `trials` instances
// with both solvers, calibrate the declaration threshold to target_fap, and
// write per-panel plot data (detect_iterations / detect_r_error /
// detect_obj_value / detect_fir.csv, columns sigma,solver,value) plus a
// detection.csv summary with the calibrated operating points.
void run_detection(const ExperimentSpec& spec);

// Noiseless small instances solved exhaustively and by the pursuit solver;
// writes <out>/oracle.csv and prints a pass-rate summary. Returns false when
// the optimality or stationarity tallies fall below the expected floor.
bool run_oracle_suite(const ExperimentSpec& spec);

// Thread-count resolution: BLOCKCS_THREADS env var, else the spec value,
// else hardware concurrency.
int resolve_threads(int requested);

}  // namespace blockcs
