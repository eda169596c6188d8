#include "blockcs/datagen.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <numeric>
#include <stdexcept>

#include "blockcs/rng.hpp"

namespace blockcs {

MatrixKind matrix_kind_from_string(const std::string& s) {
  if (s == "A1" || s == "gaussian") return MatrixKind::gaussian;
  if (s == "A2" || s == "partial_dct") return MatrixKind::partial_dct;
  if (s == "A3" || s == "exp_type1") return MatrixKind::exp_type1;
  if (s == "A4" || s == "exp_type2") return MatrixKind::exp_type2;
  throw std::invalid_argument("unknown matrix kind: " + s);
}

const char* to_string(MatrixKind k) {
  switch (k) {
    case MatrixKind::gaussian: return "A1";
    case MatrixKind::partial_dct: return "A2";
    case MatrixKind::exp_type1: return "A3";
    case MatrixKind::exp_type2: return "A4";
  }
  return "?";
}

CxMat gen_gaussian(int m, int n, std::uint64_t seed) {
  if (m < 1 || n < 1) throw std::invalid_argument("gen_gaussian: empty shape");
  Rng rng(seed);
  CxMat A(m, n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < m; ++i) A(i, j) = rng.cnormal(1.0);
  return A;
}

CxMat partial_dct_from_phases(int n, const std::vector<double>& psi,
                              const std::vector<double>& phi) {
  if (psi.size() != phi.size())
    throw std::invalid_argument("partial_dct_from_phases: phase count differs");
  const int m = static_cast<int>(psi.size());
  if (m < 1 || n < 1)
    throw std::invalid_argument("partial_dct_from_phases: empty shape");
  CxMat A(m, n);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) {
      double k = 2.0 * M_PI * static_cast<double>(j);  // j is (n-1), 0-based
      A(i, j) = Cx(std::cos(k * psi[i]), std::cos(k * phi[i]));
    }
  }
  return A;
}

CxMat gen_partial_dct(int m, int n, std::uint64_t seed) {
  if (m < 1 || n < 1)
    throw std::invalid_argument("gen_partial_dct: empty shape");
  Rng rng(seed);
  std::vector<double> psi(m), phi(m);
  for (int i = 0; i < m; ++i) {
    psi[i] = rng.uniform01();
    phi[i] = rng.uniform01();
  }
  return partial_dct_from_phases(n, psi, phi);
}

namespace {

constexpr int kExpRows = 839;

// Bands are defined by the 1-based first column n_b and the constant c_b.
CxMat banded_exponential(int n, const std::vector<int>& band_starts,
                         const std::vector<int>& band_consts) {
  CxMat A(kExpRows, n);
  const double unit = M_PI / static_cast<double>(kExpRows);
  for (size_t b = 0; b < band_starts.size(); ++b) {
    const int first = band_starts[b];
    const int last = b + 1 < band_starts.size() ? band_starts[b + 1] - 1 : n;
    const std::int64_t c = band_consts[b];
    for (int col = first; col <= last; ++col) {
      for (int row = 1; row <= kExpRows; ++row) {
        // exponent = pi/839 * (c m(m-1) + 2 (m-1)(n - n_b)), an integer
        // multiple of pi/839; reduced mod 2*839 before touching doubles
        std::int64_t k = c * row * (row - 1) +
                         2LL * (row - 1) * (col - first);
        k %= 2LL * kExpRows;
        double phase = unit * static_cast<double>(k);
        A(row - 1, col - 1) = Cx(std::cos(phase), std::sin(phase));
      }
    }
  }
  return A;
}

}  // namespace

CxMat gen_exp_type1() {
  return banded_exponential(2048, {1, 833, 1665}, {420, 419, 1});
}

CxMat gen_exp_type2() {
  return banded_exponential(5952, {1, 838, 1675, 2512, 3349, 4186, 5023, 5860},
                            {420, 419, 1, 838, 15, 824, 427, 412});
}

namespace {

void validate(const ScenarioParams& p) {
  if (p.m < 1) throw std::invalid_argument("ScenarioParams: m < 1");
  if (p.s_bar < 0 || p.s_bar > p.bs.blocks())
    throw std::invalid_argument("ScenarioParams: s_bar outside [0, blocks]");
  if (p.beta_signal <= 0.0)
    throw std::invalid_argument("ScenarioParams: beta_signal <= 0");
  if (p.sigma_noise < 0.0)
    throw std::invalid_argument("ScenarioParams: sigma_noise < 0");
  if (p.kind == MatrixKind::exp_type1 &&
      (p.m != kExpRows || p.bs.total_len() != 2048))
    throw std::invalid_argument("ScenarioParams: A3 is fixed at 839 x 2048");
  if (p.kind == MatrixKind::exp_type2 &&
      (p.m != kExpRows || p.bs.total_len() != 5952))
    throw std::invalid_argument("ScenarioParams: A4 is fixed at 839 x 5952");
}

}  // namespace

CxMat make_matrix(const ScenarioParams& params) {
  validate(params);
  const int n = params.bs.total_len();
  std::uint64_t mseed = derive_seed(params.seed, kMatrixStream);
  CxMat A;
  switch (params.kind) {
    case MatrixKind::gaussian: A = gen_gaussian(params.m, n, mseed); break;
    case MatrixKind::partial_dct:
      A = gen_partial_dct(params.m, n, mseed);
      break;
    case MatrixKind::exp_type1: A = gen_exp_type1(); break;
    case MatrixKind::exp_type2: A = gen_exp_type2(); break;
  }
  if (params.normalize_columns)
    for (Eigen::Index j = 0; j < A.cols(); ++j) A.col(j).normalize();
  return A;
}

Instance gen_instance(const ScenarioParams& params) {
  return gen_instance(params,
                      std::make_shared<SensingMatrix>(make_matrix(params)));
}

Instance gen_instance(const ScenarioParams& params,
                      std::shared_ptr<const SensingMatrix> A) {
  validate(params);
  if (!A) throw std::invalid_argument("gen_instance: null matrix");
  if (A->rows() != params.m || A->cols() != params.bs.total_len())
    throw std::invalid_argument("gen_instance: matrix shape != params shape");

  const BlockStructure& bs = params.bs;
  const int n = bs.total_len();

  // Signal stream: active blocks by partial Fisher-Yates, then per active
  // block (ascending) its positions, then its values.
  Rng sig(derive_seed(params.seed, kSignalStream));
  std::vector<int> perm(bs.blocks());
  std::iota(perm.begin(), perm.end(), 0);
  for (int i = 0; i < params.s_bar; ++i) {
    int j = i + static_cast<int>(sig.below(perm.size() - i));
    std::swap(perm[i], perm[j]);
  }
  std::vector<int> active(perm.begin(), perm.begin() + params.s_bar);
  std::sort(active.begin(), active.end());

  CxVec x_true = CxVec::Zero(n);
  std::vector<int> slots;
  for (int b : active) {
    const int d = bs.length(b);
    const int s = bs.sparsity(b);
    slots.resize(d);
    std::iota(slots.begin(), slots.end(), 0);
    for (int i = 0; i < s; ++i) {
      int j = i + static_cast<int>(sig.below(slots.size() - i));
      std::swap(slots[i], slots[j]);
    }
    std::sort(slots.begin(), slots.begin() + s);
    for (int i = 0; i < s; ++i)
      x_true[bs.offset(b) + slots[i]] = sig.cnormal(params.beta_signal);
  }

  Rng noi(derive_seed(params.seed, kNoiseStream));
  CxVec z(params.m);
  const double var = params.sigma_noise * params.sigma_noise;
  for (int i = 0; i < params.m; ++i) z[i] = noi.cnormal(var);

  CxVec y = A->mat() * x_true + z;
  Instance inst{make_problem(std::move(A), std::move(y), bs),
                std::move(x_true), std::move(active), std::move(z)};
  return inst;
}

namespace {

void put_u32(std::ofstream& out, std::uint32_t v) {
  unsigned char b[4] = {static_cast<unsigned char>(v & 0xFF),
                        static_cast<unsigned char>((v >> 8) & 0xFF),
                        static_cast<unsigned char>((v >> 16) & 0xFF),
                        static_cast<unsigned char>((v >> 24) & 0xFF)};
  out.write(reinterpret_cast<const char*>(b), 4);
}

std::uint32_t get_u32(std::ifstream& in) {
  unsigned char b[4];
  in.read(reinterpret_cast<char*>(b), 4);
  return static_cast<std::uint32_t>(b[0]) |
         (static_cast<std::uint32_t>(b[1]) << 8) |
         (static_cast<std::uint32_t>(b[2]) << 16) |
         (static_cast<std::uint32_t>(b[3]) << 24);
}

void put_f64(std::ofstream& out, double v) {
  std::uint64_t u;
  std::memcpy(&u, &v, 8);
  unsigned char b[8];
  for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>(u >> (8 * i));
  out.write(reinterpret_cast<const char*>(b), 8);
}

double get_f64(std::ifstream& in) {
  unsigned char b[8];
  in.read(reinterpret_cast<char*>(b), 8);
  std::uint64_t u = 0;
  for (int i = 0; i < 8; ++i) u |= static_cast<std::uint64_t>(b[i]) << (8 * i);
  double v;
  std::memcpy(&v, &u, 8);
  return v;
}

}  // namespace

void save_matrix(const CxMat& A, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("save_matrix: cannot open " + path);
  out.write("BCSM", 4);
  put_u32(out, 1);
  put_u32(out, static_cast<std::uint32_t>(A.rows()));
  put_u32(out, static_cast<std::uint32_t>(A.cols()));
  for (Eigen::Index i = 0; i < A.rows(); ++i) {
    for (Eigen::Index j = 0; j < A.cols(); ++j) {
      put_f64(out, A(i, j).real());
      put_f64(out, A(i, j).imag());
    }
  }
  if (!out) throw std::runtime_error("save_matrix: write failed on " + path);
}

CxMat load_matrix(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("load_matrix: cannot open " + path);
  char magic[4];
  in.read(magic, 4);
  if (!in || std::memcmp(magic, "BCSM", 4) != 0)
    throw std::runtime_error("load_matrix: bad magic in " + path);
  std::uint32_t version = get_u32(in);
  if (version != 1)
    throw std::runtime_error("load_matrix: unsupported version in " + path);
  std::uint32_t m = get_u32(in);
  std::uint32_t n = get_u32(in);
  if (!in || m == 0 || n == 0)
    throw std::runtime_error("load_matrix: bad header in " + path);
  CxMat A(m, n);
  for (std::uint32_t i = 0; i < m; ++i) {
    for (std::uint32_t j = 0; j < n; ++j) {
      double re = get_f64(in);
      double im = get_f64(in);
      A(i, j) = Cx(re, im);
    }
  }
  if (!in) throw std::runtime_error("load_matrix: truncated file " + path);
  return A;
}

}  // namespace blockcs
