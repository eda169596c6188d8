#pragma once

#include <Eigen/Dense>

#include <complex>
#include <vector>

namespace blockcs {

using Cx = std::complex<double>;
using CxVec = Eigen::VectorXcd;
using CxMat = Eigen::MatrixXcd;

// Partition of {0, ..., n-1} into contiguous blocks, one per user, each with
// its own sparsity budget s_i (how many nonzeros the block may carry).
class BlockStructure {
 public:
  BlockStructure(std::vector<int> lengths, std::vector<int> sparsities);

  static BlockStructure uniform(int blocks, int block_len, int sparsity);

  int blocks() const { return static_cast<int>(lengths_.size()); }
  int total_len() const { return total_; }
  int length(int i) const { return lengths_.at(i); }
  int sparsity(int i) const { return sparsities_.at(i); }
  int offset(int i) const { return offsets_.at(i); }
  // Sum of the per-block budgets; the size of every selected support.
  int total_sparsity() const { return total_sparsity_; }
  // Owning block of a flat coordinate.
  int block_of(int j) const;

  bool operator==(const BlockStructure& o) const {
    return lengths_ == o.lengths_ && sparsities_ == o.sparsities_;
  }

 private:
  std::vector<int> lengths_;
  std::vector<int> sparsities_;
  std::vector<int> offsets_;
  int total_ = 0;
  int total_sparsity_ = 0;
};

// Set of selected coordinates, kept sorted, with per-block views. Each
// block's slice may hold at most that block's sparsity budget.
struct SupportSet {
  std::vector<int> indices;                 // ascending, unique
  std::vector<std::vector<int>> per_block;  // indices split by owning block

  static SupportSet from_indices(std::vector<int> idx, const BlockStructure& bs);

  int size() const { return static_cast<int>(indices.size()); }
  bool contains(int j) const;
  std::vector<int> complement(int n) const;
};

// View of the i-th block of x.
inline Eigen::Ref<const CxVec> block_slice(const CxVec& x,
                                           const BlockStructure& bs, int i) {
  return x.segment(bs.offset(i), bs.length(i));
}

// Entries of x at the given coordinates, in the given order.
CxVec gather(const CxVec& x, const std::vector<int>& idx);

// Length-n vector with `values` placed at `idx` and exact zeros elsewhere.
CxVec scatter(const CxVec& values, const std::vector<int>& idx, int n);

}  // namespace blockcs
