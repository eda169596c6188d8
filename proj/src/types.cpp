#include "blockcs/types.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace blockcs {

BlockStructure::BlockStructure(std::vector<int> lengths,
                               std::vector<int> sparsities)
    : lengths_(std::move(lengths)), sparsities_(std::move(sparsities)) {
  if (lengths_.empty())
    throw std::invalid_argument("BlockStructure: no blocks");
  if (lengths_.size() != sparsities_.size())
    throw std::invalid_argument(
        "BlockStructure: lengths and sparsities differ in size");
  offsets_.resize(lengths_.size());
  for (size_t i = 0; i < lengths_.size(); ++i) {
    if (lengths_[i] <= 0)
      throw std::invalid_argument("BlockStructure: block length must be > 0");
    if (sparsities_[i] < 1 || sparsities_[i] > lengths_[i])
      throw std::invalid_argument(
          "BlockStructure: sparsity of block " + std::to_string(i) +
          " outside [1, d_i]");
    offsets_[i] = total_;
    total_ += lengths_[i];
    total_sparsity_ += sparsities_[i];
  }
}

BlockStructure BlockStructure::uniform(int blocks, int block_len,
                                       int sparsity) {
  return BlockStructure(std::vector<int>(blocks, block_len),
                        std::vector<int>(blocks, sparsity));
}

int BlockStructure::block_of(int j) const {
  if (j < 0 || j >= total_)
    throw std::out_of_range("BlockStructure::block_of: coordinate " +
                            std::to_string(j) + " outside [0, n)");
  auto it = std::upper_bound(offsets_.begin(), offsets_.end(), j);
  return static_cast<int>(it - offsets_.begin()) - 1;
}

SupportSet SupportSet::from_indices(std::vector<int> idx,
                                    const BlockStructure& bs) {
  std::sort(idx.begin(), idx.end());
  if (std::adjacent_find(idx.begin(), idx.end()) != idx.end())
    throw std::invalid_argument("SupportSet: duplicate coordinate");
  SupportSet T;
  T.per_block.resize(bs.blocks());
  for (int j : idx) {
    int b = bs.block_of(j);  // throws on out-of-range coordinates
    T.per_block[b].push_back(j);
    if (static_cast<int>(T.per_block[b].size()) > bs.sparsity(b))
      throw std::invalid_argument(
          "SupportSet: block " + std::to_string(b) +
          " holds more coordinates than its sparsity budget");
  }
  T.indices = std::move(idx);
  return T;
}

bool SupportSet::contains(int j) const {
  return std::binary_search(indices.begin(), indices.end(), j);
}

std::vector<int> SupportSet::complement(int n) const {
  std::vector<int> out;
  out.reserve(n - size());
  size_t p = 0;
  for (int j = 0; j < n; ++j) {
    if (p < indices.size() && indices[p] == j) {
      ++p;
    } else {
      out.push_back(j);
    }
  }
  return out;
}

CxVec gather(const CxVec& x, const std::vector<int>& idx) {
  CxVec out(idx.size());
  for (size_t k = 0; k < idx.size(); ++k) {
    int j = idx[k];
    if (j < 0 || j >= x.size())
      throw std::out_of_range("gather: coordinate outside vector");
    out[static_cast<Eigen::Index>(k)] = x[j];
  }
  return out;
}

CxVec scatter(const CxVec& values, const std::vector<int>& idx, int n) {
  if (values.size() != static_cast<Eigen::Index>(idx.size()))
    throw std::invalid_argument("scatter: values and index count differ");
  CxVec out = CxVec::Zero(n);
  for (size_t k = 0; k < idx.size(); ++k) {
    int j = idx[k];
    if (j < 0 || j >= n)
      throw std::out_of_range("scatter: coordinate outside vector");
    out[j] = values[static_cast<Eigen::Index>(k)];
  }
  return out;
}

}  // namespace blockcs
