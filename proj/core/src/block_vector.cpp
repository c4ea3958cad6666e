#include "bcfw/block_vector.hpp"

#include <algorithm>

#include "bcfw/errors.hpp"

namespace bcfw {

BlockVector::BlockVector(std::vector<int> dims, Eigen::VectorXd flat) : data_(std::move(flat)) {
  offsets_.assign(1, 0);
  for (int d : dims) offsets_.push_back(offsets_.back() + d);
  if (offsets_.back() != data_.size())
    throw ContractViolation("BlockVector: flat size does not match block dims");
}

BlockVector BlockVector::zeros(const DomainDescriptor& desc) {
  std::vector<int> dims;
  dims.reserve(desc.num_blocks());
  for (int i = 0; i < desc.num_blocks(); ++i) dims.push_back(desc.block_dim(i));
  return BlockVector(std::move(dims), Eigen::VectorXd::Zero(desc.total_dim()));
}

BlockVector BlockVector::centers(const DomainDescriptor& desc) {
  BlockVector x = zeros(desc);
  for (int i = 0; i < desc.num_blocks(); ++i) x.block(i) = desc.block(i).center();
  return x;
}

BlockVector BlockVector::from_flat(const DomainDescriptor& desc, Eigen::VectorXd flat) {
  if (flat.size() != desc.total_dim())
    throw ContractViolation("BlockVector::from_flat: size mismatch");
  std::vector<int> dims;
  dims.reserve(desc.num_blocks());
  for (int i = 0; i < desc.num_blocks(); ++i) dims.push_back(desc.block_dim(i));
  return BlockVector(std::move(dims), std::move(flat));
}

double BlockVector::max_residual(const DomainDescriptor& desc) const {
  double worst = 0.0;
  for (int i = 0; i < num_blocks(); ++i)
    worst = std::max(worst, desc.block(i).feasibility_residual(block(i)));
  return worst;
}

bool BlockVector::feasible(const DomainDescriptor& desc, double tol) const {
  return max_residual(desc) <= tol;
}

}  // namespace bcfw
