#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <vector>

#include "bcfw/domain.hpp"

namespace bcfw {

// A point x in the product domain, stored flat with a block index map.
// The total dimension is fixed at construction; `version` stamps the last
// write (the server iteration counter in the solvers).
class BlockVector {
 public:
  BlockVector() = default;
  BlockVector(std::vector<int> dims, Eigen::VectorXd flat);

  static BlockVector zeros(const DomainDescriptor& desc);
  static BlockVector centers(const DomainDescriptor& desc);
  static BlockVector from_flat(const DomainDescriptor& desc, Eigen::VectorXd flat);

  int num_blocks() const { return static_cast<int>(offsets_.size()) - 1; }
  int dim() const { return static_cast<int>(data_.size()); }
  int block_dim(int i) const { return offsets_[i + 1] - offsets_[i]; }
  int offset(int i) const { return offsets_[i]; }

  Eigen::VectorBlock<Eigen::VectorXd> block(int i) {
    return data_.segment(offsets_[i], block_dim(i));
  }
  Eigen::VectorBlock<const Eigen::VectorXd> block(int i) const {
    return data_.segment(offsets_[i], block_dim(i));
  }

  const Eigen::VectorXd& flat() const { return data_; }
  Eigen::VectorXd& flat() { return data_; }

  std::int64_t version() const { return version_; }
  void set_version(std::int64_t v) { version_ = v; }
  void bump_version() { ++version_; }

  // Largest per-block feasibility residual w.r.t. the descriptor.
  double max_residual(const DomainDescriptor& desc) const;
  bool feasible(const DomainDescriptor& desc, double tol = 1e-9) const;

 private:
  Eigen::VectorXd data_;
  std::vector<int> offsets_{0};
  std::int64_t version_ = 0;
};

}  // namespace bcfw
