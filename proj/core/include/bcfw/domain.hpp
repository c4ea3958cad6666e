#pragma once

#include <Eigen/Core>
#include <vector>

#include "bcfw/rng.hpp"

namespace bcfw {

// One factor M_i of the product feasible set. Three kinds are supported:
// the unit simplex, the Euclidean ball of a given radius, and an explicit
// vertex list (rows of `vertices`).
struct BlockDomain {
  enum class Kind { Simplex, L2Ball, VertexList };

  Kind kind = Kind::Simplex;
  int dim = 0;
  double radius = 1.0;        // L2Ball only
  Eigen::MatrixXd vertices;   // VertexList only; one vertex per row

  static BlockDomain simplex(int dim);
  static BlockDomain l2ball(int dim, double radius);
  static BlockDomain vertex_list(Eigen::MatrixXd verts);

  bool enumerable() const { return kind != Kind::L2Ball; }
  int vertex_count() const;                 // throws for balls
  Eigen::VectorXd vertex(int j) const;      // throws for balls

  // Distance-to-feasibility residual: simplex combines |sum-1| with the
  // most negative entry, balls use norm overshoot, vertex lists are not
  // checked (membership in a hull is not a cheap residual).
  double feasibility_residual(const Eigen::Ref<const Eigen::VectorXd>& v) const;
  bool contains(const Eigen::Ref<const Eigen::VectorXd>& v, double tol = 1e-9) const;

  double diameter() const;                  // Euclidean diameter of M_i
  Eigen::VectorXd center() const;           // a canonical interior point
  Eigen::VectorXd sample_point(rng::Engine& eng) const;     // ~uniform-ish feasible point
  Eigen::VectorXd sample_extreme(rng::Engine& eng) const;   // vertex or sphere point
};

// The product domain: one BlockDomain per coordinate block.
struct DomainDescriptor {
  std::vector<BlockDomain> blocks;

  DomainDescriptor() = default;
  explicit DomainDescriptor(std::vector<BlockDomain> b);

  int num_blocks() const { return static_cast<int>(blocks.size()); }
  int total_dim() const { return total_dim_; }
  int offset(int i) const { return offsets_[i]; }
  int block_dim(int i) const { return blocks[i].dim; }
  const BlockDomain& block(int i) const { return blocks[i]; }

  static DomainDescriptor simplex_product(int n, int dim);
  static DomainDescriptor ball_product(int n, int dim, double radius);

 private:
  std::vector<int> offsets_;
  int total_dim_ = 0;
};

}  // namespace bcfw
