#include "bcfw/domain.hpp"

#include <algorithm>
#include <cmath>

#include "bcfw/errors.hpp"

namespace bcfw {

BlockDomain BlockDomain::simplex(int dim) {
  if (dim < 1) throw ContractViolation("simplex: dim must be >= 1");
  BlockDomain b;
  b.kind = Kind::Simplex;
  b.dim = dim;
  return b;
}

BlockDomain BlockDomain::l2ball(int dim, double radius) {
  if (dim < 1) throw ContractViolation("l2ball: dim must be >= 1");
  if (!(radius > 0.0)) throw ContractViolation("l2ball: radius must be positive");
  BlockDomain b;
  b.kind = Kind::L2Ball;
  b.dim = dim;
  b.radius = radius;
  return b;
}

BlockDomain BlockDomain::vertex_list(Eigen::MatrixXd verts) {
  if (verts.rows() < 1) throw ContractViolation("vertex_list: list must be non-empty");
  BlockDomain b;
  b.kind = Kind::VertexList;
  b.dim = static_cast<int>(verts.cols());
  b.vertices = std::move(verts);
  return b;
}

int BlockDomain::vertex_count() const {
  switch (kind) {
    case Kind::Simplex: return dim;
    case Kind::VertexList: return static_cast<int>(vertices.rows());
    case Kind::L2Ball: throw CapacityError("L2 ball has no finite vertex list");
  }
  return 0;
}

Eigen::VectorXd BlockDomain::vertex(int j) const {
  switch (kind) {
    case Kind::Simplex: {
      Eigen::VectorXd e = Eigen::VectorXd::Zero(dim);
      e[j] = 1.0;
      return e;
    }
    case Kind::VertexList: return vertices.row(j).transpose();
    case Kind::L2Ball: throw CapacityError("L2 ball has no finite vertex list");
  }
  return {};
}

double BlockDomain::feasibility_residual(const Eigen::Ref<const Eigen::VectorXd>& v) const {
  switch (kind) {
    case Kind::Simplex: {
      const double sum_err = std::abs(v.sum() - 1.0);
      const double neg = std::max(0.0, -v.minCoeff());
      return std::max(sum_err, neg);
    }
    case Kind::L2Ball: return std::max(0.0, v.norm() - radius);
    case Kind::VertexList: return 0.0;
  }
  return 0.0;
}

bool BlockDomain::contains(const Eigen::Ref<const Eigen::VectorXd>& v, double tol) const {
  return feasibility_residual(v) <= tol;
}

double BlockDomain::diameter() const {
  switch (kind) {
    case Kind::Simplex: return dim >= 2 ? std::sqrt(2.0) : 0.0;
    case Kind::L2Ball: return 2.0 * radius;
    case Kind::VertexList: {
      double best = 0.0;
      for (int a = 0; a < vertices.rows(); ++a)
        for (int b = a + 1; b < vertices.rows(); ++b)
          best = std::max(best, (vertices.row(a) - vertices.row(b)).norm());
      return best;
    }
  }
  return 0.0;
}

Eigen::VectorXd BlockDomain::center() const {
  switch (kind) {
    case Kind::Simplex: return Eigen::VectorXd::Constant(dim, 1.0 / dim);
    case Kind::L2Ball: return Eigen::VectorXd::Zero(dim);
    case Kind::VertexList: return vertices.colwise().mean().transpose();
  }
  return {};
}

Eigen::VectorXd BlockDomain::sample_point(rng::Engine& eng) const {
  switch (kind) {
    case Kind::Simplex: {
      // Exponential spacings give a uniform simplex point.
      Eigen::VectorXd v(dim);
      for (int i = 0; i < dim; ++i) {
        double u = rng::uniform(eng);
        while (u <= 0.0) u = rng::uniform(eng);
        v[i] = -std::log(u);
      }
      return v / v.sum();
    }
    case Kind::L2Ball: {
      Eigen::VectorXd g = rng::gaussian_vector(eng, dim);
      const double nrm = g.norm();
      if (nrm == 0.0) return Eigen::VectorXd::Zero(dim);
      const double r = radius * std::pow(rng::uniform(eng), 1.0 / dim);
      return g * (r / nrm);
    }
    case Kind::VertexList: {
      // Random convex combination of the vertices.
      Eigen::VectorXd w(vertices.rows());
      for (int i = 0; i < w.size(); ++i) {
        double u = rng::uniform(eng);
        while (u <= 0.0) u = rng::uniform(eng);
        w[i] = -std::log(u);
      }
      w /= w.sum();
      return vertices.transpose() * w;
    }
  }
  return {};
}

Eigen::VectorXd BlockDomain::sample_extreme(rng::Engine& eng) const {
  switch (kind) {
    case Kind::Simplex: return vertex(rng::uniform_int(eng, dim));
    case Kind::VertexList: return vertex(rng::uniform_int(eng, vertex_count()));
    case Kind::L2Ball: {
      Eigen::VectorXd g = rng::gaussian_vector(eng, dim);
      const double nrm = g.norm();
      if (nrm == 0.0) {
        Eigen::VectorXd e = Eigen::VectorXd::Zero(dim);
        e[0] = radius;
        return e;
      }
      return g * (radius / nrm);
    }
  }
  return {};
}

DomainDescriptor::DomainDescriptor(std::vector<BlockDomain> b) : blocks(std::move(b)) {
  offsets_.reserve(blocks.size() + 1);
  offsets_.push_back(0);
  for (const auto& blk : blocks) offsets_.push_back(offsets_.back() + blk.dim);
  total_dim_ = offsets_.back();
}

DomainDescriptor DomainDescriptor::simplex_product(int n, int dim) {
  std::vector<BlockDomain> bs;
  bs.reserve(n);
  for (int i = 0; i < n; ++i) bs.push_back(BlockDomain::simplex(dim));
  return DomainDescriptor(std::move(bs));
}

DomainDescriptor DomainDescriptor::ball_product(int n, int dim, double radius) {
  std::vector<BlockDomain> bs;
  bs.reserve(n);
  for (int i = 0; i < n; ++i) bs.push_back(BlockDomain::l2ball(dim, radius));
  return DomainDescriptor(std::move(bs));
}

}  // namespace bcfw
