#pragma once

#include <vector>

#include "bcfw/block_vector.hpp"
#include "bcfw/problem.hpp"

namespace bcfw {

// Surrogate duality gap pieces: g^(i)(x) = max_{s in M_i} <x_i - s, grad_i f(x)>,
// g(x) = sum_i g^(i)(x), and the unbiased mini-batch estimator
// ghat(x) = (n/|S|) * sum_{i in S} g^(i)(x).

struct GapEstimate {
  double value = 0.0;
  std::vector<int> subset;
  bool is_exact = false;  // true when the subset is all of [n]
};

double block_gap(const DenseProblem& problem, const BlockVector& x, int i);

double full_gap(const DenseProblem& problem, const BlockVector& x);

GapEstimate gap_estimate(const DenseProblem& problem, const BlockVector& x,
                         const std::vector<int>& S);

}  // namespace bcfw
