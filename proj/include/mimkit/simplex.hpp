#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace mimkit {

struct OptimizerOptions {
  int max_iters = 10000;
  int starts = 8;
  std::uint64_t seed = 20180419;
  // Stop once the projected-gradient norm falls below this.
  double tolerance = 1e-9;
  double fd_step = 1e-6;
};

using Objective = std::function<double(std::span<const double>)>;
// In-place Euclidean projection onto a convex feasible set.
using Projection = std::function<void(std::span<double>)>;

struct AscentResult {
  std::vector<double> x;
  double value = 0.0;
  int iterations = 0;
  bool converged = false;
};

// Euclidean projection onto the probability simplex (sort-and-threshold).
void project_onto_simplex(std::span<double> v);

// Projection onto {w in simplex : w_j = 0 for j outside mask}.
void project_onto_masked_simplex(std::span<double> v, const std::vector<bool>& mask);

// Central-difference gradient with step h.
std::vector<double> finite_difference_gradient(const Objective& f, std::span<const double> x,
                                               double h);

// Projected gradient ascent with Armijo backtracking. x0 must be feasible.
AscentResult projected_gradient_ascent(const Objective& f, std::vector<double> x0,
                                       const Projection& project, const OptimizerOptions& opts);

// Start points on the n-simplex: uniform, then vertices, then Dirichlet(1)
// draws from opts.seed, opts.starts in total (at least one).
std::vector<std::vector<double>> simplex_starts(std::size_t n, const OptimizerOptions& opts);

// Pairwise mass-transfer pattern search over progressively finer steps
// (1e-2 down to 1e-10). Only accepts strict improvements; x stays on the
// simplex.
void polish_on_simplex(const Objective& f, std::vector<double>& x, double& value);

// Multi-start projected ascent over the n-simplex followed by polish.
AscentResult maximize_on_simplex(const Objective& f, std::size_t n,
                                 const OptimizerOptions& opts);

}  // namespace mimkit
