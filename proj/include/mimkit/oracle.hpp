#pragma once

#include <cstddef>
#include <vector>

#include "mimkit/mim.hpp"

namespace mimkit {

// Lattice {k / N : sum k = N} on the simplex with N = round(1 / resolution).
struct GridSpec {
  double resolution = 1e-4;
  std::size_t dimension = 2;

  GridSpec(double resolution, std::size_t dimension);
  std::size_t steps() const;
};

inline constexpr std::size_t kMaxOracleAlphabet = 4;

struct GridMax {
  double value = 0.0;
  std::vector<double> argmax;
};

// Maximum of Phi over the input lattice, computed with its own posterior
// arithmetic. Input alphabet at most kMaxOracleAlphabet.
GridMax grid_max_loss(const Channel& ch, ImportanceParam w, const GridSpec& g);

// Same for a fixed backward matrix p(x|y) (rows y): the lattice is over p(y).
GridMax grid_max_loss_backward(const Channel& backward, ImportanceParam w, const GridSpec& g);

struct GridRd {
  double value = 0.0;
  double alpha = 0.0;
  double beta = 0.0;
};

// Bernoulli(p) source, Hamming distortion: scans alpha = p(y1|x0) with
// beta = p(y0|x1) = (D - p alpha) / (1 - p) and returns the smallest Phi.
GridRd grid_min_rd(double p, ImportanceParam w, double D, const GridSpec& g);

struct GridRate {
  double rate = 0.0;
  double p = 0.0;
};

// Binary-input channel: scans p in [0, 1/2] and returns the largest I(X;Y)
// among inputs (p, 1 - p) with Phi <= eps.
GridRate grid_max_mi_under_loss(const Channel& ch, ImportanceParam w, double eps,
                                const GridSpec& g);

}  // namespace mimkit
