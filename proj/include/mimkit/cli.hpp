#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "mimkit/simplex.hpp"
#include "mimkit/sweep.hpp"

namespace mimkit {

inline constexpr int kExitOk = 0;
inline constexpr int kExitVerifyFailed = 1;
inline constexpr int kExitUsage = 2;

// Parameter grids of one sweep; rows follow the nesting order
// varpi, beta (or p), k, then d / eps / p.
struct SweepOptions {
  std::string family = "bsc";
  std::vector<double> varpi = {1.0};
  std::vector<double> beta = {0.1};
  std::vector<std::size_t> k = {4};
  std::vector<double> p;
  std::vector<double> d = {0.0};
  std::vector<double> eps = {0.01};
  bool numeric = false;
  bool shannon = false;
  OptimizerOptions optimizer;
};

// Closed-form capacity per (varpi, beta[, k]); with p set, the loss of each
// binary input (p, 1 - p) instead.
SweepTable milc_table(const SweepOptions& o);
// R(D) of a Bernoulli(p) source under Hamming distortion.
SweepTable midf_table(const SweepOptions& o);
// Maximum rate under the loss budget eps.
SweepTable maxrate_table(const SweepOptions& o);
// MIM of the source (p, 1 - p), plus CMIM and loss through the family channel.
SweepTable mim_table(const SweepOptions& o, bool with_channel);

// args excludes the program name. Returns one of the kExit codes.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace mimkit
