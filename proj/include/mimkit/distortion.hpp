#pragma once

#include <string>
#include <vector>

#include "mimkit/mim.hpp"
#include "mimkit/simplex.hpp"

namespace mimkit {

// Nonnegative distortion matrix d(x, y), rows x, columns y.
class DistortionSpec {
 public:
  DistortionSpec(std::size_t rows, std::size_t cols, std::vector<double> row_major);

  // 0 on the diagonal, 1 elsewhere.
  static DistortionSpec hamming(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  MatrixView view() const { return {data_, rows_, cols_}; }

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<double> data_;
};

struct DistortionDomain {
  double d_min = 0.0;
  double d_max = 0.0;
};

struct RdResult {
  double rate = 0.0;
  Channel argmin_channel = Channel::identity(1);
  double achieved_distortion = 0.0;
  SolveMethod method = SolveMethod::closed_form;
  bool converged = true;
  // varpi <= 2 min_j p(y_j) / max_i p(x_i) on the returned channel.
  bool varpi_bound_satisfied = true;
  std::vector<std::string> warnings;
};

// D_min = 0, D_max = min_j sum_i p(x_i) d(x_i, y_j).
DistortionDomain distortion_domain(const Distribution& px, const DistortionSpec& d);

// sum_ij p(x_i) p(y_j|x_i) d(x_i, y_j)
double average_distortion(const Distribution& px, const Channel& ch, const DistortionSpec& d);

bool varpi_bound_holds(const Distribution& px, const Channel& ch, ImportanceParam w);

// Crossover probability p(y1|x0) of the optimal Bernoulli-Hamming test channel.
double test_channel_alpha(double p, double D);

// Optimal 2x2 test channel for a Bernoulli(p) source under Hamming distortion.
// Needs 0 <= D <= min(p, 1-p) and D != 1/2.
Channel optimal_test_channel(double p, double D);

// R(D) = L(varpi, p) - L(varpi, D) for 0 <= D <= min(p, 1-p), p in (0, 1).
RdResult midf_bernoulli_hamming(double p, ImportanceParam w, double D);

// Shannon rate-distortion H(p) - H(D) of the same source (0 beyond D_max).
double shannon_rd_bernoulli(double p, double D);

// Minimizes Phi over row-stochastic channels with average distortion D
// (D < D_max); at D >= D_max returns the zero-loss rank-1 channel.
RdResult midf_numeric(const Distribution& px, const DistortionSpec& d, double D,
                      ImportanceParam w, const OptimizerOptions& opts = {});

// Euclidean projection of a row-major n x m matrix onto
// {rows in the simplex, sum_i px_i <d_i, w_i> = D}. Exposed for testing.
void project_onto_distortion_set(std::span<double> w, const Distribution& px,
                                 const DistortionSpec& d, double D);

}  // namespace mimkit
