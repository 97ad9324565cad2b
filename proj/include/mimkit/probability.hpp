#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "mimkit/common.hpp"

namespace mimkit {

// Entries may deviate from a valid probability vector by at most this much
// before a constructor refuses to renormalize.
inline constexpr double kNormalizeTolerance = 1e-9;

class Distribution {
 public:
  // Rejects negative or non-finite entries and any vector whose sum is more
  // than kNormalizeTolerance away from 1; smaller deviations are normalized.
  explicit Distribution(std::vector<double> probs);

  static Distribution uniform(std::size_t n);
  // (p, 1 - p)
  static Distribution bernoulli(double p);
  static Distribution vertex(std::size_t n, std::size_t k);

  std::size_t size() const { return probs_.size(); }
  std::span<const double> probs() const { return probs_; }
  double operator[](std::size_t i) const { return probs_[i]; }
  double max() const;

  friend bool operator==(const Distribution&, const Distribution&) = default;

 private:
  std::vector<double> probs_;
};

// Non-owning row-major view. Used by the optimizers, which evaluate
// objectives on perturbed matrices that are not valid channels.
struct MatrixView {
  std::span<const double> data;
  std::size_t rows = 0;
  std::size_t cols = 0;

  double operator()(std::size_t i, std::size_t j) const { return data[i * cols + j]; }
};

// Row-stochastic transfer matrix p(y|x): rows index inputs, columns outputs.
class Channel {
 public:
  Channel(std::size_t rows, std::size_t cols, std::vector<double> row_major);
  explicit Channel(const std::vector<std::vector<double>>& rows);

  static Channel identity(std::size_t n);
  static Channel binary_symmetric(double beta_s);
  static Channel binary_erasure(double beta_e);
  // Diagonal 1 - beta_k, off-diagonal beta_k / (K - 1). Symmetric and doubly
  // stochastic, so it serves both as the strongly symmetric backward matrix
  // p(x|y) and as the forward channel that matrix induces under uniform Y.
  static Channel k_ary_symmetric(std::size_t k, double beta_k);
  // Every input maps to the same output distribution (X and Y independent).
  static Channel constant(std::size_t inputs, const Distribution& output);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  std::span<const double> row(std::size_t i) const {
    return std::span<const double>(data_).subspan(i * cols_, cols_);
  }
  MatrixView view() const { return {data_, rows_, cols_}; }
  std::span<const double> data() const { return data_; }

  friend bool operator==(const Channel&, const Channel&) = default;

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<double> data_;
};

// Bayes posterior p(x|y), indexed (y, x). Rows for outputs of zero marginal
// probability are all-zero and flagged unreachable.
class Posterior {
 public:
  Posterior(std::size_t outputs, std::size_t inputs, std::vector<double> matrix,
            Distribution output_marginal, std::vector<bool> reachable);

  std::size_t outputs() const { return outputs_; }
  std::size_t inputs() const { return inputs_; }
  double operator()(std::size_t y, std::size_t x) const { return matrix_[y * inputs_ + x]; }
  std::span<const double> row(std::size_t y) const {
    return std::span<const double>(matrix_).subspan(y * inputs_, inputs_);
  }
  bool reachable(std::size_t y) const { return reachable_[y]; }
  const Distribution& output_marginal() const { return marginal_; }

 private:
  std::size_t outputs_;
  std::size_t inputs_;
  std::vector<double> matrix_;
  Distribution marginal_;
  std::vector<bool> reachable_;
};

Distribution output_marginal(const Distribution& px, const Channel& ch);
Posterior posterior(const Distribution& px, const Channel& ch);

// Shannon entropy in bits, 0 log 0 := 0.
double shannon_entropy(const Distribution& d);
// H(p, 1 - p) in bits for p in [0, 1].
double binary_entropy(double p);

// I(X;Y) = H(Y) - H(Y|X) in bits.
double mutual_information(const Distribution& px, const Channel& ch);

// Same quantity evaluated as sum_ij p_i W_ij log2(W_ij / q_j) on an arbitrary
// weight vector; outputs whose marginal is not positive contribute nothing.
double mutual_information_unchecked(std::span<const double> px, MatrixView ch);

namespace detail {
void require_same_inputs(const Distribution& px, const Channel& ch);
}

}  // namespace mimkit
