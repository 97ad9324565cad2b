#pragma once

#include <span>

#include "mimkit/probability.hpp"

namespace mimkit {

// Importance coefficient varpi > 0. Evaluation accepts any positive value;
// the theorems that rely on concavity of the self-scoring function need
// region_one(), and the optimizers enforce their own bounds.
class ImportanceParam {
 public:
  explicit ImportanceParam(double varpi);

  double value() const { return varpi_; }
  // varpi <= 2 / max_i p(x_i)
  bool region_one(const Distribution& d) const;

 private:
  double varpi_;
};

struct LossReport {
  double mim_value = 0.0;
  double cmim_value = 0.0;
  double loss = 0.0;  // mim_value - cmim_value
  // Jensen's argument only covers varpi <= 2.
  bool nonnegativity_guaranteed = true;
};

// p e^{varpi (1 - p)}; DomainError unless p in [0, 1].
double self_scoring(double p, ImportanceParam w);

// L(varpi, X) = sum_i p_i e^{varpi (1 - p_i)}
double mim(const Distribution& d, ImportanceParam w);

// L(varpi, p) for the Bernoulli source (p, 1 - p).
double binary_mim(double p, double varpi);

// L(varpi, X|Y): expected MIM of the Bayes posterior p(x|y) under p(y).
double cmim(const Distribution& px, const Channel& ch, ImportanceParam w);

// L(varpi, Y|X): the same functional applied to the channel rows p(y|x).
double cmim_forward(const Distribution& px, const Channel& ch, ImportanceParam w);

// Phi = L(varpi, X) - L(varpi, X|Y).
LossReport importance_loss(const Distribution& px, const Channel& ch, ImportanceParam w);

// Phi evaluated through the joint J_ij = px_i W_ij without validating either
// argument. Smooth in both, so finite differences may step off the simplex.
double importance_loss_unchecked(std::span<const double> px, MatrixView ch, double varpi);

// Phi for a fixed backward matrix p(x|y) (rows y, columns x) and output
// distribution p(y): the input is p(x) = sum_y p(y) p(x|y).
double importance_loss_backward_unchecked(std::span<const double> py, MatrixView backward,
                                          double varpi);

}  // namespace mimkit
