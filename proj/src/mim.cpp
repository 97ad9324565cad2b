#include "mimkit/mim.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

namespace mimkit {

namespace {

double score(double p, double varpi) { return p * std::exp(varpi * (1.0 - p)); }

double raw_mim(std::span<const double> p, double varpi) {
  double sum = 0.0;
  for (double x : p) sum += score(x, varpi);
  return sum;
}

}  // namespace

ImportanceParam::ImportanceParam(double varpi) : varpi_(varpi) {
  if (!std::isfinite(varpi) || !(varpi > 0.0)) {
    throw DomainError("importance coefficient must be finite and positive, got " +
                      std::to_string(varpi));
  }
}

bool ImportanceParam::region_one(const Distribution& d) const {
  return varpi_ * d.max() <= 2.0;
}

double self_scoring(double p, ImportanceParam w) {
  detail::require_unit_interval(p, "p");
  return score(p, w.value());
}

double mim(const Distribution& d, ImportanceParam w) {
  return raw_mim(d.probs(), w.value());
}

double binary_mim(double p, double varpi) {
  return score(p, varpi) + score(1.0 - p, varpi);
}

double cmim(const Distribution& px, const Channel& ch, ImportanceParam w) {
  const Posterior post = posterior(px, ch);
  double sum = 0.0;
  for (std::size_t y = 0; y < post.outputs(); ++y) {
    if (!post.reachable(y)) continue;
    sum += post.output_marginal()[y] * raw_mim(post.row(y), w.value());
  }
  return sum;
}

double cmim_forward(const Distribution& px, const Channel& ch, ImportanceParam w) {
  detail::require_same_inputs(px, ch);
  double sum = 0.0;
  for (std::size_t x = 0; x < ch.rows(); ++x) sum += px[x] * raw_mim(ch.row(x), w.value());
  return sum;
}

LossReport importance_loss(const Distribution& px, const Channel& ch, ImportanceParam w) {
  LossReport r;
  r.mim_value = mim(px, w);
  r.cmim_value = cmim(px, ch, w);
  r.loss = r.mim_value - r.cmim_value;
  r.nonnegativity_guaranteed = w.value() <= 2.0;
  return r;
}

double importance_loss_unchecked(std::span<const double> px, MatrixView ch, double varpi) {
  const std::size_t n = ch.rows;
  const std::size_t m = ch.cols;
  double conditional = 0.0;
  for (std::size_t j = 0; j < m; ++j) {
    double q = 0.0;
    for (std::size_t i = 0; i < n; ++i) q += px[i] * ch(i, j);
    if (q == 0.0) continue;
    for (std::size_t i = 0; i < n; ++i) {
      const double joint = px[i] * ch(i, j);
      // Ratios only leave [0, 1] under finite-difference perturbation; the
      // clamp keeps exp() bounded when a column mass nearly cancels.
      const double ratio = std::clamp(joint / q, -1.0, 2.0);
      conditional += joint * std::exp(varpi * (1.0 - ratio));
    }
  }
  return raw_mim(px.first(n), varpi) - conditional;
}

double importance_loss_backward_unchecked(std::span<const double> py, MatrixView backward,
                                          double varpi) {
  std::vector<double> px(backward.cols, 0.0);
  double conditional = 0.0;
  for (std::size_t y = 0; y < backward.rows; ++y) {
    double row_mim = 0.0;
    for (std::size_t x = 0; x < backward.cols; ++x) {
      px[x] += py[y] * backward(y, x);
      row_mim += score(backward(y, x), varpi);
    }
    conditional += py[y] * row_mim;
  }
  return raw_mim(px, varpi) - conditional;
}

}  // namespace mimkit
