#include "mimkit/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

namespace mimkit {

namespace {

double score(double p, double v) { return p * std::exp(v * (1.0 - p)); }

double mim_of(const std::vector<double>& p, double v) {
  double s = 0.0;
  for (double x : p) s += score(x, v);
  return s;
}

// L(X) - sum_y q_y L(X | Y = y) through explicit Bayes posteriors.
double loss_by_posterior(const std::vector<double>& px, const Channel& ch, double v) {
  const std::size_t n = ch.rows();
  const std::size_t m = ch.cols();
  double conditional = 0.0;
  std::vector<double> post(n);
  for (std::size_t j = 0; j < m; ++j) {
    double q = 0.0;
    for (std::size_t i = 0; i < n; ++i) q += px[i] * ch(i, j);
    if (q <= 0.0) continue;
    for (std::size_t i = 0; i < n; ++i) post[i] = px[i] * ch(i, j) / q;
    conditional += q * mim_of(post, v);
  }
  return mim_of(px, v) - conditional;
}

double entropy_bits(const std::vector<double>& p) {
  double h = 0.0;
  for (double x : p) {
    if (x > 0.0) h -= x * std::log2(x);
  }
  return h;
}

double mi_bits(const std::vector<double>& px, const Channel& ch) {
  std::vector<double> q(ch.cols(), 0.0);
  double noise = 0.0;
  for (std::size_t i = 0; i < ch.rows(); ++i) {
    std::vector<double> row(ch.row(i).begin(), ch.row(i).end());
    noise += px[i] * entropy_bits(row);
    for (std::size_t j = 0; j < ch.cols(); ++j) q[j] += px[i] * ch(i, j);
  }
  return entropy_bits(q) - noise;
}

// Visits every composition k_0 + ... + k_{n-1} = steps as k / steps.
void for_each_lattice_point(std::size_t n, std::size_t steps,
                            const std::function<void(const std::vector<double>&)>& visit) {
  std::vector<std::size_t> k(n, 0);
  std::vector<double> p(n, 0.0);
  const double inv = 1.0 / static_cast<double>(steps);
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t i, std::size_t left) {
    if (i + 1 == n) {
      k[i] = left;
      for (std::size_t t = 0; t < n; ++t) p[t] = static_cast<double>(k[t]) * inv;
      visit(p);
      return;
    }
    for (std::size_t c = 0; c <= left; ++c) {
      k[i] = c;
      rec(i + 1, left - c);
    }
  };
  rec(0, steps);
}

void require_alphabet(std::size_t n) {
  if (n > kMaxOracleAlphabet) {
    throw DomainError("grid oracle supports alphabets up to " +
                      std::to_string(kMaxOracleAlphabet) + ", got " + std::to_string(n));
  }
}

}  // namespace

GridSpec::GridSpec(double res, std::size_t dim) : resolution(res), dimension(dim) {
  if (!(resolution > 0.0 && resolution <= 0.5)) {
    throw DomainError("grid resolution must lie in (0, 0.5]");
  }
  if (dimension == 0) throw DomainError("grid dimension must be positive");
}

std::size_t GridSpec::steps() const {
  return static_cast<std::size_t>(std::llround(1.0 / resolution));
}

GridMax grid_max_loss(const Channel& ch, ImportanceParam w, const GridSpec& g) {
  require_alphabet(ch.rows());
  const double v = w.value();
  GridMax best;
  best.value = -std::numeric_limits<double>::infinity();
  for_each_lattice_point(ch.rows(), g.steps(), [&](const std::vector<double>& p) {
    const double f = loss_by_posterior(p, ch, v);
    if (f > best.value) {
      best.value = f;
      best.argmax = p;
    }
  });
  return best;
}

GridMax grid_max_loss_backward(const Channel& backward, ImportanceParam w, const GridSpec& g) {
  require_alphabet(backward.rows());
  const double v = w.value();
  const std::size_t ny = backward.rows();
  const std::size_t nx = backward.cols();
  std::vector<double> row_mim(ny);
  for (std::size_t y = 0; y < ny; ++y) {
    row_mim[y] = mim_of(std::vector<double>(backward.row(y).begin(), backward.row(y).end()), v);
  }
  GridMax best;
  best.value = -std::numeric_limits<double>::infinity();
  std::vector<double> px(nx);
  for_each_lattice_point(ny, g.steps(), [&](const std::vector<double>& py) {
    std::fill(px.begin(), px.end(), 0.0);
    double conditional = 0.0;
    for (std::size_t y = 0; y < ny; ++y) {
      conditional += py[y] * row_mim[y];
      for (std::size_t x = 0; x < nx; ++x) px[x] += py[y] * backward(y, x);
    }
    const double f = mim_of(px, v) - conditional;
    if (f > best.value) {
      best.value = f;
      best.argmax = py;
    }
  });
  return best;
}

GridRd grid_min_rd(double p, ImportanceParam w, double D, const GridSpec& g) {
  if (!(p > 0.0 && p < 1.0)) throw DomainError("grid_min_rd needs p in (0, 1)");
  if (!(D >= 0.0 && D <= 1.0)) throw DomainError("distortion must lie in [0, 1]");
  const double lo = std::max(0.0, 1.0 + (D - 1.0) / p);
  const double hi = std::min(1.0, D / p);
  if (lo > hi) throw DomainError("distortion is not achievable");
  const double v = w.value();
  const std::vector<double> px = {p, 1.0 - p};
  GridRd best;
  best.value = std::numeric_limits<double>::infinity();
  const auto visit = [&](double alpha) {
    const double beta = std::clamp((D - p * alpha) / (1.0 - p), 0.0, 1.0);
    const Channel ch(2, 2, {1.0 - alpha, alpha, beta, 1.0 - beta});
    const double f = loss_by_posterior(px, ch, v);
    if (f < best.value) best = {f, alpha, beta};
  };
  const auto count = static_cast<std::size_t>(std::floor((hi - lo) / g.resolution));
  for (std::size_t k = 0; k <= count; ++k) visit(lo + static_cast<double>(k) * g.resolution);
  visit(hi);
  return best;
}

GridRate grid_max_mi_under_loss(const Channel& ch, ImportanceParam w, double eps,
                                const GridSpec& g) {
  if (ch.rows() != 2) throw ShapeError("grid_max_mi_under_loss needs a binary-input channel");
  const double v = w.value();
  GridRate best;
  const std::size_t half = g.steps() / 2;
  const double inv = 1.0 / static_cast<double>(g.steps());
  for (std::size_t k = 0; k <= half; ++k) {
    const double p = std::min(static_cast<double>(k) * inv, 0.5);
    const std::vector<double> px = {p, 1.0 - p};
    if (loss_by_posterior(px, ch, v) > eps) continue;
    const double i = mi_bits(px, ch);
    if (i > best.rate) best = {i, p};
  }
  return best;
}

}  // namespace mimkit
