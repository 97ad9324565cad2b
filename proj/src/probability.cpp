#include "mimkit/probability.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace mimkit {

namespace {

// Validates and normalizes one probability vector in place.
void normalize_probabilities(std::span<double> v, const char* what) {
  if (v.empty()) {
    throw DomainError(std::string(what) + ": empty probability vector");
  }
  double sum = 0.0;
  for (double x : v) {
    if (!std::isfinite(x) || x < 0.0) {
      throw DomainError(std::string(what) + ": entries must be finite and nonnegative");
    }
    sum += x;
  }
  if (std::abs(sum - 1.0) > kNormalizeTolerance) {
    throw DomainError(std::string(what) + ": entries sum to " + std::to_string(sum) +
                      ", not 1");
  }
  if (sum != 1.0) {
    for (double& x : v) x /= sum;
  }
  for (double& x : v) x = std::min(x, 1.0);
}

double xlog2x(double x) { return x > 0.0 ? x * std::log2(x) : 0.0; }

}  // namespace

Distribution::Distribution(std::vector<double> probs) : probs_(std::move(probs)) {
  normalize_probabilities(probs_, "Distribution");
}

Distribution Distribution::uniform(std::size_t n) {
  if (n == 0) throw DomainError("Distribution::uniform: alphabet size must be positive");
  return Distribution(std::vector<double>(n, 1.0 / static_cast<double>(n)));
}

Distribution Distribution::bernoulli(double p) {
  detail::require_unit_interval(p, "p");
  return Distribution({p, 1.0 - p});
}

Distribution Distribution::vertex(std::size_t n, std::size_t k) {
  if (k >= n) throw DomainError("Distribution::vertex: index out of range");
  std::vector<double> v(n, 0.0);
  v[k] = 1.0;
  return Distribution(std::move(v));
}

double Distribution::max() const { return *std::max_element(probs_.begin(), probs_.end()); }

Channel::Channel(std::size_t rows, std::size_t cols, std::vector<double> row_major)
    : rows_(rows), cols_(cols), data_(std::move(row_major)) {
  if (rows_ == 0 || cols_ == 0) throw ShapeError("Channel: dimensions must be positive");
  if (data_.size() != rows_ * cols_) {
    throw ShapeError("Channel: expected " + std::to_string(rows_ * cols_) + " entries, got " +
                     std::to_string(data_.size()));
  }
  for (std::size_t i = 0; i < rows_; ++i) {
    normalize_probabilities(std::span<double>(data_).subspan(i * cols_, cols_), "Channel row");
  }
}

Channel::Channel(const std::vector<std::vector<double>>& rows)
    : Channel(rows.size(), rows.empty() ? 0 : rows.front().size(), [&] {
        std::vector<double> flat;
        for (const auto& r : rows) {
          if (r.size() != rows.front().size()) throw ShapeError("Channel: ragged rows");
          flat.insert(flat.end(), r.begin(), r.end());
        }
        return flat;
      }()) {}

Channel Channel::identity(std::size_t n) {
  std::vector<double> m(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) m[i * n + i] = 1.0;
  return Channel(n, n, std::move(m));
}

Channel Channel::binary_symmetric(double beta_s) {
  detail::require_unit_interval(beta_s, "beta_s");
  return Channel(2, 2, {1.0 - beta_s, beta_s, beta_s, 1.0 - beta_s});
}

Channel Channel::binary_erasure(double beta_e) {
  detail::require_unit_interval(beta_e, "beta_e");
  return Channel(2, 3, {1.0 - beta_e, 0.0, beta_e, 0.0, 1.0 - beta_e, beta_e});
}

Channel Channel::k_ary_symmetric(std::size_t k, double beta_k) {
  if (k < 2) throw DomainError("k_ary_symmetric: K must be at least 2");
  detail::require_unit_interval(beta_k, "beta_k");
  const double off = beta_k / static_cast<double>(k - 1);
  std::vector<double> m(k * k, off);
  for (std::size_t i = 0; i < k; ++i) m[i * k + i] = 1.0 - beta_k;
  return Channel(k, k, std::move(m));
}

Channel Channel::constant(std::size_t inputs, const Distribution& output) {
  std::vector<double> m;
  m.reserve(inputs * output.size());
  for (std::size_t i = 0; i < inputs; ++i) {
    m.insert(m.end(), output.probs().begin(), output.probs().end());
  }
  return Channel(inputs, output.size(), std::move(m));
}

Posterior::Posterior(std::size_t outputs, std::size_t inputs, std::vector<double> matrix,
                     Distribution output_marginal, std::vector<bool> reachable)
    : outputs_(outputs),
      inputs_(inputs),
      matrix_(std::move(matrix)),
      marginal_(std::move(output_marginal)),
      reachable_(std::move(reachable)) {}

void detail::require_same_inputs(const Distribution& px, const Channel& ch) {
  if (px.size() != ch.rows()) {
    throw ShapeError("distribution has " + std::to_string(px.size()) +
                     " symbols but channel has " + std::to_string(ch.rows()) + " inputs");
  }
}

Distribution output_marginal(const Distribution& px, const Channel& ch) {
  detail::require_same_inputs(px, ch);
  std::vector<double> q(ch.cols(), 0.0);
  for (std::size_t i = 0; i < ch.rows(); ++i) {
    for (std::size_t j = 0; j < ch.cols(); ++j) q[j] += px[i] * ch(i, j);
  }
  return Distribution(std::move(q));
}

Posterior posterior(const Distribution& px, const Channel& ch) {
  Distribution q = output_marginal(px, ch);
  const std::size_t n = ch.rows();
  const std::size_t m = ch.cols();
  std::vector<double> post(m * n, 0.0);
  std::vector<bool> reachable(m, false);
  for (std::size_t j = 0; j < m; ++j) {
    if (q[j] <= 0.0) continue;
    reachable[j] = true;
    double row_sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      post[j * n + i] = px[i] * ch(i, j) / q[j];
      row_sum += post[j * n + i];
    }
    // q[j] and the row numerators come from different summation orders.
    for (std::size_t i = 0; i < n; ++i) post[j * n + i] /= row_sum;
  }
  return Posterior(m, n, std::move(post), std::move(q), std::move(reachable));
}

double shannon_entropy(const Distribution& d) {
  double h = 0.0;
  for (double p : d.probs()) h -= xlog2x(p);
  return std::max(h, 0.0);
}

double binary_entropy(double p) {
  detail::require_unit_interval(p, "p");
  return std::max(-(xlog2x(p) + xlog2x(1.0 - p)), 0.0);
}

double mutual_information_unchecked(std::span<const double> px, MatrixView ch) {
  std::vector<double> q(ch.cols, 0.0);
  for (std::size_t i = 0; i < ch.rows; ++i) {
    for (std::size_t j = 0; j < ch.cols; ++j) q[j] += px[i] * ch(i, j);
  }
  double info = 0.0;
  for (std::size_t i = 0; i < ch.rows; ++i) {
    for (std::size_t j = 0; j < ch.cols; ++j) {
      const double w = ch(i, j);
      if (w > 0.0 && q[j] > 0.0 && px[i] != 0.0) info += px[i] * w * std::log2(w / q[j]);
    }
  }
  return info;
}

double mutual_information(const Distribution& px, const Channel& ch) {
  detail::require_same_inputs(px, ch);
  return std::max(mutual_information_unchecked(px.probs(), ch.view()), 0.0);
}

}  // namespace mimkit
