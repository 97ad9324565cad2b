#include "mimkit/distortion.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace mimkit {

namespace {

constexpr double kFloorSlack = 1e-15;

void require_matching(const Distribution& px, const DistortionSpec& d) {
  if (px.size() != d.rows()) {
    throw ShapeError("distortion matrix has " + std::to_string(d.rows()) +
                     " rows but distribution has " + std::to_string(px.size()) + " symbols");
  }
}

// sum_i p_i min_j d_ij: the smallest achievable average distortion.
double distortion_floor(const Distribution& px, const DistortionSpec& d) {
  double floor = 0.0;
  for (std::size_t i = 0; i < d.rows(); ++i) {
    double lo = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < d.cols(); ++j) lo = std::min(lo, d(i, j));
    floor += px[i] * lo;
  }
  return floor;
}

std::size_t best_column(const Distribution& px, const DistortionSpec& d) {
  std::size_t best = 0;
  double best_value = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < d.cols(); ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < d.rows(); ++i) s += px[i] * d(i, j);
    if (s < best_value) {
      best_value = s;
      best = j;
    }
  }
  return best;
}

Channel rank_one_channel(std::size_t n, std::size_t m, std::size_t column) {
  std::vector<double> w(n * m, 0.0);
  for (std::size_t i = 0; i < n; ++i) w[i * m + column] = 1.0;
  return Channel(n, m, std::move(w));
}

// Rows are projected independently once the multiplier is fixed.
double project_rows_with_multiplier(std::span<const double> v, std::span<double> out,
                                    const Distribution& px, const DistortionSpec& d,
                                    double lambda) {
  const std::size_t m = d.cols();
  double achieved = 0.0;
  for (std::size_t i = 0; i < d.rows(); ++i) {
    std::span<double> row = out.subspan(i * m, m);
    for (std::size_t j = 0; j < m; ++j) row[j] = v[i * m + j] - lambda * px[i] * d(i, j);
    project_onto_simplex(row);
    for (std::size_t j = 0; j < m; ++j) achieved += px[i] * row[j] * d(i, j);
  }
  return achieved;
}

Channel to_channel(std::span<const double> w, std::size_t n, std::size_t m) {
  std::vector<double> data(w.begin(), w.end());
  for (std::size_t i = 0; i < n; ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < m; ++j) s += (data[i * m + j] = std::max(data[i * m + j], 0.0));
    for (std::size_t j = 0; j < m; ++j) data[i * m + j] /= s;
  }
  return Channel(n, m, std::move(data));
}

void require_bernoulli_p(double p) {
  if (!(p > 0.0 && p < 1.0)) {
    throw DomainError("Bernoulli source needs p in (0, 1), got " + std::to_string(p));
  }
}

}  // namespace

DistortionSpec::DistortionSpec(std::size_t rows, std::size_t cols, std::vector<double> row_major)
    : rows_(rows), cols_(cols), data_(std::move(row_major)) {
  if (rows_ == 0 || cols_ == 0 || data_.size() != rows_ * cols_) {
    throw ShapeError("DistortionSpec: entry count does not match dimensions");
  }
  for (double x : data_) {
    if (!std::isfinite(x) || x < 0.0) {
      throw DomainError("DistortionSpec: entries must be finite and nonnegative");
    }
  }
}

DistortionSpec DistortionSpec::hamming(std::size_t n) {
  std::vector<double> d(n * n, 1.0);
  for (std::size_t i = 0; i < n; ++i) d[i * n + i] = 0.0;
  return DistortionSpec(n, n, std::move(d));
}

DistortionDomain distortion_domain(const Distribution& px, const DistortionSpec& d) {
  require_matching(px, d);
  DistortionDomain dom;
  dom.d_max = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < d.cols(); ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < d.rows(); ++i) s += px[i] * d(i, j);
    dom.d_max = std::min(dom.d_max, s);
  }
  return dom;
}

double average_distortion(const Distribution& px, const Channel& ch, const DistortionSpec& d) {
  detail::require_same_inputs(px, ch);
  if (ch.rows() != d.rows() || ch.cols() != d.cols()) {
    throw ShapeError("channel and distortion matrix dimensions differ");
  }
  double s = 0.0;
  for (std::size_t i = 0; i < ch.rows(); ++i) {
    for (std::size_t j = 0; j < ch.cols(); ++j) s += px[i] * ch(i, j) * d(i, j);
  }
  return s;
}

bool varpi_bound_holds(const Distribution& px, const Channel& ch, ImportanceParam w) {
  const Distribution q = output_marginal(px, ch);
  const double min_q = *std::min_element(q.probs().begin(), q.probs().end());
  return w.value() * px.max() <= 2.0 * min_q;
}

double test_channel_alpha(double p, double D) { return (1.0 - p - D) * D / (p * (1.0 - 2.0 * D)); }

Channel optimal_test_channel(double p, double D) {
  require_bernoulli_p(p);
  if (!(D >= 0.0 && D <= std::min(p, 1.0 - p))) {
    throw DomainError("test channel needs 0 <= D <= min(p, 1-p)");
  }
  if (D == 0.5) throw DomainError("test channel is undefined at D = 1/2");
  const double denom = 1.0 - 2.0 * D;
  // At D = min(p, 1-p) one entry is 1 in exact arithmetic; clamp the rounding.
  const double alpha = std::clamp(test_channel_alpha(p, D), 0.0, 1.0);
  const double beta = std::clamp(D * (p - D) / ((1.0 - p) * denom), 0.0, 1.0);
  return Channel(2, 2, {1.0 - alpha, alpha, beta, 1.0 - beta});
}

RdResult midf_bernoulli_hamming(double p, ImportanceParam w, double D) {
  require_bernoulli_p(p);
  const double d_max = std::min(p, 1.0 - p);
  if (!(D >= 0.0 && D <= d_max)) {
    throw DomainError("distortion " + std::to_string(D) + " outside [0, min(p, 1-p)]");
  }
  const Distribution px = Distribution::bernoulli(p);
  RdResult r;
  r.rate = binary_mim(p, w.value()) - binary_mim(D, w.value());
  if (D == 0.5) {
    r.argmin_channel = rank_one_channel(2, 2, 0);
  } else {
    r.argmin_channel = optimal_test_channel(p, D);
  }
  r.achieved_distortion = D;
  r.method = (D == 0.0 || D == d_max) ? SolveMethod::endpoint : SolveMethod::closed_form;
  r.varpi_bound_satisfied = varpi_bound_holds(px, r.argmin_channel, w);
  return r;
}

double shannon_rd_bernoulli(double p, double D) {
  detail::require_unit_interval(p, "p");
  if (D < 0.0) throw DomainError("distortion must be nonnegative");
  if (D >= std::min(p, 1.0 - p)) return 0.0;
  return binary_entropy(p) - binary_entropy(D);
}

void project_onto_distortion_set(std::span<double> w, const Distribution& px,
                                 const DistortionSpec& d, double D) {
  const std::size_t n = d.rows();
  const std::size_t m = d.cols();
  const std::vector<double> v(w.begin(), w.end());
  const double floor = distortion_floor(px, d);
  if (D < floor - kFloorSlack) throw DomainError("distortion below the achievable floor");

  if (D <= floor + kFloorSlack) {
    // Only zero-excess entries may carry mass: rows restricted to their
    // minimal-distortion columns.
    for (std::size_t i = 0; i < n; ++i) {
      std::span<double> row = w.subspan(i * m, m);
      if (px[i] == 0.0) {
        project_onto_simplex(row);
        continue;
      }
      double lo = std::numeric_limits<double>::infinity();
      for (std::size_t j = 0; j < m; ++j) lo = std::min(lo, d(i, j));
      std::vector<bool> mask(m);
      for (std::size_t j = 0; j < m; ++j) mask[j] = d(i, j) == lo;
      project_onto_masked_simplex(row, mask);
    }
    return;
  }

  // g(lambda) = achieved distortion is continuous and nonincreasing.
  std::vector<double> trial(w.size());
  double lo = -1.0;
  double hi = 1.0;
  while (project_rows_with_multiplier(v, trial, px, d, hi) > D && hi < 1e300) hi *= 2.0;
  while (project_rows_with_multiplier(v, trial, px, d, lo) < D && lo > -1e300) lo *= 2.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    if (project_rows_with_multiplier(v, trial, px, d, mid) > D) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  // hi keeps the achieved distortion at or below D.
  project_rows_with_multiplier(v, w, px, d, hi);
}

RdResult midf_numeric(const Distribution& px, const DistortionSpec& d, double D,
                      ImportanceParam w, const OptimizerOptions& opts) {
  require_matching(px, d);
  if (!std::isfinite(D) || D < 0.0) throw DomainError("distortion must be finite and >= 0");
  const std::size_t n = d.rows();
  const std::size_t m = d.cols();
  const DistortionDomain dom = distortion_domain(px, d);

  RdResult r;
  if (D >= dom.d_max) {
    r.argmin_channel = rank_one_channel(n, m, best_column(px, d));
    r.rate = 0.0;
    r.achieved_distortion = average_distortion(px, r.argmin_channel, d);
    r.method = SolveMethod::endpoint;
    r.varpi_bound_satisfied = varpi_bound_holds(px, r.argmin_channel, w);
    return r;
  }
  if (D < distortion_floor(px, d) - kFloorSlack) {
    throw DomainError("distortion " + std::to_string(D) + " is not achievable");
  }

  const double v = w.value();
  const Objective neg_loss = [&px, n, m, v](std::span<const double> flat) {
    return -importance_loss_unchecked(px.probs(), MatrixView{flat, n, m}, v);
  };
  const Projection project = [&px, &d, D](std::span<double> flat) {
    project_onto_distortion_set(flat, px, d, D);
  };

  std::vector<std::vector<double>> starts;
  starts.emplace_back(n * m, 1.0 / static_cast<double>(m));
  {
    std::vector<double> nearest(n * m, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      std::size_t arg = 0;
      for (std::size_t j = 1; j < m; ++j) {
        if (d(i, j) < d(i, arg)) arg = j;
      }
      nearest[i * m + arg] = 1.0;
    }
    starts.push_back(std::move(nearest));
  }
  for (const auto& row_start : simplex_starts(m, opts)) {
    if (starts.size() >= static_cast<std::size_t>(std::max(opts.starts, 2))) break;
    std::vector<double> s;
    for (std::size_t i = 0; i < n; ++i) {
      // Rotate so different rows start at different points.
      for (std::size_t j = 0; j < m; ++j) s.push_back(row_start[(j + i) % m]);
    }
    starts.push_back(std::move(s));
  }

  AscentResult best;
  bool have = false;
  for (auto& s : starts) {
    project(s);
    AscentResult a = projected_gradient_ascent(neg_loss, std::move(s), project, opts);
    if (!have || a.value > best.value) {
      best = std::move(a);
      have = true;
    }
  }

  r.argmin_channel = to_channel(best.x, n, m);
  r.rate = importance_loss(px, r.argmin_channel, w).loss;
  r.achieved_distortion = average_distortion(px, r.argmin_channel, d);
  r.method = SolveMethod::numeric;
  r.converged = best.converged;
  if (!best.converged) r.warnings.emplace_back("optimizer did not converge; best point returned");
  r.varpi_bound_satisfied = varpi_bound_holds(px, r.argmin_channel, w);
  if (!r.varpi_bound_satisfied) {
    r.warnings.emplace_back("varpi exceeds 2 min p(y) / max p(x) on the returned channel");
  }
  return r;
}

}  // namespace mimkit
