#include "mimkit/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <random>

#include "mimkit/common.hpp"

namespace mimkit {

namespace {

constexpr double kArmijo = 1e-4;
constexpr double kMinStep = 1e-20;
constexpr double kMaxStep = 1e6;
// Finite differences with step 1e-6 carry ~1e-10 of noise; below this the
// line search stalling means the iterate is stationary to working precision.
constexpr double kNoiseFloor = 1e-6;

double distance(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(s);
}

std::vector<double> ascent_step(std::span<const double> x, std::span<const double> g, double t,
                                const Projection& project) {
  std::vector<double> y(x.begin(), x.end());
  for (std::size_t i = 0; i < y.size(); ++i) y[i] += t * g[i];
  project(y);
  return y;
}

}  // namespace

void project_onto_simplex(std::span<double> v) {
  if (v.empty()) return;
  std::vector<double> u(v.begin(), v.end());
  std::sort(u.begin(), u.end(), std::greater<>());
  double cumsum = 0.0;
  double theta = 0.0;
  for (std::size_t j = 0; j < u.size(); ++j) {
    cumsum += u[j];
    const double t = (cumsum - 1.0) / static_cast<double>(j + 1);
    if (u[j] - t > 0.0) theta = t;
  }
  for (double& x : v) x = std::max(x - theta, 0.0);
}

void project_onto_masked_simplex(std::span<double> v, const std::vector<bool>& mask) {
  std::vector<double> sub;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (mask[i]) sub.push_back(v[i]);
  }
  if (sub.empty()) throw DomainError("masked simplex projection: empty support");
  project_onto_simplex(sub);
  std::size_t k = 0;
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = mask[i] ? sub[k++] : 0.0;
}

std::vector<double> finite_difference_gradient(const Objective& f, std::span<const double> x,
                                               double h) {
  std::vector<double> probe(x.begin(), x.end());
  std::vector<double> g(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    probe[i] = x[i] + h;
    const double up = f(probe);
    probe[i] = x[i] - h;
    const double down = f(probe);
    probe[i] = x[i];
    g[i] = (up - down) / (2.0 * h);
  }
  return g;
}

AscentResult projected_gradient_ascent(const Objective& f, std::vector<double> x0,
                                       const Projection& project, const OptimizerOptions& opts) {
  AscentResult r;
  r.x = std::move(x0);
  r.value = f(r.x);
  double step = 1.0;
  for (r.iterations = 0; r.iterations < opts.max_iters; ++r.iterations) {
    const std::vector<double> g = finite_difference_gradient(f, r.x, opts.fd_step);
    const double pg_norm = distance(ascent_step(r.x, g, 1.0, project), r.x);
    if (pg_norm < opts.tolerance) {
      r.converged = true;
      return r;
    }
    bool accepted = false;
    while (step >= kMinStep) {
      std::vector<double> y = ascent_step(r.x, g, step, project);
      double slope = 0.0;
      for (std::size_t i = 0; i < y.size(); ++i) slope += g[i] * (y[i] - r.x[i]);
      const double fy = f(y);
      if (distance(y, r.x) > 0.0 && fy > r.value && fy >= r.value + kArmijo * slope) {
        r.x = std::move(y);
        r.value = fy;
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) {
      r.converged = pg_norm < kNoiseFloor;
      return r;
    }
    step = std::min(step * 2.0, kMaxStep);
  }
  return r;
}

std::vector<std::vector<double>> simplex_starts(std::size_t n, const OptimizerOptions& opts) {
  const std::size_t total = static_cast<std::size_t>(std::max(opts.starts, 1));
  std::vector<std::vector<double>> starts;
  starts.emplace_back(n, 1.0 / static_cast<double>(n));
  for (std::size_t k = 0; k < n && starts.size() < total; ++k) {
    std::vector<double> v(n, 0.0);
    v[k] = 1.0;
    starts.push_back(std::move(v));
  }
  std::mt19937_64 rng(opts.seed);
  std::exponential_distribution<double> expo(1.0);
  while (starts.size() < total) {
    std::vector<double> v(n);
    double s = 0.0;
    for (double& x : v) s += (x = expo(rng));
    for (double& x : v) x /= s;
    starts.push_back(std::move(v));
  }
  return starts;
}

void polish_on_simplex(const Objective& f, std::vector<double>& x, double& value) {
  const std::size_t n = x.size();
  for (double s = 1e-2; s >= 1e-10; s *= 0.1) {
    for (int pass = 0; pass < 1000; ++pass) {
      bool improved = false;
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
          if (i == j || x[j] <= 0.0) continue;
          const double amount = std::min(s, x[j]);
          std::vector<double> y = x;
          y[i] += amount;
          y[j] -= amount;
          const double fy = f(y);
          if (fy > value) {
            x = std::move(y);
            value = fy;
            improved = true;
          }
        }
      }
      if (!improved) break;
    }
  }
}

AscentResult maximize_on_simplex(const Objective& f, std::size_t n,
                                 const OptimizerOptions& opts) {
  if (n == 0) throw DomainError("maximize_on_simplex: empty alphabet");
  AscentResult best;
  bool have = false;
  for (auto& start : simplex_starts(n, opts)) {
    AscentResult r = projected_gradient_ascent(
        f, std::move(start), [](std::span<double> v) { project_onto_simplex(v); }, opts);
    if (!have || r.value > best.value) {
      best = std::move(r);
      have = true;
    }
  }
  polish_on_simplex(f, best.x, best.value);
  return best;
}

}  // namespace mimkit
