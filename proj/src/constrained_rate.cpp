#include "mimkit/constrained_rate.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "mimkit/capacity.hpp"

namespace mimkit {

namespace {

constexpr double kMaxPenalty = 1e4;

void require_prop_varpi(ImportanceParam w) {
  if (w.value() > 2.0) {
    throw DomainError("binary-family rate results need varpi <= 2, got " +
                      std::to_string(w.value()));
  }
}

void require_budget(double eps) {
  if (!std::isfinite(eps) || eps < 0.0) {
    throw DomainError("loss budget must be finite and nonnegative");
  }
}

void require_positive_budget(double eps) {
  if (!std::isfinite(eps) || !(eps > 0.0)) {
    throw DomainError("loss budget must be finite and positive, got " + std::to_string(eps));
  }
}

Distribution normalized(std::vector<double> x) {
  double s = 0.0;
  for (double& v : x) s += (v = std::max(v, 0.0));
  for (double& v : x) v /= s;
  return Distribution(std::move(x));
}

RateResult closed_regime_rate(BinaryFamily family, ImportanceParam w, double eps) {
  detail::require_unit_interval(family.beta, "beta");
  require_prop_varpi(w);
  require_positive_budget(eps);
  RateResult r;
  if (eps >= family.milc(w)) {
    r.regime = RateRegime::capacity_plateau;
    r.optimal_p = 0.5;
    r.rate = family.rate(0.5);
    r.optimal_input = Distribution::uniform(2);
    return r;
  }
  const LossRoot root = solve_loss_equation(family, w, eps);
  r.regime = RateRegime::loss_limited;
  r.optimal_p = root.p;
  r.rate = family.rate(root.p);
  r.optimal_input = Distribution::bernoulli(root.p);
  const ApproxP approx = family.kind == BinaryFamily::Kind::bsc
                             ? approx_p_bsc(w, family.beta, eps)
                             : approx_p_bec(w, family.beta, eps);
  r.p_approx = approx.p;
  r.approx_fallback = approx.fallback;
  return r;
}

// Nearest feasible point on the segment toward the heaviest vertex (Phi = 0
// at every vertex).
Distribution repair_toward_vertex(const Distribution& p,
                                  const std::function<double(std::span<const double>)>& loss,
                                  double eps) {
  const std::size_t n = p.size();
  const auto heavy = static_cast<std::size_t>(
      std::max_element(p.probs().begin(), p.probs().end()) - p.probs().begin());
  std::vector<double> z(n);
  const auto at = [&](double t) {
    for (std::size_t i = 0; i < n; ++i) z[i] = (1.0 - t) * p[i] + (i == heavy ? t : 0.0);
    return loss(z);
  };
  double lo = 0.0;
  double hi = 1.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (at(mid) > eps) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  at(hi);
  return normalized(z);
}

// First-order conditions of max I s.t. Phi <= eps on the simplex, with a
// multiplier lambda >= 0 for the loss and nu for the unit sum.
bool kkt_holds(std::span<const double> p, const Objective& info, const Objective& loss, double eps,
               double h) {
  constexpr double kSupport = 1e-12;
  constexpr double kResidual = 1e-4;
  const std::vector<double> gi = finite_difference_gradient(info, p, h);
  const std::vector<double> gl = finite_difference_gradient(loss, p, h);
  const double slack = eps - loss(p);
  if (slack < -1e-8) return false;

  double mean_i = 0.0;
  double mean_l = 0.0;
  std::size_t support = 0;
  for (std::size_t k = 0; k < p.size(); ++k) {
    if (p[k] <= kSupport) continue;
    mean_i += gi[k];
    mean_l += gl[k];
    ++support;
  }
  mean_i /= static_cast<double>(support);
  mean_l /= static_cast<double>(support);
  double ab = 0.0;
  double bb = 0.0;
  double scale = 1.0;
  for (std::size_t k = 0; k < p.size(); ++k) {
    scale = std::max(scale, std::abs(gi[k]));
    if (p[k] <= kSupport) continue;
    ab += (gi[k] - mean_i) * (gl[k] - mean_l);
    bb += (gl[k] - mean_l) * (gl[k] - mean_l);
  }
  // An inactive constraint carries no multiplier.
  const double lambda = slack > 1e-8 || bb == 0.0 ? 0.0 : std::max(ab / bb, 0.0);
  const double tol = kResidual * scale;
  const double nu = mean_i - lambda * mean_l;
  for (std::size_t k = 0; k < p.size(); ++k) {
    const double r = gi[k] - lambda * gl[k] - nu;
    if (p[k] > kSupport ? std::abs(r) > tol : r > tol) return false;
  }
  return true;
}

}  // namespace

Channel BinaryFamily::channel() const {
  return kind == Kind::bsc ? Channel::binary_symmetric(beta) : Channel::binary_erasure(beta);
}

double BinaryFamily::milc(ImportanceParam w) const {
  return kind == Kind::bsc ? milc_binary_symmetric(w, beta).capacity
                           : milc_binary_erasure(w, beta).capacity;
}

double BinaryFamily::loss(ImportanceParam w, double p) const {
  const double input[2] = {p, 1.0 - p};
  const Channel ch = channel();
  return importance_loss_unchecked(input, ch.view(), w.value());
}

double BinaryFamily::rate(double p) const {
  if (kind == Kind::bec) return (1.0 - beta) * binary_entropy(p);
  // H(beta) = H(1 - beta): fold onto beta <= 1/2.
  const double b = std::min(beta, 1.0 - beta);
  const double q0 = p * (1.0 - b) + (1.0 - p) * b;
  return std::max(binary_entropy(q0) - binary_entropy(b), 0.0);
}

LossRoot solve_loss_equation(BinaryFamily family, ImportanceParam w, double eps) {
  detail::require_unit_interval(family.beta, "beta");
  require_prop_varpi(w);
  require_budget(eps);
  LossRoot root;
  if (eps >= family.milc(w)) {
    root.p = 0.5;
    root.plateau = true;
    return root;
  }
  if (eps == 0.0) return root;
  double lo = 0.0;
  double hi = 0.5;
  while (true) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (family.loss(w, mid) <= eps) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  // lo stays feasible: Phi(lo) <= eps.
  root.p = lo;
  root.residual = std::abs(family.loss(w, lo) - eps);
  return root;
}

ApproxP approx_p_bsc(ImportanceParam w, double beta_s, double eps) {
  detail::require_unit_interval(beta_s, "beta_s");
  require_budget(eps);
  const double v = w.value();
  const double a = 4.0 * v + v * v;
  const double skew = std::abs(1.0 - 2.0 * beta_s);
  if (skew > 0.0) {
    const double inner = skew * skew * eps * eps + 2.0 * a * beta_s * (1.0 - beta_s) * eps;
    const double theta = 1.0 - 4.0 * eps / a - 4.0 * std::sqrt(inner) / (a * skew);
    if (theta >= 0.0) return {0.5 * (1.0 - std::sqrt(theta)), false};
  }
  return {solve_loss_equation(BinaryFamily::bsc(beta_s), w, eps).p, true};
}

ApproxP approx_p_bec(ImportanceParam w, double beta_e, double eps) {
  detail::require_unit_interval(beta_e, "beta_e");
  require_budget(eps);
  const double v = w.value();
  const double a = 4.0 * v + v * v;
  if (beta_e < 1.0) {
    const double disc = 1.0 - 8.0 * eps / ((1.0 - beta_e) * a);
    if (disc >= 0.0) return {0.5 * (1.0 - std::sqrt(disc)), false};
  }
  return {solve_loss_equation(BinaryFamily::bec(beta_e), w, eps).p, true};
}

RateResult max_rate_bsc(ImportanceParam w, double beta_s, double eps) {
  return closed_regime_rate(BinaryFamily::bsc(beta_s), w, eps);
}

RateResult max_rate_bec(ImportanceParam w, double beta_e, double eps) {
  return closed_regime_rate(BinaryFamily::bec(beta_e), w, eps);
}

RateResult max_rate_numeric(const Channel& ch, ImportanceParam w, double eps,
                            const OptimizerOptions& opts) {
  require_positive_budget(eps);
  const MatrixView view = ch.view();
  const double v = w.value();
  const std::size_t n = ch.rows();
  const auto info = [view](std::span<const double> p) {
    return mutual_information_unchecked(p, view);
  };
  const auto loss = [view, v](std::span<const double> p) {
    return importance_loss_unchecked(p, view, v);
  };

  RateResult r;
  const AscentResult capacity = maximize_on_simplex(info, n, opts);
  Distribution input = normalized(capacity.x);
  r.converged = capacity.converged;

  if (importance_loss(input, ch, w).loss <= eps) {
    r.regime = RateRegime::capacity_plateau;
  } else {
    r.regime = RateRegime::loss_limited;
    std::vector<double> x = capacity.x;
    for (double mu = 10.0; mu <= kMaxPenalty; mu *= 10.0) {
      const Objective penalized = [&, mu](std::span<const double> p) {
        const double excess = std::max(loss(p) - eps, 0.0);
        return info(p) - mu * excess * excess;
      };
      AscentResult fresh = maximize_on_simplex(penalized, n, opts);
      AscentResult warm = projected_gradient_ascent(
          penalized, x, [](std::span<double> s) { project_onto_simplex(s); }, opts);
      const bool tie = std::abs(warm.value - fresh.value) <= 1e-12;
      const bool take_warm = tie ? warm.converged : warm.value > fresh.value;
      AscentResult& a = take_warm ? warm : fresh;
      x = std::move(a.x);
    }
    input = normalized(std::move(x));
    if (importance_loss(input, ch, w).loss > eps) input = repair_toward_vertex(input, loss, eps);
    std::vector<double> p(input.probs().begin(), input.probs().end());
    double value = info(p);
    const Objective feasible_info = [&](std::span<const double> q) {
      return loss(q) <= eps ? info(q) : -std::numeric_limits<double>::infinity();
    };
    polish_on_simplex(feasible_info, p, value);
    input = normalized(std::move(p));
    r.converged = r.converged && kkt_holds(input.probs(), info, loss, eps, opts.fd_step);
  }
  r.rate = std::max(mutual_information(input, ch), 0.0);
  r.optimal_p = n == 2 ? std::min(input[0], input[1]) : std::numeric_limits<double>::quiet_NaN();
  r.optimal_input = std::move(input);
  return r;
}

}  // namespace mimkit
