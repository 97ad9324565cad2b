#include "mimkit/capacity.hpp"

#include <algorithm>
#include <cmath>

namespace mimkit {

namespace {

void require_closed_form_varpi(ImportanceParam w) {
  if (w.value() > 2.0) {
    throw DomainError("closed-form capacity needs varpi <= 2, got " + std::to_string(w.value()));
  }
}

// Projection can leave entries a few ulps off a unit sum.
Distribution as_distribution(std::vector<double> x) {
  double s = 0.0;
  for (double& v : x) s += (v = std::max(v, 0.0));
  for (double& v : x) v /= s;
  return Distribution(std::move(x));
}

MilcResult finish_numeric(const AscentResult& r, double capacity, Distribution input,
                          ImportanceParam w) {
  MilcResult out;
  out.capacity = std::max(capacity, 0.0);
  out.argmax_input = std::move(input);
  out.method = SolveMethod::numeric;
  out.converged = r.converged;
  if (!r.converged) out.warnings.emplace_back("optimizer did not converge; best point returned");
  if (w.value() == 2.0) {
    out.warnings.emplace_back("varpi = 2 is the boundary of the concavity region");
  }
  return out;
}

}  // namespace

MilcResult milc_binary_symmetric(ImportanceParam w, double beta_s) {
  detail::require_unit_interval(beta_s, "beta_s");
  require_closed_form_varpi(w);
  const double v = w.value();
  MilcResult r;
  r.capacity = std::exp(v / 2.0) - binary_mim(beta_s, v);
  r.argmax_input = Distribution::uniform(2);
  return r;
}

MilcResult milc_binary_erasure(ImportanceParam w, double beta_e) {
  detail::require_unit_interval(beta_e, "beta_e");
  require_closed_form_varpi(w);
  MilcResult r;
  r.capacity = (1.0 - beta_e) * std::expm1(w.value() / 2.0);
  r.argmax_input = Distribution::uniform(2);
  return r;
}

MilcResult milc_strongly_symmetric(ImportanceParam w, double beta_k, std::size_t k) {
  if (k < 2) throw DomainError("strongly symmetric capacity needs K >= 2");
  detail::require_unit_interval(beta_k, "beta_k");
  require_closed_form_varpi(w);
  const double v = w.value();
  const double kd = static_cast<double>(k);
  MilcResult r;
  r.capacity = std::exp(v * (kd - 1.0) / kd) -
               ((1.0 - beta_k) * std::exp(v * beta_k) +
                beta_k * std::exp(v * (1.0 - beta_k / (kd - 1.0))));
  r.argmax_input = Distribution::uniform(k);
  return r;
}

MilcResult milc_numeric(const Channel& ch, ImportanceParam w, const OptimizerOptions& opts) {
  if (w.value() > 2.0) {
    throw DomainError("milc_numeric needs varpi <= 2, got " + std::to_string(w.value()));
  }
  const MatrixView view = ch.view();
  const double v = w.value();
  const Objective f = [view, v](std::span<const double> p) {
    return importance_loss_unchecked(p, view, v);
  };
  const AscentResult r = maximize_on_simplex(f, ch.rows(), opts);
  Distribution input = as_distribution(r.x);
  const double capacity = importance_loss(input, ch, w).loss;
  return finish_numeric(r, capacity, std::move(input), w);
}

MilcResult milc_numeric_backward(const Channel& backward, ImportanceParam w,
                                 const OptimizerOptions& opts) {
  if (w.value() > 2.0) {
    throw DomainError("milc_numeric_backward needs varpi <= 2, got " +
                      std::to_string(w.value()));
  }
  const MatrixView view = backward.view();
  const double v = w.value();
  const Objective f = [view, v](std::span<const double> py) {
    return importance_loss_backward_unchecked(py, view, v);
  };
  const AscentResult r = maximize_on_simplex(f, backward.rows(), opts);
  std::vector<double> px(backward.cols(), 0.0);
  for (std::size_t y = 0; y < backward.rows(); ++y) {
    for (std::size_t x = 0; x < backward.cols(); ++x) px[x] += r.x[y] * backward(y, x);
  }
  return finish_numeric(r, r.value, as_distribution(std::move(px)), w);
}

}  // namespace mimkit
