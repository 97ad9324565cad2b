#pragma once

#include <optional>
#include <string_view>

#include "mimkit/mim.hpp"
#include "mimkit/simplex.hpp"

namespace mimkit {

enum class RateRegime { capacity_plateau, loss_limited };

constexpr std::string_view to_string(RateRegime r) {
  return r == RateRegime::capacity_plateau ? "capacity_plateau" : "loss_limited";
}

// Maximum mutual information subject to Phi <= eps.
struct RateResult {
  double rate = 0.0;  // bits
  // Smaller component of the optimal binary input (in [0, 1/2]); NaN for
  // non-binary inputs.
  double optimal_p = 0.0;
  RateRegime regime = RateRegime::capacity_plateau;
  std::optional<double> p_approx;
  bool approx_fallback = false;
  Distribution optimal_input = Distribution::uniform(2);
  bool converged = true;
};

// Binary-input family with its parameter.
struct BinaryFamily {
  enum class Kind { bsc, bec };
  Kind kind;
  double beta;

  static BinaryFamily bsc(double beta_s) { return {Kind::bsc, beta_s}; }
  static BinaryFamily bec(double beta_e) { return {Kind::bec, beta_e}; }

  Channel channel() const;
  double milc(ImportanceParam w) const;
  // Exact Phi for the input (p, 1 - p).
  double loss(ImportanceParam w, double p) const;
  // I(X;Y) in bits for the input (p, 1 - p).
  double rate(double p) const;
};

struct LossRoot {
  double p = 0.0;
  bool plateau = false;
  double residual = 0.0;  // |Phi(p) - eps|, 0 on the plateau
};

// Bisection on [0, 1/2] for Phi(p) = eps, where Phi increases. eps at or
// above the family MILC gives p = 1/2 with plateau set.
LossRoot solve_loss_equation(BinaryFamily family, ImportanceParam w, double eps);

struct ApproxP {
  double p = 0.0;
  // Discriminant negative (or |1 - 2 beta_s| = 0): exact bisection used.
  bool fallback = false;
};

// Second-order Taylor solutions of the loss equation.
ApproxP approx_p_bsc(ImportanceParam w, double beta_s, double eps);
ApproxP approx_p_bec(ImportanceParam w, double beta_e, double eps);

RateResult max_rate_bsc(ImportanceParam w, double beta_s, double eps);
RateResult max_rate_bec(ImportanceParam w, double beta_e, double eps);

// Generic version for any channel: penalty continuation on the loss
// constraint, then a feasibility repair so Phi <= eps holds at the result.
RateResult max_rate_numeric(const Channel& ch, ImportanceParam w, double eps,
                            const OptimizerOptions& opts = {});

}  // namespace mimkit
