#pragma once

#include <string>
#include <vector>

#include "mimkit/mim.hpp"
#include "mimkit/simplex.hpp"

namespace mimkit {

// Message importance loss capacity: max over p(x) of Phi.
struct MilcResult {
  double capacity = 0.0;
  Distribution argmax_input = Distribution::uniform(1);
  SolveMethod method = SolveMethod::closed_form;
  bool converged = true;
  std::vector<std::string> warnings;
};

// Closed forms. All accept 0 < varpi <= 2 and reject larger varpi.

// e^{varpi/2} - [beta e^{varpi(1-beta)} + (1-beta) e^{varpi beta}], p* = 1/2
MilcResult milc_binary_symmetric(ImportanceParam w, double beta_s);
// (1 - beta_e)(e^{varpi/2} - 1), p* = 1/2
MilcResult milc_binary_erasure(ImportanceParam w, double beta_e);
// e^{varpi(K-1)/K} - [(1-beta) e^{varpi beta} + beta e^{varpi(1 - beta/(K-1))}],
// for the strongly symmetric backward matrix; p* uniform over K symbols.
MilcResult milc_strongly_symmetric(ImportanceParam w, double beta_k, std::size_t k);

// Generic maximizer over the input simplex of an arbitrary channel.
// Requires varpi <= 2; warns at varpi == 2.
MilcResult milc_numeric(const Channel& ch, ImportanceParam w, const OptimizerOptions& opts = {});

// Generic maximizer for a fixed backward matrix p(x|y) (rows y, columns x):
// searches over p(y), reports the induced input p(x) as argmax_input.
MilcResult milc_numeric_backward(const Channel& backward, ImportanceParam w,
                                 const OptimizerOptions& opts = {});

}  // namespace mimkit
