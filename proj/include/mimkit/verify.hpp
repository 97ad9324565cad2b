#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "mimkit/simplex.hpp"

namespace mimkit {

struct CheckResult {
  std::string suite;
  std::string name;
  double expected = 0.0;
  double actual = 0.0;
  double tolerance = 0.0;
  bool passed = false;
};

struct VerifyReport {
  std::vector<CheckResult> checks;

  bool passed() const;
  std::size_t failures() const;
};

// Suites: milc, rd, rate, golden, all.
bool is_verify_suite(std::string_view suite);
VerifyReport run_verify(std::string_view suite, const OptimizerOptions& opts = {});

void write_report_text(std::ostream& os, const VerifyReport& r);
void write_report_json(std::ostream& os, const VerifyReport& r);

}  // namespace mimkit
