#include "mimkit/verify.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <utility>

#include "json.hpp"
#include "mimkit/capacity.hpp"
#include "mimkit/constrained_rate.hpp"
#include "mimkit/distortion.hpp"
#include "mimkit/oracle.hpp"

namespace mimkit {

namespace {

constexpr double kGoldenTolerance = 5e-4;

class Recorder {
 public:
  Recorder(VerifyReport& r, std::string suite) : report_(r), suite_(std::move(suite)) {}

  void close(const std::string& name, double expected, double actual, double tol) {
    const bool ok = std::isfinite(actual) && std::abs(actual - expected) <= tol;
    report_.checks.push_back({suite_, name, expected, actual, tol, ok});
  }

  // Passes when actual <= bound + tol.
  void at_most(const std::string& name, double bound, double actual, double tol) {
    const bool ok = std::isfinite(actual) && actual <= bound + tol;
    report_.checks.push_back({suite_, name, bound, actual, tol, ok});
  }

 private:
  VerifyReport& report_;
  std::string suite_;
};

std::string label(const char* fmt, double a, double b = 0.0, double c = 0.0) {
  char buf[128];
  std::snprintf(buf, sizeof buf, fmt, a, b, c);
  return buf;
}

void golden_suite(VerifyReport& report) {
  Recorder rec(report, "golden");
  const double g = kGoldenTolerance;

  const std::array<std::pair<double, double>, 4> bsc_beta = {
      {{0.1, 0.4081}, {0.3, 0.0997}, {0.5, 0.0}, {0.8, 0.2265}}};
  for (auto [beta, want] : bsc_beta) {
    rec.close(label("bsc milc varpi=1 beta=%g", beta), want,
              milc_binary_symmetric(ImportanceParam(1.0), beta).capacity, g);
  }
  const std::array<std::pair<double, double>, 4> bsc_varpi = {
      {{0.3, 0.1618}, {0.7, 0.4191}, {1.0, 0.6487}, {2.0, 1.7183}}};
  for (auto [varpi, want] : bsc_varpi) {
    rec.close(label("bsc milc beta=0 varpi=%g", varpi), want,
              milc_binary_symmetric(ImportanceParam(varpi), 0.0).capacity, g);
  }
  const std::array<std::pair<double, double>, 4> bec = {
      {{0.1, 0.5838}, {0.3, 0.4541}, {0.5, 0.3244}, {0.8, 0.1297}}};
  for (auto [beta, want] : bec) {
    rec.close(label("bec milc varpi=1 beta=%g", beta), want,
              milc_binary_erasure(ImportanceParam(1.0), beta).capacity, g);
  }
  const std::array<std::pair<std::size_t, double>, 4> kary = {
      {{4, 3.4817}, {6, 4.2945}, {8, 4.7546}, {10, 5.0496}}};
  for (auto [k, want] : kary) {
    const double kd = static_cast<double>(k);
    rec.close(label("ksym milc varpi=2 beta=0 k=%g", kd), want,
              milc_strongly_symmetric(ImportanceParam(2.0), 0.0, k).capacity, g);
    rec.close(label("ksym milc vanishes at beta=(k-1)/k k=%g", kd), 0.0,
              milc_strongly_symmetric(ImportanceParam(2.0), (kd - 1.0) / kd, k).capacity, 1e-10);
  }

  const std::array<std::pair<double, double>, 5> rd = {
      {{0.1, 0.0379}, {0.2, 0.0674}, {0.3, 0.0884}, {0.4, 0.1010}, {0.5, 0.1052}}};
  for (auto [p, want] : rd) {
    rec.close(label("rd varpi=0.2 D=0 p=%g", p), want,
              midf_bernoulli_hamming(p, ImportanceParam(0.2), 0.0).rate, g);
    rec.close(label("rd vanishes at D=p p=%g", p), 0.0,
              midf_bernoulli_hamming(p, ImportanceParam(0.2), p).rate, 1e-12);
  }

  const ImportanceParam w(0.1);
  const std::array<std::array<double, 3>, 4> bsc_rate = {
      {{0.1, 0.5310, 0.0328}, {0.2, 0.2781, 0.0185}, {0.3, 0.1187, 0.0082}, {0.4, 0.0290, 0.0021}}};
  for (const auto& [beta, plateau, turn] : bsc_rate) {
    rec.close(label("bsc plateau rate varpi=0.1 beta=%g", beta), plateau,
              max_rate_bsc(w, beta, 1.0).rate, g);
    rec.close(label("bsc turning point varpi=0.1 beta=%g", beta), turn,
              BinaryFamily::bsc(beta).milc(w), g);
  }
  const std::array<std::array<double, 3>, 4> bec_rate = {
      {{0.1, 0.9, 0.0461}, {0.2, 0.8, 0.0410}, {0.3, 0.7, 0.0359}, {0.4, 0.6, 0.0308}}};
  for (const auto& [beta, plateau, turn] : bec_rate) {
    rec.close(label("bec plateau rate varpi=0.1 beta=%g", beta), plateau,
              max_rate_bec(w, beta, 1.0).rate, 1e-10);
    rec.close(label("bec turning point varpi=0.1 beta=%g", beta), turn,
              BinaryFamily::bec(beta).milc(w), g);
  }
}

void milc_suite(VerifyReport& report, const OptimizerOptions& opts) {
  Recorder rec(report, "milc");
  const GridSpec fine(1e-4, 2);
  for (double varpi : {0.5, 1.0, 2.0}) {
    const ImportanceParam w(varpi);
    for (double beta : {0.0, 0.1, 0.3, 0.7}) {
      const double bsc = milc_binary_symmetric(w, beta).capacity;
      const double bec = milc_binary_erasure(w, beta).capacity;
      rec.close(label("bsc grid varpi=%g beta=%g", varpi, beta), bsc,
                grid_max_loss(Channel::binary_symmetric(beta), w, fine).value, 1e-6);
      rec.close(label("bec grid varpi=%g beta=%g", varpi, beta), bec,
                grid_max_loss(Channel::binary_erasure(beta), w, fine).value, 1e-6);
      rec.close(label("bsc numeric varpi=%g beta=%g", varpi, beta), bsc,
                milc_numeric(Channel::binary_symmetric(beta), w, opts).capacity, 1e-6);
      rec.close(label("k=2 reduction varpi=%g beta=%g", varpi, beta), bsc,
                milc_strongly_symmetric(w, beta, 2).capacity, 1e-12);
    }
  }
  for (std::size_t k : {3, 4}) {
    const GridSpec coarse(k == 3 ? 1e-3 : 1e-2, k);
    for (double beta : {0.0, 0.2, 0.5}) {
      const ImportanceParam w(1.0);
      const double kd = static_cast<double>(k);
      const Channel back = Channel::k_ary_symmetric(k, beta);
      const double closed = milc_strongly_symmetric(w, beta, k).capacity;
      rec.close(label("ksym backward grid k=%g beta=%g", kd, beta), closed,
                grid_max_loss_backward(back, w, coarse).value, 1e-3);
      rec.close(label("ksym backward numeric k=%g beta=%g", kd, beta), closed,
                milc_numeric_backward(back, w, opts).capacity, 1e-6);
    }
  }
}

void rd_suite(VerifyReport& report, const OptimizerOptions& opts) {
  Recorder rec(report, "rd");
  const GridSpec fine(1e-4, 2);
  const std::array<std::array<double, 3>, 5> cases = {{{0.3, 0.2, 0.1},
                                                       {0.5, 0.2, 0.2},
                                                       {0.4, 1.0, 0.05},
                                                       {0.2, 2.0, 0.15},
                                                       {0.7, 0.5, 0.1}}};
  for (const auto& [p, varpi, D] : cases) {
    const ImportanceParam w(varpi);
    const RdResult closed = midf_bernoulli_hamming(p, w, D);
    rec.close(label("grid p=%g varpi=%g D=%g", p, varpi, D), closed.rate,
              grid_min_rd(p, w, D, fine).value, 1e-5);
    const RdResult numeric =
        midf_numeric(Distribution::bernoulli(p), DistortionSpec::hamming(2), D, w, opts);
    rec.close(label("numeric p=%g varpi=%g D=%g", p, varpi, D), closed.rate, numeric.rate, 1e-6);
    rec.at_most(label("numeric distortion p=%g varpi=%g D=%g", p, varpi, D), D,
                numeric.achieved_distortion, 1e-9);

    const Posterior post = posterior(Distribution::bernoulli(p), closed.argmin_channel);
    for (std::size_t y = 0; y < 2; ++y) {
      rec.close(label("posterior error p=%g D=%g y=%g", p, D, static_cast<double>(y)), D,
                1.0 - post(y, y), 1e-12);
    }
    const double lower = midf_bernoulli_hamming(p, w, 0.5 * D).rate;
    rec.at_most(label("nonincreasing p=%g varpi=%g D=%g", p, varpi, D), lower, closed.rate,
                1e-12);
    const double r0 = midf_bernoulli_hamming(p, w, 0.0).rate;
    rec.at_most(label("midpoint convex p=%g varpi=%g D=%g", p, varpi, D), 0.5 * (r0 + closed.rate),
                lower, 1e-12);
  }
}

void rate_suite(VerifyReport& report, const OptimizerOptions& opts) {
  Recorder rec(report, "rate");
  const GridSpec fine(1e-4, 2);
  const ImportanceParam w(0.1);
  for (double beta : {0.1, 0.3}) {
    for (double frac : {0.3, 0.8, 2.0}) {
      const BinaryFamily bsc = BinaryFamily::bsc(beta);
      const BinaryFamily bec = BinaryFamily::bec(beta);
      const double eps_s = frac * bsc.milc(w);
      const double eps_e = frac * bec.milc(w);
      const double rs = max_rate_bsc(w, beta, eps_s).rate;
      const double re = max_rate_bec(w, beta, eps_e).rate;
      rec.close(label("bsc grid beta=%g eps=%g", beta, eps_s), rs,
                grid_max_mi_under_loss(bsc.channel(), w, eps_s, fine).rate, 1e-3);
      rec.close(label("bec grid beta=%g eps=%g", beta, eps_e), re,
                grid_max_mi_under_loss(bec.channel(), w, eps_e, fine).rate, 1e-3);
      rec.close(label("bsc numeric beta=%g eps=%g", beta, eps_s), rs,
                max_rate_numeric(bsc.channel(), w, eps_s, opts).rate, 1e-4);
      rec.close(label("bec numeric beta=%g eps=%g", beta, eps_e), re,
                max_rate_numeric(bec.channel(), w, eps_e, opts).rate, 1e-4);
    }
    rec.close(label("plateau equals capacity beta=%g", beta), 1.0 - binary_entropy(beta),
              max_rate_bsc(w, beta, 1.0).rate, 1e-12);
  }
}

}  // namespace

bool VerifyReport::passed() const { return failures() == 0; }

std::size_t VerifyReport::failures() const {
  return static_cast<std::size_t>(
      std::count_if(checks.begin(), checks.end(), [](const CheckResult& c) { return !c.passed; }));
}

bool is_verify_suite(std::string_view suite) {
  return suite == "milc" || suite == "rd" || suite == "rate" || suite == "golden" ||
         suite == "all";
}

VerifyReport run_verify(std::string_view suite, const OptimizerOptions& opts) {
  if (!is_verify_suite(suite)) {
    throw DomainError("unknown verify suite '" + std::string(suite) + "'");
  }
  VerifyReport report;
  const bool all = suite == "all";
  if (all || suite == "golden") golden_suite(report);
  if (all || suite == "milc") milc_suite(report, opts);
  if (all || suite == "rd") rd_suite(report, opts);
  if (all || suite == "rate") rate_suite(report, opts);
  return report;
}

void write_report_text(std::ostream& os, const VerifyReport& r) {
  char buf[512];
  for (const CheckResult& c : r.checks) {
    std::snprintf(buf, sizeof buf, "%s  [%s] %s: expected %.10g, got %.10g (tol %.1e)\n",
                  c.passed ? "PASS" : "FAIL", c.suite.c_str(), c.name.c_str(), c.expected,
                  c.actual, c.tolerance);
    os << buf;
  }
  os << (r.passed() ? "PASS" : "FAIL") << ": " << r.checks.size() - r.failures() << "/"
     << r.checks.size() << " checks\n";
}

void write_report_json(std::ostream& os, const VerifyReport& r) {
  nlohmann::ordered_json checks = nlohmann::ordered_json::array();
  for (const CheckResult& c : r.checks) {
    checks.push_back({{"suite", c.suite},
                      {"name", c.name},
                      {"expected", c.expected},
                      {"actual", c.actual},
                      {"tolerance", c.tolerance},
                      {"passed", c.passed}});
  }
  nlohmann::ordered_json doc = {{"passed", r.passed()},
                                {"failures", r.failures()},
                                {"checks", std::move(checks)}};
  os << doc.dump(2) << '\n';
}

}  // namespace mimkit
