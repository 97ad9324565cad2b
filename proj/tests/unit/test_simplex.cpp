#include <algorithm>
#include <cmath>
#include <numeric>

#include "doctest.h"
#include "mimkit/simplex.hpp"
#include "random_instances.hpp"

using namespace mimkit;
using doctest::Approx;

namespace {

double sum(const std::vector<double>& v) { return std::accumulate(v.begin(), v.end(), 0.0); }

}  // namespace

TEST_CASE("projection fixes points already on the simplex") {
  std::vector<double> x = {0.2, 0.3, 0.5};
  project_onto_simplex(x);
  CHECK(x[0] == Approx(0.2));
  CHECK(x[2] == Approx(0.5));
}

TEST_CASE("projection examples") {
  std::vector<double> x = {2.0, 0.0};
  project_onto_simplex(x);
  CHECK(x[0] == 1.0);
  CHECK(x[1] == 0.0);
  std::vector<double> y = {0.5, 0.5, 0.5};
  project_onto_simplex(y);
  CHECK(y[1] == Approx(1.0 / 3.0));
}

TEST_CASE("masked projection keeps masked entries at zero") {
  std::vector<double> x = {0.9, 0.4, 0.3};
  project_onto_masked_simplex(x, {false, true, true});
  CHECK(x[0] == 0.0);
  CHECK(x[1] + x[2] == Approx(1.0));
  CHECK(x[1] == Approx(0.55));
}

TEST_CASE("property: projection is the nearest simplex point") {
  testing::Rng rng(23);
  for (int t = 0; t < 500; ++t) {
    const std::size_t n = rng.index(1, 6);
    std::vector<double> v(n);
    for (double& e : v) e = rng.uniform(-2.0, 2.0);
    std::vector<double> p = v;
    project_onto_simplex(p);
    CHECK(std::abs(sum(p) - 1.0) <= 1e-12);
    CHECK(*std::min_element(p.begin(), p.end()) >= 0.0);
    double dist = 0.0;
    for (std::size_t i = 0; i < n; ++i) dist += (p[i] - v[i]) * (p[i] - v[i]);
    for (int s = 0; s < 5; ++s) {
      const std::vector<double> q = rng.simplex_point(n);
      double other = 0.0;
      for (std::size_t i = 0; i < n; ++i) other += (q[i] - v[i]) * (q[i] - v[i]);
      CHECK(dist <= other + 1e-12);
    }
  }
}

TEST_CASE("finite-difference gradient of a quadratic") {
  const Objective f = [](std::span<const double> x) { return x[0] * x[0] + 3.0 * x[1]; };
  const std::vector<double> x = {0.5, 0.2};
  const std::vector<double> g = finite_difference_gradient(f, x, 1e-6);
  CHECK(g[0] == Approx(1.0).epsilon(1e-8));
  CHECK(g[1] == Approx(3.0).epsilon(1e-8));
}

TEST_CASE("start points") {
  OptimizerOptions opts;
  opts.starts = 6;
  const auto s = simplex_starts(3, opts);
  REQUIRE(s.size() == 6);
  CHECK(s[0][0] == Approx(1.0 / 3.0));
  CHECK(s[1][0] == 1.0);
  CHECK(s[3][2] == 1.0);
  CHECK(std::abs(sum(s[5]) - 1.0) <= 1e-12);
  CHECK(simplex_starts(3, opts) == s);
  opts.seed += 1;
  CHECK(simplex_starts(3, opts)[5] != s[5]);
}

TEST_CASE("maximizes a concave function with an interior optimum") {
  const std::vector<double> target = {0.1, 0.6, 0.3};
  const Objective f = [&](std::span<const double> x) {
    double s = 0.0;
    for (std::size_t i = 0; i < 3; ++i) s -= (x[i] - target[i]) * (x[i] - target[i]);
    return s;
  };
  const AscentResult r = maximize_on_simplex(f, 3, {});
  CHECK(r.converged);
  for (std::size_t i = 0; i < 3; ++i) CHECK(r.x[i] == Approx(target[i]).epsilon(1e-6));
}

TEST_CASE("maximizes a linear function at a vertex") {
  const Objective f = [](std::span<const double> x) { return x[0] + 2.0 * x[1] + 0.5 * x[2]; };
  const AscentResult r = maximize_on_simplex(f, 3, {});
  CHECK(r.value == Approx(2.0));
  CHECK(r.x[1] == Approx(1.0));
}
