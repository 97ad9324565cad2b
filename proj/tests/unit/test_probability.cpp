#include <cmath>

#include "doctest.h"
#include "mimkit/probability.hpp"
#include "random_instances.hpp"

using namespace mimkit;
using doctest::Approx;

TEST_CASE("distribution validation") {
  CHECK_THROWS_AS(Distribution({0.5, 0.6}), DomainError);
  CHECK_THROWS_AS(Distribution({-0.1, 1.1}), DomainError);
  CHECK_THROWS_AS(Distribution({NAN, 1.0}), DomainError);
  CHECK_THROWS_AS(Distribution(std::vector<double>{}), DomainError);
  const Distribution d({0.3, 0.7 + 1e-10});
  CHECK(d[0] + d[1] == Approx(1.0).epsilon(1e-15));
  CHECK(Distribution::uniform(4)[2] == 0.25);
  CHECK(Distribution::bernoulli(0.3)[1] == Approx(0.7));
  CHECK(Distribution::vertex(3, 1)[1] == 1.0);
}

TEST_CASE("channel validation and factories") {
  CHECK_THROWS_AS(Channel(2, 2, {0.5, 0.5, 0.6, 0.6}), DomainError);
  CHECK_THROWS_AS(Channel(2, 2, {1.0, 0.0, 1.0}), ShapeError);
  CHECK_THROWS_AS(Channel::binary_symmetric(1.5), DomainError);
  const Channel bec = Channel::binary_erasure(0.2);
  CHECK(bec.rows() == 2);
  CHECK(bec.cols() == 3);
  CHECK(bec(0, 2) == Approx(0.2));
  CHECK(bec(1, 0) == 0.0);
  const Channel k = Channel::k_ary_symmetric(4, 0.3);
  CHECK(k(0, 0) == Approx(0.7));
  CHECK(k(2, 1) == Approx(0.1));
}

TEST_CASE("output marginal") {
  const Distribution q = output_marginal(Distribution::uniform(2), Channel::binary_symmetric(0.1));
  CHECK(q[0] == Approx(0.5));
  const Distribution e = output_marginal(Distribution({0.3, 0.7}), Channel::binary_erasure(0.2));
  CHECK(e[0] == Approx(0.24));
  CHECK(e[1] == Approx(0.56));
  CHECK(e[2] == Approx(0.20));
  const Distribution id = output_marginal(Distribution({1.0, 0.0}), Channel::identity(2));
  CHECK(id[0] == 1.0);
  CHECK(id[1] == 0.0);
  CHECK_THROWS_AS(output_marginal(Distribution::uniform(3), Channel::identity(2)), ShapeError);
}

TEST_CASE("posterior") {
  const double p = 0.35;
  const Posterior bec = posterior(Distribution::bernoulli(p), Channel::binary_erasure(0.4));
  CHECK(bec(0, 0) == Approx(1.0));
  CHECK(bec(1, 1) == Approx(1.0));
  CHECK(bec(2, 0) == Approx(p));
  CHECK(bec(2, 1) == Approx(1.0 - p));
  const Posterior bsc = posterior(Distribution::uniform(2), Channel::binary_symmetric(0.1));
  CHECK(bsc(0, 0) == Approx(0.9));
  CHECK(bsc(1, 0) == Approx(0.1));
  const Posterior id = posterior(Distribution({0.2, 0.0, 0.8}), Channel::identity(3));
  CHECK(id(0, 0) == 1.0);
  CHECK_FALSE(id.reachable(1));
  CHECK(id(1, 0) == 0.0);
  CHECK_THROWS_AS(posterior(Distribution::uniform(3), Channel::identity(2)), ShapeError);
}

TEST_CASE("entropy and mutual information examples") {
  CHECK(shannon_entropy(Distribution::uniform(2)) == Approx(1.0));
  CHECK(shannon_entropy(Distribution({1.0, 0.0})) == 0.0);
  CHECK(shannon_entropy(Distribution({0.1, 0.9})) == Approx(0.4690).epsilon(1e-4));
  CHECK(binary_entropy(0.0) == 0.0);
  CHECK(binary_entropy(0.5) == 1.0);
  CHECK(mutual_information(Distribution::uniform(2), Channel::identity(2)) == Approx(1.0));
  CHECK(mutual_information(Distribution({0.3, 0.7}),
                           Channel::constant(2, Distribution({0.4, 0.6}))) ==
        Approx(0.0).epsilon(1e-15));
  CHECK(std::abs(mutual_information(Distribution::uniform(2), Channel::binary_symmetric(0.1)) -
                 0.5310) <= 5e-4);
}

TEST_CASE("property: marginals, posterior consistency, information bounds") {
  testing::Rng rng(7);
  for (int t = 0; t < 500; ++t) {
    const std::size_t n = rng.index(1, 5);
    const std::size_t m = rng.index(1, 5);
    const Distribution px = rng.distribution(n);
    const Channel ch = rng.channel(n, m);
    const Distribution q = output_marginal(px, ch);
    double s = 0.0;
    for (double v : q.probs()) s += v;
    CHECK(std::abs(s - 1.0) <= 1e-12);

    const Posterior post = posterior(px, ch);
    for (std::size_t i = 0; i < n; ++i) {
      double back = 0.0;
      for (std::size_t j = 0; j < m; ++j) back += q[j] * post(j, i);
      CHECK(std::abs(back - px[i]) <= 1e-10);
    }
    const double info = mutual_information(px, ch);
    CHECK(info >= -1e-12);
    CHECK(info <= std::min(shannon_entropy(px), shannon_entropy(q)) + 1e-10);
    CHECK(std::abs(info - mutual_information_unchecked(px.probs(), ch.view())) <= 1e-10);
  }
}

TEST_CASE("property: information vanishes for rank-1 channels only") {
  testing::Rng rng(11);
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = rng.index(2, 4);
    const std::size_t m = rng.index(2, 4);
    const Distribution px = rng.distribution(n);
    CHECK(std::abs(mutual_information(px, Channel::constant(n, rng.distribution(m)))) <= 1e-12);
    CHECK(mutual_information(px, rng.channel(n, m)) > 1e-12);
  }
}
