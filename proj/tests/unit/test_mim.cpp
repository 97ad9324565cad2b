#include <cmath>
#include <limits>

#include "doctest.h"
#include "mimkit/mim.hpp"
#include "random_instances.hpp"

using namespace mimkit;
using doctest::Approx;

TEST_CASE("importance parameter") {
  CHECK_THROWS_AS(ImportanceParam(0.0), DomainError);
  CHECK_THROWS_AS(ImportanceParam(-1.0), DomainError);
  CHECK_THROWS_AS(ImportanceParam{std::numeric_limits<double>::infinity()}, DomainError);
  CHECK(ImportanceParam(4.0).region_one(Distribution::uniform(2)));
  CHECK_FALSE(ImportanceParam(4.1).region_one(Distribution::uniform(2)));
}

TEST_CASE("mim examples") {
  CHECK(mim(Distribution::uniform(2), ImportanceParam(1.0)) == Approx(std::exp(0.5)));
  CHECK(mim(Distribution({1.0, 0.0}), ImportanceParam(3.0)) == 1.0);
  CHECK(mim(Distribution({0.1, 0.9}), ImportanceParam(0.2)) == Approx(1.03790).epsilon(1e-5));
  CHECK(binary_mim(0.1, 0.2) == Approx(1.03790).epsilon(1e-5));
}

TEST_CASE("self scoring") {
  CHECK(self_scoring(0.0, ImportanceParam(1.7)) == 0.0);
  CHECK(self_scoring(1.0, ImportanceParam(1.7)) == 1.0);
  CHECK(self_scoring(0.5, ImportanceParam(2.0)) == Approx(1.35914).epsilon(1e-5));
  CHECK_THROWS_AS(self_scoring(1.2, ImportanceParam(1.0)), DomainError);
  CHECK_THROWS_AS(self_scoring(-0.2, ImportanceParam(1.0)), DomainError);
}

TEST_CASE("cmim examples") {
  const ImportanceParam w(1.0);
  CHECK(cmim(Distribution({0.3, 0.7}), Channel::identity(2), w) == Approx(1.0));
  const Distribution px({0.25, 0.75});
  CHECK(cmim(px, Channel::constant(2, Distribution({0.5, 0.5})), w) == Approx(mim(px, w)));
  CHECK(std::abs(cmim(Distribution::uniform(2), Channel::binary_symmetric(0.1), w) - 1.24062) <=
        5e-4);
  CHECK_THROWS_AS(cmim(Distribution::uniform(3), Channel::identity(2), w), ShapeError);
}

TEST_CASE("cmim_forward applies the functional to channel rows") {
  const ImportanceParam w(1.0);
  const Channel ch = Channel::binary_symmetric(0.2);
  CHECK(cmim_forward(Distribution({0.3, 0.7}), ch, w) == Approx(binary_mim(0.2, 1.0)));
}

TEST_CASE("importance loss examples") {
  const ImportanceParam w02(0.2);
  const Distribution px({0.3, 0.7});
  const LossReport id = importance_loss(px, Channel::identity(2), w02);
  CHECK(id.loss == Approx(mim(px, w02) - 1.0));
  CHECK(id.loss == id.mim_value - id.cmim_value);
  CHECK(importance_loss(px, Channel::constant(2, Distribution({0.1, 0.9})), w02).loss ==
        Approx(0.0).epsilon(1e-15));
  CHECK(std::abs(importance_loss(Distribution::uniform(2), Channel::binary_symmetric(0.3),
                                 ImportanceParam(1.0))
                     .loss -
                 0.0997) <= 5e-4);
  CHECK(id.nonnegativity_guaranteed);
  CHECK_FALSE(importance_loss(px, Channel::identity(2), ImportanceParam(2.5))
                  .nonnegativity_guaranteed);
}

TEST_CASE("unchecked forms agree with the validated ones") {
  testing::Rng rng(3);
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = rng.index(1, 4);
    const std::size_t m = rng.index(1, 4);
    const Distribution px = rng.distribution(n);
    const Channel ch = rng.channel(n, m);
    const double v = rng.uniform(0.05, 2.0);
    const double loss = importance_loss(px, ch, ImportanceParam(v)).loss;
    CHECK(std::abs(importance_loss_unchecked(px.probs(), ch.view(), v) - loss) <= 1e-12);
  }
}

TEST_CASE("backward form matches the forward form on the induced channel") {
  testing::Rng rng(5);
  for (int t = 0; t < 100; ++t) {
    const std::size_t k = rng.index(2, 4);
    const Channel back = rng.channel(k, k);
    const Distribution py = rng.distribution(k);
    std::vector<double> px(k, 0.0);
    for (std::size_t y = 0; y < k; ++y) {
      for (std::size_t x = 0; x < k; ++x) px[x] += py[y] * back(y, x);
    }
    std::vector<double> fwd(k * k);
    for (std::size_t x = 0; x < k; ++x) {
      for (std::size_t y = 0; y < k; ++y) fwd[x * k + y] = py[y] * back(y, x) / px[x];
    }
    const Channel ch(k, k, fwd);
    const double v = rng.uniform(0.1, 2.0);
    CHECK(std::abs(importance_loss_backward_unchecked(py.probs(), back.view(), v) -
                   importance_loss(Distribution(px), ch, ImportanceParam(v)).loss) <= 1e-10);
  }
}

TEST_CASE("property: loss nonnegative for varpi in (0, 2]") {
  testing::Rng rng(17);
  for (int t = 0; t < 1000; ++t) {
    const std::size_t n = rng.index(2, 5);
    const std::size_t m = rng.index(2, 5);
    const double v = rng.uniform(1e-6, 2.0);
    CHECK(importance_loss(rng.distribution(n), rng.channel(n, m), ImportanceParam(v)).loss >=
          -1e-10);
  }
}

TEST_CASE("property: uniform maximality and bounds") {
  testing::Rng rng(19);
  for (int t = 0; t < 1000; ++t) {
    const std::size_t k = rng.index(1, 6);
    const ImportanceParam w(rng.uniform(1e-6, 2.0));
    const Distribution d = rng.distribution(k);
    const double value = mim(d, w);
    const double top = mim(Distribution::uniform(k), w);
    CHECK(top >= value - 1e-12);
    CHECK(value >= 1.0 - 1e-12);
    CHECK(top <= std::exp(w.value() * (1.0 - 1.0 / static_cast<double>(k))) + 1e-12);
    CHECK(cmim(d, Channel::identity(k), w) == Approx(1.0).epsilon(1e-12));
  }
}
