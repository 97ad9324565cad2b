#include <cmath>

#include "doctest.h"
#include "mimkit/capacity.hpp"
#include "mimkit/constrained_rate.hpp"
#include "mimkit/distortion.hpp"
#include "mimkit/oracle.hpp"
#include "random_instances.hpp"

using namespace mimkit;
using doctest::Approx;

TEST_CASE("grid spec") {
  CHECK_THROWS_AS(GridSpec(0.0, 2), DomainError);
  CHECK_THROWS_AS(GridSpec(0.6, 2), DomainError);
  CHECK(GridSpec(1e-4, 2).steps() == 10000);
  CHECK(GridSpec(0.5, 3).steps() == 2);
}

TEST_CASE("grid max loss") {
  const GridSpec g(1e-4, 2);
  const GridMax bsc = grid_max_loss(Channel::binary_symmetric(0.1), ImportanceParam(1.0), g);
  CHECK(std::abs(bsc.value - 0.4081) <= 1e-4);
  CHECK(bsc.argmax[0] == Approx(0.5));
  const GridMax flat = grid_max_loss(Channel::constant(3, Distribution({0.5, 0.5})),
                                     ImportanceParam(1.0), GridSpec(1e-2, 3));
  CHECK(std::abs(flat.value) <= 1e-12);
  const GridMax ks =
      grid_max_loss_backward(Channel::k_ary_symmetric(4, 0.0), ImportanceParam(2.0),
                             GridSpec(1e-2, 4));
  CHECK(std::abs(ks.value - 3.4817) <= 1e-3);
  CHECK_THROWS_AS(grid_max_loss(Channel::identity(5), ImportanceParam(1.0), g), DomainError);
}

TEST_CASE("grid points lie on the simplex") {
  const GridMax r = grid_max_loss(Channel::identity(3), ImportanceParam(1.0), GridSpec(0.01, 3));
  CHECK(std::abs(r.argmax[0] + r.argmax[1] + r.argmax[2] - 1.0) <= 1e-12);
}

TEST_CASE("grid min rd") {
  const GridSpec g(1e-4, 2);
  const GridRd r = grid_min_rd(0.3, ImportanceParam(0.2), 0.1, g);
  CHECK(std::abs(r.value - 0.050464) <= 1e-5);
  CHECK(r.alpha == Approx(0.25).epsilon(1e-3));
  CHECK(std::abs(0.3 * r.alpha + 0.7 * r.beta - 0.1) <= 1e-12);
  const GridRd zero = grid_min_rd(0.3, ImportanceParam(0.2), 0.0, g);
  CHECK(zero.alpha == 0.0);
  CHECK(zero.value == Approx(binary_mim(0.3, 0.2) - 1.0));
  CHECK(std::abs(grid_min_rd(0.3, ImportanceParam(0.2), 0.3, g).value) <= 1e-12);
  CHECK_THROWS_AS(grid_min_rd(0.3, ImportanceParam(0.2), -0.1, g), DomainError);
  CHECK_THROWS_AS(grid_min_rd(0.3, ImportanceParam(0.2), 1.1, g), DomainError);
}

TEST_CASE("grid max rate under loss") {
  const GridSpec g(1e-4, 2);
  const ImportanceParam w(0.1);
  CHECK(std::abs(grid_max_mi_under_loss(Channel::binary_symmetric(0.1), w, 0.05, g).rate -
                 0.5310) <= 1e-4);
  CHECK(grid_max_mi_under_loss(Channel::binary_erasure(0.25), w, 1e3, g).rate ==
        Approx(0.75).epsilon(1e-12));
  CHECK(grid_max_mi_under_loss(Channel::binary_symmetric(0.1), w, 1e-12, g).rate < 1e-3);
  CHECK_THROWS_AS(grid_max_mi_under_loss(Channel::identity(3), w, 0.1, g), ShapeError);
}

TEST_CASE("property: grid gap bounded by the resolution") {
  testing::Rng rng(67);
  for (int t = 0; t < 20; ++t) {
    const double beta = rng.uniform();
    const double v = rng.uniform(0.05, 2.0);
    const ImportanceParam w(v);
    const double closed = milc_binary_symmetric(w, beta).capacity;
    for (double res : {1e-2, 1e-3}) {
      const double grid = grid_max_loss(Channel::binary_symmetric(beta), w, GridSpec(res, 2)).value;
      CHECK(grid <= closed + 1e-12);
      CHECK(closed - grid <= 10.0 * res * std::exp(v) * v);
    }
    const double p = rng.uniform(0.05, 0.95);
    const double D = rng.uniform(0.0, std::min(p, 1.0 - p));
    const double rd = midf_bernoulli_hamming(p, w, D).rate;
    const double grid_rd = grid_min_rd(p, w, D, GridSpec(1e-3, 2)).value;
    CHECK(grid_rd >= rd - 1e-12);
    CHECK(grid_rd - rd <= 10.0 * 1e-3 * std::exp(v) * v);
  }
}
