#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <array>
#include <random>
#include <stdexcept>
#include <vector>

#include "cascade/belief.hpp"
#include "cascade/infotheory.hpp"
#include "testutil.hpp"

using namespace cascade;
using namespace testutil;

namespace {

double sum_of(const Belief& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < b.size(); ++i) s += b[i];
  return s;
}

}  // namespace

TEST_CASE("uniform construction") {
  const Belief b = Belief::uniform(10);
  CHECK(b.size() == 10);
  for (std::size_t i = 0; i < 10; ++i) CHECK(b[i] == 0.1);
  CHECK_FALSE(b.is_degenerate());

  const Belief b2 = Belief::uniform(2);
  CHECK(b2[0] == 0.5);
  CHECK(b2[1] == 0.5);

  CHECK_THROWS_AS(Belief::uniform(1), std::invalid_argument);
  CHECK_THROWS_AS(Belief::uniform(0), std::invalid_argument);

  CHECK_NEAR(entropy(Distribution(b.probs())), kLog2Ten, 1e-12);
}

TEST_CASE("likelihood matrix construction and validation") {
  const LikelihoodMatrix L = LikelihoodMatrix::symmetric(10, 0.18028);
  CHECK(L.size() == 10);
  CHECK_NEAR(L(3, 3), 0.18028, 1e-15);
  CHECK_NEAR(L(0, 3), 0.091079999999999994, 1e-15);
  for (std::size_t t = 0; t < 10; ++t) {
    double sum = 0.0;
    for (std::size_t a = 0; a < 10; ++a) sum += L(a, t);
    CHECK_NEAR(sum, 1.0, 1e-12);
  }

  CHECK_THROWS_AS(LikelihoodMatrix::symmetric(1, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(LikelihoodMatrix::symmetric(10, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(LikelihoodMatrix::symmetric(10, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(LikelihoodMatrix(Matrix(2, 3, 0.5)), std::invalid_argument);

  Matrix zero_entry(2, 2, 0.0);
  zero_entry(0, 0) = 1.0;
  zero_entry(1, 1) = 1.0;
  CHECK_THROWS_AS(LikelihoodMatrix(std::move(zero_entry)), std::invalid_argument);

  Matrix bad_sum(2, 2, 0.4);
  CHECK_THROWS_AS(LikelihoodMatrix(std::move(bad_sum)), std::invalid_argument);
}

TEST_CASE("action selection follows the argmax") {
  std::mt19937_64 rng(1);

  // A unique maximum is picked without consuming randomness.
  Belief b = Belief::uniform(3);
  b.observe_location_result(2, false);  // (.5, .5, 0)
  b.social_update(0, LikelihoodMatrix::symmetric(3, 0.6));  // boosts location 0
  const std::mt19937_64 before = rng;
  CHECK(b.select_action(rng) == 0);
  CHECK(rng == before);

  // A symmetric tie splits roughly evenly.
  Belief tie = Belief::uniform(3);
  tie.observe_location_result(2, false);  // (.5, .5, 0)
  std::array<int, 3> hits{0, 0, 0};
  for (int i = 0; i < 10000; ++i) hits[tie.select_action(rng)]++;
  CHECK(hits[2] == 0);
  CHECK(hits[0] > 4500);
  CHECK(hits[1] > 4500);

  // Degenerate beliefs search everywhere, uniformly.
  Belief dead = Belief::uniform(2);
  dead.observe_location_result(0, false);
  dead.observe_location_result(1, false);
  CHECK(dead.is_degenerate());
  std::array<int, 2> searches{0, 0};
  for (int i = 0; i < 10000; ++i) searches[dead.select_action(rng)]++;
  CHECK(searches[0] > 4500);
  CHECK(searches[1] > 4500);
}

TEST_CASE("observing an empty location eliminates it") {
  Belief b = Belief::uniform(10);
  b.observe_location_result(3, false);
  CHECK(b[3] == 0.0);
  for (std::size_t i = 0; i < 10; ++i) {
    if (i != 3) CHECK_NEAR(b[i], 1.0 / 9.0, 1e-15);
  }
  CHECK_FALSE(b.is_degenerate());
  CHECK_THROWS_AS(b.observe_location_result(10, false), std::out_of_range);
}

TEST_CASE("finding the treasure restarts the estimate") {
  Belief b = Belief::uniform(10);
  for (std::size_t loc : {0, 1, 2, 3}) b.observe_location_result(loc, false);
  b.observe_location_result(7, true);
  for (std::size_t i = 0; i < 10; ++i) CHECK(b[i] == 0.1);

  // Finding evidence also revives a dead estimate.
  Belief dead = Belief::uniform(2);
  dead.observe_location_result(0, false);
  dead.observe_location_result(1, false);
  CHECK(dead.is_degenerate());
  dead.observe_location_result(1, true);
  CHECK_FALSE(dead.is_degenerate());
  CHECK(dead[0] == 0.5);
}

TEST_CASE("ruling out every location leaves the degenerate state") {
  Belief b = Belief::uniform(3);
  b.observe_location_result(0, false);
  b.observe_location_result(1, false);
  CHECK_FALSE(b.is_degenerate());
  b.observe_location_result(2, false);
  CHECK(b.is_degenerate());
  for (std::size_t i = 0; i < 3; ++i) CHECK(b[i] == 0.0);

  // Further misses keep it degenerate rather than crashing.
  b.observe_location_result(1, false);
  CHECK(b.is_degenerate());
}

TEST_CASE("social update is a Bayes step on the observed action") {
  const LikelihoodMatrix L = LikelihoodMatrix::symmetric(10, 0.18028);
  Belief b = Belief::uniform(10);
  b.social_update(3, L);
  CHECK_NEAR(b[3], 0.18027999999999997, 1e-12);
  CHECK_NEAR(b[0], 0.09107999999999998, 1e-12);
  CHECK_NEAR(sum_of(b), 1.0, 1e-12);

  CHECK_THROWS_AS(b.social_update(10, L), std::out_of_range);
  CHECK_THROWS_AS(b.social_update(0, LikelihoodMatrix::symmetric(3, 0.5)),
                  std::invalid_argument);
}

TEST_CASE("a point mass cannot be moved by observations") {
  const LikelihoodMatrix L = LikelihoodMatrix::symmetric(4, 0.7);
  Belief b = Belief::uniform(4);
  for (std::size_t loc : {0, 1, 3}) b.observe_location_result(loc, false);
  CHECK(b[2] == 1.0);
  for (std::size_t a = 0; a < 4; ++a) {
    b.social_update(a, L);
    CHECK(b[2] == 1.0);
    CHECK(b[0] == 0.0);
  }
}

TEST_CASE("social updates commute") {
  const LikelihoodMatrix L = LikelihoodMatrix::symmetric(10, 0.18028);
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 1000; ++trial) {
    Belief a = Belief::uniform(10);
    // Randomize the starting point through public operations.
    for (int k = 0; k < 3; ++k) {
      a.social_update(rng() % 10, L);
    }
    Belief b = a;
    const std::size_t first = rng() % 10;
    const std::size_t second = rng() % 10;
    a.social_update(first, L);
    a.social_update(second, L);
    b.social_update(second, L);
    b.social_update(first, L);
    for (std::size_t i = 0; i < 10; ++i) CHECK_NEAR(a[i], b[i], 1e-12);
  }
}

TEST_CASE("two updates on one action equal one squared-likelihood update") {
  const std::size_t n = 10;
  const LikelihoodMatrix L = LikelihoodMatrix::symmetric(n, 0.18028);
  Belief twice = Belief::uniform(n);
  twice.observe_location_result(5, false);
  Belief combined = twice;

  twice.social_update(3, L);
  twice.social_update(3, L);

  // Column 3 of the element-wise square, renormalized, applied by hand.
  std::vector<double> expect(combined.probs());
  double sum = 0.0;
  for (std::size_t t = 0; t < n; ++t) {
    expect[t] *= L(3, t) * L(3, t);
    sum += expect[t];
  }
  for (std::size_t t = 0; t < n; ++t) {
    CHECK_NEAR(twice[t], expect[t] / sum, 1e-12);
  }
}

TEST_CASE("social update leaves a degenerate belief alone") {
  const LikelihoodMatrix L = LikelihoodMatrix::symmetric(2, 0.9);
  Belief dead = Belief::uniform(2);
  dead.observe_location_result(0, false);
  dead.observe_location_result(1, false);
  dead.social_update(1, L);
  CHECK(dead.is_degenerate());
  CHECK(dead[0] == 0.0);
  CHECK(dead[1] == 0.0);
}

TEST_CASE("eliminated locations stay eliminated under social updates") {
  const LikelihoodMatrix L = LikelihoodMatrix::symmetric(10, 0.18028);
  std::mt19937_64 rng(11);
  Belief b = Belief::uniform(10);
  b.observe_location_result(4, false);
  for (int k = 0; k < 200; ++k) {
    b.social_update(rng() % 10, L);
    CHECK(b[4] == 0.0);
  }
}

TEST_CASE("uncertainty discount mixes toward uniform") {
  Belief uniform = Belief::uniform(10);
  uniform.apply_uncertainty(0.37);
  for (std::size_t i = 0; i < 10; ++i) CHECK_NEAR(uniform[i], 0.1, 1e-15);

  // Point mass at 2, p_change 0.01 over 10 locations.
  Belief point = Belief::uniform(10);
  for (std::size_t loc : {0, 1, 3, 4, 5, 6, 7, 8, 9}) point.observe_location_result(loc, false);
  point.apply_uncertainty(0.01);
  CHECK_NEAR(point[2], 0.991, 1e-12);
  CHECK_NEAR(point[0], 0.001, 1e-12);

  // p_change 1 forgets everything.
  point.apply_uncertainty(1.0);
  for (std::size_t i = 0; i < 10; ++i) CHECK_NEAR(point[i], 0.1, 1e-15);

  // p_change 0 is the identity.
  Belief base = Belief::uniform(4);
  base.observe_location_result(1, false);
  const std::vector<double> before = base.probs();
  base.apply_uncertainty(0.0);
  CHECK(base.probs() == before);

  CHECK_THROWS_AS(base.apply_uncertainty(-0.1), std::invalid_argument);
  CHECK_THROWS_AS(base.apply_uncertainty(1.5), std::invalid_argument);
}

TEST_CASE("uncertainty discount rejects a degenerate belief") {
  Belief dead = Belief::uniform(2);
  dead.observe_location_result(0, false);
  dead.observe_location_result(1, false);
  CHECK_THROWS_AS(dead.apply_uncertainty(0.01), std::logic_error);
}

TEST_CASE("uncertainty discount preserves the action ranking") {
  const LikelihoodMatrix L = LikelihoodMatrix::symmetric(10, 0.18028);
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 1000; ++trial) {
    Belief b = Belief::uniform(10);
    for (int k = 0; k < 5; ++k) b.social_update(rng() % 10, L);
    if (trial % 2 == 0) b.observe_location_result(rng() % 10, false);

    const std::vector<double> before = b.probs();
    b.apply_uncertainty(0.25);
    const std::vector<double> after = b.probs();
    bool order_kept = true;
    for (std::size_t i = 0; i < 10 && order_kept; ++i) {
      for (std::size_t j = 0; j < 10; ++j) {
        if (before[i] < before[j] && !(after[i] <= after[j])) order_kept = false;
        if (before[i] == before[j] && after[i] != after[j]) order_kept = false;
      }
    }
    CHECK(order_kept);

    // Mixing toward uniform never changes which locations look best, so the
    // post-mixing action must come from the pre-mixing argmax set.
    std::mt19937_64 pick_rng(99);
    const std::size_t chosen = b.select_action(pick_rng);
    const double best_before = *std::max_element(before.begin(), before.end());
    CHECK(before[chosen] >= best_before - 1e-9);
  }
}

TEST_CASE("strict alternation of misses and discounts never goes degenerate") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 50; ++trial) {
    Belief b = Belief::uniform(10);
    for (int step = 0; step < 1000; ++step) {
      b.observe_location_result(rng() % 10, false);
      CHECK_FALSE(b.is_degenerate());
      b.apply_uncertainty(0.01);
      CHECK_FALSE(b.is_degenerate());
    }
    CHECK_NEAR(sum_of(b), 1.0, 1e-9);
  }
}

TEST_CASE("every operation keeps the estimate normalized") {
  const LikelihoodMatrix L = LikelihoodMatrix::symmetric(10, 0.18028);
  std::mt19937_64 rng(23);
  Belief b = Belief::uniform(10);
  for (int step = 0; step < 20000; ++step) {
    switch (rng() % 4) {
      case 0:
        b.social_update(rng() % 10, L);
        break;
      case 1:
        b.observe_location_result(rng() % 10, rng() % 20 == 0);
        break;
      case 2:
        if (!b.is_degenerate()) b.apply_uncertainty(0.01);
        break;
      default:
        b.observe_location_result(rng() % 10, true);
        break;
    }
    if (b.is_degenerate()) {
      for (std::size_t i = 0; i < 10; ++i) CHECK(b[i] == 0.0);
    } else {
      CHECK_NEAR(sum_of(b), 1.0, 1e-9);
    }
  }
}
