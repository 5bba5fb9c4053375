#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <array>
#include <random>
#include <stdexcept>

#include "cascade/world.hpp"

using namespace cascade;

TEST_CASE("construction and validation") {
  CHECK_THROWS_AS(World(1, 0.0, std::size_t{0}), std::invalid_argument);
  CHECK_THROWS_AS(World(10, -0.1, std::size_t{0}), std::invalid_argument);
  CHECK_THROWS_AS(World(10, 1.5, std::size_t{0}), std::invalid_argument);
  CHECK_THROWS_AS(World(10, 0.0, std::size_t{10}), std::out_of_range);

  const World w(10, 0.25, std::size_t{7});
  CHECK(w.n_locations() == 10);
  CHECK(w.p_change() == 0.25);
  CHECK(w.treasure() == 7);
}

TEST_CASE("random construction places the treasure uniformly") {
  std::mt19937_64 rng(3);
  std::array<int, 10> counts{};
  const int trials = 100000;
  for (int i = 0; i < trials; ++i) {
    counts[World(10, 0.0, rng).treasure()]++;
  }
  // Chi-square against uniform, 9 degrees of freedom; 27.88 is the 0.1%
  // critical value, far above what a correct generator produces here.
  double chi2 = 0.0;
  const double expected = trials / 10.0;
  for (int c : counts) {
    chi2 += (c - expected) * (c - expected) / expected;
  }
  CHECK(chi2 < 27.88);
}

TEST_CASE("inspection is a pure equality check") {
  World w(10, 0.0, std::size_t{4});
  CHECK(w.inspect(4));
  CHECK_FALSE(w.inspect(5));
  CHECK(w.inspect(4));  // unchanged by inspecting
  CHECK(w.treasure() == 4);
  CHECK_THROWS_AS(w.inspect(10), std::out_of_range);
}

TEST_CASE("set_treasure moves it directly") {
  World w(5, 0.0, std::size_t{0});
  w.set_treasure(3);
  CHECK(w.treasure() == 3);
  CHECK_THROWS_AS(w.set_treasure(5), std::out_of_range);
}

TEST_CASE("a static world never relocates and consumes no randomness") {
  World w(10, 0.0, std::size_t{2});
  std::mt19937_64 rng(5);
  const std::mt19937_64 before = rng;
  for (int i = 0; i < 1000; ++i) {
    CHECK_FALSE(w.step_relocation(rng));
    CHECK(w.treasure() == 2);
  }
  CHECK(rng == before);
}

TEST_CASE("certain relocation redraws uniformly and may stay put") {
  World w(10, 1.0, std::size_t{0});
  std::mt19937_64 rng(7);
  std::array<int, 10> counts{};
  int stayed = 0;
  const int steps = 100000;
  for (int i = 0; i < steps; ++i) {
    const std::size_t old = w.treasure();
    CHECK(w.step_relocation(rng));
    counts[w.treasure()]++;
    if (w.treasure() == old) ++stayed;
  }
  double chi2 = 0.0;
  const double expected = steps / 10.0;
  for (int c : counts) {
    chi2 += (c - expected) * (c - expected) / expected;
  }
  CHECK(chi2 < 27.88);
  // Self-landing happens about once in ten redraws.
  CHECK(stayed > 8000);
  CHECK(stayed < 12000);
}

TEST_CASE("relocation events average one per hundred turns at one percent") {
  World w(10, 0.01, std::size_t{0});
  std::mt19937_64 rng(11);
  const int turns = 200000;
  int events = 0;
  for (int i = 0; i < turns; ++i) {
    if (w.step_relocation(rng)) ++events;
    CHECK(w.treasure() < 10);
  }
  const double mean_spacing = static_cast<double>(turns) / events;
  CHECK(mean_spacing > 90.0);
  CHECK(mean_spacing < 110.0);
}

TEST_CASE("replay with the same stream reproduces the trajectory") {
  std::mt19937_64 rng_a(13);
  std::mt19937_64 rng_b(13);
  World a(10, 0.3, rng_a);
  World b(10, 0.3, rng_b);
  CHECK(a.treasure() == b.treasure());
  for (int i = 0; i < 1000; ++i) {
    CHECK(a.step_relocation(rng_a) == b.step_relocation(rng_b));
    CHECK(a.treasure() == b.treasure());
  }
}
