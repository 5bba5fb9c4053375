#include "cascade/world.hpp"

#include <stdexcept>

namespace cascade {

namespace {
void check_args(std::size_t n_locations, double p_change) {
  if (n_locations < 2) {
    throw std::invalid_argument("world needs at least two locations");
  }
  if (!(p_change >= 0.0) || p_change > 1.0) {
    throw std::invalid_argument("p_change must lie in [0, 1]");
  }
}
}  // namespace

World::World(std::size_t n_locations, double p_change, std::size_t initial_location)
    : n_(n_locations), p_change_(p_change), treasure_(initial_location) {
  check_args(n_locations, p_change);
  if (initial_location >= n_) {
    throw std::out_of_range("initial treasure location out of range");
  }
}

World::World(std::size_t n_locations, double p_change, std::mt19937_64& rng)
    : n_(n_locations), p_change_(p_change), treasure_(0) {
  check_args(n_locations, p_change);
  treasure_ = std::uniform_int_distribution<std::size_t>(0, n_ - 1)(rng);
}

void World::set_treasure(std::size_t location) {
  if (location >= n_) {
    throw std::out_of_range("treasure location out of range");
  }
  treasure_ = location;
}

bool World::inspect(std::size_t location) const {
  if (location >= n_) {
    throw std::out_of_range("inspected location out of range");
  }
  return location == treasure_;
}

bool World::step_relocation(std::mt19937_64& rng) {
  if (p_change_ <= 0.0) {
    return false;
  }
  if (p_change_ < 1.0 && !std::bernoulli_distribution(p_change_)(rng)) {
    return false;
  }
  treasure_ = std::uniform_int_distribution<std::size_t>(0, n_ - 1)(rng);
  return true;
}

}  // namespace cascade
