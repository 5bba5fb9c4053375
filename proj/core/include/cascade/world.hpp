#pragma once

#include <cstddef>
#include <random>

namespace cascade {

/// The hidden treasure and its relocation dynamics. Each turn the treasure
/// moves with probability p_change to a uniformly drawn location, which may
/// be the one it already occupies.
class World {
 public:
  World(std::size_t n_locations, double p_change, std::size_t initial_location);
  World(std::size_t n_locations, double p_change, std::mt19937_64& rng);

  std::size_t n_locations() const { return n_; }
  double p_change() const { return p_change_; }
  std::size_t treasure() const { return treasure_; }
  void set_treasure(std::size_t location);

  /// True when the treasure is at the inspected location.
  bool inspect(std::size_t location) const;

  /// Roll the relocation chance for one turn. Returns whether a relocation
  /// event happened; the new spot is drawn only when it does, so static
  /// worlds consume no randomness here.
  bool step_relocation(std::mt19937_64& rng);

 private:
  std::size_t n_;
  double p_change_;
  std::size_t treasure_;
};

}  // namespace cascade
