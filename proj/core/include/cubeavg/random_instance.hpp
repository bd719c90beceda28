#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "cubeavg/system.hpp"

namespace cubeavg {

struct InstanceBounds {
  int max_points = 8;
  int max_dim = 3;
  int fixed_dim = 0;  // 0: random in [1, max_dim]
};

struct RandomInstance {
  System system;
  std::vector<long long> grid;  // axis sizes of the generating grid
  std::string description;
};

/// Commuting system generated as coordinate shifts on a product grid,
/// optionally conjugated by a random relabelling. Commutes by construction;
/// uniform weights.
RandomInstance random_commuting_system(std::mt19937_64& rng, const InstanceBounds& bounds);

/// Random rational-valued observable with |f| <= 1.
Observable random_bounded_observable(std::mt19937_64& rng, int n);

/// Random 0/1-valued observable.
Observable random_indicator(std::mt19937_64& rng, int n);

}  // namespace cubeavg
