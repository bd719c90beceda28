#include "cubeavg/random_instance.hpp"

#include <algorithm>
#include <numeric>

namespace cubeavg {

RandomInstance random_commuting_system(std::mt19937_64& rng, const InstanceBounds& bounds) {
  // Coordinate shifts on a product grid commute by construction; an optional
  // conjugation by a random relabelling avoids testing only literal rotations.
  std::vector<long long> grid;
  long long total = 1;
  const int axes = 1 + static_cast<int>(rng() % 2);
  for (int a = 0; a < axes; ++a) {
    const long long room = bounds.max_points / total;
    if (room < 2) break;
    const long long m = 2 + static_cast<long long>(rng() % static_cast<std::uint64_t>(room - 1));
    grid.push_back(m);
    total *= m;
  }
  if (grid.empty()) {
    grid.push_back(2);
    total = 2;
  }

  const int n = static_cast<int>(total);
  auto index_of = [&](const std::vector<long long>& c) {
    long long idx = 0;
    for (int i = static_cast<int>(grid.size()) - 1; i >= 0; --i) idx = idx * grid[i] + c[i];
    return static_cast<int>(idx);
  };
  auto coords_of = [&](long long idx) {
    std::vector<long long> c(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
      c[i] = idx % grid[i];
      idx /= grid[i];
    }
    return c;
  };

  const int d = bounds.fixed_dim > 0
                    ? bounds.fixed_dim
                    : 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(bounds.max_dim));
  std::vector<Transformation> transforms(d);
  std::string desc = "grid";
  for (long long m : grid) desc += " Z" + std::to_string(m);
  for (int t = 0; t < d; ++t) {
    const int axis = static_cast<int>(rng() % grid.size());
    const long long shift = static_cast<long long>(rng() % static_cast<std::uint64_t>(grid[axis]));
    transforms[t].image.resize(n);
    for (int x = 0; x < n; ++x) {
      auto c = coords_of(x);
      c[axis] = (c[axis] + shift) % grid[axis];
      transforms[t].image[x] = index_of(c);
    }
    desc += " T" + std::to_string(t + 1) + "=axis" + std::to_string(axis) + "+" +
            std::to_string(shift);
  }

  if (rng() % 2 == 0) {
    // Conjugate every shift by a common relabelling; uniform weights keep
    // the result measure preserving and commutation is preserved.
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<int> inv(n);
    for (int x = 0; x < n; ++x) inv[perm[x]] = x;
    for (auto& t : transforms) {
      std::vector<int> img(n);
      for (int x = 0; x < n; ++x) img[x] = perm[t.image[inv[x]]];
      t.image = std::move(img);
    }
    desc += " conjugated";
  }

  ProbabilitySpace space;
  space.weights.assign(n, Rational(1) / Rational(n));
  for (int x = 0; x < n; ++x) space.labels.push_back("p" + std::to_string(x));

  RandomInstance inst;
  inst.system = validate_system(std::move(space), std::move(transforms), /*require_commuting=*/true);
  inst.grid = std::move(grid);
  inst.description = std::move(desc);
  return inst;
}

Observable random_bounded_observable(std::mt19937_64& rng, int n) {
  Observable f;
  f.values.resize(n);
  for (int x = 0; x < n; ++x) {
    const long long q = 1 + static_cast<long long>(rng() % 4);
    const long long p = static_cast<long long>(rng() % static_cast<std::uint64_t>(2 * q + 1)) - q;
    f.values[x] = Rational(p) / Rational(q);
  }
  return f;
}

Observable random_indicator(std::mt19937_64& rng, int n) {
  Observable f;
  f.values.resize(n);
  for (int x = 0; x < n; ++x) f.values[x] = (rng() % 2 == 0) ? 1 : 0;
  return f;
}

}  // namespace cubeavg
