#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "cubeavg/averages.hpp"
#include "cubeavg/measures.hpp"
#include "cubeavg/system.hpp"

namespace cubeavg {

/// The magic extension of a commuting system: the support of mu* as a
/// probability space, with the d side transformations. Star point i carries
/// the tuple support_keys[i]; tuple position p is the cube vertex with
/// bitmask p. The side transformation for axis i applies T_i exactly on the
/// coordinates whose vertex has bit i-1 clear.
struct MagicSystem {
  System base;
  System star;                          // support points + side transformations
  std::vector<std::uint64_t> support_keys;  // sorted, indexes star points
  int cube_dim = 0;

  int tuple_len() const { return 1 << cube_dim; }
};

MagicSystem build_magic(const System& sys, std::size_t entry_cap = sparse_entry_cap());

/// (a, b) with a = integral of E(f | join_i I(T_i*))^2 dmu* and b = power
/// value of the star box seminorm of f. The magic property is a = 0 => b = 0.
std::pair<Rational, Rational> magic_defect(const MagicSystem& ms, const Observable& f_on_star);

/// Projects f against Z*_eps = join of I(T_i*), i in eps, and verifies that
/// the orthogonal part has star subset-seminorm power exactly zero.
bool characterization_check(const MagicSystem& ms, EpsilonMask eps, const Observable& f_on_star);

/// The coordinate at the empty vertex (position 0) carries the factor map:
/// its marginal is mu and it intertwines every T_i* with T_i. Every T_i*
/// acts as T_i there, which forces this choice of coordinate.
bool factor_check(const MagicSystem& ms);

/// Marginal of mu* on one tuple position, as a weight vector on X.
std::vector<Rational> coordinate_marginal(const MagicSystem& ms, int pos);

/// Cube averages run on the star system itself.
CubeResult star_cube_average(const MagicSystem& ms,
                             const std::map<EpsilonMask, Observable>& functions,
                             const std::vector<std::array<long long, 2>>& box,
                             std::optional<int> rank_cap = std::nullopt);

}  // namespace cubeavg
