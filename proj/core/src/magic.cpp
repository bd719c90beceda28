#include "cubeavg/magic.hpp"

#include <algorithm>

#include "cubeavg/errors.hpp"
#include "cubeavg/partition.hpp"

namespace cubeavg {

MagicSystem build_magic(const System& sys, std::size_t entry_cap) {
  if (!sys.commuting)
    throw Error(Errc::HypothesisViolated, "the magic extension needs commuting transformations");

  std::vector<int> order(sys.dim());
  for (int i = 0; i < sys.dim(); ++i) order[i] = i;
  SparseMeasure mu_star = build_mu_star(sys, order, entry_cap);

  MagicSystem ms;
  ms.base = sys;
  ms.cube_dim = sys.dim();

  ProbabilitySpace star_space;
  for (const auto& [key, w] : mu_star.entries) {
    ms.support_keys.push_back(key);
    star_space.weights.push_back(w);
    std::string label;
    for (int p = 0; p < mu_star.tuple_len; ++p) {
      if (p > 0) label += ",";
      label += sys.space.labels.empty() ? std::to_string(mu_star.coord(key, p))
                                        : sys.space.labels[mu_star.coord(key, p)];
    }
    star_space.labels.push_back("(" + label + ")");
  }

  auto index_of = [&](std::uint64_t key) {
    auto it = std::lower_bound(ms.support_keys.begin(), ms.support_keys.end(), key);
    if (it == ms.support_keys.end() || *it != key)
      throw Error(Errc::MismatchedSpace, "side transformation leaves the support of mu*");
    return static_cast<int>(it - ms.support_keys.begin());
  };

  std::vector<Transformation> sides(sys.dim());
  const int len = ms.tuple_len();
  const int base = sys.size();
  for (int i = 0; i < sys.dim(); ++i) {
    sides[i].image.resize(ms.support_keys.size());
    for (std::size_t s = 0; s < ms.support_keys.size(); ++s) {
      std::uint64_t key = ms.support_keys[s];
      std::uint64_t out = 0;
      std::uint64_t shift = 1;
      for (int p = 0; p < len; ++p) {
        int x = static_cast<int>(key % static_cast<std::uint64_t>(base));
        key /= static_cast<std::uint64_t>(base);
        // T_i moves the coordinates whose vertex does not contain i.
        if (!(p & (1 << i))) x = sys.transforms[i].image[x];
        out += static_cast<std::uint64_t>(x) * shift;
        shift *= static_cast<std::uint64_t>(base);
      }
      sides[i].image[s] = index_of(out);
    }
  }

  // Validation re-checks invariance of mu* under every side transformation
  // and their pairwise commutation.
  ms.star = validate_system(std::move(star_space), std::move(sides), /*require_commuting=*/true);
  return ms;
}

namespace {

Partition star_join(const MagicSystem& ms, EpsilonMask eps) {
  std::vector<Partition> parts;
  for (int i = 0; i < ms.star.dim(); ++i)
    if (eps & (EpsilonMask{1} << i))
      parts.push_back(invariant_partition(ms.star.space, ms.star.transforms[i]));
  return join_partitions(ms.star.space, parts);
}

}  // namespace

std::pair<Rational, Rational> magic_defect(const MagicSystem& ms, const Observable& f_on_star) {
  Partition joined = star_join(ms, full_mask(ms.cube_dim));
  Observable proj = conditional_expectation(ms.star.space, f_on_star, joined);
  Rational a = l2_norm_sq(ms.star.space, proj);
  Rational b = box_seminorm(ms.star, f_on_star).power_value;
  return {std::move(a), std::move(b)};
}

bool characterization_check(const MagicSystem& ms, EpsilonMask eps, const Observable& f_on_star) {
  if (eps == 0) throw Error(Errc::BadConfig, "epsilon must be nonempty");
  Partition joined = star_join(ms, eps);
  Observable proj = conditional_expectation(ms.star.space, f_on_star, joined);
  Observable orth;
  orth.values.resize(f_on_star.size());
  for (int x = 0; x < f_on_star.size(); ++x)
    orth.values[x] = f_on_star.values[x] - proj.values[x];
  return box_seminorm(ms.star, orth, eps).power_value == 0;
}

std::vector<Rational> coordinate_marginal(const MagicSystem& ms, int pos) {
  const int base = ms.base.size();
  std::vector<Rational> marginal(base, Rational(0));
  for (std::size_t s = 0; s < ms.support_keys.size(); ++s) {
    std::uint64_t key = ms.support_keys[s];
    for (int p = 0; p < pos; ++p) key /= static_cast<std::uint64_t>(base);
    marginal[static_cast<int>(key % static_cast<std::uint64_t>(base))] +=
        ms.star.space.weights[s];
  }
  return marginal;
}

bool factor_check(const MagicSystem& ms) {
  // Pushforward onto the empty-vertex coordinate is mu.
  const auto marginal = coordinate_marginal(ms, 0);
  for (int x = 0; x < ms.base.size(); ++x)
    if (marginal[x] != ms.base.space.weights[x]) return false;

  // The projection intertwines every side transformation with T_i.
  const int base = ms.base.size();
  for (int i = 0; i < ms.base.dim(); ++i)
    for (std::size_t s = 0; s < ms.support_keys.size(); ++s) {
      const int src = static_cast<int>(ms.support_keys[s] % static_cast<std::uint64_t>(base));
      const int dst = static_cast<int>(ms.support_keys[ms.star.transforms[i].image[s]] %
                                       static_cast<std::uint64_t>(base));
      if (dst != ms.base.transforms[i].image[src]) return false;
    }
  return true;
}

CubeResult star_cube_average(const MagicSystem& ms,
                             const std::map<EpsilonMask, Observable>& functions,
                             const std::vector<std::array<long long, 2>>& box,
                             std::optional<int> rank_cap) {
  CubeSpec spec;
  spec.system = &ms.star;
  spec.functions = functions;
  spec.box = box;
  spec.rank_cap = rank_cap;
  return cube_average(spec);
}

}  // namespace cubeavg
