#include <doctest.h>

#include <random>

#include "cubeavg/averages.hpp"
#include "cubeavg/magic.hpp"
#include "cubeavg/partition.hpp"
#include "cubeavg/random_instance.hpp"
#include "helpers.hpp"

using namespace cubeavg;
using namespace cubeavg::testing;

namespace {

Partition star_join_all(const MagicSystem& ms) {
  std::vector<Partition> parts;
  for (int i = 0; i < ms.star.dim(); ++i)
    parts.push_back(invariant_partition(ms.star.space, ms.star.transforms[i]));
  return join_partitions(ms.star.space, parts);
}

}  // namespace

TEST_CASE("d=1 identity: support is the diagonal, side transformation is trivial") {
  System sys = make_system(3, {identity_map(3)});
  auto ms = build_magic(sys);
  CHECK(ms.support_keys.size() == 3);
  CHECK(is_identity(ms.star.transforms[0]));
  for (const auto& w : ms.star.space.weights) CHECK(w == Rational(1, 3));
}

TEST_CASE("d=1 ergodic cycle: full product support, T* moves the empty coordinate only") {
  const int n = 4;
  System sys = make_system(n, {rotation(n)});
  auto ms = build_magic(sys);
  REQUIRE(ms.support_keys.size() == n * n);
  for (std::size_t s = 0; s < ms.support_keys.size(); ++s) {
    const int x0 = static_cast<int>(ms.support_keys[s] % n);
    const int x1 = static_cast<int>(ms.support_keys[s] / n);
    const std::uint64_t expect = static_cast<std::uint64_t>((x0 + 1) % n) +
                                 static_cast<std::uint64_t>(x1) * n;
    CHECK(ms.support_keys[ms.star.transforms[0].image[s]] == expect);
  }
}

TEST_CASE("d=2 Z_2 swaps: side transformations follow the vertex bookkeeping") {
  System sys = make_system(2, {rotation(2), rotation(2)});
  auto ms = build_magic(sys);
  REQUIRE(ms.support_keys.size() == 8);
  // T_1* applies the swap at vertex positions 0 (eps={}) and 2 (eps={2}).
  // T_2* applies it at positions 0 and 1.
  for (std::size_t s = 0; s < ms.support_keys.size(); ++s) {
    std::uint64_t k = ms.support_keys[s];
    int c[4];
    for (int p = 0; p < 4; ++p) {
      c[p] = static_cast<int>(k % 2);
      k /= 2;
    }
    auto pack = [](int a, int b, int cc, int d) {
      return static_cast<std::uint64_t>(a + 2 * b + 4 * cc + 8 * d);
    };
    CHECK(ms.support_keys[ms.star.transforms[0].image[s]] ==
          pack(1 - c[0], c[1], 1 - c[2], c[3]));
    CHECK(ms.support_keys[ms.star.transforms[1].image[s]] ==
          pack(1 - c[0], 1 - c[1], c[2], c[3]));
  }
}

TEST_CASE("factor map on the empty vertex: marginal mu and intertwining") {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 15; ++trial) {
    auto inst = random_commuting_system(rng, {.max_points = 4, .max_dim = 2});
    auto ms = build_magic(inst.system);
    CHECK(factor_check(ms));
  }
}

TEST_CASE("every coordinate marginal of mu* is mu") {
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 10; ++trial) {
    auto inst = random_commuting_system(rng, {.max_points = 4, .max_dim = 2});
    auto ms = build_magic(inst.system);
    for (int pos = 0; pos < ms.tuple_len(); ++pos) {
      auto marginal = coordinate_marginal(ms, pos);
      for (int x = 0; x < inst.system.size(); ++x)
        CHECK(marginal[x] == inst.system.space.weights[x]);
    }
  }
}

TEST_CASE("magic defect: zero function and the vacuous direction") {
  System sys = make_system(2, {rotation(2)});
  auto ms = build_magic(sys);
  auto [a0, b0] = magic_defect(ms, constant_observable(ms.star.size(), 0));
  CHECK(a0 == 0);
  CHECK(b0 == 0);
}

TEST_CASE("magic property: projections off the invariant join have zero seminorm") {
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 10; ++trial) {
    auto inst = random_commuting_system(rng, {.max_points = 4, .max_dim = 2});
    auto ms = build_magic(inst.system);
    Partition joined = star_join_all(ms);
    // spanning family: every cell indicator of the join partition
    for (int c = 0; c < joined.cell_count(); ++c) {
      Observable g = constant_observable(ms.star.size(), 0);
      for (int x : joined.cells[c]) g.values[x] = 1;
      Observable proj = conditional_expectation(ms.star.space, g, joined);
      Observable f = g;
      for (int x = 0; x < f.size(); ++x) f.values[x] -= proj.values[x];
      auto [a, b] = magic_defect(ms, f);
      CHECK(a == 0);
      CHECK(b == 0);
    }
  }
}

TEST_CASE("characterization: every nonempty epsilon annihilates its projection") {
  std::mt19937_64 rng(44);
  for (int trial = 0; trial < 8; ++trial) {
    auto inst = random_commuting_system(rng, {.max_points = 4, .max_dim = 2});
    auto ms = build_magic(inst.system);
    for (EpsilonMask eps = 1; eps <= full_mask(ms.cube_dim); ++eps) {
      auto g = random_bounded_observable(rng, ms.star.size());
      CHECK(characterization_check(ms, eps, g));
    }
  }
}

TEST_CASE("single-axis characterization is the d=1 seminorm identity") {
  // |h|_{T*}^2 = integral of E(h|I(T*))^2, so projecting off I(T_1*)
  // forces the subset seminorm to vanish exactly.
  System sys = make_system(3, {rotation(3), identity_map(3)});
  auto ms = build_magic(sys);
  std::mt19937_64 rng(45);
  auto g = random_bounded_observable(rng, ms.star.size());
  auto p = invariant_partition(ms.star.space, ms.star.transforms[0]);
  auto proj = conditional_expectation(ms.star.space, g, p);
  Observable h = g;
  for (int x = 0; x < h.size(); ++x) h.values[x] -= proj.values[x];
  CHECK(box_seminorm(ms.star, h, 0b01).power_value == 0);
  CHECK(box_seminorm(ms.star, proj, 0b01).power_value ==
        l2_norm_sq(ms.star.space, proj));
}

TEST_CASE("product decomposition identity for invariant factors") {
  // For f_alpha = prod f_{alpha,i} with f_{alpha,i} invariant under T_i*,
  // T_alpha^{*n} f_alpha = prod over i of T^{*n}_{alpha minus i} f_{alpha,i}.
  std::mt19937_64 rng(46);
  auto inst = random_commuting_system(rng, {.max_points = 4, .max_dim = 2, .fixed_dim = 2});
  auto ms = build_magic(inst.system);
  const EpsilonMask alpha = 0b11;
  std::vector<Observable> factors;
  for (int i = 0; i < 2; ++i) {
    auto g = random_bounded_observable(rng, ms.star.size());
    factors.push_back(conditional_expectation(
        ms.star.space, g, invariant_partition(ms.star.space, ms.star.transforms[i])));
  }
  Observable f_alpha;
  f_alpha.values.resize(ms.star.size());
  for (int x = 0; x < ms.star.size(); ++x)
    f_alpha.values[x] = factors[0].values[x] * factors[1].values[x];

  for (long long n1 = 0; n1 < 3; ++n1)
    for (long long n2 = 0; n2 < 3; ++n2) {
      std::vector<long long> n = {n1, n2};
      auto lhs = pullback(f_alpha, power_action(ms.star, n, alpha));
      auto r0 = pullback(factors[0], power_action(ms.star, n, 0b10));  // alpha minus {1}
      auto r1 = pullback(factors[1], power_action(ms.star, n, 0b01));  // alpha minus {2}
      for (int x = 0; x < ms.star.size(); ++x)
        CHECK(lhs.values[x] == r0.values[x] * r1.values[x]);
    }
}

TEST_CASE("star cube averages: ones and the r=1 limit factorization") {
  std::mt19937_64 rng(47);
  auto inst = random_commuting_system(rng, {.max_points = 4, .max_dim = 2, .fixed_dim = 2});
  auto ms = build_magic(inst.system);

  std::map<EpsilonMask, Observable> ones;
  for (EpsilonMask eps = 1; eps <= 3u; ++eps)
    ones[eps] = constant_observable(ms.star.size(), 1);
  std::vector<std::array<long long, 2>> box = {{0, 5}, {0, 7}};
  for (const auto& v : star_cube_average(ms, ones, box).average.values) CHECK(v == 1);

  // r=1: limit is the product of the per-axis conditional expectations
  std::map<EpsilonMask, Observable> fs = {{0b01, random_bounded_observable(rng, ms.star.size())},
                                          {0b10, random_bounded_observable(rng, ms.star.size())}};
  auto limit = cube_limit(ms.star, fs, 1);
  Observable expect;
  expect.values.resize(ms.star.size());
  auto e1 = conditional_expectation(ms.star.space, fs.at(0b01),
                                    invariant_partition(ms.star.space, ms.star.transforms[0]));
  auto e2 = conditional_expectation(ms.star.space, fs.at(0b10),
                                    invariant_partition(ms.star.space, ms.star.transforms[1]));
  for (int x = 0; x < ms.star.size(); ++x) expect.values[x] = e1.values[x] * e2.values[x];
  CHECK(limit.average.values == expect.values);

  // d=2 star system, random functions: matches the direct box oracle
  std::map<EpsilonMask, Observable> gs;
  for (EpsilonMask eps = 1; eps <= 3u; ++eps)
    gs[eps] = random_bounded_observable(rng, ms.star.size());
  auto res = star_cube_average(ms, gs, box);
  for (int x = 0; x < ms.star.size(); ++x) {
    Rational sum = 0;
    for (long long n1 = box[0][0]; n1 < box[0][1]; ++n1)
      for (long long n2 = box[1][0]; n2 < box[1][1]; ++n2) {
        Rational prod = 1;
        for (EpsilonMask eps = 1; eps <= 3u; ++eps) {
          auto t = power_action(ms.star, {n1, n2}, eps);
          prod *= gs.at(eps).values[t.image[x]];
        }
        sum += prod;
      }
    CHECK(res.average.values[x] == sum / Rational(35));
  }
}

TEST_CASE("the reduction to a lower-stage system reproduces mu*") {
  // With d=2, r=1: Y = X^2 with nu = mu_1 and S_1 the doubled T_2. The
  // magic-extension measure of (Y, nu, S_1) must equal mu_2 after
  // flattening pairs of support points back to quadruples.
  std::mt19937_64 rng(48);
  for (int trial = 0; trial < 8; ++trial) {
    auto inst = random_commuting_system(rng, {.max_points = 4, .max_dim = 2, .fixed_dim = 2});
    const System& sys = inst.system;
    auto mu2 = build_mu_star(sys, {0, 1});

    auto nu = build_mu_star(sys, {0});
    // support system: points of Y = support of nu, with the doubled T_2
    ProbabilitySpace yspace;
    std::vector<std::uint64_t> ykeys;
    for (const auto& [k, w] : nu.entries) {
      ykeys.push_back(k);
      yspace.weights.push_back(w);
      yspace.labels.push_back("y" + std::to_string(k));
    }
    auto yindex = [&](std::uint64_t key) {
      return static_cast<int>(std::lower_bound(ykeys.begin(), ykeys.end(), key) - ykeys.begin());
    };
    Transformation s1;
    s1.image.resize(ykeys.size());
    for (std::size_t i = 0; i < ykeys.size(); ++i)
      s1.image[i] = yindex(apply_coordinatewise(ykeys[i], sys.transforms[1], 2, sys.size()));
    System ysys = validate_system(yspace, {s1}, true);

    auto nu1 = build_mu_star(ysys, {0});  // measure on pairs of Y points
    REQUIRE(nu1.entries.size() == mu2.entries.size());
    const std::uint64_t flat_shift =
        static_cast<std::uint64_t>(sys.size()) * static_cast<std::uint64_t>(sys.size());
    for (const auto& [k, w] : nu1.entries) {
      const int yi = static_cast<int>(k % ykeys.size());
      const int yj = static_cast<int>(k / ykeys.size());
      const std::uint64_t flat = ykeys[yi] + ykeys[yj] * flat_shift;
      auto it = mu2.entries.find(flat);
      REQUIRE(it != mu2.entries.end());
      CHECK(it->second == w);
    }
  }
}
