#include <doctest.h>

#include <algorithm>
#include <random>

#include "cubeavg/averages.hpp"
#include "cubeavg/lattice.hpp"
#include "cubeavg/partition.hpp"
#include "cubeavg/random_instance.hpp"
#include "helpers.hpp"

using namespace cubeavg;
using namespace cubeavg::testing;

namespace {

LatticeSubset subset(std::vector<long long> moduli, const std::vector<std::vector<long long>>& pts) {
  LatticeSubset a;
  a.moduli = std::move(moduli);
  a.members.assign(static_cast<std::size_t>(a.cell_count()), false);
  for (const auto& p : pts) a.members[static_cast<std::size_t>(a.index_of(p))] = true;
  return a;
}

}  // namespace

TEST_CASE("window density: full, empty, evens") {
  LatticeSubset full;
  full.moduli = {10};
  full.members.assign(10, true);
  CHECK(upper_density_window(full) == 1);

  LatticeSubset empty;
  empty.moduli = {10};
  empty.members.assign(10, false);
  CHECK(upper_density_window(empty) == 0);

  auto evens = subset({10}, {{0}, {2}, {4}, {6}, {8}});
  CHECK(upper_density_window(evens) == Rational(1, 2));
}

TEST_CASE("cyclic correspondence: d=1, N=3, A={0}") {
  auto a = subset({3}, {{0}});
  auto [sys, ind] = cyclic_correspondence(a);
  CHECK(sys.size() == 3);
  CHECK(sys.dim() == 1);
  CHECK(integrate(sys.space, ind) == Rational(1, 3));
  CHECK(orbit_order(sys.transforms[0]) == 3);
}

TEST_CASE("cyclic correspondence: coordinate shifts commute and density matches") {
  auto a = subset({2, 3}, {{0, 1}, {1, 1}});  // one row
  auto [sys, ind] = cyclic_correspondence(a);
  CHECK(sys.dim() == 2);
  CHECK(integrate(sys.space, ind) == Rational(1, 3));
  CHECK(integrate(sys.space, ind) == upper_density_window(a));
  // intersection counts against brute-force enumeration over all n
  for (long long n1 = 0; n1 < 2; ++n1)
    for (long long n2 = 0; n2 < 3; ++n2) {
      Rational direct = 0;
      for (long long x1 = 0; x1 < 2; ++x1)
        for (long long x2 = 0; x2 < 3; ++x2) {
          bool in_all = true;
          for (int e1 = 0; e1 < 2 && in_all; ++e1)
            for (int e2 = 0; e2 < 2 && in_all; ++e2)
              in_all = a.members[static_cast<std::size_t>(
                  a.index_of({(x1 + e1 * n1) % 2, (x2 + e2 * n2) % 3}))];
          if (in_all) direct += Rational(1, 6);
        }
      CHECK(intersection_measure(sys, ind, {n1, n2}) == direct);
    }
}

TEST_CASE("Z_4 rotation, A={0,2}, c=0: good set {0,2}, gap 2") {
  System sys = make_system(4, {rotation(4)});
  auto a = obs({Rational(1), Rational(0), Rational(1), Rational(0)});
  auto rep = recurrence_set(sys, a, Rational(0));
  // mu(A cap T^{-n}A) over n = 0..3 is 1/2, 0, 1/2, 0 against threshold 1/4
  REQUIRE(rep.good_set.size() == 2);
  CHECK(rep.good_set[0] == std::vector<long long>{0});
  CHECK(rep.good_set[1] == std::vector<long long>{2});
  CHECK(rep.syndetic_gap == 2);
}

TEST_CASE("large slack makes every n good with gap 1") {
  System sys = make_system(4, {rotation(4)});
  auto a = obs({Rational(1), Rational(0), Rational(1), Rational(0)});
  auto rep = recurrence_set(sys, a, Rational(1));
  CHECK(rep.good_set.size() == 4);
  CHECK(rep.syndetic_gap == 1);
}

TEST_CASE("A = X: every n is good for any c") {
  System sys = make_system(3, {rotation(3)});
  auto rep = recurrence_set(sys, constant_observable(3, 1), Rational(0));
  CHECK(rep.good_set.size() == 3);
  CHECK(rep.syndetic_gap == 1);
}

TEST_CASE("n = 0 is always good at c = 0, and the good set grows with c") {
  std::mt19937_64 rng(51);
  for (int trial = 0; trial < 20; ++trial) {
    auto inst = random_commuting_system(rng, {.max_points = 6, .max_dim = 2});
    auto a = random_indicator(rng, inst.system.size());
    auto rep0 = recurrence_set(inst.system, a, Rational(0));
    REQUIRE(!rep0.good_set.empty());
    CHECK(rep0.good_set.front() == std::vector<long long>(inst.system.dim(), 0));
    auto rep1 = recurrence_set(inst.system, a, Rational(1, 7));
    CHECK(rep1.good_set.size() >= rep0.good_set.size());
    for (const auto& n : rep0.good_set)
      CHECK(std::find(rep1.good_set.begin(), rep1.good_set.end(), n) != rep1.good_set.end());
  }
}

TEST_CASE("average recurrence: trivial indicators and the Z_4 worked case") {
  System sys = make_system(4, {rotation(4)});
  auto [l1, b1] = average_recurrence_check(sys, constant_observable(4, 1));
  CHECK(l1 == 1);
  CHECK(b1 == 1);
  auto [l0, b0] = average_recurrence_check(sys, constant_observable(4, 0));
  CHECK(l0 == 0);
  CHECK(b0 == 0);
  auto a = obs({Rational(1), Rational(0), Rational(1), Rational(0)});
  auto [limit, bound] = average_recurrence_check(sys, a);
  CHECK(limit == Rational(1, 4));
  CHECK(bound == Rational(1, 4));
}

TEST_CASE("the average limit equals the mean of the per-n intersection measures") {
  std::mt19937_64 rng(52);
  for (int trial = 0; trial < 15; ++trial) {
    auto inst = random_commuting_system(rng, {.max_points = 6, .max_dim = 2});
    const System& sys = inst.system;
    auto a = random_indicator(rng, sys.size());
    std::vector<long long> box(sys.dim());
    long long volume = 1;
    for (int i = 0; i < sys.dim(); ++i) {
      box[i] = orbit_order(sys.transforms[i]);
      volume *= box[i];
    }
    Rational mean = 0;
    std::vector<long long> n(sys.dim(), 0);
    for (long long flat = 0; flat < volume; ++flat) {
      mean += intersection_measure(sys, a, n);
      for (int i = 0; i < sys.dim(); ++i) {
        if (++n[i] < box[i]) break;
        n[i] = 0;
      }
    }
    mean /= volume;
    CHECK(mean == integrated_cube_limit(sys, a));
  }
}
