#include <doctest.h>

#include <random>

#include "cubeavg/errors.hpp"
#include "cubeavg/random_instance.hpp"
#include "cubeavg/system.hpp"
#include "helpers.hpp"

using namespace cubeavg;
using namespace cubeavg::testing;

TEST_CASE("validate accepts the identity on two points") {
  ProbabilitySpace s;
  s.labels = {"a", "b"};
  s.weights = {Rational(1, 2), Rational(1, 2)};
  System sys = validate_system(s, {identity_map(2)}, true);
  CHECK(sys.size() == 2);
  CHECK(sys.dim() == 1);
}

TEST_CASE("validate rejects non-bijective images") {
  ProbabilitySpace s;
  s.labels = {"a", "b"};
  s.weights = {Rational(1, 2), Rational(1, 2)};
  CHECK_THROWS_AS(validate_system(s, {from_image({1, 1})}, false), Error);
  try {
    validate_system(s, {from_image({1, 1})}, false);
  } catch (const Error& e) {
    CHECK(e.code == Errc::NonBijective);
  }
}

TEST_CASE("validate rejects bad weights") {
  ProbabilitySpace s;
  s.labels = {"a", "b"};
  s.weights = {Rational(1, 2), Rational(1, 3)};
  try {
    validate_system(s, {identity_map(2)}, false);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code == Errc::BadWeights);
  }
  s.weights = {Rational(1), Rational(0)};
  try {
    validate_system(s, {identity_map(2)}, false);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code == Errc::BadWeights);
  }
}

TEST_CASE("validate rejects non-measure-preserving maps") {
  ProbabilitySpace s;
  s.labels = {"a", "b"};
  s.weights = {Rational(1, 4), Rational(3, 4)};
  try {
    validate_system(s, {from_image({1, 0})}, false);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code == Errc::NotMeasurePreserving);
  }
}

TEST_CASE("3-cycle against a transposition is caught with a genuine witness") {
  // every point is a witness here; x=2 by hand: T1 T2 (2) = 0, T2 T1 (2) = 1
  auto t1 = from_image({1, 2, 0});
  auto t2 = from_image({1, 0, 2});
  try {
    make_system(3, {t1, t2}, true);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code == Errc::NotCommuting);
    const std::string msg = e.what();
    auto pos = msg.find("point ");
    REQUIRE(pos != std::string::npos);
    int x = std::stoi(msg.substr(pos + 6));
    CHECK(t1.image[t2.image[x]] != t2.image[t1.image[x]]);
  }
  CHECK(t1.image[t2.image[2]] == 0);
  CHECK(t2.image[t1.image[2]] == 1);
}

TEST_CASE("power action on the empty set is the identity") {
  System sys = make_system(3, {rotation(3)});
  CHECK(is_identity(power_action(sys, {5}, 0)));
}

TEST_CASE("cycle to the power of its order is the identity") {
  System sys = make_system(3, {rotation(3)});
  CHECK(is_identity(power_action(sys, {3}, 1)));
  CHECK_FALSE(is_identity(power_action(sys, {2}, 1)));
}

TEST_CASE("two transpositions on Z_2 compose to the identity") {
  System sys = make_system(2, {rotation(2), rotation(2)});
  CHECK(is_identity(power_action(sys, {1, 1}, 0b11)));
}

TEST_CASE("negative powers act through the inverse") {
  System sys = make_system(5, {rotation(5)});
  auto fwd = power_action(sys, {2}, 1);
  auto back = power_action(sys, {-2}, 1);
  CHECK(is_identity(compose(fwd, back)));
}

TEST_CASE("orbit_order basics") {
  CHECK(orbit_order(identity_map(4)) == 1);
  CHECK(orbit_order(rotation(6)) == 6);
  // disjoint 2-cycle and 3-cycle
  auto t = from_image({1, 0, 3, 4, 2});
  CHECK(orbit_order(t) == 6);
  // brute-force oracle: smallest L with t^L = id
  Transformation cur = t;
  long long l = 1;
  while (!is_identity(cur)) {
    cur = compose(t, cur);
    ++l;
  }
  CHECK(l == 6);
}

TEST_CASE("group action law n then m equals n+m, exhaustively on small systems") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 25; ++trial) {
    auto inst = random_commuting_system(rng, {.max_points = 8, .max_dim = 3});
    const System& sys = inst.system;
    std::vector<long long> n(sys.dim()), m(sys.dim()), nm(sys.dim());
    for (int i = 0; i < sys.dim(); ++i) {
      n[i] = static_cast<long long>(rng() % 9) - 4;
      m[i] = static_cast<long long>(rng() % 9) - 4;
      nm[i] = n[i] + m[i];
    }
    const EpsilonMask eps = static_cast<EpsilonMask>(rng() % (1u << sys.dim()));
    auto two_step = compose(power_action(sys, m, eps), power_action(sys, n, eps));
    auto one_step = power_action(sys, nm, eps);
    CHECK(two_step.image == one_step.image);
  }
}

TEST_CASE("weights are invariant under every transformation of random instances") {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 20; ++trial) {
    auto inst = random_commuting_system(rng, {.max_points = 8, .max_dim = 3});
    for (const auto& t : inst.system.transforms)
      for (int x = 0; x < inst.system.size(); ++x)
        CHECK(inst.system.space.weights[t.image[x]] == inst.system.space.weights[x]);
  }
}

TEST_CASE("random instances are deterministic in the seed") {
  std::mt19937_64 a(99), b(99);
  auto ia = random_commuting_system(a, {});
  auto ib = random_commuting_system(b, {});
  CHECK(ia.description == ib.description);
  REQUIRE(ia.system.dim() == ib.system.dim());
  for (int i = 0; i < ia.system.dim(); ++i)
    CHECK(ia.system.transforms[i].image == ib.system.transforms[i].image);
}

TEST_CASE("grid Z_2 x Z_3 coordinate shifts have orders 2 and 3") {
  // build by hand: 6 points, axis-0 shift mod 2, axis-1 shift mod 3
  Transformation t1, t2;
  t1.image.resize(6);
  t2.image.resize(6);
  for (int x = 0; x < 6; ++x) {
    int a = x % 2, b = x / 2;
    t1.image[x] = ((a + 1) % 2) + 2 * b;
    t2.image[x] = a + 2 * ((b + 1) % 3);
  }
  System sys = make_system(6, {t1, t2});
  CHECK(orbit_order(sys.transforms[0]) == 2);
  CHECK(orbit_order(sys.transforms[1]) == 3);
}
