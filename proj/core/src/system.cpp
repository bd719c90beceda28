#include "cubeavg/system.hpp"

#include <numeric>

#include "cubeavg/errors.hpp"

namespace cubeavg {

Transformation identity_map(int n) {
  Transformation t;
  t.image.resize(n);
  std::iota(t.image.begin(), t.image.end(), 0);
  return t;
}

bool is_identity(const Transformation& t) {
  for (int x = 0; x < t.size(); ++x)
    if (t.image[x] != x) return false;
  return true;
}

Transformation compose(const Transformation& a, const Transformation& b) {
  Transformation r;
  r.image.resize(b.size());
  for (int x = 0; x < b.size(); ++x) r.image[x] = a.image[b.image[x]];
  return r;
}

Transformation inverse(const Transformation& t) {
  Transformation r;
  r.image.resize(t.size());
  for (int x = 0; x < t.size(); ++x) r.image[t.image[x]] = x;
  return r;
}

Transformation transformation_pow(const Transformation& t, long long k) {
  const long long order = orbit_order(t);
  k %= order;
  if (k < 0) k += order;
  Transformation acc = identity_map(t.size());
  Transformation b = t;
  while (k > 0) {
    if (k & 1) acc = compose(b, acc);
    b = compose(b, b);
    k >>= 1;
  }
  return acc;
}

long long orbit_order(const Transformation& t) {
  const int n = t.size();
  std::vector<bool> seen(n, false);
  long long order = 1;
  for (int x = 0; x < n; ++x) {
    if (seen[x]) continue;
    long long len = 0;
    int y = x;
    do {
      seen[y] = true;
      y = t.image[y];
      ++len;
    } while (y != x);
    order = std::lcm(order, len);
  }
  return order;
}

std::vector<int> epsilon_members(EpsilonMask eps) {
  std::vector<int> out;
  for (int i = 1; eps != 0; ++i, eps >>= 1)
    if (eps & 1u) out.push_back(i);
  return out;
}

std::string epsilon_bits(EpsilonMask eps, int d) {
  std::string s(d, '0');
  for (int i = 0; i < d; ++i)
    if (eps & (1u << i)) s[i] = '1';
  return s;
}

EpsilonMask parse_epsilon_bits(const std::string& bits) {
  EpsilonMask m = 0;
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] == '1')
      m |= EpsilonMask{1} << i;
    else if (bits[i] != '0')
      throw Error(Errc::BadConfig, "bad epsilon bit string: " + bits);
  }
  return m;
}

System validate_system(ProbabilitySpace space, std::vector<Transformation> transforms,
                       bool require_commuting) {
  const int n = space.size();
  if (n == 0) throw Error(Errc::BadWeights, "empty space");
  if (transforms.empty()) throw Error(Errc::BadConfig, "need at least one transformation");

  Rational total = 0;
  for (int x = 0; x < n; ++x) {
    if (space.weights[x] <= 0)
      throw Error(Errc::BadWeights,
                  "weight of point " + std::to_string(x) + " is not positive");
    total += space.weights[x];
  }
  if (total != 1) throw Error(Errc::BadWeights, "weights sum to " + rational_string(total));

  for (std::size_t ti = 0; ti < transforms.size(); ++ti) {
    const auto& t = transforms[ti];
    if (t.size() != n)
      throw Error(Errc::NonBijective,
                  "transformation " + std::to_string(ti) + " has wrong domain size");
    std::vector<bool> hit(n, false);
    for (int x = 0; x < n; ++x) {
      int y = t.image[x];
      if (y < 0 || y >= n || hit[y])
        throw Error(Errc::NonBijective,
                    "transformation " + std::to_string(ti) + " is not a permutation");
      hit[y] = true;
    }
    for (int x = 0; x < n; ++x)
      if (space.weights[t.image[x]] != space.weights[x])
        throw Error(Errc::NotMeasurePreserving,
                    "transformation " + std::to_string(ti) + " moves weight at point " +
                        std::to_string(x));
  }

  if (require_commuting) {
    for (std::size_t i = 0; i < transforms.size(); ++i)
      for (std::size_t j = i + 1; j < transforms.size(); ++j)
        for (int x = 0; x < n; ++x)
          if (transforms[i].image[transforms[j].image[x]] !=
              transforms[j].image[transforms[i].image[x]])
            throw Error(Errc::NotCommuting,
                        "T" + std::to_string(i + 1) + " and T" + std::to_string(j + 1) +
                            " do not commute at point " + std::to_string(x));
  }

  System sys;
  sys.space = std::move(space);
  sys.transforms = std::move(transforms);
  sys.commuting = require_commuting;
  return sys;
}

Transformation power_action(const System& sys, const std::vector<long long>& n,
                            EpsilonMask eps) {
  Transformation acc = identity_map(sys.size());
  for (int i = 0; i < sys.dim(); ++i)
    if (eps & (EpsilonMask{1} << i))
      acc = compose(transformation_pow(sys.transforms[i], n[i]), acc);
  return acc;
}

Observable constant_observable(int n, const Rational& c) {
  Observable f;
  f.values.assign(n, c);
  return f;
}

Observable pullback(const Observable& f, const Transformation& t) {
  Observable g;
  g.values.resize(f.size());
  for (int x = 0; x < f.size(); ++x) g.values[x] = f.values[t.image[x]];
  return g;
}

bool is_indicator(const Observable& f) {
  for (const auto& v : f.values)
    if (v != 0 && v != 1) return false;
  return true;
}

}  // namespace cubeavg
