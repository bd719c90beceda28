#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cubeavg/rational.hpp"

namespace cubeavg {

/// Finite probability space: dense point indices 0..n-1, exact positive
/// weights summing to 1. Labels are kept for config round-tripping only.
struct ProbabilitySpace {
  std::vector<std::string> labels;
  std::vector<Rational> weights;

  int size() const { return static_cast<int>(weights.size()); }
};

/// A permutation of the points, image[x] = T(x).
struct Transformation {
  std::vector<int> image;

  int size() const { return static_cast<int>(image.size()); }
  int operator()(int x) const { return image[x]; }
};

Transformation identity_map(int n);
bool is_identity(const Transformation& t);
/// (a after b)(x) = a(b(x)).
Transformation compose(const Transformation& a, const Transformation& b);
Transformation inverse(const Transformation& t);
/// T^k, negative k via the inverse permutation.
Transformation transformation_pow(const Transformation& t, long long k);

/// Least L >= 1 with T^L = id; lcm of cycle lengths.
long long orbit_order(const Transformation& t);

/// Subset of [d] = {1,..,d} as a bitmask; bit i-1 stands for "i in epsilon".
/// Also indexes the vertices of the d-cube and the coordinates of X^{2^d}.
using EpsilonMask = std::uint32_t;

inline int epsilon_size(EpsilonMask eps) { return __builtin_popcount(eps); }
inline EpsilonMask full_mask(int d) { return (EpsilonMask{1} << d) - 1; }
std::vector<int> epsilon_members(EpsilonMask eps);  // 1-based, ascending
std::string epsilon_bits(EpsilonMask eps, int d);   // "101..." digit string
EpsilonMask parse_epsilon_bits(const std::string& bits);

struct System {
  ProbabilitySpace space;
  std::vector<Transformation> transforms;
  bool commuting = true;

  int dim() const { return static_cast<int>(transforms.size()); }
  int size() const { return space.size(); }
};

/// Checks all axioms: weights positive and summing to 1, every image a
/// measure-preserving bijection, pairwise commutation when required.
System validate_system(ProbabilitySpace space, std::vector<Transformation> transforms,
                       bool require_commuting);

/// T_eps^n = product over i in eps of T_i^{n_i}. n may be negative.
Transformation power_action(const System& sys, const std::vector<long long>& n,
                            EpsilonMask eps);

/// Rational-valued function on the points of a space.
struct Observable {
  std::vector<Rational> values;

  int size() const { return static_cast<int>(values.size()); }
};

Observable constant_observable(int n, const Rational& c);
/// f o T, i.e. x -> f(T(x)).
Observable pullback(const Observable& f, const Transformation& t);
bool is_indicator(const Observable& f);

}  // namespace cubeavg
