#pragma once

#include <vector>

#include "cubeavg/system.hpp"

namespace cubeavg::testing {

inline ProbabilitySpace uniform_space(int n) {
  ProbabilitySpace s;
  s.weights.assign(n, Rational(1) / Rational(n));
  for (int x = 0; x < n; ++x) s.labels.push_back("p" + std::to_string(x));
  return s;
}

inline Transformation rotation(int n, long long shift = 1) {
  Transformation t;
  t.image.resize(n);
  for (int x = 0; x < n; ++x)
    t.image[x] = static_cast<int>((x + shift % n + n) % n);
  return t;
}

inline Transformation from_image(std::vector<int> image) {
  Transformation t;
  t.image = std::move(image);
  return t;
}

inline System make_system(int n, std::vector<Transformation> ts, bool commuting = true) {
  return validate_system(uniform_space(n), std::move(ts), commuting);
}

inline Observable obs(std::vector<Rational> values) {
  Observable f;
  f.values = std::move(values);
  return f;
}

}  // namespace cubeavg::testing
