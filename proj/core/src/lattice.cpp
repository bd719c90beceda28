#include "cubeavg/lattice.hpp"

#include <algorithm>

#include "cubeavg/averages.hpp"
#include "cubeavg/errors.hpp"

namespace cubeavg {

long long LatticeSubset::cell_count() const {
  long long n = 1;
  for (long long m : moduli) n *= m;
  return n;
}

long long LatticeSubset::index_of(const std::vector<long long>& coords) const {
  long long idx = 0;
  for (int i = dims() - 1; i >= 0; --i) idx = idx * moduli[i] + coords[i];
  return idx;
}

std::vector<long long> LatticeSubset::coords_of(long long index) const {
  std::vector<long long> c(dims());
  for (int i = 0; i < dims(); ++i) {
    c[i] = index % moduli[i];
    index /= moduli[i];
  }
  return c;
}

Rational upper_density_window(const LatticeSubset& a) {
  long long count = 0;
  for (bool b : a.members) count += b ? 1 : 0;
  return Rational(count) / Rational(a.cell_count());
}

std::pair<System, Observable> cyclic_correspondence(const LatticeSubset& a) {
  const long long n = a.cell_count();
  ProbabilitySpace space;
  space.weights.assign(static_cast<std::size_t>(n), Rational(1) / Rational(n));
  for (long long idx = 0; idx < n; ++idx) {
    auto c = a.coords_of(idx);
    std::string label;
    for (int i = 0; i < a.dims(); ++i) {
      if (i > 0) label += ",";
      label += std::to_string(c[i]);
    }
    space.labels.push_back(label);
  }

  std::vector<Transformation> shifts(a.dims());
  for (int i = 0; i < a.dims(); ++i) {
    shifts[i].image.resize(static_cast<std::size_t>(n));
    for (long long idx = 0; idx < n; ++idx) {
      auto c = a.coords_of(idx);
      c[i] = (c[i] + 1) % a.moduli[i];
      shifts[i].image[static_cast<std::size_t>(idx)] = static_cast<int>(a.index_of(c));
    }
  }

  System sys = validate_system(std::move(space), std::move(shifts), /*require_commuting=*/true);
  Observable indicator;
  indicator.values.resize(static_cast<std::size_t>(n));
  for (long long idx = 0; idx < n; ++idx)
    indicator.values[static_cast<std::size_t>(idx)] = a.members[static_cast<std::size_t>(idx)] ? 1 : 0;
  return {std::move(sys), std::move(indicator)};
}

Rational intersection_measure(const System& sys, const Observable& indicator,
                              const std::vector<long long>& n) {
  if (!is_indicator(indicator)) throw Error(Errc::NotIndicator, "expected a 0/1-valued function");
  // mu(intersection over eps of T^{-n eps} A) = integral of the product of
  // the indicator pulled back along every vertex action.
  std::vector<Transformation> powers(sys.dim());
  for (int i = 0; i < sys.dim(); ++i) powers[i] = transformation_pow(sys.transforms[i], n[i]);

  Rational sum = 0;
  const EpsilonMask full = full_mask(sys.dim());
  for (int x = 0; x < sys.size(); ++x) {
    if (sys.space.weights[x] == 0) continue;
    bool in_all = true;
    for (EpsilonMask eps = 0; eps <= full && in_all; ++eps) {
      int y = x;
      for (int i = 0; i < sys.dim(); ++i)
        if (eps & (EpsilonMask{1} << i)) y = powers[i].image[y];
      in_all = indicator.values[y] == 1;
    }
    if (in_all) sum += sys.space.weights[x];
  }
  return sum;
}

RecurrenceReport recurrence_set(const System& sys, const Observable& indicator,
                                const Rational& c) {
  if (c < 0) throw Error(Errc::BadConfig, "c must be nonnegative");
  if (!is_indicator(indicator)) throw Error(Errc::NotIndicator, "expected a 0/1-valued function");

  RecurrenceReport rep;
  const Rational mass = integrate(sys.space, indicator);
  rep.threshold = rational_pow(mass, 1u << sys.dim()) - c;
  for (int i = 0; i < sys.dim(); ++i) rep.period_box.push_back(orbit_order(sys.transforms[i]));

  long long volume = 1;
  for (long long L : rep.period_box) volume *= L;

  std::vector<bool> good(static_cast<std::size_t>(volume), false);
  std::vector<long long> n(sys.dim(), 0);
  for (long long flat = 0; flat < volume; ++flat) {
    if (intersection_measure(sys, indicator, n) >= rep.threshold) {
      good[static_cast<std::size_t>(flat)] = true;
      rep.good_set.push_back(n);
    }
    for (int i = 0; i < sys.dim(); ++i) {
      if (++n[i] < rep.period_box[i]) break;
      n[i] = 0;
    }
  }

  // Smallest R such that every aligned R-cube, with wraparound, meets the
  // good set. Complete on periodic data.
  auto flat_of = [&](const std::vector<long long>& v) {
    long long idx = 0;
    for (int i = sys.dim() - 1; i >= 0; --i) idx = idx * rep.period_box[i] + v[i];
    return idx;
  };
  long long max_len = 0;
  for (long long L : rep.period_box) max_len = std::max(max_len, L);
  for (long long R = 1; R <= max_len; ++R) {
    bool covers = true;
    std::vector<long long> origin(sys.dim(), 0);
    for (long long o = 0; o < volume && covers; ++o) {
      bool found = false;
      std::vector<long long> off(sys.dim(), 0);
      for (;;) {
        std::vector<long long> pt(sys.dim());
        for (int i = 0; i < sys.dim(); ++i)
          pt[i] = (origin[i] + off[i]) % rep.period_box[i];
        if (good[static_cast<std::size_t>(flat_of(pt))]) {
          found = true;
          break;
        }
        int axis = 0;
        while (axis < sys.dim()) {
          if (++off[axis] < R) break;
          off[axis] = 0;
          ++axis;
        }
        if (axis == sys.dim()) break;
      }
      covers = found;
      for (int i = 0; i < sys.dim(); ++i) {
        if (++origin[i] < rep.period_box[i]) break;
        origin[i] = 0;
      }
    }
    if (covers) {
      rep.syndetic_gap = R;
      break;
    }
  }
  return rep;
}

std::pair<Rational, Rational> average_recurrence_check(const System& sys,
                                                       const Observable& indicator) {
  Rational limit = integrated_cube_limit(sys, indicator);
  Rational bound = rational_pow(integrate(sys.space, indicator), 1u << sys.dim());
  if (limit < bound)
    throw Error(Errc::HypothesisViolated, "lower bound violated: " + rational_string(limit) +
                                              " < " + rational_string(bound));
  return {std::move(limit), std::move(bound)};
}

}  // namespace cubeavg
