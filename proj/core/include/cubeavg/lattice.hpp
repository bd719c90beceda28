#pragma once

#include <utility>
#include <vector>

#include "cubeavg/system.hpp"

namespace cubeavg {

/// Finite cyclic window surrogate for a subset of Z^d: a bitset over the
/// cells of prod Z_{N_i}, indexed mixed-radix (axis 1 fastest).
struct LatticeSubset {
  std::vector<long long> moduli;
  std::vector<bool> members;

  int dims() const { return static_cast<int>(moduli.size()); }
  long long cell_count() const;
  long long index_of(const std::vector<long long>& coords) const;
  std::vector<long long> coords_of(long long index) const;
};

struct RecurrenceReport {
  Rational threshold;                              // mu(A)^{2^d} - c, clamped info only
  std::vector<std::vector<long long>> good_set;    // n in the period box
  std::vector<long long> period_box;               // L_1..L_d
  long long syndetic_gap = -1;                     // -1: none within window
};

/// |members| / prod N_i, exact.
Rational upper_density_window(const LatticeSubset& a);

/// The cyclic correspondence: prod Z_{N_i} with uniform weights and the d
/// coordinate shifts, plus the indicator of A. mu(A) equals the window
/// density by construction.
std::pair<System, Observable> cyclic_correspondence(const LatticeSubset& a);

/// All n in the period box with mu(intersection of T^{-n eps} A over eps)
/// >= mu(A)^{2^d} - c, plus the smallest gap R such that every aligned
/// R-cube (with wraparound) contains a good n.
RecurrenceReport recurrence_set(const System& sys, const Observable& indicator,
                                const Rational& c);

/// mu(intersection over eps of T^{-n eps} A), exact, for one n.
Rational intersection_measure(const System& sys, const Observable& indicator,
                              const std::vector<long long>& n);

/// (limit, bound) = (integrated cube limit, mu(A)^{2^d}); limit >= bound.
std::pair<Rational, Rational> average_recurrence_check(const System& sys,
                                                       const Observable& indicator);

}  // namespace cubeavg
