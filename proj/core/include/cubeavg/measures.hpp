#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <vector>

#include "cubeavg/partition.hpp"
#include "cubeavg/system.hpp"

namespace cubeavg {

inline constexpr std::size_t kDefaultEntryCap = 10'000'000;

/// Effective sparse-entry cap: CUBEAVG_MAX_ENTRIES env var, else the default.
std::size_t sparse_entry_cap();

/// Sparse probability measure on tuples of base points. Tuples of length
/// 2^k are keyed mixed-radix in base |X| (coordinate p at digit p). The
/// coordinate at position p corresponds to the cube vertex with bitmask p.
struct SparseMeasure {
  int base_size = 0;
  int tuple_len = 1;  // 2^k
  std::map<std::uint64_t, Rational> entries;  // deterministic iteration order

  std::uint64_t encode(const std::vector<int>& tuple) const;
  std::vector<int> decode(std::uint64_t key) const;
  int coord(std::uint64_t key, int pos) const;
  Rational total_mass() const;
};

/// mu itself as a tuple measure of length 1 (the k=0 stage).
SparseMeasure base_measure(const ProbabilitySpace& space);

/// Applies t to every coordinate of an encoded tuple.
std::uint64_t apply_coordinatewise(std::uint64_t key, const Transformation& t, int tuple_len,
                                   int base);

/// T x ... x T on base^copies points, materialized. Only for small products;
/// large cases go through apply_coordinatewise on sparse supports.
Transformation diagonal_transformation(const Transformation& t, int copies);

/// Partition of a measure's support into orbits of a key-level map.
struct SupportPartition {
  std::vector<std::uint64_t> keys;             // sorted support
  std::vector<int> cell_of;                    // per support index
  std::vector<std::vector<int>> cells;         // support indices, canonical order
  std::vector<Rational> cell_mass;             // total m-mass per cell
};

SupportPartition invariant_support_partition(
    const SparseMeasure& m, const std::function<std::uint64_t(std::uint64_t)>& step);

/// m x_P m: weight of (a,b) = m(a) m(b) / W(cell) for a, b in the same cell.
/// Tuple length doubles; the first factor occupies the low digits.
SparseMeasure relative_product(const SparseMeasure& m, const SupportPartition& p,
                               std::size_t entry_cap = sparse_entry_cap());

/// Iterates relative_product starting from mu, conditioning on the invariant
/// partition of the diagonal action of each listed transformation in order.
/// order holds 0-based transformation indices; result has arity 2^|order|.
SparseMeasure build_mu_star(const System& sys, const std::vector<int>& order,
                            std::size_t entry_cap = sparse_entry_cap());

/// A box seminorm stored as its exact 2^d-th power; the root is display-only.
struct SeminormValue {
  Rational power_value;
  int degree = 2;  // 2^d

  double value() const;  // degree-th root, float
};

/// Direct route: materialize mu* for the listed transformations and sum
/// the full product integral over its support.
SeminormValue box_seminorm_direct(const System& sys, const Observable& f,
                                  const std::vector<int>& order);

/// Memory-lean route: materializes only the next-to-last measure and closes
/// with integral of E(tensor f | I(T_last^diag))^2. Mandatory on star systems.
SeminormValue box_seminorm_recursive(const System& sys, const Observable& f,
                                     const std::vector<int>& order);

/// Default entry point (recursive route).
SeminormValue box_seminorm(const System& sys, const Observable& f, EpsilonMask eps);
SeminormValue box_seminorm(const System& sys, const Observable& f);

/// True iff the seminorm power is unchanged when the transformations are
/// consumed in the permuted order. Exact comparison.
bool seminorm_digit_permutation_check(const System& sys, const Observable& f,
                                      const std::vector<int>& order,
                                      const std::vector<int>& permuted_order);

}  // namespace cubeavg
