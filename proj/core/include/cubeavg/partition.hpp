#pragma once

#include <span>
#include <vector>

#include "cubeavg/system.hpp"

namespace cubeavg {

/// A finite sigma-algebra, identified with its atom partition. Cell ids are
/// canonical: cells ordered by smallest member, members sorted ascending.
struct Partition {
  std::vector<int> cell_of;
  std::vector<std::vector<int>> cells;
  std::vector<Rational> cell_weight;

  int point_count() const { return static_cast<int>(cell_of.size()); }
  int cell_count() const { return static_cast<int>(cells.size()); }
};

/// Canonicalizes an arbitrary point -> group labelling into a Partition.
Partition partition_from_labels(const ProbabilitySpace& space, const std::vector<int>& label_of);

/// Atoms of the invariant sigma-algebra I(T): the orbits of T.
Partition invariant_partition(const ProbabilitySpace& space, const Transformation& t);

/// Common refinement: atoms are the nonempty intersections of one cell from
/// each input. This is the join of the sigma-algebras, not the orbit
/// partition of the generated group (that would be their meet).
Partition join_partitions(const ProbabilitySpace& space, std::span<const Partition> parts);

/// Orbit partition of the group generated by the given transformations;
/// atoms of the meet of the invariant sigma-algebras. Kept distinct from
/// join_partitions and tested against it.
Partition group_orbit_partition(const ProbabilitySpace& space,
                                std::span<const Transformation> ts);

/// E(f|P): constant on each cell, the weighted cell average.
Observable conditional_expectation(const ProbabilitySpace& space, const Observable& f,
                                   const Partition& p);

Rational integrate(const ProbabilitySpace& space, const Observable& f);

/// integral of f^2 d mu, exact.
Rational l2_norm_sq(const ProbabilitySpace& space, const Observable& f);

}  // namespace cubeavg
