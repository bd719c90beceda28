#pragma once

#include <array>
#include <map>
#include <optional>
#include <vector>

#include "cubeavg/measures.hpp"
#include "cubeavg/system.hpp"

namespace cubeavg {

/// One cube-average problem: which function sits at each cube vertex, over
/// which box. rank_cap restricts the product to 0 < |eps| <= r.
struct CubeSpec {
  const System* system = nullptr;
  std::map<EpsilonMask, Observable> functions;  // eps != 0 except integrated form
  std::vector<std::array<long long, 2>> box;    // half-open [M_i, N_i)
  std::optional<int> rank_cap;
};

struct TracePoint {
  std::vector<long long> lens;
  double l2_deviation;
};

struct CubeResult {
  Observable average;
  std::vector<long long> box_lengths;
  std::vector<TracePoint> trace;
};

/// Exact finite average of prod_eps T_eps^n f_eps over the box.
/// Commutativity is not required here.
CubeResult cube_average(const CubeSpec& spec);

/// Exact limit: the average over one full period box prod [0, L_i) with
/// L_i = orbit_order(T_i). Equals the Cesaro limit along any interval
/// sequence with lengths -> infinity.
CubeResult cube_limit(const System& sys, const std::map<EpsilonMask, Observable>& functions,
                      std::optional<int> rank_cap = std::nullopt);

/// Axis-at-a-time evaluation path: average over n_1 first, then n_2, ...
/// Must agree exactly with cube_limit.
Observable iterated_limit(const System& sys, const std::map<EpsilonMask, Observable>& functions,
                          std::optional<int> rank_cap = std::nullopt);

/// Exact limit of the intersection-measure averages for an indicator A,
/// product taken over all eps including the empty set. Equals the full box
/// seminorm power of 1_A.
Rational integrated_cube_limit(const System& sys, const Observable& indicator);

struct BoundReport {
  double lhs_l2 = 0.0;          // L2 norm of the limit average
  double rhs_min = 0.0;         // min of the competing seminorms
  EpsilonMask argmin_eps = 0;
  bool holds = false;           // lhs <= rhs + 1e-9
};

/// Full-seminorm upper bound: |limit|_L2 <= min_eps |f_eps|_{T_1..T_d}.
/// Requires |f_eps| <= 1 for all supplied functions.
BoundReport upper_bound_check_rank1(const System& sys,
                                    const std::map<EpsilonMask, Observable>& functions);

/// Rank-r bound: the 0<|eps|<=r average against min over |eps|=r of the
/// subset seminorm |f_eps|_eps.
BoundReport upper_bound_check_rankr(const System& sys,
                                    const std::map<EpsilonMask, Observable>& functions, int r);

struct DivergenceStep {
  std::vector<std::array<long long, 2>> box_a;
  std::vector<std::array<long long, 2>> box_b;
  double l2_distance;
};

struct DivergenceReport {
  std::vector<DivergenceStep> steps;
};

/// Averages the same spec along two box sequences and reports the L2
/// distance per step. No assertion either way; non-commuting inputs allowed.
DivergenceReport divergence_demo(const System& sys,
                                 const std::map<EpsilonMask, Observable>& functions,
                                 const std::vector<std::vector<std::array<long long, 2>>>& boxes_a,
                                 const std::vector<std::vector<std::array<long long, 2>>>& boxes_b);

/// sqrt of integral of (f-g)^2, float.
double l2_distance(const ProbabilitySpace& space, const Observable& f, const Observable& g);

/// L2 deviation of the finite box average over [0,N)^d from the exact limit,
/// for N = start_len, 2*start_len, ... (doublings entries). The periodic
/// Cesaro bound makes each deviation at most C / N with C from the sup norms
/// and the orbit orders.
std::vector<TracePoint> deviation_trace(const System& sys,
                                        const std::map<EpsilonMask, Observable>& functions,
                                        std::optional<int> rank_cap, long long start_len,
                                        int doublings);

}  // namespace cubeavg
