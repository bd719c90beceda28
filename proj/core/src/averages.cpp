#include "cubeavg/averages.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "cubeavg/errors.hpp"
#include "cubeavg/partition.hpp"

namespace cubeavg {

namespace {

// Per-axis tables of T_i^m images for m in [M_i, N_i).
std::vector<std::vector<Transformation>> power_tables(
    const System& sys, const std::vector<std::array<long long, 2>>& box) {
  std::vector<std::vector<Transformation>> tables(sys.dim());
  for (int i = 0; i < sys.dim(); ++i) {
    const long long len = box[i][1] - box[i][0];
    tables[i].reserve(static_cast<std::size_t>(len));
    Transformation cur = transformation_pow(sys.transforms[i], box[i][0]);
    for (long long m = 0; m < len; ++m) {
      tables[i].push_back(cur);
      cur = compose(sys.transforms[i], cur);
    }
  }
  return tables;
}

std::vector<EpsilonMask> active_vertices(const std::map<EpsilonMask, Observable>& functions,
                                         std::optional<int> rank_cap, bool allow_empty) {
  std::vector<EpsilonMask> out;
  for (const auto& [eps, f] : functions) {
    if (eps == 0 && !allow_empty) continue;
    if (rank_cap && epsilon_size(eps) > *rank_cap) continue;
    out.push_back(eps);
  }
  return out;
}

void check_box(const System& sys, const std::vector<std::array<long long, 2>>& box) {
  if (static_cast<int>(box.size()) != sys.dim())
    throw Error(Errc::BadConfig, "box dimension does not match the system");
  for (const auto& iv : box)
    if (iv[1] <= iv[0]) throw Error(Errc::EmptyBox, "empty box interval");
}

// prod over the listed vertices of f_eps(T_eps^n x), as a function of x,
// with n given by per-axis table offsets.
void accumulate_term(const System& sys, const std::map<EpsilonMask, Observable>& functions,
                     const std::vector<EpsilonMask>& vertices,
                     const std::vector<std::vector<Transformation>>& tables,
                     const std::vector<long long>& offs, std::vector<Rational>& acc) {
  const int n_pts = sys.size();
  for (int x = 0; x < n_pts; ++x) {
    Rational prod = 1;
    for (EpsilonMask eps : vertices) {
      int y = x;
      EpsilonMask rest = eps;
      for (int i = 0; rest != 0; ++i, rest >>= 1)
        if (rest & 1u) y = tables[i][static_cast<std::size_t>(offs[i])].image[y];
      prod *= functions.at(eps).values[y];
      if (prod == 0) break;
    }
    acc[x] += prod;
  }
}

std::vector<std::array<long long, 2>> period_box(const System& sys) {
  std::vector<std::array<long long, 2>> box(sys.dim());
  for (int i = 0; i < sys.dim(); ++i) box[i] = {0, orbit_order(sys.transforms[i])};
  return box;
}

}  // namespace

CubeResult cube_average(const CubeSpec& spec) {
  const System& sys = *spec.system;
  check_box(sys, spec.box);
  for (const auto& [eps, f] : spec.functions)
    if (f.size() != sys.size()) throw Error(Errc::MismatchedSpace, "function on a different space");

  const auto vertices = active_vertices(spec.functions, spec.rank_cap, /*allow_empty=*/false);
  const auto tables = power_tables(sys, spec.box);

  Rational volume = 1;
  for (const auto& iv : spec.box) volume *= Rational(iv[1] - iv[0]);

  std::vector<Rational> acc(sys.size(), Rational(0));
  std::vector<long long> offs(sys.dim(), 0);
  for (;;) {
    accumulate_term(sys, spec.functions, vertices, tables, offs, acc);
    int axis = 0;
    while (axis < sys.dim()) {
      if (++offs[axis] < spec.box[axis][1] - spec.box[axis][0]) break;
      offs[axis] = 0;
      ++axis;
    }
    if (axis == sys.dim()) break;
  }

  CubeResult res;
  res.average.values.resize(sys.size());
  for (int x = 0; x < sys.size(); ++x) res.average.values[x] = acc[x] / volume;
  for (const auto& iv : spec.box) res.box_lengths.push_back(iv[1] - iv[0]);
  return res;
}

CubeResult cube_limit(const System& sys, const std::map<EpsilonMask, Observable>& functions,
                      std::optional<int> rank_cap) {
  CubeSpec spec;
  spec.system = &sys;
  spec.functions = functions;
  spec.box = period_box(sys);
  spec.rank_cap = rank_cap;
  return cube_average(spec);
}

Observable iterated_limit(const System& sys, const std::map<EpsilonMask, Observable>& functions,
                          std::optional<int> rank_cap) {
  const auto box = period_box(sys);
  const auto vertices = active_vertices(functions, rank_cap, /*allow_empty=*/false);
  const auto tables = power_tables(sys, box);

  // Stage 0: the raw product term for every n in the period box.
  std::map<std::vector<long long>, Observable> tensor;
  std::vector<long long> offs(sys.dim(), 0);
  for (;;) {
    std::vector<Rational> acc(sys.size(), Rational(0));
    accumulate_term(sys, functions, vertices, tables, offs, acc);
    tensor.emplace(offs, Observable{std::move(acc)});
    int axis = 0;
    while (axis < sys.dim()) {
      if (++offs[axis] < box[axis][1]) break;
      offs[axis] = 0;
      ++axis;
    }
    if (axis == sys.dim()) break;
  }

  // Fold axis by axis: first n_1, then n_2, ...
  for (int axis = 0; axis < sys.dim(); ++axis) {
    const Rational len(box[axis][1]);
    std::map<std::vector<long long>, Observable> next;
    for (const auto& [idx, obs] : tensor) {
      std::vector<long long> tail(idx.begin() + 1, idx.end());
      auto [it, fresh] = next.try_emplace(
          std::move(tail), Observable{std::vector<Rational>(sys.size(), Rational(0))});
      for (int x = 0; x < sys.size(); ++x) it->second.values[x] += obs.values[x] / len;
    }
    tensor = std::move(next);
  }
  return tensor.begin()->second;
}

Rational integrated_cube_limit(const System& sys, const Observable& indicator) {
  if (!is_indicator(indicator)) throw Error(Errc::NotIndicator, "expected a 0/1-valued function");
  std::map<EpsilonMask, Observable> functions;
  for (EpsilonMask eps = 0; eps <= full_mask(sys.dim()); ++eps) functions[eps] = indicator;

  const auto box = period_box(sys);
  const auto tables = power_tables(sys, box);
  std::vector<EpsilonMask> vertices;
  for (EpsilonMask eps = 0; eps <= full_mask(sys.dim()); ++eps) vertices.push_back(eps);

  Rational volume = 1;
  for (const auto& iv : box) volume *= Rational(iv[1]);

  Rational sum = 0;
  std::vector<long long> offs(sys.dim(), 0);
  for (;;) {
    std::vector<Rational> acc(sys.size(), Rational(0));
    accumulate_term(sys, functions, vertices, tables, offs, acc);
    for (int x = 0; x < sys.size(); ++x) sum += sys.space.weights[x] * acc[x];
    int axis = 0;
    while (axis < sys.dim()) {
      if (++offs[axis] < box[axis][1]) break;
      offs[axis] = 0;
      ++axis;
    }
    if (axis == sys.dim()) break;
  }
  return sum / volume;
}

namespace {

void require_bounded_by_one(const std::map<EpsilonMask, Observable>& functions) {
  for (const auto& [eps, f] : functions)
    for (const auto& v : f.values)
      if (rational_abs(v) > 1)
        throw Error(Errc::HypothesisViolated, "a function exceeds sup norm 1");
}

void require_commuting(const System& sys) {
  if (!sys.commuting)
    throw Error(Errc::HypothesisViolated, "seminorm bounds need commuting transformations");
}

}  // namespace

BoundReport upper_bound_check_rank1(const System& sys,
                                    const std::map<EpsilonMask, Observable>& functions) {
  require_commuting(sys);
  require_bounded_by_one(functions);
  CubeResult limit = cube_limit(sys, functions);
  BoundReport rep;
  rep.lhs_l2 = std::sqrt(to_double(l2_norm_sq(sys.space, limit.average)));
  rep.rhs_min = std::numeric_limits<double>::infinity();
  for (const auto& [eps, f] : functions) {
    if (eps == 0) continue;
    double v = box_seminorm(sys, f).value();
    if (v < rep.rhs_min) {
      rep.rhs_min = v;
      rep.argmin_eps = eps;
    }
  }
  rep.holds = rep.lhs_l2 <= rep.rhs_min + 1e-9;
  return rep;
}

BoundReport upper_bound_check_rankr(const System& sys,
                                    const std::map<EpsilonMask, Observable>& functions, int r) {
  require_commuting(sys);
  require_bounded_by_one(functions);
  if (r < 1 || r > sys.dim()) throw Error(Errc::BadConfig, "rank out of range");
  CubeResult limit = cube_limit(sys, functions, r);
  BoundReport rep;
  rep.lhs_l2 = std::sqrt(to_double(l2_norm_sq(sys.space, limit.average)));
  rep.rhs_min = std::numeric_limits<double>::infinity();
  for (const auto& [eps, f] : functions) {
    if (epsilon_size(eps) != r) continue;
    double v = box_seminorm(sys, f, eps).value();
    if (v < rep.rhs_min) {
      rep.rhs_min = v;
      rep.argmin_eps = eps;
    }
  }
  rep.holds = rep.lhs_l2 <= rep.rhs_min + 1e-9;
  return rep;
}

DivergenceReport divergence_demo(const System& sys,
                                 const std::map<EpsilonMask, Observable>& functions,
                                 const std::vector<std::vector<std::array<long long, 2>>>& boxes_a,
                                 const std::vector<std::vector<std::array<long long, 2>>>& boxes_b) {
  if (boxes_a.size() != boxes_b.size())
    throw Error(Errc::BadConfig, "box sequences differ in length");
  DivergenceReport rep;
  for (std::size_t i = 0; i < boxes_a.size(); ++i) {
    CubeSpec sa{&sys, functions, boxes_a[i], std::nullopt};
    CubeSpec sb{&sys, functions, boxes_b[i], std::nullopt};
    DivergenceStep step;
    step.box_a = boxes_a[i];
    step.box_b = boxes_b[i];
    step.l2_distance = l2_distance(sys.space, cube_average(sa).average, cube_average(sb).average);
    rep.steps.push_back(std::move(step));
  }
  return rep;
}

double l2_distance(const ProbabilitySpace& space, const Observable& f, const Observable& g) {
  Rational s = 0;
  for (int x = 0; x < space.size(); ++x) {
    Rational d = f.values[x] - g.values[x];
    s += space.weights[x] * d * d;
  }
  return std::sqrt(to_double(s));
}

std::vector<TracePoint> deviation_trace(const System& sys,
                                        const std::map<EpsilonMask, Observable>& functions,
                                        std::optional<int> rank_cap, long long start_len,
                                        int doublings) {
  Observable limit = cube_limit(sys, functions, rank_cap).average;
  std::vector<TracePoint> trace;
  long long len = start_len;
  for (int k = 0; k < doublings; ++k, len *= 2) {
    CubeSpec spec;
    spec.system = &sys;
    spec.functions = functions;
    spec.rank_cap = rank_cap;
    spec.box.assign(sys.dim(), {0, len});
    TracePoint tp;
    tp.lens.assign(sys.dim(), len);
    tp.l2_deviation = l2_distance(sys.space, cube_average(spec).average, limit);
    trace.push_back(std::move(tp));
  }
  return trace;
}

}  // namespace cubeavg
