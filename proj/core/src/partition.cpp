#include "cubeavg/partition.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "cubeavg/errors.hpp"

namespace cubeavg {

namespace {

// Union-find with path compression.
struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

}  // namespace

Partition partition_from_labels(const ProbabilitySpace& space, const std::vector<int>& label_of) {
  const int n = space.size();
  // Canonical cell ids: order of first appearance equals order by smallest member.
  std::map<int, int> relabel;
  Partition p;
  p.cell_of.resize(n);
  for (int x = 0; x < n; ++x) {
    auto [it, fresh] = relabel.try_emplace(label_of[x], static_cast<int>(p.cells.size()));
    if (fresh) {
      p.cells.emplace_back();
      p.cell_weight.emplace_back(0);
    }
    p.cell_of[x] = it->second;
    p.cells[it->second].push_back(x);
    p.cell_weight[it->second] += space.weights[x];
  }
  return p;
}

Partition invariant_partition(const ProbabilitySpace& space, const Transformation& t) {
  UnionFind uf(space.size());
  for (int x = 0; x < space.size(); ++x) uf.unite(x, t.image[x]);
  std::vector<int> label(space.size());
  for (int x = 0; x < space.size(); ++x) label[x] = uf.find(x);
  return partition_from_labels(space, label);
}

Partition join_partitions(const ProbabilitySpace& space, std::span<const Partition> parts) {
  if (parts.empty()) return partition_from_labels(space, std::vector<int>(space.size(), 0));
  const int n = space.size();
  for (const auto& p : parts)
    if (p.point_count() != n) throw Error(Errc::MismatchedSpace, "partition on a different space");

  // Atoms of the join: points agreeing on every input cell id.
  std::map<std::vector<int>, int> signature_label;
  std::vector<int> label(n);
  for (int x = 0; x < n; ++x) {
    std::vector<int> sig;
    sig.reserve(parts.size());
    for (const auto& p : parts) sig.push_back(p.cell_of[x]);
    auto [it, fresh] = signature_label.try_emplace(std::move(sig),
                                                   static_cast<int>(signature_label.size()));
    label[x] = it->second;
  }
  return partition_from_labels(space, label);
}

Partition group_orbit_partition(const ProbabilitySpace& space,
                                std::span<const Transformation> ts) {
  UnionFind uf(space.size());
  for (const auto& t : ts)
    for (int x = 0; x < space.size(); ++x) uf.unite(x, t.image[x]);
  std::vector<int> label(space.size());
  for (int x = 0; x < space.size(); ++x) label[x] = uf.find(x);
  return partition_from_labels(space, label);
}

Observable conditional_expectation(const ProbabilitySpace& space, const Observable& f,
                                   const Partition& p) {
  std::vector<Rational> cell_sum(p.cell_count(), Rational(0));
  for (int x = 0; x < space.size(); ++x) cell_sum[p.cell_of[x]] += space.weights[x] * f.values[x];
  Observable g;
  g.values.resize(space.size());
  for (int x = 0; x < space.size(); ++x)
    g.values[x] = cell_sum[p.cell_of[x]] / p.cell_weight[p.cell_of[x]];
  return g;
}

Rational integrate(const ProbabilitySpace& space, const Observable& f) {
  Rational s = 0;
  for (int x = 0; x < space.size(); ++x) s += space.weights[x] * f.values[x];
  return s;
}

Rational l2_norm_sq(const ProbabilitySpace& space, const Observable& f) {
  Rational s = 0;
  for (int x = 0; x < space.size(); ++x) s += space.weights[x] * f.values[x] * f.values[x];
  return s;
}

}  // namespace cubeavg
