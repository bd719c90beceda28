#include "cubeavg/measures.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numeric>

#include "cubeavg/errors.hpp"

namespace cubeavg {

std::size_t sparse_entry_cap() {
  static const std::size_t cap = [] {
    if (const char* env = std::getenv("CUBEAVG_MAX_ENTRIES")) {
      char* end = nullptr;
      unsigned long long v = std::strtoull(env, &end, 10);
      if (end && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
    }
    return kDefaultEntryCap;
  }();
  return cap;
}

namespace {

// base^len, or 0 if it does not fit in the key type.
std::uint64_t checked_pow(std::uint64_t base, int len) {
  std::uint64_t r = 1;
  for (int i = 0; i < len; ++i) {
    if (base != 0 && r > (std::uint64_t{1} << 62) / base) return 0;
    r *= base;
  }
  return r;
}

}  // namespace

std::uint64_t SparseMeasure::encode(const std::vector<int>& tuple) const {
  std::uint64_t key = 0;
  for (int p = tuple_len - 1; p >= 0; --p)
    key = key * static_cast<std::uint64_t>(base_size) + static_cast<std::uint64_t>(tuple[p]);
  return key;
}

std::vector<int> SparseMeasure::decode(std::uint64_t key) const {
  std::vector<int> tuple(tuple_len);
  for (int p = 0; p < tuple_len; ++p) {
    tuple[p] = static_cast<int>(key % static_cast<std::uint64_t>(base_size));
    key /= static_cast<std::uint64_t>(base_size);
  }
  return tuple;
}

int SparseMeasure::coord(std::uint64_t key, int pos) const {
  for (int p = 0; p < pos; ++p) key /= static_cast<std::uint64_t>(base_size);
  return static_cast<int>(key % static_cast<std::uint64_t>(base_size));
}

Rational SparseMeasure::total_mass() const {
  Rational s = 0;
  for (const auto& [k, w] : entries) s += w;
  return s;
}

SparseMeasure base_measure(const ProbabilitySpace& space) {
  SparseMeasure m;
  m.base_size = space.size();
  m.tuple_len = 1;
  for (int x = 0; x < space.size(); ++x)
    m.entries.emplace(static_cast<std::uint64_t>(x), space.weights[x]);
  return m;
}

std::uint64_t apply_coordinatewise(std::uint64_t key, const Transformation& t, int tuple_len,
                                   int base) {
  std::uint64_t out = 0;
  std::uint64_t shift = 1;
  for (int p = 0; p < tuple_len; ++p) {
    const int x = static_cast<int>(key % static_cast<std::uint64_t>(base));
    key /= static_cast<std::uint64_t>(base);
    out += static_cast<std::uint64_t>(t.image[x]) * shift;
    shift *= static_cast<std::uint64_t>(base);
  }
  return out;
}

Transformation diagonal_transformation(const Transformation& t, int copies) {
  const std::uint64_t total = checked_pow(static_cast<std::uint64_t>(t.size()), copies);
  if (total == 0 || total > sparse_entry_cap())
    throw Error(Errc::SupportOverflow, "materialized diagonal too large");
  Transformation d;
  d.image.resize(static_cast<std::size_t>(total));
  for (std::uint64_t key = 0; key < total; ++key)
    d.image[key] = static_cast<int>(apply_coordinatewise(key, t, copies, t.size()));
  return d;
}

SupportPartition invariant_support_partition(
    const SparseMeasure& m, const std::function<std::uint64_t(std::uint64_t)>& step) {
  SupportPartition p;
  p.keys.reserve(m.entries.size());
  for (const auto& [k, w] : m.entries) p.keys.push_back(k);

  auto index_of = [&](std::uint64_t key) {
    auto it = std::lower_bound(p.keys.begin(), p.keys.end(), key);
    if (it == p.keys.end() || *it != key)
      throw Error(Errc::MismatchedSpace, "support not invariant under the diagonal action");
    return static_cast<int>(it - p.keys.begin());
  };

  const int n = static_cast<int>(p.keys.size());
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  };
  for (int i = 0; i < n; ++i) {
    int a = find(i);
    int b = find(index_of(step(p.keys[i])));
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }

  p.cell_of.resize(n);
  std::map<int, int> relabel;
  for (int i = 0; i < n; ++i) {
    auto [it, fresh] = relabel.try_emplace(find(i), static_cast<int>(p.cells.size()));
    if (fresh) {
      p.cells.emplace_back();
      p.cell_mass.emplace_back(0);
    }
    p.cell_of[i] = it->second;
    p.cells[it->second].push_back(i);
  }
  {
    auto it = m.entries.begin();
    for (int i = 0; i < n; ++i, ++it) p.cell_mass[p.cell_of[i]] += it->second;
  }
  return p;
}

SparseMeasure relative_product(const SparseMeasure& m, const SupportPartition& p,
                               std::size_t entry_cap) {
  const std::uint64_t shift = checked_pow(static_cast<std::uint64_t>(m.base_size), m.tuple_len);
  if (shift == 0 || checked_pow(static_cast<std::uint64_t>(m.base_size), 2 * m.tuple_len) == 0)
    throw Error(Errc::SupportOverflow, "tuple key width exceeded");

  std::size_t out_entries = 0;
  for (const auto& cell : p.cells) out_entries += cell.size() * cell.size();
  if (out_entries > entry_cap)
    throw Error(Errc::SupportOverflow,
                "relative product would need " + std::to_string(out_entries) + " entries");

  std::vector<Rational> mass(p.keys.size());
  {
    auto it = m.entries.begin();
    for (std::size_t i = 0; i < p.keys.size(); ++i, ++it) mass[i] = it->second;
  }

  SparseMeasure out;
  out.base_size = m.base_size;
  out.tuple_len = 2 * m.tuple_len;
  for (std::size_t c = 0; c < p.cells.size(); ++c) {
    const Rational& w_cell = p.cell_mass[c];
    if (w_cell <= 0) throw Error(Errc::EmptyCellMass, "cell with nonpositive mass");
    for (int ia : p.cells[c])
      for (int ib : p.cells[c])
        out.entries.emplace(p.keys[ia] + p.keys[ib] * shift, mass[ia] * mass[ib] / w_cell);
  }
  return out;
}

SparseMeasure build_mu_star(const System& sys, const std::vector<int>& order,
                            std::size_t entry_cap) {
  SparseMeasure m = base_measure(sys.space);
  for (int idx : order) {
    const Transformation& t = sys.transforms[idx];
    auto step = [&](std::uint64_t key) {
      return apply_coordinatewise(key, t, m.tuple_len, m.base_size);
    };
    m = relative_product(m, invariant_support_partition(m, step), entry_cap);
  }
  return m;
}

double SeminormValue::value() const {
  return std::pow(to_double(power_value), 1.0 / static_cast<double>(degree));
}

SeminormValue box_seminorm_direct(const System& sys, const Observable& f,
                                  const std::vector<int>& order) {
  SparseMeasure m = build_mu_star(sys, order);
  Rational power = 0;
  for (const auto& [key, w] : m.entries) {
    Rational prod = w;
    std::uint64_t k = key;
    for (int p = 0; p < m.tuple_len; ++p) {
      prod *= f.values[static_cast<int>(k % static_cast<std::uint64_t>(m.base_size))];
      k /= static_cast<std::uint64_t>(m.base_size);
    }
    power += prod;
  }
  SeminormValue v;
  v.power_value = std::move(power);
  v.degree = 1 << order.size();
  return v;
}

SeminormValue box_seminorm_recursive(const System& sys, const Observable& f,
                                     const std::vector<int>& order) {
  // Only the measure one level below the top is ever materialized; the top
  // integral is the squared conditional expectation of the tensor power.
  std::vector<int> prefix(order.begin(), order.end() - 1);
  SparseMeasure m = build_mu_star(sys, prefix);
  const Transformation& last = sys.transforms[order.back()];
  auto step = [&](std::uint64_t key) {
    return apply_coordinatewise(key, last, m.tuple_len, m.base_size);
  };
  SupportPartition p = invariant_support_partition(m, step);

  std::vector<Rational> mass(p.keys.size());
  {
    auto it = m.entries.begin();
    for (std::size_t i = 0; i < p.keys.size(); ++i, ++it) mass[i] = it->second;
  }

  Rational power = 0;
  for (std::size_t c = 0; c < p.cells.size(); ++c) {
    Rational weighted = 0;  // integral of (tensor f) over the cell
    for (int i : p.cells[c]) {
      Rational prod = mass[i];
      std::uint64_t k = p.keys[i];
      for (int pos = 0; pos < m.tuple_len; ++pos) {
        prod *= f.values[static_cast<int>(k % static_cast<std::uint64_t>(m.base_size))];
        k /= static_cast<std::uint64_t>(m.base_size);
      }
      weighted += prod;
    }
    power += weighted * weighted / p.cell_mass[c];
  }
  SeminormValue v;
  v.power_value = std::move(power);
  v.degree = 1 << order.size();
  return v;
}

SeminormValue box_seminorm(const System& sys, const Observable& f, EpsilonMask eps) {
  if (eps == 0) throw Error(Errc::BadConfig, "seminorm needs a nonempty transformation set");
  std::vector<int> order;
  for (int i = 0; i < sys.dim(); ++i)
    if (eps & (EpsilonMask{1} << i)) order.push_back(i);
  return box_seminorm_recursive(sys, f, order);
}

SeminormValue box_seminorm(const System& sys, const Observable& f) {
  return box_seminorm(sys, f, full_mask(sys.dim()));
}

bool seminorm_digit_permutation_check(const System& sys, const Observable& f,
                                      const std::vector<int>& order,
                                      const std::vector<int>& permuted_order) {
  return box_seminorm_recursive(sys, f, order).power_value ==
         box_seminorm_recursive(sys, f, permuted_order).power_value;
}

}  // namespace cubeavg
