#include <benchmark/benchmark.h>

#include <random>

#include "cubeavg/averages.hpp"
#include "cubeavg/magic.hpp"
#include "cubeavg/measures.hpp"
#include "cubeavg/random_instance.hpp"

using namespace cubeavg;

namespace {

struct Fixture {
  System sys;
  Observable f;
  std::vector<int> order;
};

Fixture make_fixture(int points, int dim) {
  std::mt19937_64 rng(42);
  auto inst = random_commuting_system(
      rng, {.max_points = points, .max_dim = dim, .fixed_dim = dim});
  Fixture fx{inst.system, random_bounded_observable(rng, inst.system.size()), {}};
  for (int i = 0; i < fx.sys.dim(); ++i) fx.order.push_back(i);
  return fx;
}

void bm_mu_star(benchmark::State& state) {
  auto fx = make_fixture(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
  for (auto _ : state) {
    auto m = build_mu_star(fx.sys, fx.order);
    benchmark::DoNotOptimize(m.entries);
  }
}
BENCHMARK(bm_mu_star)->Args({4, 2})->Args({6, 2})->Args({6, 3})->Args({8, 3});

void bm_seminorm_direct(benchmark::State& state) {
  auto fx = make_fixture(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
  for (auto _ : state) {
    auto v = box_seminorm_direct(fx.sys, fx.f, fx.order);
    benchmark::DoNotOptimize(v.power_value);
  }
}
BENCHMARK(bm_seminorm_direct)->Args({6, 2})->Args({6, 3})->Args({8, 3});

void bm_seminorm_recursive(benchmark::State& state) {
  auto fx = make_fixture(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
  for (auto _ : state) {
    auto v = box_seminorm_recursive(fx.sys, fx.f, fx.order);
    benchmark::DoNotOptimize(v.power_value);
  }
}
BENCHMARK(bm_seminorm_recursive)->Args({6, 2})->Args({6, 3})->Args({8, 3});

void bm_cube_limit(benchmark::State& state) {
  auto fx = make_fixture(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
  std::map<EpsilonMask, Observable> fs;
  for (EpsilonMask eps = 1; eps <= full_mask(fx.sys.dim()); ++eps) fs[eps] = fx.f;
  for (auto _ : state) {
    auto r = cube_limit(fx.sys, fs);
    benchmark::DoNotOptimize(r.average.values);
  }
}
BENCHMARK(bm_cube_limit)->Args({6, 2})->Args({6, 3});

void bm_build_magic(benchmark::State& state) {
  auto fx = make_fixture(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
  for (auto _ : state) {
    auto ms = build_magic(fx.sys);
    benchmark::DoNotOptimize(ms.support_keys);
  }
}
BENCHMARK(bm_build_magic)->Args({4, 2});

}  // namespace

BENCHMARK_MAIN();
