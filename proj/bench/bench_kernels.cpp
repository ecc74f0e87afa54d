// Serial reference kernels against their OpenMP counterparts.
#include <benchmark/benchmark.h>

#include <cmath>
#include <random>

#include "dedonder/numeric/kernels.hpp"

using namespace dedonder;
using namespace dedonder::kernels;

namespace {

std::vector<double> random_vector(std::size_t n, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> v(n);
  for (double& x : v) x = u(rng);
  return v;
}

template <bool Omp>
void BM_Differentiate(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  GridSpec g = make_grid({GridDim{0, 6.283185307179586, n, true}, GridDim{0, 1, n, false}});
  auto in = random_vector(g.size(), 1);
  std::vector<double> tmp(g.size()), out(g.size());
  LineDifferentiator D0(g.dims[0]), D1(g.dims[1]);
  for (auto _ : state) {
    if constexpr (Omp) {
      differentiate_omp(g, 0, D0, in.data(), tmp.data());
      differentiate_omp(g, 1, D1, tmp.data(), out.data());
    } else {
      differentiate_serial(g, 0, D0, in.data(), tmp.data());
      differentiate_serial(g, 1, D1, tmp.data(), out.data());
    }
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(g.size()) * 2);
}

template <bool Omp>
void BM_Evaluate(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  JetTable table;
  std::vector<Expr> vars;
  for (int a = 1; a <= 2; ++a)
    for (const auto& I : enumerate_multi_indices(2, 2)) {
      table[JetCoordinate::jet(a, I)] = random_vector(n, static_cast<unsigned>(table.size() + 3));
      vars.push_back(Expr::z(a, I));
    }
  Expr e;
  for (std::size_t i = 0; i < vars.size(); ++i)
    for (std::size_t j = i; j < vars.size(); ++j) e += Expr(static_cast<long>(i + j + 1)) * vars[i] * vars[j];
  CompiledExpr c = compile(e, table);
  std::vector<double> out(n);
  for (auto _ : state) {
    if constexpr (Omp) evaluate_omp(c, n, out.data());
    else evaluate_serial(c, n, out.data());
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(n));
}

template <bool Omp>
void BM_PropagateModes(benchmark::State& state) {
  const std::size_t modes = static_cast<std::size_t>(state.range(0));
  std::mt19937_64 rng(4);
  std::normal_distribution<double> nd;
  std::vector<ModeBlock> init(8);
  for (auto& b : init)
    for (auto& row : b) {
      row.resize(modes);
      for (auto& c : row) c = {nd(rng), nd(rng)};
    }
  for (auto _ : state) {
    auto blocks = init;
    if constexpr (Omp) propagate_modes_omp(6.283185307179586, 0.1, blocks);
    else propagate_modes_serial(6.283185307179586, 0.1, blocks);
    benchmark::DoNotOptimize(blocks.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(modes * init.size()));
}

template <bool Omp>
void BM_WeightedSum(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  auto v = random_vector(n, 5), w = random_vector(n, 6);
  for (auto _ : state) {
    double s = Omp ? weighted_sum_omp(v.data(), w.data(), n) : weighted_sum_serial(v.data(), w.data(), n);
    benchmark::DoNotOptimize(s);
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(n));
}

}  // namespace

BENCHMARK(BM_Differentiate<false>)->Arg(128)->Arg(512)->UseRealTime();
BENCHMARK(BM_Differentiate<true>)->Arg(128)->Arg(512)->UseRealTime();
BENCHMARK(BM_Evaluate<false>)->Arg(1 << 16)->Arg(1 << 20)->UseRealTime();
BENCHMARK(BM_Evaluate<true>)->Arg(1 << 16)->Arg(1 << 20)->UseRealTime();
BENCHMARK(BM_PropagateModes<false>)->Arg(129)->Arg(4097)->UseRealTime();
BENCHMARK(BM_PropagateModes<true>)->Arg(129)->Arg(4097)->UseRealTime();
BENCHMARK(BM_WeightedSum<false>)->Arg(1 << 16)->Arg(1 << 22)->UseRealTime();
BENCHMARK(BM_WeightedSum<true>)->Arg(1 << 16)->Arg(1 << 22)->UseRealTime();

BENCHMARK_MAIN();
