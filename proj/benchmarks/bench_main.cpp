#include <benchmark/benchmark.h>

#include "lavaurs/approx_fatou.hpp"
#include "lavaurs/fatou.hpp"
#include "lavaurs/maps.hpp"
#include "lavaurs/normal_form.hpp"

using namespace lavaurs;

namespace {

MapParams params(Complex delta) {
  MapParams p;
  p.delta = delta;
  return p;
}

void BM_H_orbit(benchmark::State& state) {
  const MapParams p = params(1e-3);
  for (auto _ : state) {
    CPoint4 q{Complex(-0.2, 0.1), 0.01, 0.001, 0};
    for (int i = 0; i < 1000; ++i) q = H(q, p);
    benchmark::DoNotOptimize(q);
  }
  state.SetItemsProcessed(state.iterations() * 1000);
}
BENCHMARK(BM_H_orbit);

void BM_jet_compose(benchmark::State& state) {
  const int L = static_cast<int>(state.range(0));
  const MapParams p = params(0.1);
  const auto Fj = F_jet(p, L);
  for (auto _ : state) benchmark::DoNotOptimize(jet_compose(Fj, Fj));
}
BENCHMARK(BM_jet_compose)->Arg(4)->Arg(8)->Arg(12);

void BM_normal_form(benchmark::State& state) {
  const MapParams p = params(0.1);
  for (auto _ : state) benchmark::DoNotOptimize(compute_normal_form(p, static_cast<int>(state.range(0)), 3));
}
BENCHMARK(BM_normal_form)->Arg(8)->Unit(benchmark::kMillisecond);

void BM_phi_f(benchmark::State& state) {
  const Fatou1D fc(params(0));
  for (auto _ : state) benchmark::DoNotOptimize(fc.phi(Complex(-0.05, 0.01)));
}
BENCHMARK(BM_phi_f)->Unit(benchmark::kMicrosecond);

void BM_lavaurs_1d(benchmark::State& state) {
  const Fatou1D fc(params(0));
  for (auto _ : state) benchmark::DoNotOptimize(fc.lavaurs(Complex(-0.22, 0.13)));
}
BENCHMARK(BM_lavaurs_1d)->Unit(benchmark::kMicrosecond);

void BM_lavaurs_2d(benchmark::State& state) {
  const Fatou2D fc(compute_normal_form(params(1e-3), 8, 3));
  for (auto _ : state) benchmark::DoNotOptimize(fc.lavaurs({Complex(-0.22, 0.13), 0.01}));
}
BENCHMARK(BM_lavaurs_2d)->Unit(benchmark::kMicrosecond);

void BM_phi_w(benchmark::State& state) {
  const MapParams p = params(0);
  const auto c = make_wcontext(1e-4, p, p.a);
  for (auto _ : state) benchmark::DoNotOptimize(phi_w(Complex(0.01, 0.003), c));
}
BENCHMARK(BM_phi_w);

}  // namespace
BENCHMARK_MAIN();
