#include <benchmark/benchmark.h>

#include "arns/cglmp.hpp"
#include "arns/hologram.hpp"
#include "arns/lg_mode.hpp"
#include "arns/noise.hpp"
#include "arns/overlap.hpp"

namespace {

void BM_OverlapWeighted(benchmark::State& st) {
  const arns::BeamGeometry g{780e-9, 1000e-6, 0.0, arns::WaistMode::Standard};
  const int p = static_cast<int>(st.range(0));
  for (auto _ : st) {
    benchmark::DoNotOptimize(arns::overlap({0, p}, {0, p}, g, arns::SmfWeight{750e-6}));
  }
}
BENCHMARK(BM_OverlapWeighted)->Arg(0)->Arg(5)->Arg(10);

void BM_CglmpMes(benchmark::State& st) {
  const auto state = arns::make_mes(static_cast<int>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(arns::cglmp_s(state).S);
}
BENCHMARK(BM_CglmpMes)->DenseRange(2, 10, 4);

void BM_Surface(benchmark::State& st) {
  for (auto _ : st) {
    benchmark::DoNotOptimize(arns::separability_surface(static_cast<std::size_t>(st.range(0))));
  }
}
BENCHMARK(BM_Surface)->Arg(32)->Unit(benchmark::kMillisecond);

void BM_HologramRoundTrip(benchmark::State& st) {
  const arns::BeamGeometry g{780e-9, 2e-3, 0.0, arns::WaistMode::Revised};
  arns::RenderOptions ro;
  ro.resolution = static_cast<std::size_t>(st.range(0));
  ro.extent = 6e-3;
  const arns::ModeTerm t{{3, 2}, 1.0};
  const auto target = arns::normalize_to_peak(arns::render_field({&t, 1}, g, ro));
  const auto holo = arns::encode(target, 10.0 * target.spacing(), target.spacing());
  const auto light = arns::plane_wave(holo);
  arns::ReconstructOptions rc;
  rc.window_half_width = 0.5;
  for (auto _ : st) benchmark::DoNotOptimize(arns::reconstruct(holo, light, rc));
}
BENCHMARK(BM_HologramRoundTrip)->Arg(256)->Arg(1024)->Unit(benchmark::kMillisecond);

void BM_SigmaCglmp(benchmark::State& st) {
  const auto state = arns::make_mes(10);
  const arns::NoiseConfig cfg{1e4, 200, 1};
  for (auto _ : st) benchmark::DoNotOptimize(arns::estimate_sigma(arns::Quantity::CglmpS, state, cfg));
}
BENCHMARK(BM_SigmaCglmp)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
