#include "axionkit/geometry.hpp"
#include "axionkit/noise.hpp"
#include "axionkit/sensitivity.hpp"
#include "axionkit/signal.hpp"
#include "axionkit/spectral.hpp"

#include <benchmark/benchmark.h>

#include <cmath>

using namespace axionkit;

namespace {

TimeSeries white(std::size_t n, double dt) {
  auto e = signal::make_engine(1, signal::NoiseStream::white);
  SeriesMeta m;
  m.source = "bench";
  return TimeSeries(0.0, dt, signal::white_noise(n, dt, 1.0, e), m);
}

} // namespace

static void BM_PeriodogramWelch(benchmark::State &state) {
  const auto s = white(static_cast<std::size_t>(state.range(0)), 0.01);
  spectral::WindowSpec w;
  w.segment_length_s = 4096 * 0.01;
  for (auto _ : state) {
    benchmark::DoNotOptimize(spectral::periodogram(s, w));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_PeriodogramWelch)->Arg(1 << 16)->Arg(1 << 20);

static void BM_PeriodogramFourYears(benchmark::State &state) {
  // 4 years at 1000 s, single rectangular segment
  const auto s = white(126230, 1000.0);
  spectral::WindowSpec w;
  w.kind = spectral::WindowKind::rectangular;
  for (auto _ : state) {
    benchmark::DoNotOptimize(spectral::periodogram(s, w));
  }
}
BENCHMARK(BM_PeriodogramFourYears);

static void BM_ProjectionSeries(benchmark::State &state) {
  const geometry::SiteGeometry site;
  const geometry::EphemerisConstants eph;
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(geometry::projection_series(site, eph, 0.0, 600.0, n));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_ProjectionSeries)->Arg(52596);

static void BM_FitSite(benchmark::State &state) {
  const geometry::SiteGeometry site;
  const geometry::EphemerisConstants eph;
  for (auto _ : state) {
    benchmark::DoNotOptimize(geometry::fit_site(site, eph));
  }
}
BENCHMARK(BM_FitSite)->Unit(benchmark::kMillisecond);

static void BM_Heterodyne(benchmark::State &state) {
  const auto s = white(static_cast<std::size_t>(state.range(0)), 1e-3);
  for (auto _ : state) {
    benchmark::DoNotOptimize(signal::heterodyne(s, 100.0, 10.0));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Heterodyne)->Arg(1 << 16)->Arg(1 << 18);

static void BM_TripletSixtyDays(benchmark::State &state) {
  const geometry::EphemerisConstants eph;
  const auto s = white(8640, 600.0);
  const spectral::TripletPhases phases{0.7, 2.1};
  for (auto _ : state) {
    benchmark::DoNotOptimize(spectral::triplet_statistic(s, eph, phases));
  }
}
BENCHMARK(BM_TripletSixtyDays);

static void BM_SensitivityCurve(benchmark::State &state) {
  const auto grid = sensitivity::log_grid(1.0, 10.0, 61);
  const auto q = sensitivity::future_preset().apply({});
  for (auto _ : state) {
    benchmark::DoNotOptimize(sensitivity::g_min_curve(grid, q, {}, {}, {},
                                                      sensitivity::GainSelection::all()));
  }
}
BENCHMARK(BM_SensitivityCurve);

BENCHMARK_MAIN();
