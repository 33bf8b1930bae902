#include <benchmark/benchmark.h>

#include "vitkerr/bloch.hpp"
#include "vitkerr/disorder.hpp"
#include "vitkerr/merit.hpp"
#include "vitkerr/numerics.hpp"
#include "vitkerr/susceptibility.hpp"

using namespace vitkerr;

namespace {

SystemParams base() {
  SystemParams p;
  p.rates.kappa = 1e-4;
  p.rates.gamma_pd = 0.01;
  p.rates.gamma_ivr = 10.0;
  p.fields.omega_c_rabi = 1.2;
  p.fields.omega_s_rabi = 0.3;
  p.fields.delta_s = 5.0;
  return p;
}

void BM_ClosedForm(benchmark::State& state) {
  const Emitter e = resolve(base(), 0.3);
  for (auto _ : state) benchmark::DoNotOptimize(chi_homogeneous(e, I0Variant::full));
}
BENCHMARK(BM_ClosedForm);

void BM_BlochSolve(benchmark::State& state) {
  const Emitter e = resolve(base(), 0.3);
  for (auto _ : state) benchmark::DoNotOptimize(chi_bloch(e));
}
BENCHMARK(BM_BlochSolve);

void BM_Orientational(benchmark::State& state) {
  SystemParams p = base();
  p.fields.omega_s_rabi = 0.0;
  const Emitter e = resolve(p, 0.3);
  for (auto _ : state) benchmark::DoNotOptimize(orientational_average(e));
}
BENCHMARK(BM_Orientational);

void BM_OrientationalQuadrature(benchmark::State& state) {
  SystemParams p = base();
  p.fields.omega_s_rabi = 0.0;
  const Emitter e = resolve(p, 0.3);
  for (auto _ : state) benchmark::DoNotOptimize(orientational_average_quadrature(e));
}
BENCHMARK(BM_OrientationalQuadrature);

// Samples per grid point as the argument; one grid point.
void BM_MonteCarloGaussian(benchmark::State& state) {
  DisorderSpec d;
  d.family = DisorderFamily::gaussian;
  d.sigma3 = 5.0;
  d.sigma4 = 5.0;
  d.n_samples = static_cast<std::uint64_t>(state.range(0));
  const double x[1] = {0.02};
  for (auto _ : state) benchmark::DoNotOptimize(average_monte_carlo(base(), d, x));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_MonteCarloGaussian)->Arg(10000)->Arg(100000)->Unit(benchmark::kMillisecond);

// Gauss-Hermite nodes per axis as the argument; both axes active.
void BM_QuadratureGaussian(benchmark::State& state) {
  DisorderSpec d;
  d.family = DisorderFamily::gaussian;
  d.sigma3 = 5.0;
  d.sigma4 = 5.0;
  d.quadrature_nodes = static_cast<int>(state.range(0));
  const double x[1] = {0.02};
  for (auto _ : state) benchmark::DoNotOptimize(average_quadrature_gaussian(base(), d, x));
}
BENCHMARK(BM_QuadratureGaussian)->Arg(51)->Arg(101)->Arg(201)->Unit(benchmark::kMillisecond);

void BM_GaussHermiteRule(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(numerics::gauss_hermite(static_cast<int>(state.range(0))));
}
BENCHMARK(BM_GaussHermiteRule)->Arg(201);

void BM_MaximizeEtaClosed(benchmark::State& state) {
  const Emitter e = resolve(base(), 0.0);
  const SignalDressing d = signal_dressing(e, 5.0);
  for (auto _ : state) benchmark::DoNotOptimize(maximize_eta_closed(e, d, 5.0));
}
BENCHMARK(BM_MaximizeEtaClosed);

}  // namespace

BENCHMARK_MAIN();
