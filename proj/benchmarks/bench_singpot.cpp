#include <benchmark/benchmark.h>

#include "singpot/dirichlet.hpp"
#include "singpot/lauricella.hpp"
#include "singpot/series.hpp"
#include "singpot/potentials.hpp"

using namespace singpot;

static void BM_Gauss2F1_Direct(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(gauss_2f1(0.7, 0.9, 1.4, 0.45));
}
BENCHMARK(BM_Gauss2F1_Direct);

static void BM_Gauss2F1_Connection(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(gauss_2f1(0.7, 0.9, 1.4, 0.97));
}
BENCHMARK(BM_Gauss2F1_Connection);

static void BM_FaDirect_n2(benchmark::State& state) {
  const FAParams p{1.5, {0.5, 0.7}, {1.5, 1.8}};
  const std::vector<double> y{0.2, 0.15};
  for (auto _ : state) benchmark::DoNotOptimize(fa_direct(p, y));
}
BENCHMARK(BM_FaDirect_n2);

static void BM_FaTransformed_n2(benchmark::State& state) {
  const FAParams p{1.5, {0.5, 0.7}, {1.5, 1.8}};
  const std::vector<double> y{-30.0, -75.0};
  for (auto _ : state) benchmark::DoNotOptimize(fa_transformed(p, y));
}
BENCHMARK(BM_FaTransformed_n2);

static void BM_Fundamental_n1(benchmark::State& state) {
  const KernelSet K(SingularParams(3, {0.3}));
  const Point xi{0.4, 0.3, 0.2}, x{0.8, 0.5, 0.6};
  for (auto _ : state) benchmark::DoNotOptimize(K.fundamental(xi, x));
}
BENCHMARK(BM_Fundamental_n1);

static void BM_DoubleLayerKernel_n1(benchmark::State& state) {
  const KernelSet K(SingularParams(3, {0.3}));
  const Point xi{0.6, 0.3, 0.74}, nrm{0.6, 0.3, 0.74}, x{0.3, 0.5, 0.2};
  for (auto _ : state) benchmark::DoNotOptimize(K.double_layer(xi, nrm, x));
}
BENCHMARK(BM_DoubleLayerKernel_n1);

static void BM_Fundamental_n2_NearDiagonal(benchmark::State& state) {
  // near-boundary evaluations run with the loosened production control
  SeriesControl ctrl;
  ctrl.rel_tol = 1e-8;
  ctrl.max_terms = 1000000;
  const KernelSet K(SingularParams(3, {0.3, 0.4}), ctrl);
  const Point xi{0.4, 0.3, 0.2};
  Point x(xi);
  x[2] += std::ldexp(1.0, -static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(K.fundamental(xi, x));
}
BENCHMARK(BM_Fundamental_n2_NearDiagonal)->Arg(2)->Arg(5)->Arg(7);

static void BM_HyperplaneKernel_n2(benchmark::State& state) {
  const KernelSet K(SingularParams(3, {0.3, 0.4}));
  const Point p{0.7, 0.3, 0.4}, s{0.0, 0.5, 0.2};
  for (auto _ : state) benchmark::DoNotOptimize(K.hyperplane(p, s, 0));
}
BENCHMARK(BM_HyperplaneKernel_n2);

static void BM_SolveBall_Const_n1(benchmark::State& state) {
  const OctantBallDomain dom(1.0, SingularParams(3, {0.3}));
  BoundaryData data;
  data.phi = [](const Point&) { return 1.0; };
  data.tau = {[](const Point&) { return 1.0; }};
  const Point xi{0.3, 0.2, 0.1};
  for (auto _ : state)
    benchmark::DoNotOptimize(solve_dirichlet_ball(data, xi, dom, state.range(0)).value);
}
BENCHMARK(BM_SolveBall_Const_n1)->Arg(16)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

static void BM_OperatorAssembly(benchmark::State& state) {
  const OctantBallDomain dom(1.0, SingularParams(3, {0.3}));
  for (auto _ : state) {
    BoundaryOperator op(dom, state.range(0));
    benchmark::DoNotOptimize(op.i_value(0));
  }
}
BENCHMARK(BM_OperatorAssembly)->Arg(12)->Arg(24)->Unit(benchmark::kMillisecond);

int main(int argc, char** argv) {
  ::benchmark::Initialize(&argc, argv);
  if (::benchmark::ReportUnrecognizedArguments(argc, argv)) return 1;
  ::benchmark::RunSpecifiedBenchmarks();
  ::benchmark::Shutdown();
  return 0;
}
