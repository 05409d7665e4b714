#include <benchmark/benchmark.h>

#include "quaddom/contact.hpp"
#include "quaddom/families.hpp"
#include "quaddom/quadrature.hpp"

using namespace quaddom;

namespace {

const ToleranceSpec kTol{1e-12, 1e-10, 4000};

ConformalMapSpec bench_spec() {
  // One pole group of order two plus a segment chain: every term kind.
  QuadraticPoly q{{0.1, 0.3}, {1.0, 0.0}, {0.0, 0.2}};
  PoleGroup pole{Complex{0.2, 1.1}, {Complex{0.05, 0.0}, Complex{0.0, 0.01}}};
  SegmentChain chain{{Complex{-0.5, 1.4}, Complex{0.6, 2.0}}, {Complex{0.1, -0.05}}};
  return ConformalMapSpec(q, {pole}, {chain});
}

void BM_EvalMap(benchmark::State& state) {
  const ConformalMapSpec spec = bench_spec();
  Complex w{0.37, -0.81};
  for (auto _ : state) {
    benchmark::DoNotOptimize(eval_map(spec, w));
  }
}
BENCHMARK(BM_EvalMap);

void BM_TraceBoundary(benchmark::State& state) {
  const ConformalMapSpec spec = bench_spec();
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(trace_boundary(spec, -1e3, 1e3, n, Grading::TanGraded));
  }
  state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_TraceBoundary)->Arg(1024)->Arg(4096);

void BM_BoundaryQuadratureIntegral(benchmark::State& state) {
  const FamilySolution sol = solve_family1(1.0);
  const TestFunction f{Complex{0.0, 3.0}, 3};
  for (auto _ : state) {
    benchmark::DoNotOptimize(boundary_quadrature_integral(sol.spec, f, kTol));
  }
}
BENCHMARK(BM_BoundaryQuadratureIntegral);

void BM_DeriveDistribution(benchmark::State& state) {
  const ConformalMapSpec spec = bench_spec();
  for (auto _ : state) {
    benchmark::DoNotOptimize(derive_distribution(spec, kTol));
  }
}
BENCHMARK(BM_DeriveDistribution);

void BM_SchwarzResidue(benchmark::State& state) {
  const FamilySolution sol = solve_family1(1.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(schwarz_residue(sol.spec, 0, kTol));
  }
}
BENCHMARK(BM_SchwarzResidue);

void BM_SelfIntersection(benchmark::State& state) {
  const FamilySolution sol = solve_family1(0.25);
  const BoundaryTrace trace =
      trace_boundary(sol.spec, -1e3, 1e3, static_cast<int>(state.range(0)), Grading::TanGraded);
  const Polyline poly = trace.to_polyline();
  for (auto _ : state) {
    benchmark::DoNotOptimize(polyline_self_intersects(poly));
  }
}
BENCHMARK(BM_SelfIntersection)->Arg(1024)->Arg(4096);

void BM_Hausdorff(benchmark::State& state) {
  const FamilySolution a = solve_family1(0.5);
  const FamilySolution b = solve_family1(0.25);
  const int n = static_cast<int>(state.range(0));
  const Polyline pa = trace_boundary(a.spec, -50, 50, n, Grading::TanGraded).to_polyline();
  const Polyline pb = trace_boundary(b.spec, -50, 50, n, Grading::TanGraded).to_polyline();
  for (auto _ : state) {
    benchmark::DoNotOptimize(hausdorff_distance(pa, pb));
  }
}
BENCHMARK(BM_Hausdorff)->Arg(512)->Arg(2048);

void BM_ContactFieldBoundary(benchmark::State& state) {
  FamilySolution sol = solve_family1(1.0);
  const double apex = sol.derived.at("alpha") + sol.derived.at("r");
  const ContactConfig cfg =
      ContactConfig::from_spec(std::move(sol.spec), 1.0, sol.h - 1.0, apex + 0.05);
  const Complex z{0.0, 5.0};
  for (auto _ : state) {
    benchmark::DoNotOptimize(contact_field_boundary(cfg, z, kTol));
  }
}
BENCHMARK(BM_ContactFieldBoundary);

}  // namespace

BENCHMARK_MAIN();
