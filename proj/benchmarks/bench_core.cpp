#include <benchmark/benchmark.h>

#include "chemokin/characteristics_oracle.hpp"
#include "chemokin/chemo_field.hpp"
#include "chemokin/equilibrium.hpp"
#include "chemokin/hypocoercivity.hpp"
#include "chemokin/transport_solver.hpp"

using namespace chemokin;

namespace {

Grid grid_for(const benchmark::State& st, double alpha = 0.0) {
  return build_grid(make_params(0.5, alpha), 20.0, static_cast<int>(st.range(0)));
}

PairField bump(const Grid& g) {
  InitialSpec sp;
  sp.amplitude = 0.01;
  return make_initial(sp, g).W;
}

} // namespace

static void BM_FullTendency(benchmark::State& st) {
  const Grid g = grid_for(st);
  const PairField W = bump(g);
  const double xd = flux_balance_velocity(g, W, Mode::nonlinear);
  for (auto _ : st) benchmark::DoNotOptimize(full_tendency(g, W, xd, Mode::nonlinear));
  st.SetItemsProcessed(st.iterations() * g.n);
}
BENCHMARK(BM_FullTendency)->Arg(1000)->Arg(4000)->Arg(16000)->Arg(64000);

static void BM_Step(benchmark::State& st) {
  const Grid g = grid_for(st);
  SolverState s;
  s.W = bump(g);
  const StepConfig c;
  for (auto _ : st) benchmark::DoNotOptimize(step(g, s, c, 1e9));
  st.SetItemsProcessed(st.iterations() * g.n);
}
BENCHMARK(BM_Step)->Arg(1000)->Arg(4000)->Arg(16000)->Arg(64000);

static void BM_SolveChemo(benchmark::State& st) {
  const Grid g = grid_for(st, 1.0);
  const ScalarField rho = density(g, bump(g));
  for (auto _ : st) benchmark::DoNotOptimize(solve_chemo(g, rho, 1.0));
  st.SetItemsProcessed(st.iterations() * g.n);
}
BENCHMARK(BM_SolveChemo)->Arg(1000)->Arg(4000)->Arg(16000)->Arg(64000);

static void BM_AssembleOperators(benchmark::State& st) {
  const Grid g = grid_for(st);
  for (auto _ : st) benchmark::DoNotOptimize(assemble_operators(g));
}
BENCHMARK(BM_AssembleOperators)->Arg(1000)->Arg(4000)->Arg(16000)->Arg(64000)->Unit(benchmark::kMillisecond);

static void BM_ApplyA(benchmark::State& st) {
  const Grid g = grid_for(st);
  const DiscreteOperators ops = assemble_operators(g);
  const PairField Wy = spatial_derivative(g, bump(g));
  for (auto _ : st) benchmark::DoNotOptimize(ops.apply_A(Wy));
  st.SetItemsProcessed(st.iterations() * g.n);
}
BENCHMARK(BM_ApplyA)->Arg(1000)->Arg(4000)->Arg(16000)->Arg(64000);

static void BM_DuhamelSolve(benchmark::State& st) {
  const Grid g = grid_for(st);
  const PairField W0 = bump(g);
  const XdotPath path = XdotPath::constant(1e-3, 0.5, 1e-3);
  for (auto _ : st) benchmark::DoNotOptimize(duhamel_solve(g, W0, path, 0.5));
}
BENCHMARK(BM_DuhamelSolve)->Arg(1000)->Arg(2000)->Arg(4000)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
