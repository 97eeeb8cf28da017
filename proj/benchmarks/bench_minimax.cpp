#include <cmath>

#include <benchmark/benchmark.h>

#include "leglab/leglab.hpp"

using namespace leglab;

namespace {

ScalarField cosine(const BaseDomain& d) {
  return ScalarField::from_function(d, [](const Eigen::VectorXd& q) { return q[0] + 0.3 * q[1]; });
}

void BM_GraphInvariants(benchmark::State& state) {
  const auto d = BaseDomain::circle(static_cast<std::size_t>(state.range(0)));
  const auto gf = GeneratingFunction::graph(cosine(d));
  for (auto _ : state) benchmark::DoNotOptimize(c_invariants(gf));
}
BENCHMARK(BM_GraphInvariants)->Arg(1024)->Arg(16384);

void BM_StabilizedInvariants(benchmark::State& state) {
  const auto d = BaseDomain::circle(1024);
  const auto gf = GeneratingFunction::graph(cosine(d), QuadraticForm::standard(0, 1),
                                            static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(c_invariants(gf));
}
BENCHMARK(BM_StabilizedInvariants)->Arg(33)->Arg(257);

void BM_PerturbedInvariants(benchmark::State& state) {
  const auto d = BaseDomain::circle(256);
  GeneratingFunction::Definition def{.base = d, .qform = QuadraticForm::standard(1, 1)};
  def.sigma = [](const Eigen::VectorXd& q, std::span<const double> xi) {
    return 0.3 * smooth_bump(std::hypot(xi[0], xi[1])) * q[0];
  };
  def.grid = AuxGrid{1.5, static_cast<std::size_t>(state.range(0))};
  const GeneratingFunction gf(def);
  for (auto _ : state) benchmark::DoNotOptimize(c_invariants(gf));
}
BENCHMARK(BM_PerturbedInvariants)->Arg(17)->Arg(33);

void BM_LegendrianCloud(benchmark::State& state) {
  const auto d = BaseDomain::circle(1024);
  const auto gf = GeneratingFunction::graph(cosine(d), QuadraticForm::standard(1, 0));
  for (auto _ : state) benchmark::DoNotOptimize(legendrian_of_genfun(gf));
}
BENCHMARK(BM_LegendrianCloud);

void BM_Sky(benchmark::State& state) {
  const auto d = BaseDomain::sphere(3, 4096);
  Eigen::VectorXd y(3);
  y << 0.4, -1.1, 0.7;
  const MinkowskiEvent x{1.5, y};
  for (auto _ : state) benchmark::DoNotOptimize(sky(x, d));
}
BENCHMARK(BM_Sky);

void BM_NullDirectionMinimum(benchmark::State& state) {
  const auto d = BaseDomain::sphere(3, 4096);
  Eigen::VectorXd dy(3);
  dy << 0.2, 0.5, -0.9;
  const VelocityVector v{1.2, dy};
  for (auto _ : state) benchmark::DoNotOptimize(null_direction_minimum(v, d));
}
BENCHMARK(BM_NullDirectionMinimum);

void BM_ContactFormCheck(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(contact_form_check(1000, 3, 1));
}
BENCHMARK(BM_ContactFormCheck);

}  // namespace
BENCHMARK_MAIN();
