#include "gshift/entropy.hpp"
#include "gshift/hom.hpp"
#include "gshift/quasitiling.hpp"
#include "gshift/region.hpp"
#include "gshift/runtime.hpp"
#include "gshift/sft.hpp"

#include <benchmark/benchmark.h>

using namespace gshift;

namespace {

const GroupModel Z2 = GroupModel::zd(2);

void BM_BallZ2(benchmark::State& state)
{
    const int n = static_cast<int>(state.range(0));
    for (auto _ : state) {
        WordMetric m(Z2, GenSet::standard(Z2));
        benchmark::DoNotOptimize(m.ball(n).size());
    }
}
BENCHMARK(BM_BallZ2)->Arg(16)->Arg(64)->Arg(256);

void BM_BallHeisenberg(benchmark::State& state)
{
    const auto h = GroupModel::heisenberg3();
    const int n = static_cast<int>(state.range(0));
    for (auto _ : state) {
        WordMetric m(h, GenSet::standard(h));
        benchmark::DoNotOptimize(m.ball(n).size());
    }
}
BENCHMARK(BM_BallHeisenberg)->Arg(8)->Arg(16);

void BM_FepFillCheckerboard(benchmark::State& state)
{
    const auto cb = builtin_spec(Z2, "checkerboard:5");
    const auto small = box_shape(Z2, {0, 0}, {5, 5});
    std::vector<Symbol> sym;
    for (const auto& e : small)
        sym.push_back(static_cast<Symbol>((e[0] + 2 * e[1]) % 5));
    const Pattern w(small, sym);
    const auto big = box_shape(Z2, {-2, -2}, {9, 9});
    for (auto _ : state)
        benchmark::DoNotOptimize(fep_fill(cb, w, big).size());
}
BENCHMARK(BM_FepFillCheckerboard);

void BM_CheckFep(benchmark::State& state)
{
    WordMetric m(Z2, GenSet::standard(Z2));
    const auto hs = builtin_spec(Z2, "hardsquare-safe");
    for (auto _ : state)
        benchmark::DoNotOptimize(check_fep_bruteforce(hs, m, 2).checked);
}
BENCHMARK(BM_CheckFep)->Unit(benchmark::kMillisecond);

void BM_QuasiTile(benchmark::State& state)
{
    const auto side = state.range(0);
    WordMetric m(Z2, GenSet::standard(Z2));
    const auto x = PointWindow::rotation2d(Z2, box_shape(Z2, {0, 0}, {side, side}), 0.41421356, 0.73205081);
    const auto cover = build_cover(x, m, m.ball(6), default_separation_radius(m, m.ball(6)));
    for (auto _ : state)
        benchmark::DoNotOptimize(quasi_tile(x, cover, m.ball(6)).safe_count());
}
BENCHMARK(BM_QuasiTile)->Arg(100)->Arg(200)->Unit(benchmark::kMillisecond);

void BM_ConstructHomTorus(benchmark::State& state)
{
    const auto g = GroupModel::torus({96, 96});
    WordMetric m(g, GenSet::standard(g));
    const auto x = PointWindow::random(g, box_shape(g, {0, 0}, {96, 96}), 2, 7);
    const auto cover = build_cover(x, m, m.ball(24), default_separation_radius(m, m.ball(24)));
    const auto y = builtin_spec(g, "hardsquare-safe");
    for (auto _ : state)
        benchmark::DoNotOptimize(construct_hom(x, cover, y, m, HomParams::demo(24)).output.size());
}
BENCHMARK(BM_ConstructHomTorus)->Unit(benchmark::kMillisecond)->Iterations(1);

void BM_TransferMatrixHardSquare(benchmark::State& state)
{
    WordMetric m(Z2, GenSet::standard(Z2));
    const auto hs = builtin_spec(Z2, "hardsquare-safe");
    const int w = static_cast<int>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(entropy_estimate(hs, m, w, EntropyMethod::TransferMatrix).value);
}
BENCHMARK(BM_TransferMatrixHardSquare)->Arg(8)->Arg(12)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
