#include <cmath>
#include <random>

#include <benchmark/benchmark.h>

#include "gaugeids/block.hpp"
#include "gaugeids/contour.hpp"

namespace {

using namespace gids;

LinearBlockFamily make_family(int size, double w, double rho) {
    std::mt19937_64 rng(static_cast<std::uint64_t>(size));
    std::normal_distribution<double> g;
    std::vector<Point> offsets;
    for (int i = 0; i < size; ++i) {
        Point p(3);
        p << 2.0 * i - size, 0.5, 0.0;
        offsets.push_back(p);
    }
    Point dir(3);
    dir << 0.0, 0.0, 1.0;
    Eigen::MatrixXcd a(size, size);
    for (int i = 0; i < size; ++i)
        for (int j = 0; j < size; ++j) a(i, j) = cplx(g(rng), g(rng));
    const Eigen::MatrixXcd h = 0.5 * (a + a.adjoint());
    const double slope = 2.0 * w * std::pow(rho, 2.0 * w - 1.0);
    return LinearBlockFamily(w, offsets, dir, 0.02 * slope * h, Eigen::MatrixXcd::Zero(size, size), rho);
}

void BM_TauSolve(benchmark::State& state) {
    const int size = static_cast<int>(state.range(0));
    const LinearBlockFamily f = make_family(size, 1.5, 200.0);
    for (auto _ : state) benchmark::DoNotOptimize(tau_solve(f, 200.0, 1.5, contour_radius(100.0, 1.5)));
}
BENCHMARK(BM_TauSolve)->Arg(1)->Arg(3)->Arg(6);

void BM_ContourPowerSum(benchmark::State& state) {
    const int size = static_cast<int>(state.range(0));
    const LinearBlockFamily f = make_family(size, 1.5, 200.0);
    for (auto _ : state) benchmark::DoNotOptimize(contour_power_sum(f, 200.0, 1.5, 100.0, 2));
}
BENCHMARK(BM_ContourPowerSum)->Arg(1)->Arg(3)->Arg(6);

void BM_BlockEigenvalues(benchmark::State& state) {
    const int size = static_cast<int>(state.range(0));
    const LinearBlockFamily f = make_family(size, 1.0, 150.0);
    const Eigen::MatrixXcd h = f.at(cplx(150.0, 0.0));
    for (auto _ : state) benchmark::DoNotOptimize(block_eigenvalues(h));
}
BENCHMARK(BM_BlockEigenvalues)->Arg(2)->Arg(6)->Arg(12);

}  // namespace
