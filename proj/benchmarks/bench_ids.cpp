#include <cmath>
#include <random>

#include <benchmark/benchmark.h>

#include "gaugeids/geometry.hpp"
#include "gaugeids/ids.hpp"
#include "gaugeids/oracle.hpp"

namespace {

using namespace gids;

FrequencySet axes(int d) {
    FrequencySet f(d);
    const std::vector<Rational> zero(static_cast<std::size_t>(d), Rational(0));
    f.insert(Frequency::from_rationals(zero));
    for (int i = 0; i < d; ++i)
        for (int s : {1, -1}) {
            std::vector<Rational> q(zero);
            q[static_cast<std::size_t>(i)] = s;
            f.insert(Frequency::from_rationals(q));
        }
    return f;
}

// 2 cos(x_1) in dimension d.
Symbol cosine(int d, double w) {
    OperatorSpec spec;
    spec.d = d;
    spec.w = w;
    spec.frequencies = axes(d);
    RadialTermSpec t;
    for (double s : {1.0, -1.0}) {
        Point p = Point::Zero(d);
        p[0] = s;
        t.coeffs.push_back({p, {}, cplx(1.0, 0.0)});
    }
    spec.terms.push_back(t);
    return build_symbol(spec);
}

void BM_OracleMathieu(benchmark::State& state) {
    const Symbol b = cosine(1, 1.0);
    const FrequencySet f = axes(1);
    FloquetOptions opts;
    opts.grid = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(ids_oracle_floquet(b, f, 1.0, {100.0, 200.0, 400.0}, opts));
}
BENCHMARK(BM_OracleMathieu)->Arg(256)->Arg(1024)->Unit(benchmark::kMillisecond);

void BM_Classify(benchmark::State& state) {
    ScaleParams sp = default_scale_params(2);
    sp.rho_n = 1000.0;
    sp.alphas = {0.6, 0.8};
    sp.k = 2;
    const ResonanceGeometry geo(axes(2), sp);
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-6000.0, 6000.0);
    std::vector<Point> pts;
    for (int i = 0; i < 1024; ++i) {
        Point p(2);
        p << u(rng), u(rng);
        pts.push_back(p);
    }
    std::size_t i = 0;
    for (auto _ : state) benchmark::DoNotOptimize(geo.classify(pts[i++ % pts.size()]));
}
BENCHMARK(BM_Classify);

void BM_GaugeIdsLift(benchmark::State& state) {
    ScaleParams sp = default_scale_params(2);
    sp.rho_n = 8.0;
    sp.k_tilde = 2;
    const GaugeModel model(cosine(2, 1.0), sp);
    VolumeOptions opts;
    opts.nodes = static_cast<std::uint64_t>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(model.ids(256.0, opts));
}
BENCHMARK(BM_GaugeIdsLift)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond);

}  // namespace
