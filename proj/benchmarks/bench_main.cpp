#include <gpbnb/bnb.hpp>
#include <gpbnb/gp.hpp>
#include <gpbnb/kernel.hpp>
#include <gpbnb/objective.hpp>
#include <gpbnb/rng.hpp>

#include <benchmark/benchmark.h>

namespace {

using namespace gpbnb;

KernelSpec se_kernel(int d, double lengthscale) {
    return KernelSpec::squared_exponential(
        Eigen::VectorXd::Constant(d, lengthscale));
}

PointList random_points(int n, int d, std::uint64_t seed) {
    CounterRng rng(seed);
    PointList pts;
    for (int i = 0; i < n; ++i) {
        Point p(d);
        for (int j = 0; j < d; ++j) p[j] = rng.next_uniform();
        pts.push_back(p);
    }
    return pts;
}

void BM_GramMatrix(benchmark::State& state) {
    const auto kernel = se_kernel(2, 0.5);
    const auto pts = random_points(static_cast<int>(state.range(0)), 2, 7);
    for (auto _ : state)
        benchmark::DoNotOptimize(gram_matrix(kernel, pts));
}
BENCHMARK(BM_GramMatrix)->Arg(64)->Arg(256);

void BM_PosteriorFit(benchmark::State& state) {
    const auto kernel = se_kernel(2, 0.5);
    const int n = static_cast<int>(state.range(0));
    const auto pts = random_points(n, 2, 11);
    CounterRng rng(13);
    Eigen::VectorXd vals(n);
    for (int i = 0; i < n; ++i) vals[i] = rng.next_normal();
    for (auto _ : state)
        benchmark::DoNotOptimize(GpPosterior::fit(kernel, pts, vals));
}
BENCHMARK(BM_PosteriorFit)->Arg(64)->Arg(256);

void BM_BnbRun(benchmark::State& state) {
    BnbConfig config;
    config.lattice = {{Eigen::VectorXd::Zero(1), Eigen::VectorXd::Ones(1)},
                      static_cast<int>(state.range(0))};
    config.kernel = se_kernel(1, 0.2);
    config.budget = 300;
    PeakParams peak;
    peak.x_max = Eigen::VectorXd::Constant(1, 0.375);
    peak.f_max = 1.0;
    peak.c1 = 2.0;
    peak.c2 = 1.0;
    peak.rho0 = 0.25;
    const auto objective = synthetic_peak(
        config.lattice.domain, peak,
        lattice_points(config.lattice, config.lattice.max_depth));
    for (auto _ : state)
        benchmark::DoNotOptimize(run_bnb(config, objective));
}
BENCHMARK(BM_BnbRun)->Arg(7)->Arg(9);

} // namespace

BENCHMARK_MAIN();
