// Serial vs OpenMP timings for the correction sweep and the convergence study.
#include "mpdec/harness.hpp"
#include "mpdec/mpdec.hpp"
#include "mpdec/problems.hpp"

#include <omp.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <memory>
#include <random>

namespace {

using Clock = std::chrono::steady_clock;

// Dense fully conservative chain with p_ij = a_ij c_j.
mpdec::ProductionDestructionSystem linear_network(std::size_t dim, unsigned seed) {
    auto a = std::make_shared<std::vector<double>>(dim * dim, 0.0);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < dim; ++j)
            if (i != j) (*a)[i * dim + j] = u(rng);
    mpdec::ProductionDestructionSystem s;
    s.name = "network";
    s.dimension = dim;
    s.conservation = mpdec::Conservation::FullyConservative;
    s.rates = [a, dim](std::span<const double> c, mpdec::RateMatrices& r) {
        for (std::size_t i = 0; i < dim; ++i) {
            for (std::size_t j = 0; j < dim; ++j) {
                if (i == j) continue;
                const double p = (*a)[i * dim + j] * c[j];
                r.production(i, j) = p;
                r.destruction(j, i) = p;
            }
        }
    };
    return s;
}

template <class F>
double seconds(F&& f, int repeats) {
    const auto start = Clock::now();
    for (int r = 0; r < repeats; ++r) f();
    return std::chrono::duration<double>(Clock::now() - start).count() / repeats;
}

} // namespace

int main(int argc, char** argv) {
    const std::size_t dim = argc > 1 ? std::strtoul(argv[1], nullptr, 10) : 200;
    const std::size_t M = argc > 2 ? std::strtoul(argv[2], nullptr, 10) : 8;
    const int repeats = argc > 3 ? std::atoi(argv[3]) : 3;

    std::printf("threads: %d\n", omp_get_max_threads());

    const auto sys = linear_network(dim, 1);
    std::vector<double> c0(dim, 1.0);
    const auto& tables = mpdec::tables_for(M);
    const auto grid = mpdec::initial_grid(sys, c0, M);
    const double dt = 0.1;

    mpdec::CorrectionGrid serial_out, parallel_out;
    const double t_serial =
        seconds([&] { serial_out = mpdec::correction_sweep(sys, grid, tables, dt); }, repeats);
    const double t_parallel =
        seconds([&] { parallel_out = mpdec::correction_sweep_parallel(sys, grid, tables, dt); }, repeats);
    std::printf("sweep I=%zu M=%zu: serial %.4f s, parallel %.4f s, speedup %.2f, identical %s\n", dim, M,
                t_serial, t_parallel, t_serial / t_parallel,
                serial_out.states == parallel_out.states ? "yes" : "NO");

    auto cfg = mpdec::MPDeCConfig::for_order(M + 1);
    std::vector<double> serial_step, parallel_step;
    const double s_serial = seconds([&] { serial_step = mpdec::mpdec_step(sys, c0, dt, cfg); }, repeats);
    cfg.policy = mpdec::SweepPolicy::Parallel;
    const double s_parallel = seconds([&] { parallel_step = mpdec::mpdec_step(sys, c0, dt, cfg); }, repeats);
    std::printf("step order %zu: serial %.4f s, parallel %.4f s, speedup %.2f, identical %s\n", M + 1,
                s_serial, s_parallel, s_serial / s_parallel, serial_step == parallel_step ? "yes" : "NO");

    const auto problem = mpdec::linear_problem();
    const auto steps = mpdec::halving_refinements(0.25, 10);
    const auto scheme = mpdec::SchemeSpec::mpdec_order(6);
    const int threads = omp_get_max_threads();
    omp_set_num_threads(1);
    const double study_serial = seconds([&] { (void)mpdec::convergence_study(problem, scheme, steps); }, 1);
    omp_set_num_threads(threads);
    const double study_parallel = seconds([&] { (void)mpdec::convergence_study(problem, scheme, steps); }, 1);
    std::printf("convergence study, 10 levels: 1 thread %.4f s, %d threads %.4f s\n", study_serial, threads,
                study_parallel);
    return 0;
}
