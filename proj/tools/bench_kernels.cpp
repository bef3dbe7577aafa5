// Compares the serial reference kernels against their OpenMP variants on
// sizes large enough for the fork/join overhead to amortize.

#include <chrono>
#include <cstdio>
#include <random>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "frontfix/explicit_scheme.hpp"
#include "frontfix/implicit.hpp"
#include "frontfix/model.hpp"
#include "frontfix/spline.hpp"
#include "frontfix/stability.hpp"

namespace ff = frontfix;

namespace {

template <typename F>
double time_best_of(int reps, F&& f) {
    double best = 1e300;
    for (int r = 0; r < reps; ++r) {
        auto t0 = std::chrono::steady_clock::now();
        f();
        double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (dt < best) best = dt;
    }
    return best;
}

void report(const char* name, double serial, double parallel) {
    std::printf("%-28s %10.4f ms %10.4f ms %8.2fx\n", name, serial * 1e3, parallel * 1e3,
                serial / parallel);
}

} // namespace

int main() {
    const ff::ModelParams params{0.1, 0.2, 1.0, 1.0};

#ifdef _OPENMP
    std::printf("OpenMP threads: %d\n", omp_get_max_threads());
#else
    std::printf("OpenMP not enabled in this build\n");
#endif
    std::printf("%-28s %13s %13s %9s\n", "kernel", "serial", "openmp", "speedup");

    {
        const int n_samples = 4'000'000;
        ff::StabilityReport r1, r2;
        double ts = time_best_of(3, [&] {
            r1 = ff::stability_scan(ff::Scheme::Implicit, params, 20.0, 0.0125, {0.0}, n_samples,
                                    ff::Exec::Serial);
        });
        double tp = time_best_of(3, [&] {
            r2 = ff::stability_scan(ff::Scheme::Implicit, params, 20.0, 0.0125, {0.0}, n_samples,
                                    ff::Exec::Parallel);
        });
        report("stability_scan (4M phases)", ts, tp);
    }

    {
        // Large synthetic front-fixed state for the batch price readout.
        const int J = 4000;
        ff::GridSpec grid = ff::build_grid(1.0, J, 20.0, params.T);
        ff::FrontFixedState st = ff::initial_state(grid);
        st.S_f = 0.86;
        for (int j = 0; j <= J; ++j)
            st.p[static_cast<std::size_t>(j)] = (1.0 - st.S_f) * std::exp(-3.0 * grid.x(j));
        std::mt19937_64 rng(7);
        std::uniform_real_distribution<double> u(st.S_f * params.E, st.S_f * params.E * 2.5);
        std::vector<double> assets(2'000'000);
        for (auto& a : assets) a = u(rng);
        std::vector<double> out1, out2;
        double ts = time_best_of(3,
                                 [&] { out1 = ff::spline_prices(st, grid, params, assets, ff::Exec::Serial); });
        double tp = time_best_of(3,
                                 [&] { out2 = ff::spline_prices(st, grid, params, assets, ff::Exec::Parallel); });
        report("spline_prices (2M assets)", ts, tp);
    }

    {
        const int J = 2'000'000;
        ff::GridSpec grid = ff::build_grid(1.0, J, 20.0, params.T);
        ff::FrontFixedState st = ff::initial_state(grid);
        st.S_f = 0.95;
        for (int j = 0; j <= J; ++j)
            st.p[static_cast<std::size_t>(j)] = (1.0 - st.S_f) * std::exp(-8.0 * grid.x(j));
        std::vector<double> cand(static_cast<std::size_t>(J) - 1, 0.01);
        std::vector<double> f1, f2;
        double ts = time_best_of(3, [&] {
            f1 = ff::assemble_residual(st, cand, 0.94, grid, params, ff::Exec::Serial);
        });
        double tp = time_best_of(3, [&] {
            f2 = ff::assemble_residual(st, cand, 0.94, grid, params, ff::Exec::Parallel);
        });
        report("assemble_residual (J=2M)", ts, tp);
    }

    {
        const int J = 2'000'000;
        // mu tuned down so the huge-J explicit step stays stable.
        ff::GridSpec grid = ff::build_grid(1.0, J, 5.0, params.T);
        ff::FrontFixedState st = ff::initial_state(grid);
        st.S_f = 0.95;
        for (int j = 0; j <= J; ++j)
            st.p[static_cast<std::size_t>(j)] = (1.0 - st.S_f) * std::exp(-8.0 * grid.x(j));
        ff::FrontFixedState s1, s2;
        double ts = time_best_of(3, [&] { s1 = ff::explicit_step(st, grid, params, ff::Exec::Serial); });
        double tp = time_best_of(3, [&] { s2 = ff::explicit_step(st, grid, params, ff::Exec::Parallel); });
        report("explicit_step (J=2M)", ts, tp);
    }

    return 0;
}
