// Compares the serial reference kernels against the OpenMP versions on the
// shapes the sensing cycle actually runs: per-band cascade convolution and a
// full energy-matrix row.

#include <chrono>
#include <cstdio>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "specsense/energy.hpp"
#include "specsense/filterbank.hpp"
#include "specsense/kernels.hpp"
#include "specsense/signal_gen.hpp"

using namespace specsense;

namespace {

double time_ms(const auto& fn, int reps) {
    double best = 1e300;
    for (int r = 0; r < reps; ++r) {
        const auto t0 = std::chrono::steady_clock::now();
        fn();
        const auto t1 = std::chrono::steady_clock::now();
        best = std::min(best, std::chrono::duration<double, std::milli>(t1 - t0).count());
    }
    return best;
}

} // namespace

int main() {
#ifdef _OPENMP
    std::printf("OpenMP enabled, max threads = %d\n", omp_get_max_threads());
#else
    std::printf("built without OpenMP; parallel kernels run serially\n");
#endif

    const BankConfig cfg;
    const auto banks = build_all_banks(cfg);
    const auto& bank = banks[cfg.d_set.size() / 2];

    Scenario sc = make_preset("input1", 10.0, cfg.noise_var, 1,
                              cfg.n_samples + bank.group_delay_samples);
    const auto x = generate(sc);
    std::vector<double> y(x.size());

    const auto& h = bank.cascades[4].coeffs;
    std::printf("convolution: %zu taps x %zu samples\n", h.size(), x.size());

    const double t_ser = time_ms([&] { kernels::convolve_ref(h, x, y); }, 5);
    const double t_par = time_ms([&] { kernels::convolve(h, x, y); }, 5);
    std::printf("  serial reference : %8.2f ms\n", t_ser);
    std::printf("  OpenMP           : %8.2f ms   speedup %.2fx\n", t_par, t_ser / t_par);

    std::printf("energy-matrix row: %d bands, D=%d\n", bank.bands(), bank.decimation);
    const double t_row_ser = time_ms(
        [&] {
            for (int k = 0; k < bank.bands(); ++k) {
                kernels::convolve_ref(bank.cascades[k].coeffs, x, y);
                kernels::energy_ref(std::span<const double>(y).subspan(
                    bank.group_delay_samples, cfg.n_samples));
            }
        },
        3);
    const double t_row_par = time_ms([&] { measure_row(bank, x, cfg); }, 3);
    std::printf("  serial reference : %8.2f ms\n", t_row_ser);
    std::printf("  OpenMP           : %8.2f ms   speedup %.2fx\n", t_row_par,
                t_row_ser / t_row_par);
    return 0;
}
