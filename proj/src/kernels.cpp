#include "specsense/kernels.hpp"

#include <algorithm>
#include <stdexcept>

namespace specsense::kernels {

namespace {

inline double dot_tap(std::span<const double> h, std::span<const double> x,
                      long n) {
    const long t_lo = std::max(0L, n - static_cast<long>(x.size()) + 1);
    const long t_hi = std::min(static_cast<long>(h.size()) - 1, n);
    double acc = 0.0;
    for (long t = t_lo; t <= t_hi; ++t) acc += h[t] * x[n - t];
    return acc;
}

} // namespace

void convolve_ref(std::span<const double> h, std::span<const double> x,
                  std::span<double> y) {
    if (y.size() != x.size())
        throw std::invalid_argument("convolve: output size must match input");
    const long n_out = static_cast<long>(x.size());
    for (long n = 0; n < n_out; ++n) y[n] = dot_tap(h, x, n);
}

void convolve(std::span<const double> h, std::span<const double> x,
              std::span<double> y) {
    if (y.size() != x.size())
        throw std::invalid_argument("convolve: output size must match input");
    const long n_out = static_cast<long>(x.size());
#pragma omp parallel for schedule(static)
    for (long n = 0; n < n_out; ++n) y[n] = dot_tap(h, x, n);
}

std::vector<double> convolve(std::span<const double> h,
                             std::span<const double> x) {
    std::vector<double> y(x.size());
    convolve(h, x, y);
    return y;
}

double energy_ref(std::span<const double> x) {
    double acc = 0.0;
    for (double v : x) acc += v * v;
    return acc;
}

double energy(std::span<const double> x) { return energy_ref(x); }

} // namespace specsense::kernels
