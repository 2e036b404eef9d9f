#include "specsense/fir.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace specsense {

void FilterSpec::validate() const {
    if (!(f_pass > 0.0) || !(f_stop > f_pass) || !(f_stop < 1.0))
        throw std::invalid_argument("FilterSpec: need 0 < f_pass < f_stop < 1");
    if (!(atten_db >= 30.0))
        throw std::invalid_argument("FilterSpec: atten_db must be >= 30 dB");
}

std::string to_string(FilterKind k) {
    switch (k) {
        case FilterKind::lowpass: return "lowpass";
        case FilterKind::complementary: return "complementary";
        case FilterKind::multiband_modal: return "multiband-modal";
        case FilterKind::multiband_complementary: return "multiband-complementary";
        case FilterKind::masking: return "masking";
    }
    return "?";
}

bool FirFilter::is_symmetric(double tol) const {
    const int n = length();
    for (int i = 0; i < n / 2; ++i)
        if (std::abs(coeffs[i] - coeffs[n - 1 - i]) > tol) return false;
    return true;
}

std::vector<std::complex<double>> freq_response(const FirFilter& h,
                                                std::span<const double> grid) {
    const auto n_freq = static_cast<long>(grid.size());
    const int n_tap = h.length();
    std::vector<std::complex<double>> out(grid.size());
#pragma omp parallel for schedule(static)
    for (long i = 0; i < n_freq; ++i) {
        const double w = std::numbers::pi * grid[i];
        // recurrence for e^{-jwn} keeps this O(N) per point without
        // per-tap trig calls
        const std::complex<double> step(std::cos(w), -std::sin(w));
        std::complex<double> z(1.0, 0.0);
        std::complex<double> acc(0.0, 0.0);
        for (int n = 0; n < n_tap; ++n) {
            acc += h.coeffs[n] * z;
            z *= step;
        }
        out[i] = acc;
    }
    return out;
}

std::vector<double> uniform_grid(int n) {
    std::vector<double> g(n);
    for (int i = 0; i < n; ++i) g[i] = static_cast<double>(i) / (n - 1);
    return g;
}

FirFilter complementary(const FirFilter& h) {
    const int n = h.length();
    if (n % 2 == 0)
        throw std::invalid_argument("complementary: filter length must be odd");
    FirFilter c;
    c.kind = (h.kind == FilterKind::multiband_modal)
                 ? FilterKind::multiband_complementary
                 : FilterKind::complementary;
    c.decimation = h.decimation;
    c.interpolation = h.interpolation;
    c.coeffs.resize(n);
    for (int i = 0; i < n; ++i) c.coeffs[i] = -h.coeffs[i];
    c.coeffs[(n - 1) / 2] += 1.0;
    return c;
}

FirFilter coeff_decimate_ii(const FirFilter& h, int decimation, double f_stop) {
    if (decimation < 1)
        throw std::invalid_argument("coeff_decimate_ii: D must be >= 1");
    if (f_stop > 0.0 && decimation * f_stop > 1.0 + 1e-12)
        throw std::invalid_argument(
            "coeff_decimate_ii: D*f_stop > 1 would fold the stretched response");
    FirFilter out;
    out.kind = h.kind;
    out.decimation = decimation;
    out.interpolation = h.interpolation;
    out.band = h.band;
    for (int i = 0; i < h.length(); i += decimation)
        out.coeffs.push_back(h.coeffs[i]);
    return out;
}

FirFilter interpolate(const FirFilter& h, int factor) {
    if (factor < 1)
        throw std::invalid_argument("interpolate: M must be >= 1");
    FirFilter out;
    out.kind = h.kind == FilterKind::lowpass ? FilterKind::multiband_modal
               : h.kind == FilterKind::complementary
                   ? FilterKind::multiband_complementary
                   : h.kind;
    out.decimation = h.decimation;
    out.interpolation = factor;
    out.band = h.band;
    out.coeffs.assign(static_cast<size_t>(h.length() - 1) * factor + 1, 0.0);
    for (int i = 0; i < h.length(); ++i) out.coeffs[static_cast<size_t>(i) * factor] = h.coeffs[i];
    return out;
}

double magnitude_db(std::complex<double> v) {
    return 20.0 * std::log10(std::abs(v) + 1e-300);
}

} // namespace specsense
