// Core FIR filter type and coefficient-domain transforms.
//
// All frequencies in this project are Nyquist-normalized: f in [0,1] with
// 1 corresponding to f_samp/2, so the DTFT is evaluated at omega = pi*f.

#pragma once

#include <complex>
#include <span>
#include <string>
#include <vector>

namespace specsense {

struct FilterSpec {
    double f_pass = 0.0;   // passband edge, Nyquist-normalized
    double f_stop = 0.0;   // stopband edge, Nyquist-normalized
    double atten_db = 0.0; // stopband attenuation, positive dB

    void validate() const; // throws std::invalid_argument on a bad spec
};

enum class FilterKind {
    lowpass,
    complementary,
    multiband_modal,
    multiband_complementary,
    masking,
};

std::string to_string(FilterKind k);

struct FirFilter {
    std::vector<double> coeffs;
    FilterKind kind = FilterKind::lowpass;
    // provenance of derived filters; 1/1/-1 when not applicable
    int decimation = 1;
    int interpolation = 1;
    int band = -1;

    int length() const { return static_cast<int>(coeffs.size()); }
    bool is_symmetric(double tol = 0.0) const;
};

// Exact DTFT sum of the coefficients at each grid frequency.
std::vector<std::complex<double>> freq_response(const FirFilter& h,
                                                std::span<const double> grid);

// n uniformly spaced frequencies covering [0,1] inclusive.
std::vector<double> uniform_grid(int n);

// Delay-center complement: c[n] = -h[n] except 1-h[n] at the center tap,
// so H_a(w) + H_c(w) is a pure delay. Requires odd length.
FirFilter complementary(const FirFilter& h);

// CD-II: keep every D-th coefficient, stretching the response by D.
// Rejects D*f_stop > 1 when the filter carries a spec (fold-over).
FirFilter coeff_decimate_ii(const FirFilter& h, int decimation,
                            double f_stop = 0.0);

// Insert M-1 zeros between coefficients: OUT(f) = H(M*f), images at 2k/M.
FirFilter interpolate(const FirFilter& h, int factor);

double magnitude_db(std::complex<double> v);

} // namespace specsense
