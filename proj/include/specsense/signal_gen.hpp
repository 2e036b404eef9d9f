// Synthetic wideband inputs: flat-PSD channels with specified edges plus
// AWGN, reproducible from a seed, and the periodogram oracle used by tests.

#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

namespace specsense {

struct SliceGrid; // edge_detect.hpp

struct Channel {
    double f_rising = 0.0;
    double f_falling = 0.0;
    double snr_db = 10.0; // in-band PSD over the noise PSD
};

struct Scenario {
    std::vector<Channel> channels; // sorted, non-overlapping
    double noise_var = 1.0;
    std::uint64_t seed = 0;
    long n_total = 0;

    void validate() const;
};

// Gaussian deviates from a fixed, portable recipe: mt19937_64 uniforms
// through Box-Muller. std::normal_distribution is implementation-defined,
// so it is not used anywhere determinism matters.
class GaussianRng {
public:
    explicit GaussianRng(std::uint64_t seed) : eng_(seed) {}
    double operator()();

private:
    std::mt19937_64 eng_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

// Deterministic sub-stream seeds (splitmix64 of seed ^ index).
std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t index);

// Each channel is white Gaussian noise through a sharp windowed-sinc
// bandpass on [f_rising, f_falling], scaled so the in-band PSD is
// snr * max(noise_var, 1); independent AWGN(0, noise_var) is added on top.
std::vector<double> generate(const Scenario& s);

// Built-in presets: "input1" (3 channels) and "input2" (4 channels).
Scenario make_preset(const std::string& name, double snr_db, double noise_var,
                     std::uint64_t seed, long n_total);
bool is_preset_name(const std::string& name);

// -- periodogram oracle ------------------------------------------------

// Power-of-two FFT periodogram: bin k holds the energy at Nyquist frequency
// 2k/nfft, one-sided, scaled so the bins sum to the time-domain energy.
std::vector<double> periodogram(std::span<const double> x, bool hann_window = false);

// Periodogram energy integrated over each slice of the grid. Test oracle for
// the slice energies computed from the P matrix; independent of the bank.
std::vector<double> oracle_spectrum(std::span<const double> x, const SliceGrid& grid);

// -- external formats ---------------------------------------------------

// key=value text with one [channel] section per channel
std::string scenario_to_text(const Scenario& s);
Scenario scenario_from_text(const std::string& text);
Scenario load_scenario(const std::string& path);
void save_scenario(const Scenario& s, const std::string& path);

// raw samples: 8-byte magic "WBSIG\0\0\1" then little-endian float64
extern const char kSampleMagic[8];
void save_samples(std::span<const double> x, const std::string& path);
std::vector<double> load_samples(const std::string& path);

} // namespace specsense
