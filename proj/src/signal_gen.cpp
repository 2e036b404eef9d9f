#include "specsense/signal_gen.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstring>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "specsense/edge_detect.hpp"
#include "specsense/kernels.hpp"

namespace specsense {

namespace {
constexpr double kPi = std::numbers::pi;
}

void Scenario::validate() const {
    if (n_total < 1) throw std::invalid_argument("Scenario: n_total must be positive");
    if (!(noise_var >= 0.0)) throw std::invalid_argument("Scenario: noise_var must be >= 0");
    double prev_hi = -1.0;
    for (const auto& c : channels) {
        if (!(c.f_rising >= 0.0) || !(c.f_falling > c.f_rising) || !(c.f_falling <= 1.0))
            throw std::invalid_argument("Scenario: need 0 <= f_rising < f_falling <= 1");
        if (c.f_rising < prev_hi)
            throw std::invalid_argument("Scenario: channels overlap or are unsorted");
        prev_hi = c.f_falling;
    }
}

double GaussianRng::operator()() {
    if (have_spare_) {
        have_spare_ = false;
        return spare_;
    }
    // 53-bit uniforms; u1 in (0,1] so the log is finite
    const double u1 = 1.0 - static_cast<double>(eng_() >> 11) * 0x1.0p-53;
    const double u2 = static_cast<double>(eng_() >> 11) * 0x1.0p-53;
    const double r = std::sqrt(-2.0 * std::log(u1));
    spare_ = r * std::sin(2.0 * kPi * u2);
    have_spare_ = true;
    return r * std::cos(2.0 * kPi * u2);
}

std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t index) {
    // splitmix64 step
    std::uint64_t z = seed + (index + 1) * 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

namespace {

double bessel_i0(double x) {
    double sum = 1.0, term = 1.0;
    const double y = x * x / 4.0;
    for (int k = 1; k < 200; ++k) {
        term *= y / (static_cast<double>(k) * k);
        sum += term;
        if (term < sum * 1e-17) break;
    }
    return sum;
}

// Kaiser lowpass with the cutoff exactly at `cutoff`; the channel bandpass
// is lp(f_falling) - lp(f_rising), which also covers the half-band cases
// (lp(0) vanishes, lp(1) is the identity).
std::vector<double> channel_lowpass(int n, double cutoff, double beta) {
    std::vector<double> h(n);
    const int n0 = (n - 1) / 2;
    const double wc = kPi * cutoff;
    const double denom = bessel_i0(beta);
    for (int i = 0; i < n; ++i) {
        const int m = i - n0;
        const double ideal = (m == 0) ? cutoff : std::sin(wc * m) / (kPi * m);
        const double r = static_cast<double>(m) / n0;
        h[i] = ideal * bessel_i0(beta * std::sqrt(std::max(0.0, 1.0 - r * r))) / denom;
    }
    return h;
}

std::vector<double> channel_bandpass(double f_lo, double f_hi) {
    // 60 dB skirt over a <= 0.005 transition
    const double atten = 60.0;
    const double beta = 0.1102 * (atten - 8.7);
    int n = static_cast<int>(std::ceil((atten - 8.0) / (2.285 * kPi * 0.005))) + 1;
    if (n % 2 == 0) ++n;
    const auto hi = channel_lowpass(n, f_hi, beta);
    const auto lo = channel_lowpass(n, f_lo, beta);
    std::vector<double> bp(n);
    for (int i = 0; i < n; ++i) bp[i] = hi[i] - lo[i];
    return bp;
}

} // namespace

std::vector<double> generate(const Scenario& s) {
    s.validate();
    std::vector<double> out(s.n_total, 0.0);

    const double psd_ref = s.noise_var > 0.0 ? s.noise_var : 1.0;
    for (size_t ci = 0; ci < s.channels.size(); ++ci) {
        const auto& ch = s.channels[ci];
        const auto bp = channel_bandpass(ch.f_rising, ch.f_falling);
        const long warmup = static_cast<long>(bp.size());
        GaussianRng rng(substream_seed(s.seed, ci));
        std::vector<double> white(s.n_total + warmup);
        for (double& v : white) v = rng();
        std::vector<double> shaped(white.size());
        kernels::convolve(bp, white, shaped);
        const double gain = std::sqrt(std::pow(10.0, ch.snr_db / 10.0) * psd_ref);
        for (long i = 0; i < s.n_total; ++i) out[i] += gain * shaped[warmup + i];
    }

    if (s.noise_var > 0.0) {
        GaussianRng rng(substream_seed(s.seed, s.channels.size()));
        const double sigma = std::sqrt(s.noise_var);
        for (double& v : out) v += sigma * rng();
    }
    return out;
}

Scenario make_preset(const std::string& name, double snr_db, double noise_var,
                     std::uint64_t seed, long n_total) {
    Scenario s;
    s.noise_var = noise_var;
    s.seed = seed;
    s.n_total = n_total;
    if (name == "input1") {
        s.channels = {{0.0, 0.13, snr_db}, {0.3, 0.65, snr_db}, {0.78, 0.89, snr_db}};
    } else if (name == "input2") {
        s.channels = {{0.06, 0.16, snr_db},
                      {0.34, 0.49, snr_db},
                      {0.65, 0.77, snr_db},
                      {0.89, 1.0, snr_db}};
    } else {
        throw std::invalid_argument("unknown preset: " + name);
    }
    return s;
}

bool is_preset_name(const std::string& name) {
    return name == "input1" || name == "input2";
}

// -- periodogram ---------------------------------------------------------

namespace {

void fft_inplace(std::vector<std::complex<double>>& a) {
    const size_t n = a.size();
    for (size_t i = 1, j = 0; i < n; ++i) {
        size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (size_t len = 2; len <= n; len <<= 1) {
        const double ang = -2.0 * kPi / static_cast<double>(len);
        const std::complex<double> wl(std::cos(ang), std::sin(ang));
        for (size_t i = 0; i < n; i += len) {
            std::complex<double> w(1.0, 0.0);
            for (size_t j = 0; j < len / 2; ++j) {
                const auto u = a[i + j];
                const auto v = a[i + j + len / 2] * w;
                a[i + j] = u + v;
                a[i + j + len / 2] = u - v;
                w *= wl;
            }
        }
    }
}

size_t next_pow2(size_t n) {
    size_t p = 1;
    while (p < n) p <<= 1;
    return p;
}

} // namespace

std::vector<double> periodogram(std::span<const double> x, bool hann_window) {
    if (x.empty()) throw std::invalid_argument("periodogram: empty input");
    const size_t n = x.size();
    const size_t nfft = next_pow2(n);
    std::vector<std::complex<double>> buf(nfft, 0.0);
    double wnorm = 1.0;
    if (hann_window) {
        double wsum2 = 0.0;
        for (size_t i = 0; i < n; ++i) {
            const double w = 0.5 - 0.5 * std::cos(2.0 * kPi * i / (n - 1));
            buf[i] = x[i] * w;
            wsum2 += w * w;
        }
        wnorm = wsum2 / static_cast<double>(n);
    } else {
        for (size_t i = 0; i < n; ++i) buf[i] = x[i];
    }
    fft_inplace(buf);
    std::vector<double> bins(nfft / 2 + 1);
    for (size_t k = 0; k <= nfft / 2; ++k) {
        double e = std::norm(buf[k]);
        if (k > 0 && k < nfft / 2) e += std::norm(buf[nfft - k]);
        bins[k] = e / static_cast<double>(nfft) / wnorm;
    }
    return bins;
}

std::vector<double> oracle_spectrum(std::span<const double> x, const SliceGrid& grid) {
    if (x.size() < 4096)
        throw std::invalid_argument("oracle_spectrum: need at least 4096 samples");
    const auto bins = periodogram(x);
    const size_t nfft = (bins.size() - 1) * 2;
    std::vector<double> e(grid.slices.size(), 0.0);
    for (size_t k = 0; k < bins.size(); ++k) {
        const double f = 2.0 * static_cast<double>(k) / static_cast<double>(nfft);
        // binary search for the slice containing f; last slice includes f = 1
        size_t idx = grid.slices.size() - 1;
        for (size_t s = 0; s < grid.slices.size(); ++s) {
            if (f < grid.slices[s].hi || s == grid.slices.size() - 1) {
                idx = s;
                break;
            }
        }
        e[idx] += bins[k];
    }
    return e;
}

// -- external formats ----------------------------------------------------

std::string scenario_to_text(const Scenario& s) {
    std::ostringstream os;
    char buf[64];
    os << "# wideband scenario\n";
    std::snprintf(buf, sizeof buf, "%.17g", s.noise_var);
    os << "noise_var = " << buf << "\n";
    os << "seed = " << s.seed << "\n";
    os << "n_total = " << s.n_total << "\n";
    for (const auto& c : s.channels) {
        os << "[channel]\n";
        std::snprintf(buf, sizeof buf, "%.17g", c.f_rising);
        os << "f_rising = " << buf << "\n";
        std::snprintf(buf, sizeof buf, "%.17g", c.f_falling);
        os << "f_falling = " << buf << "\n";
        std::snprintf(buf, sizeof buf, "%.17g", c.snr_db);
        os << "snr_db = " << buf << "\n";
    }
    return os.str();
}

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

} // namespace

Scenario scenario_from_text(const std::string& text) {
    Scenario s;
    std::istringstream is(text);
    std::string line;
    Channel* cur = nullptr;
    while (std::getline(is, line)) {
        line = trim(line);
        if (line.empty() || line[0] == '#') continue;
        if (line == "[channel]") {
            s.channels.emplace_back();
            cur = &s.channels.back();
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("scenario: bad line: " + line);
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        if (cur == nullptr) {
            if (key == "noise_var") s.noise_var = std::stod(val);
            else if (key == "seed") s.seed = std::stoull(val);
            else if (key == "n_total") s.n_total = std::stol(val);
            else throw std::invalid_argument("scenario: unknown key: " + key);
        } else {
            if (key == "f_rising") cur->f_rising = std::stod(val);
            else if (key == "f_falling") cur->f_falling = std::stod(val);
            else if (key == "snr_db") cur->snr_db = std::stod(val);
            else throw std::invalid_argument("scenario: unknown channel key: " + key);
        }
    }
    s.validate();
    return s;
}

Scenario load_scenario(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open scenario file: " + path);
    std::ostringstream os;
    os << f.rdbuf();
    return scenario_from_text(os.str());
}

void save_scenario(const Scenario& s, const std::string& path) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot write scenario file: " + path);
    f << scenario_to_text(s);
}

const char kSampleMagic[8] = {'W', 'B', 'S', 'I', 'G', '\0', '\0', '\1'};

void save_samples(std::span<const double> x, const std::string& path) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot write sample file: " + path);
    f.write(kSampleMagic, sizeof kSampleMagic);
    f.write(reinterpret_cast<const char*>(x.data()),
            static_cast<std::streamsize>(x.size() * sizeof(double)));
}

std::vector<double> load_samples(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open sample file: " + path);
    char magic[8];
    f.read(magic, sizeof magic);
    if (f.gcount() != 8 || std::memcmp(magic, kSampleMagic, 8) != 0)
        throw std::runtime_error("bad sample file magic: " + path);
    std::vector<double> x;
    double v;
    while (f.read(reinterpret_cast<char*>(&v), sizeof v)) x.push_back(v);
    return x;
}

} // namespace specsense
