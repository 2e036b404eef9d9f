#include "specsense/filter_design.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

namespace specsense {

namespace {

constexpr double kPi = std::numbers::pi;

double bessel_i0(double x) {
    // power series, converges fast for the betas used here
    double sum = 1.0, term = 1.0;
    const double y = x * x / 4.0;
    for (int k = 1; k < 200; ++k) {
        term *= y / (static_cast<double>(k) * k);
        sum += term;
        if (term < sum * 1e-17) break;
    }
    return sum;
}

double kaiser_beta(double atten_db) {
    if (atten_db > 50.0) return 0.1102 * (atten_db - 8.7);
    if (atten_db >= 21.0)
        return 0.5842 * std::pow(atten_db - 21.0, 0.4) + 0.07886 * (atten_db - 21.0);
    return 0.0;
}

// Kaiser length estimate for a transition of delta_f (Nyquist units).
int kaiser_length(double atten_db, double delta_f) {
    const double delta_omega = kPi * delta_f;
    return static_cast<int>(std::ceil((atten_db - 8.0) / (2.285 * delta_omega))) + 1;
}

// smallest n >= wanted with (n-1) % granularity == 0 and n odd
int round_length(int wanted, int granularity) {
    int g = granularity;
    if (g % 2 != 0) g *= 2; // keep n odd
    const int k = (std::max(wanted, 2) - 2) / g + 1;
    return k * g + 1;
}

FirFilter kaiser_lowpass(int n, double cutoff, double beta) {
    FirFilter h;
    h.kind = FilterKind::lowpass;
    h.coeffs.resize(n);
    const int n0 = (n - 1) / 2;
    const double wc = kPi * cutoff;
    const double denom = bessel_i0(beta);
    for (int i = 0; i < n; ++i) {
        const int m = i - n0;
        const double ideal = (m == 0) ? cutoff : std::sin(wc * m) / (kPi * m);
        const double r = static_cast<double>(m) / n0;
        h.coeffs[i] = ideal * bessel_i0(beta * std::sqrt(std::max(0.0, 1.0 - r * r))) / denom;
    }
    // exact unit DC gain
    const double dc = std::accumulate(h.coeffs.begin(), h.coeffs.end(), 0.0);
    for (double& c : h.coeffs) c /= dc;
    return h;
}

struct TemplateCheck {
    double pass_dev_db;  // max |dB| deviation on [0, f_pass]
    double stop_atten_db; // min attenuation on [f_stop, 1]
};

TemplateCheck check_template(const FirFilter& h, const FilterSpec& spec) {
    const auto grid = uniform_grid(4096);
    const auto resp = freq_response(h, grid);
    TemplateCheck r{0.0, 1e9};
    for (size_t i = 0; i < grid.size(); ++i) {
        const double db = magnitude_db(resp[i]);
        if (grid[i] <= spec.f_pass) r.pass_dev_db = std::max(r.pass_dev_db, std::abs(db));
        if (grid[i] >= spec.f_stop) r.stop_atten_db = std::min(r.stop_atten_db, -db);
    }
    return r;
}

} // namespace

int modal_length_granularity(const std::vector<int>& d_set) {
    int g = 1;
    for (int d : d_set) g = std::lcm(g, 2 * d);
    return g;
}

double bank_design_atten_db(double atten_db) { return atten_db + 30.0; }

double masking_design_atten_db(double atten_db) { return atten_db + 10.0; }

FirFilter design_lowpass(const FilterSpec& spec, int length_granularity) {
    spec.validate();
    if (length_granularity < 1)
        throw std::invalid_argument("design_lowpass: bad length granularity");

    const double beta = kaiser_beta(spec.atten_db);
    const double trans = spec.f_stop - spec.f_pass;
    int n = round_length(kaiser_length(spec.atten_db, trans), length_granularity);

    for (int attempt = 0; attempt < 16; ++attempt) {
        // realized transition narrows as n grows; keep the cutoff just above
        // f_pass so the -6 dB point does not drift toward f_stop
        const double realized = (spec.atten_db - 8.0) / (2.285 * (n - 1)) / kPi;
        const double cutoff = std::min(spec.f_pass + realized / 2.0,
                                       (spec.f_pass + spec.f_stop) / 2.0);
        FirFilter h = kaiser_lowpass(n, cutoff, beta);
        const auto chk = check_template(h, spec);
        if (chk.pass_dev_db <= 0.5 && chk.stop_atten_db >= spec.atten_db) return h;
        n = round_length(n + 2, length_granularity);
    }
    throw std::runtime_error("design_lowpass: could not meet spec");
}

namespace {

int bank_modal_length(const FilterSpec& spec, int length_granularity) {
    const double atten = bank_design_atten_db(spec.atten_db);
    return round_length(kaiser_length(atten, spec.f_stop - spec.f_pass),
                        length_granularity);
}

} // namespace

double bank_modal_transition(const BankConfig& cfg) {
    const double atten = bank_design_atten_db(cfg.spec.atten_db);
    const int n = bank_modal_length(cfg.spec, modal_length_granularity(cfg.d_set));
    return (atten - 8.0) / (2.285 * (n - 1)) / kPi;
}

FirFilter design_bank_modal(const FilterSpec& spec, int length_granularity) {
    spec.validate();
    FilterSpec tight = spec;
    tight.atten_db = bank_design_atten_db(spec.atten_db);
    const int n = bank_modal_length(spec, length_granularity);
    // center the transition this length realizes on f_pass; the 1.001 keeps
    // the inner length estimate from rounding up to the next granularity step
    const double realized = (tight.atten_db - 8.0) / (2.285 * (n - 1)) / kPi;
    tight.f_pass = spec.f_pass - realized * 1.001 / 2.0;
    tight.f_stop = spec.f_pass + realized * 1.001 / 2.0;
    if (tight.f_pass <= 0.0)
        throw std::invalid_argument("design_bank_modal: transition does not fit above 0");
    FirFilter h = design_lowpass(tight, length_granularity);
    if (h.length() != n)
        throw std::runtime_error("design_bank_modal: length drifted past the granularity");
    return h;
}

MaskingGeometry masking_geometry(const BankConfig& cfg) {
    cfg.validate();
    const double fp = cfg.spec.f_pass;
    const int m = cfg.m;
    const int d_min = cfg.d_set.front();
    const int d_max = cfg.d_set.back();
    // widest subband over the d_set, either parity
    const double w_max = std::max(fp * d_max / m, 1.0 / m - fp * d_min / m);
    const double image_gap = 2.0 / m - 2.0 * w_max; // between adjacent image passbands
    if (image_gap <= 0)
        throw std::invalid_argument("masking_geometry: subbands leave no masking gap");
    const double margin = image_gap / 30.0;
    return {w_max + margin, 2.0 / m - (w_max + margin)};
}

FirFilter design_masking(int k, const BankConfig& cfg) {
    cfg.validate();
    if (k < 0 || k > cfg.m)
        throw std::invalid_argument("design_masking: band index out of range");
    const auto geom = masking_geometry(cfg);
    if (geom.stop_offset - geom.pass_halfwidth <= 1e-6)
        throw std::invalid_argument("design_masking: passband overlaps required stopband");

    FilterSpec proto{geom.pass_halfwidth, geom.stop_offset,
                     masking_design_atten_db(cfg.spec.atten_db)};
    FirFilter lp = design_lowpass(proto);

    FirFilter h;
    h.kind = FilterKind::masking;
    h.band = k;
    h.coeffs.resize(lp.coeffs.size());
    const double center = static_cast<double>(k) / cfg.m;
    const int n0 = (lp.length() - 1) / 2;
    // cosine modulation; the two spectral copies coincide for k = 0 and k = M
    const double gain = (k == 0 || k == cfg.m) ? 1.0 : 2.0;
    for (int i = 0; i < lp.length(); ++i)
        h.coeffs[i] = gain * lp.coeffs[i] * std::cos(kPi * center * (i - n0));
    return h;
}

} // namespace specsense
