#include "specsense/filterbank.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "specsense/filter_design.hpp"
#include "specsense/kernels.hpp"

namespace specsense {

void BankConfig::validate() const {
    spec.validate();
    if (m < 2 || m % 2 != 0)
        throw std::invalid_argument("BankConfig: M must be even and >= 2");
    if (d_set.empty() || !std::is_sorted(d_set.begin(), d_set.end()) ||
        std::adjacent_find(d_set.begin(), d_set.end()) != d_set.end())
        throw std::invalid_argument("BankConfig: d_set must be strictly ascending");
    for (int d : d_set) {
        if (d < 1 || d > m)
            throw std::invalid_argument("BankConfig: need 1 <= D <= M");
        if (d * spec.f_stop > 1.0 + 1e-12)
            throw std::invalid_argument("BankConfig: D*f_stop > 1 folds the modal response");
    }
    if (n_samples < 1) throw std::invalid_argument("BankConfig: n_samples must be positive");
    if (!(noise_var >= 0.0)) throw std::invalid_argument("BankConfig: noise_var must be >= 0");
    if (!(threshold_margin > 1.0))
        throw std::invalid_argument("BankConfig: threshold_margin must exceed 1");
}

std::pair<double, double> subband_edges(const BankConfig& cfg, int d, int k) {
    if (k < 0 || k > cfg.m)
        throw std::invalid_argument("subband_edges: band index out of range");
    if (std::find(cfg.d_set.begin(), cfg.d_set.end(), d) == cfg.d_set.end())
        throw std::invalid_argument("subband_edges: D not in d_set");
    const double center = static_cast<double>(k) / cfg.m;
    const double w = (k % 2 == 0) ? cfg.spec.f_pass * d / cfg.m
                                  : 1.0 / cfg.m - cfg.spec.f_pass * d / cfg.m;
    return {std::max(0.0, center - w), std::min(1.0, center + w)};
}

namespace {

// Decimate the modal prototype and normalize to exact unit DC gain
// (plain CD-II scales the passband by ~1/D).
FirFilter decimated_modal(const FirFilter& modal, int d, double f_stop) {
    FirFilter g = coeff_decimate_ii(modal, d, f_stop);
    const double dc = std::accumulate(g.coeffs.begin(), g.coeffs.end(), 0.0);
    for (double& c : g.coeffs) c /= dc;
    return g;
}

FirFilter compose(const FirFilter& a, const FirFilter& b, int band) {
    FirFilter out;
    out.kind = a.kind;
    out.decimation = a.decimation;
    out.interpolation = a.interpolation;
    out.band = band;
    out.coeffs.assign(a.coeffs.size() + b.coeffs.size() - 1, 0.0);
    for (size_t i = 0; i < a.coeffs.size(); ++i)
        for (size_t j = 0; j < b.coeffs.size(); ++j)
            out.coeffs[i + j] += a.coeffs[i] * b.coeffs[j];
    return out;
}

SubbandFilterSet assemble(const BankConfig& cfg, int d, const FirFilter& modal,
                          const std::vector<FirFilter>& masking) {
    SubbandFilterSet set;
    set.decimation = d;

    const FirFilter base = decimated_modal(modal, d, cfg.spec.f_stop);
    const FirFilter mb_even = interpolate(base, cfg.m);
    const FirFilter mb_odd = interpolate(complementary(base), cfg.m);

    set.cascades.reserve(cfg.bands());
    for (int k = 0; k <= cfg.m; ++k) {
        FirFilter c = compose(k % 2 == 0 ? mb_even : mb_odd, masking[k], k);
        // calibrate the noise bandwidth: for white noise E[P] is sigma^2*N
        // times the coefficient energy, and the slice subtraction needs the
        // rows of every D to agree on it; pin it to the brick-wall width
        // (sub-percent gain adjustment).
        const auto [lo, hi] = subband_edges(cfg, d, k);
        double energy = 0.0;
        for (double v : c.coeffs) energy += v * v;
        const double scale = std::sqrt((hi - lo) / energy);
        for (double& v : c.coeffs) v *= scale;
        set.cascades.push_back(std::move(c));
    }

    set.group_delay_samples = (set.cascades[0].length() - 1) / 2;
    return set;
}

} // namespace

BankFilters design_bank_filters(const BankConfig& cfg) {
    cfg.validate();
    BankFilters bf;
    bf.modal = design_bank_modal(cfg.spec, modal_length_granularity(cfg.d_set));
    bf.masking.reserve(cfg.bands());
    for (int k = 0; k <= cfg.m; ++k) bf.masking.push_back(design_masking(k, cfg));
    return bf;
}

SubbandFilterSet build_bank(const BankConfig& cfg, int d) {
    cfg.validate();
    if (std::find(cfg.d_set.begin(), cfg.d_set.end(), d) == cfg.d_set.end())
        throw std::invalid_argument("build_bank: D not in d_set");
    const BankFilters bf = design_bank_filters(cfg);
    return assemble(cfg, d, bf.modal, bf.masking);
}

std::vector<SubbandFilterSet> build_all_banks(const BankConfig& cfg) {
    const BankFilters bf = design_bank_filters(cfg);
    std::vector<SubbandFilterSet> banks;
    banks.reserve(cfg.d_set.size());
    for (int d : cfg.d_set) banks.push_back(assemble(cfg, d, bf.modal, bf.masking));
    return banks;
}

std::vector<double> filter_stream(const SubbandFilterSet& set, int k,
                                  std::span<const double> x) {
    if (k < 0 || k >= set.bands())
        throw std::invalid_argument("filter_stream: band index out of range");
    return kernels::convolve(set.cascades[k].coeffs, x);
}

} // namespace specsense
