// Assembly of the (M+1)-band reconfigurable bank for one decimation factor,
// and streaming of sample blocks through its subband cascades.

#pragma once

#include <span>
#include <utility>
#include <vector>

#include "specsense/config.hpp"
#include "specsense/fir.hpp"

namespace specsense {

struct SubbandFilterSet {
    int decimation = 0;
    std::vector<FirFilter> cascades; // M+1 composed multiband*masking filters
    int group_delay_samples = 0;     // (cascade length - 1) / 2, equal across bands

    int bands() const { return static_cast<int>(cascades.size()); }
};

// Ideal brick-wall edges of band k at decimation D. Even bands derive from
// the modal response (half-width f_pass*D/M), odd bands from the
// complementary response (half-width 1/M - f_pass*D/M).
std::pair<double, double> subband_edges(const BankConfig& cfg, int d, int k);

// The reconfiguration-independent filters: one modal prototype (designed at
// the bank-internal attenuation with the d_set length granularity) and the
// fixed masking filter per band.
struct BankFilters {
    FirFilter modal;
    std::vector<FirFilter> masking;
};

BankFilters design_bank_filters(const BankConfig& cfg);

// Design and compose the full bank for one D in cfg.d_set.
SubbandFilterSet build_bank(const BankConfig& cfg, int d);

// One bank per D in cfg.d_set (modal and masking filters designed once).
std::vector<SubbandFilterSet> build_all_banks(const BankConfig& cfg);

// Zero-state linear convolution of x with band k's cascade, truncated to
// len(x). Deterministic; safe to call concurrently for different bands.
std::vector<double> filter_stream(const SubbandFilterSet& set, int k,
                                  std::span<const double> x);

} // namespace specsense
