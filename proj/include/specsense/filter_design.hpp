// Kaiser-window FIR design: the lowpass modal prototype and the fixed
// masking filters of the reconfigurable bank.

#pragma once

#include "specsense/config.hpp"
#include "specsense/fir.hpp"

namespace specsense {

// Kaiser-windowed ideal lowpass meeting `spec` (verified on a dense grid;
// the length is bumped and the design retried if verification fails).
//
// length_granularity forces (length-1) to be a multiple of the given value,
// which the bank uses so that every coefficient-decimated derivative stays
// symmetric and odd-length. The cutoff hugs f_pass + half the realized
// transition width so derived subband edges track the f_pass geometry.
FirFilter design_lowpass(const FilterSpec& spec, int length_granularity = 1);

// Bandpass masking filter for band k (0..M). Bands 0 and M are the half-band
// lowpass/highpass cases. Passband half-width and stopband offset are fixed
// across the whole d_set; see masking_geometry().
FirFilter design_masking(int k, const BankConfig& cfg);

struct MaskingGeometry {
    double pass_halfwidth; // from band center
    double stop_offset;    // from band center
};

// Fixed masking template: covers the widest subband of the d_set and cuts
// off before the nearest image of the multiband response.
MaskingGeometry masking_geometry(const BankConfig& cfg);

// (length-1) granularity the modal prototype needs so every D in d_set yields
// a symmetric, odd-length CD-II derivative: lcm over d_set of 2*D.
int modal_length_granularity(const std::vector<int>& d_set);

// Internal design attenuation for the bank's modal prototype. The headroom
// serves two purposes: alias terms folded into the stopband by coefficient
// decimation, and passband-ripple matching between decimation factors (slice
// energies difference P entries of different D rows, so ripple mismatch
// couples the full in-band signal power into the small slices).
double bank_design_atten_db(double atten_db);

// Masking filters are common to every D row, so their ripple cancels in the
// subtraction; they only need stopband headroom.
double masking_design_atten_db(double atten_db);

// Modal prototype for the bank: designed at the internal attenuation with the
// realized transition centered on spec.f_pass, so the half-power crossover of
// every derived subband lands on the brick-wall edge the slice geometry
// assumes. Stays within the caller's template (the realized transition is
// never wider than spec's).
FirFilter design_bank_modal(const FilterSpec& spec, int length_granularity);

// Transition width the bank's modal prototype realizes (Nyquist units, before
// the D/M stretch). Computable from the config alone; the threshold rule uses
// it to size the subtraction-residue allowance.
double bank_modal_transition(const BankConfig& cfg);

} // namespace specsense
