// Real-multiplier complexity models for the proposed bank and the reference
// energy-detector architectures, and uniform-band quantization bounds.
//
// Counting rules (also printed by complexity_report_text):
//   - symmetric FIR of length L folds to ceil(L/2) multipliers
//   - the complementary branch adds none (sign flips and one subtraction)
//   - interpolation/decimation add none (zero taps are skipped)
//   - a complex multiply costs 3 real multipliers
//   - a DFT bank channelizing a real input into `bands` one-sided channels
//     runs a 2*bands-point transform
//   - reference prototypes use the same Kaiser rule with edges
//     (0.8/bands, 0.92/bands), mirroring the modal template's proportions

#pragma once

#include <span>
#include <string>
#include <vector>

#include "specsense/config.hpp"
#include "specsense/filterbank.hpp"

namespace specsense {

struct ComplexityReport {
    std::string method; // proposed | dftfb | tqmfb | tdftfb
    int bands = 0;
    long multipliers = 0;
    double max_error_pct = 0.0;
};

struct ProposedCount {
    long modal = 0;
    long masking = 0;
    long total() const { return modal + masking; }
};

long symmetric_fir_multipliers(int length);

ProposedCount count_proposed(const BankConfig& cfg, const BankFilters& filters);
ProposedCount count_proposed(const BankConfig& cfg); // designs the filters itself

// Slice-quantization bounds of the proposed method per sensing stage:
// paper-style accounting (half the narrowest subband at that stage) and the
// conservative bound (half the widest indivisible center slice).
struct StageBound {
    std::vector<int> d_subset;
    double bound_pct = 0.0;              // half of f_pass*min(D)/M
    double conservative_bound_pct = 0.0; // half of the widest center slice
};
std::vector<StageBound> proposed_stage_bounds(const BankConfig& cfg);

// Analytic model of a reference architecture; method is one of
// "dftfb", "tqmfb", "tdftfb". bands must be a power of two.
ComplexityReport count_reference(const std::string& method, int bands,
                                 double atten_db = 30.0);

// Kaiser length estimate (rounded up to odd) for the analytic counts.
int kaiser_length_estimate(double atten_db, double delta_f);

struct TradeoffRow {
    std::string method;
    int bands = 0;
    long multipliers = 0;
    double max_error_pct = 0.0;
};

// Error-bound/multiplier rows: the proposed bank at every sensing stage plus
// each reference method at every band count. Sorted by error bound.
std::vector<TradeoffRow> tradeoff_sweep(
    const BankConfig& cfg, std::span<const int> reference_bands,
    std::span<const std::string> methods);
std::vector<TradeoffRow> tradeoff_sweep(const BankConfig& cfg);

// columns: method,bands,multipliers,max_error_pct
std::string tradeoff_to_csv(std::span<const TradeoffRow> rows);

// Human-readable counting formulas, our numbers, and the published reference
// values with discrepancies flagged.
std::string complexity_report_text(const BankConfig& cfg);

} // namespace specsense
