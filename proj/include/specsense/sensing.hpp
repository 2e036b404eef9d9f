// One full sensing cycle: the staged D schedule (middle D first, then the
// neighbors outward), incremental edge estimates per stage, and elapsed-time
// accounting in samples.

#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "specsense/edge_detect.hpp"
#include "specsense/energy.hpp"
#include "specsense/filterbank.hpp"
#include "specsense/signal_gen.hpp"

namespace specsense {

struct StageResult {
    std::vector<int> d_subset;
    long elapsed_samples = 0; // sum of N + group_delay over every measured D so far
    std::vector<EdgeEstimate> edges;
    std::optional<double> max_error_pct; // set when the truth is known
};

struct CycleResult {
    std::vector<StageResult> stages;
    EnergyMatrix p;
};

// Stage schedule for a d_set: {mid}, {mid-1..mid+1}, ... expanding outward
// one step per stage until the whole set is covered.
std::vector<std::vector<int>> stage_schedule(const std::vector<int>& d_set);

// Runs up to max_stages of the schedule on one captured segment (the same
// segment is reused for every D row unless cfg.fresh_samples_per_row, in
// which case x must hold one segment per row, concatenated).
CycleResult run_cycle(std::span<const double> x, const BankConfig& cfg,
                      const std::vector<SubbandFilterSet>& banks,
                      const Scenario* truth = nullptr, int max_stages = -1);

// Convenience overload that designs the banks itself.
CycleResult run_cycle(std::span<const double> x, const BankConfig& cfg,
                      const Scenario* truth = nullptr, int max_stages = -1);

// Samples needed for one cycle under the given config.
long cycle_input_length(const BankConfig& cfg,
                        const std::vector<SubbandFilterSet>& banks);

// Worst edge error of one stage against the true channel edges: each true
// edge is matched to the nearest detected edge of the same direction.
double max_error_vs_truth(const std::vector<EdgeEstimate>& edges,
                          const Scenario& truth);

// columns: stage,elapsed_samples,max_error_pct (last column empty if unknown)
std::string stages_to_csv(const CycleResult& r);

} // namespace specsense
