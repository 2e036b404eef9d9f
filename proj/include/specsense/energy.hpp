// Decision-metric matrix P: per-subband energies for each measured D.

#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include "specsense/config.hpp"
#include "specsense/filterbank.hpp"

namespace specsense {

struct EnergyMatrix {
    int bands = 0;
    int n_effective = 0;                   // samples accumulated per entry
    std::map<int, std::vector<double>> rows; // D -> P[D][k], k = 0..M

    bool has_row(int d) const { return rows.count(d) != 0; }
    const std::vector<double>& row(int d) const;
    double at(int d, int k) const { return row(d)[static_cast<size_t>(k)]; }

    // header "D,k0,..,kM", one line per measured D
    std::string to_csv() const;
};

// Sum of squared samples (the decision metric).
double decision_metric(std::span<const double> y);

// Filter x through every band of the set and accumulate cfg.n_samples of
// energy after discarding the first group_delay_samples of each output.
// Requires len(x) >= cfg.n_samples + group delay.
std::vector<double> measure_row(const SubbandFilterSet& set,
                                std::span<const double> x,
                                const BankConfig& cfg);

// measure_row plus bookkeeping into the matrix.
void add_row(EnergyMatrix& p, const SubbandFilterSet& set,
             std::span<const double> x, const BankConfig& cfg);

} // namespace specsense
