// Bank configuration: the parameters that define the sensing instrument.

#pragma once

#include <vector>

#include "specsense/fir.hpp"

namespace specsense {

struct BankConfig {
    int m = 8;                           // interpolation factor, bands = m+1
    std::vector<int> d_set = {3, 4, 5, 6, 7}; // decimation factors, ascending
    FilterSpec spec{0.1, 0.115, 30.0};   // modal filter template
    int n_samples = 8192;                // samples accumulated per energy measurement
    double noise_var = 1.0;              // AWGN variance sigma^2
    double threshold_margin = 2.0;       // gamma > 1, threshold T = gamma*sigma^2*N*width
    bool fresh_samples_per_row = false;  // re-draw input for every D row

    int bands() const { return m + 1; }
    int middle_d() const { return d_set[d_set.size() / 2]; }

    void validate() const; // throws std::invalid_argument
};

} // namespace specsense
