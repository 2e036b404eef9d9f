#include "specsense/energy.hpp"

#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "specsense/kernels.hpp"

namespace specsense {

const std::vector<double>& EnergyMatrix::row(int d) const {
    const auto it = rows.find(d);
    if (it == rows.end())
        throw std::invalid_argument("EnergyMatrix: row D=" + std::to_string(d) +
                                    " not measured");
    return it->second;
}

std::string EnergyMatrix::to_csv() const {
    std::ostringstream os;
    os << "D";
    for (int k = 0; k < bands; ++k) os << ",k" << k;
    os << "\n";
    char buf[64];
    for (const auto& [d, vals] : rows) {
        os << d;
        for (double v : vals) {
            std::snprintf(buf, sizeof buf, "%.17g", v);
            os << ',' << buf;
        }
        os << "\n";
    }
    return os.str();
}

double decision_metric(std::span<const double> y) { return kernels::energy(y); }

std::vector<double> measure_row(const SubbandFilterSet& set,
                                std::span<const double> x,
                                const BankConfig& cfg) {
    const long need = static_cast<long>(cfg.n_samples) + set.group_delay_samples;
    if (static_cast<long>(x.size()) < need)
        throw std::invalid_argument("measure_row: input shorter than N + group delay");

    std::vector<double> row(set.bands());
    std::vector<double> y(x.size());
    for (int k = 0; k < set.bands(); ++k) {
        kernels::convolve(set.cascades[k].coeffs, x, y);
        // drop the transient before the cascade's group delay
        row[k] = decision_metric(std::span<const double>(y).subspan(
            set.group_delay_samples, cfg.n_samples));
    }
    return row;
}

void add_row(EnergyMatrix& p, const SubbandFilterSet& set,
             std::span<const double> x, const BankConfig& cfg) {
    if (p.bands == 0) p.bands = set.bands();
    if (p.bands != set.bands())
        throw std::invalid_argument("EnergyMatrix: band count mismatch");
    p.n_effective = cfg.n_samples;
    p.rows[set.decimation] = measure_row(set, x, cfg);
}

} // namespace specsense
