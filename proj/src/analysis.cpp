#include "specsense/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "specsense/sensing.hpp"

namespace specsense {

namespace {

bool is_pow2(int n) { return n > 0 && (n & (n - 1)) == 0; }

int log2i(int n) {
    int l = 0;
    while ((1 << l) < n) ++l;
    return l;
}

} // namespace

long symmetric_fir_multipliers(int length) { return (length + 1) / 2; }

int kaiser_length_estimate(double atten_db, double delta_f) {
    const double delta_omega = std::numbers::pi * delta_f;
    int n = static_cast<int>(std::ceil((atten_db - 8.0) / (2.285 * delta_omega))) + 1;
    if (n % 2 == 0) ++n;
    return n;
}

ProposedCount count_proposed(const BankConfig& cfg, const BankFilters& filters) {
    cfg.validate();
    ProposedCount c;
    c.modal = symmetric_fir_multipliers(filters.modal.length());
    for (const auto& mk : filters.masking)
        c.masking += symmetric_fir_multipliers(mk.length());
    return c;
}

ProposedCount count_proposed(const BankConfig& cfg) {
    return count_proposed(cfg, design_bank_filters(cfg));
}

std::vector<StageBound> proposed_stage_bounds(const BankConfig& cfg) {
    cfg.validate();
    std::vector<StageBound> out;
    for (const auto& subset : stage_schedule(cfg.d_set)) {
        StageBound sb;
        sb.d_subset = subset;
        const int d_min = *std::min_element(subset.begin(), subset.end());
        const int d_max = *std::max_element(subset.begin(), subset.end());
        sb.bound_pct = 100.0 * (cfg.spec.f_pass * d_min / cfg.m) / 2.0;
        const double even_center = 2.0 * cfg.spec.f_pass * d_min / cfg.m;
        const double odd_center = 2.0 * (1.0 / cfg.m - cfg.spec.f_pass * d_max / cfg.m);
        sb.conservative_bound_pct = 100.0 * std::max(even_center, odd_center) / 2.0;
        out.push_back(std::move(sb));
    }
    return out;
}

ComplexityReport count_reference(const std::string& method, int bands,
                                 double atten_db) {
    if (!is_pow2(bands))
        throw std::invalid_argument("count_reference: bands must be a power of two");
    if (bands < 2)
        throw std::invalid_argument("count_reference: need at least 2 bands");

    ComplexityReport r;
    r.method = method;
    r.bands = bands;
    r.max_error_pct = 100.0 / (2.0 * bands); // uniform-band quantization bound

    // prototype templates mirror the modal filter's proportions
    const auto proto_len = [&](double width) {
        return kaiser_length_estimate(atten_db, 0.12 * width);
    };

    if (method == "dftfb") {
        // polyphase prototype (no per-phase symmetry) plus the 2*bands-point
        // FFT a real wideband input needs for `bands` one-sided channels,
        // at 3 real multipliers per complex multiply
        const int lp = proto_len(1.0 / bands);
        r.multipliers = lp + 3L * bands * log2i(2 * bands);
    } else if (method == "tqmfb") {
        // full binary tree of halfband QMF splits, one folded prototype per
        // node, every level at the decimated rate (same halfband template)
        const int lq = proto_len(0.5);
        r.multipliers = static_cast<long>(bands - 1) * symmetric_fir_multipliers(lq);
    } else if (method == "tdftfb") {
        // DFT bank on half the bands followed by one halfband split per output
        const int lp = proto_len(2.0 / bands);
        const int lq = proto_len(0.5);
        r.multipliers = lp + 3L * (bands / 2) * log2i(bands) +
                        static_cast<long>(bands / 2) * symmetric_fir_multipliers(lq);
    } else {
        throw std::invalid_argument("count_reference: unsupported method: " + method);
    }
    return r;
}

std::vector<TradeoffRow> tradeoff_sweep(const BankConfig& cfg,
                                        std::span<const int> reference_bands,
                                        std::span<const std::string> methods) {
    const bool has_reference = std::any_of(
        methods.begin(), methods.end(),
        [](const std::string& m) { return m != "proposed"; });
    if (has_reference && reference_bands.size() < 2)
        throw std::invalid_argument("tradeoff_sweep: need >= 2 configurations per method");

    std::vector<TradeoffRow> rows;
    for (const auto& method : methods) {
        if (method == "proposed") {
            const long mults = count_proposed(cfg).total();
            for (const auto& sb : proposed_stage_bounds(cfg))
                rows.push_back({"proposed", cfg.bands(), mults, sb.bound_pct});
        } else {
            for (int b : reference_bands) {
                const auto r = count_reference(method, b, cfg.spec.atten_db);
                rows.push_back({r.method, r.bands, r.multipliers, r.max_error_pct});
            }
        }
    }
    std::sort(rows.begin(), rows.end(), [](const TradeoffRow& a, const TradeoffRow& b) {
        return a.max_error_pct < b.max_error_pct ||
               (a.max_error_pct == b.max_error_pct && a.method < b.method);
    });
    return rows;
}

std::vector<TradeoffRow> tradeoff_sweep(const BankConfig& cfg) {
    const std::vector<int> bands = {8, 16, 32, 64};
    const std::vector<std::string> methods = {"proposed", "dftfb", "tqmfb", "tdftfb"};
    return tradeoff_sweep(cfg, bands, methods);
}

std::string tradeoff_to_csv(std::span<const TradeoffRow> rows) {
    std::ostringstream os;
    os << "method,bands,multipliers,max_error_pct\n";
    char buf[64];
    for (const auto& r : rows) {
        std::snprintf(buf, sizeof buf, "%.17g", r.max_error_pct);
        os << r.method << ',' << r.bands << ',' << r.multipliers << ',' << buf << "\n";
    }
    return os.str();
}

namespace {

struct PublishedRow {
    const char* label;
    const char* method;
    int bands;
    double max_error_pct;
    long multipliers;
};

// values published for this architecture family (8-band proposed/tree/DFT
// banks, 16-band tree DFT bank)
constexpr PublishedRow kPublished[] = {
    {"proposed (8-band)", "proposed", 8, 1.875, 303},
    {"tqmfb (8-band)", "tqmfb", 8, 4.75, 770},
    {"dftfb (8-band)", "dftfb", 8, 4.75, 328},
    {"tdftfb (16-band)", "tdftfb", 16, 1.6, 800},
};

} // namespace

std::string complexity_report_text(const BankConfig& cfg) {
    std::ostringstream os;
    const auto pc = count_proposed(cfg);
    const auto bounds = proposed_stage_bounds(cfg);

    os << "complexity model\n"
       << "================\n"
       << "counting rules:\n"
       << "  symmetric FIR of length L      -> ceil(L/2) real multipliers\n"
       << "  complementary branch           -> 0 (sign flips + one subtraction)\n"
       << "  coefficient decimation/interp. -> 0 (zero taps skipped)\n"
       << "  complex multiply               -> 3 real multipliers\n"
       << "  FFT of size N                  -> (N/2)*log2(N) complex multiplies\n"
       << "  dftfb on a real input          -> prototype + 2*bands-point FFT\n"
       << "  reference prototypes           -> Kaiser estimate, edges "
          "(0.8/bands, 0.92/bands)\n"
       << "  tqmfb                          -> (bands-1) folded halfband nodes "
          "(0.4, 0.46)\n"
       << "  tdftfb                         -> dftfb(bands/2) + bands/2 "
          "halfband splits\n\n";

    os << "proposed bank: modal " << pc.modal << " + masking " << pc.masking
       << " = " << pc.total() << " multipliers\n";
    os << "stage error bounds (paper-style / conservative center-slice):\n";
    char buf[128];
    for (size_t i = 0; i < bounds.size(); ++i) {
        std::snprintf(buf, sizeof buf, "  stage %zu: %.4g %% / %.4g %%\n", i + 1,
                      bounds[i].bound_pct, bounds[i].conservative_bound_pct);
        os << buf;
    }

    os << "\nours vs published:\n";
    char big[256];
    for (const auto& p : kPublished) {
        long ours_mult;
        double ours_err;
        if (std::string(p.method) == "proposed") {
            ours_mult = pc.total();
            ours_err = bounds.back().bound_pct;
        } else {
            const auto r = count_reference(p.method, p.bands, cfg.spec.atten_db);
            ours_mult = r.multipliers;
            ours_err = r.max_error_pct;
        }
        std::snprintf(big, sizeof big,
                      "  %-18s ours: %5ld mult, %.4g %%   published: %4ld mult, "
                      "%.4g %%%s\n",
                      p.label, ours_mult, ours_err, p.multipliers, p.max_error_pct,
                      (ours_mult != p.multipliers ||
                       std::abs(ours_err - p.max_error_pct) > 1e-9)
                          ? "   [DIFFERS: prototype lengths in the published "
                            "designs are not specified]"
                          : "");
        os << big;
    }
    return os.str();
}

} // namespace specsense
