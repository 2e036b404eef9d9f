#include "specsense/edge_detect.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>
#include <stdexcept>

#include "specsense/filter_design.hpp"
#include "specsense/filterbank.hpp"

namespace specsense {

int SliceGrid::slice_index_of(double f) const {
    if (f < 0.0 || f > 1.0)
        throw std::invalid_argument("slice_index_of: frequency outside [0,1]");
    for (size_t i = 0; i + 1 < slices.size(); ++i)
        if (f < slices[i].hi) return static_cast<int>(i);
    return static_cast<int>(slices.size()) - 1;
}

namespace {

// Every slice boundary is an even-band edge k/M +- f_pass*D/M; computing all
// bounds through this one expression keeps adjacent slices bitwise contiguous.
double bnd(const BankConfig& cfg, int k_even, int d, int sign) {
    return (k_even + sign * cfg.spec.f_pass * d) / cfg.m;
}

void check_subset(const BankConfig& cfg, const std::vector<int>& d_subset) {
    if (d_subset.empty()) throw std::invalid_argument("slice_grid: empty d_subset");
    auto first = std::find(cfg.d_set.begin(), cfg.d_set.end(), d_subset.front());
    if (first == cfg.d_set.end() ||
        static_cast<size_t>(std::distance(first, cfg.d_set.end())) < d_subset.size() ||
        !std::equal(d_subset.begin(), d_subset.end(), first))
        throw std::invalid_argument("slice_grid: d_subset is not a contiguous run of d_set");
    if (std::find(d_subset.begin(), d_subset.end(), cfg.middle_d()) == d_subset.end())
        throw std::invalid_argument("slice_grid: d_subset must contain the middle D");
}

} // namespace

SliceGrid slice_grid(const BankConfig& cfg, const std::vector<int>& d_subset) {
    cfg.validate();
    check_subset(cfg, d_subset);

    SliceGrid grid;
    grid.d_subset = d_subset;
    grid.bands = cfg.bands();

    const int m = cfg.m;
    const int n_d = static_cast<int>(d_subset.size());
    std::map<std::tuple<int, int, int>, int> annulus_index; // (band, d_in, d_out)

    for (int k = 0; k <= m; ++k) {
        const bool even = (k % 2 == 0);
        // D ordered so the band interval widens along the sequence
        std::vector<int> ds = d_subset;
        if (!even) std::reverse(ds.begin(), ds.end());

        Slice c;
        c.kind = SliceKind::center;
        c.band = k;
        c.d_narrow = ds.front();
        c.lo = (k == 0) ? 0.0
               : even   ? bnd(cfg, k, ds.front(), -1)
                        : bnd(cfg, k - 1, ds.front(), +1);
        c.hi = (k == m) ? 1.0
               : even   ? bnd(cfg, k, ds.front(), +1)
                        : bnd(cfg, k + 1, ds.front(), -1);
        grid.slices.push_back(c);

        if (k == m) continue; // annuli above the last center are clipped away
        for (int i = 0; i + 1 < n_d; ++i) {
            Slice a;
            a.kind = SliceKind::annulus;
            a.band = k;
            a.d_inner = ds[i];
            a.d_outer = ds[i + 1];
            a.lo = even ? bnd(cfg, k, ds[i], +1) : bnd(cfg, k + 1, ds[i], -1);
            a.hi = even ? bnd(cfg, k, ds[i + 1], +1) : bnd(cfg, k + 1, ds[i + 1], -1);
            annulus_index[{k, a.d_inner, a.d_outer}] =
                static_cast<int>(grid.slices.size());
            grid.slices.push_back(a);
        }
    }

    // mirror slice below the band center: same D pair seen from band-1
    for (auto& s : grid.slices) {
        if (s.kind != SliceKind::annulus || s.band == 0) continue;
        const auto it = annulus_index.find({s.band - 1, s.d_outer, s.d_inner});
        if (it == annulus_index.end())
            throw std::logic_error("slice_grid: missing mirror annulus");
        s.partner = it->second;
    }

    // the construction emits slices in ascending order and bitwise contiguous
    for (size_t i = 0; i + 1 < grid.slices.size(); ++i)
        if (grid.slices[i].hi != grid.slices[i + 1].lo ||
            !(grid.slices[i].lo < grid.slices[i].hi))
            throw std::logic_error("slice_grid: non-contiguous slices");
    return grid;
}

namespace {

// Allowance for the residue the subtraction scheme leaves in differenced
// slices. The bank is amplitude-complementary, so every subband crossover
// dips to half power over the realized transition; differencing P entries of
// different D (whose transitions have different widths) leaves a residue
// proportional to the transition width times the local spectral density.
constexpr double kSubtractionLeakFactor = 0.2;

// Occupied runs narrower than this many annulus widths sit at the scale of
// that residue noise; they must clear their thresholds decisively or they
// are treated as unoccupied.
constexpr double kMinFeatureAnnuli = 2.5;
constexpr double kIslandFactor = 2.0;

void suppress_weak_islands(const SliceGrid& grid, SliceEnergies& se,
                           double min_feature_width) {
    const int n = static_cast<int>(grid.slices.size());
    for (int i = 0; i < n; ++i) {
        if (!se.occupied[i]) continue;
        int j = i;
        while (j + 1 < n && se.occupied[j + 1]) ++j;
        double w = 0.0, e = 0.0, t = 0.0;
        for (int k = i; k <= j; ++k) {
            w += grid.slices[k].width();
            e += se.e[k];
            t += se.threshold[k];
        }
        if (w < min_feature_width && e <= kIslandFactor * t)
            for (int k = i; k <= j; ++k) se.occupied[k] = false;
        i = j;
    }
}

} // namespace

SliceEnergies slice_energies(const EnergyMatrix& p, const SliceGrid& grid,
                             const BankConfig& cfg) {
    for (int d : grid.d_subset)
        if (!p.has_row(d))
            throw std::invalid_argument("slice_energies: P is missing row D=" +
                                        std::to_string(d));

    const size_t n = grid.slices.size();
    SliceEnergies se;
    se.e_raw.resize(n);
    se.e.resize(n);
    se.threshold.resize(n);
    se.occupied.resize(n);
    se.n_effective = p.n_effective;

    const int d_max = *std::max_element(grid.d_subset.begin(), grid.d_subset.end());
    const double t_stretch = bank_modal_transition(cfg) * d_max / cfg.m;

    for (size_t i = 0; i < n; ++i) {
        const Slice& s = grid.slices[i];
        double leak = 0.0;
        if (s.kind == SliceKind::center) {
            se.e_raw[i] = p.at(s.d_narrow, s.band);
        } else {
            // raw partner value keeps the telescoping exact; clamping happens
            // only on the published energies
            const double left = (s.partner >= 0) ? se.e_raw[s.partner] : 0.0;
            se.e_raw[i] = p.at(s.d_outer, s.band) - p.at(s.d_inner, s.band) - left;

            const auto width_of = [&](int d) {
                const auto [lo, hi] = subband_edges(cfg, d, s.band);
                return hi - lo;
            };
            const double dens =
                std::max(p.at(s.d_inner, s.band) / width_of(s.d_inner),
                         p.at(s.d_outer, s.band) / width_of(s.d_outer));
            leak = kSubtractionLeakFactor * t_stretch * dens;
        }
        se.e[i] = std::max(0.0, se.e_raw[i]);
        se.threshold[i] =
            cfg.threshold_margin * cfg.noise_var * p.n_effective * s.width() + leak;
        se.occupied[i] = se.e[i] > se.threshold[i];
    }
    suppress_weak_islands(grid, se, kMinFeatureAnnuli * cfg.spec.f_pass / cfg.m);
    return se;
}

const char* to_string(EdgeDirection d) {
    return d == EdgeDirection::rising ? "rising" : "falling";
}

const char* to_string(EdgeQuality q) {
    switch (q) {
        case EdgeQuality::slice_center: return "center";
        case EdgeQuality::boundary: return "boundary";
        case EdgeQuality::refined: return "refined";
        case EdgeQuality::fallback: return "fallback";
        case EdgeQuality::degenerate: return "degenerate";
    }
    return "?";
}

std::vector<EdgeEstimate> find_edges(const SliceEnergies& se, const SliceGrid& grid) {
    const int n = static_cast<int>(grid.slices.size());
    std::vector<EdgeEstimate> edges;
    int i = 0;
    while (i < n) {
        if (!se.occupied[i]) {
            ++i;
            continue;
        }
        int j = i;
        while (j + 1 < n && se.occupied[j + 1]) ++j;

        EdgeEstimate rise;
        rise.direction = EdgeDirection::rising;
        rise.slice_index = i;
        if (i == 0) {
            rise.f_approx = 0.0;
            rise.quality = EdgeQuality::boundary;
        } else {
            rise.f_approx = grid.slices[i].center_freq();
            rise.quality = EdgeQuality::slice_center;
        }
        edges.push_back(rise);

        EdgeEstimate fall;
        fall.direction = EdgeDirection::falling;
        fall.slice_index = j;
        if (j == n - 1) {
            fall.f_approx = 1.0;
            fall.quality = EdgeQuality::boundary;
        } else {
            fall.f_approx = grid.slices[j].center_freq();
            fall.quality = EdgeQuality::slice_center;
        }
        edges.push_back(fall);
        i = j + 1;
    }
    return edges;
}

EdgeEstimate refine_edge(const EdgeEstimate& e, const SliceEnergies& se,
                         const SliceGrid& grid, const BankConfig& cfg) {
    const int n = static_cast<int>(grid.slices.size());
    const int s = e.slice_index;
    if (s < 0 || s >= n) throw std::invalid_argument("refine_edge: bad slice index");
    const bool rising = (e.direction == EdgeDirection::rising);
    const Slice& slice = grid.slices[s];

    EdgeEstimate out = e;

    // nearest neighbor on the channel side; it must be occupied and itself
    // interior to the channel (the slice beyond it still occupied, or the
    // channel pinned at the axis end)
    const int nb = rising ? s + 1 : s - 1;
    const int beyond = rising ? nb + 1 : nb - 1;
    const bool nb_ok = nb >= 0 && nb < n && se.occupied[nb] &&
                       (beyond < 0 || beyond >= n || se.occupied[beyond]);
    if (!nb_ok) {
        out.f_approx = slice.center_freq();
        out.quality = EdgeQuality::fallback;
        return out;
    }

    // Pool the density over the nearest interior slices: single annulus
    // neighbors sit against a subband crossover and under-read by the
    // transition dip, which would bias the interpolated edge.
    constexpr double kDensityPoolWidth = 0.05;
    double e_sum = 0.0, w_sum = 0.0;
    for (int j = nb; j >= 0 && j < n; j += rising ? 1 : -1) {
        const int past = rising ? j + 1 : j - 1;
        const bool interior =
            se.occupied[j] && (past < 0 || past >= n || se.occupied[past]);
        if (!interior) break;
        e_sum += se.e[j];
        w_sum += grid.slices[j].width();
        if (w_sum >= kDensityPoolWidth) break;
    }
    const double rho = std::max(e_sum - cfg.noise_var * se.n_effective * w_sum, 0.0) / w_sum;
    if (rho <= 0.0) {
        out.f_approx = slice.center_freq();
        out.quality = EdgeQuality::degenerate;
        return out;
    }

    const double noise_s = cfg.noise_var * se.n_effective * slice.width();
    double u = (se.e[s] - noise_s) / rho;
    u = std::clamp(u, 0.0, slice.width());
    out.f_approx = rising ? slice.hi - u : slice.lo + u;
    out.quality = EdgeQuality::refined;
    return out;
}

double error_metric(double f_actual, double f_approx) {
    if (f_actual < 0.0 || f_actual > 1.0 || f_approx < 0.0 || f_approx > 1.0)
        throw std::invalid_argument("error_metric: frequencies must be in [0,1]");
    return std::abs(f_actual - f_approx) * 100.0;
}

std::string edges_csv_header() {
    return "stage,direction,slice_lo,slice_hi,f_approx,confidence";
}

std::string edge_to_csv_row(const EdgeEstimate& e, const SliceGrid& grid) {
    const Slice& s = grid.slices[static_cast<size_t>(e.slice_index)];
    char buf[160];
    std::snprintf(buf, sizeof buf, "%d,%s,%.17g,%.17g,%.17g,%s", e.stage,
                  to_string(e.direction), s.lo, s.hi, e.f_approx,
                  to_string(e.quality));
    return buf;
}

std::string edges_to_csv(std::span<const EdgeEstimate> edges, const SliceGrid& grid) {
    std::ostringstream os;
    os << edges_csv_header() << "\n";
    for (const auto& e : edges) os << edge_to_csv_row(e, grid) << "\n";
    return os.str();
}

} // namespace specsense
