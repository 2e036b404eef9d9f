// Slice grid construction, slice energies from the P matrix, threshold
// occupancy, the serial edge search, and prediction-based refinement.
//
// A "slice" is an interval of the Nyquist axis whose energy is obtainable by
// subtracting nested subband energies across decimation factors. Even-band
// intervals widen with D, odd-band intervals narrow with D; the intersections
// partition [0,1] into center slices (the innermost interval around each band
// center) and annulus slices between consecutive D edges.

#pragma once

#include <span>
#include <string>
#include <vector>

#include "specsense/config.hpp"
#include "specsense/energy.hpp"

namespace specsense {

enum class SliceKind { center, annulus };

struct Slice {
    double lo = 0.0;
    double hi = 0.0;
    SliceKind kind = SliceKind::center;
    int band = -1;     // center: the band; annulus: the band whose center lies below
    int d_narrow = 0;  // center slices: narrowest D for this band's parity
    int d_inner = 0;   // annulus: nested pair of decimation factors
    int d_outer = 0;
    int partner = -1;  // annulus: mirror slice through the band center, -1 if none

    double width() const { return hi - lo; }
    double center_freq() const { return 0.5 * (lo + hi); }
};

struct SliceGrid {
    std::vector<Slice> slices;   // ascending, contiguous, covering [0,1]
    std::vector<int> d_subset;   // the D values that induced the grid
    int bands = 0;

    // containment with [lo, hi) half-open slices; f = 1 maps to the last slice
    int slice_index_of(double f) const;
};

// Grid induced by a contiguous d_set subrange containing the middle D.
SliceGrid slice_grid(const BankConfig& cfg, const std::vector<int>& d_subset);

struct SliceEnergies {
    std::vector<double> e;         // clamped at 0
    std::vector<double> e_raw;     // before clamping (subtraction noise intact)
    std::vector<double> threshold; // T_x = gamma * sigma^2 * N * width_x
    std::vector<bool> occupied;
    int n_effective = 0;           // samples behind each energy entry
};

// Serial left-to-right resolution: center slices read the narrowest band's P
// entry directly; each annulus subtracts the nested band and the already
// resolved mirror slice on the far side of the band center.
SliceEnergies slice_energies(const EnergyMatrix& p, const SliceGrid& grid,
                             const BankConfig& cfg);

enum class EdgeDirection { rising, falling };
enum class EdgeQuality {
    slice_center, // unrefined: center of the containing slice
    boundary,     // pinned to f = 0 or f = 1 by occupancy reaching the axis end
    refined,      // prediction refinement applied
    fallback,     // no fully occupied neighbor; slice center, low confidence
    degenerate,   // neighbor density was zero; slice center
};

const char* to_string(EdgeDirection d);
const char* to_string(EdgeQuality q);

struct EdgeEstimate {
    EdgeDirection direction = EdgeDirection::rising;
    int slice_index = -1;
    double f_approx = 0.0;
    int stage = 0; // filled by the sensing cycle
    EdgeQuality quality = EdgeQuality::slice_center;
};

// Serial occupancy scan. A 0->1 transition yields a rising edge in the newly
// occupied slice, 1->0 a falling edge in the last occupied slice; occupancy
// touching slice 0 (or the last slice) pins an edge to f = 0 (f = 1).
// Estimates alternate rising/falling starting with rising.
std::vector<EdgeEstimate> find_edges(const SliceEnergies& se, const SliceGrid& grid);

// Flat-PSD interpolation: the in-channel density estimated from the nearest
// fully occupied neighbor slice positions the edge inside its slice.
EdgeEstimate refine_edge(const EdgeEstimate& e, const SliceEnergies& se,
                         const SliceGrid& grid, const BankConfig& cfg);

// Percentage error between true and estimated edge (both Nyquist-normalized).
double error_metric(double f_actual, double f_approx);

// columns: stage,direction,slice_lo,slice_hi,f_approx,confidence
std::string edges_to_csv(std::span<const EdgeEstimate> edges, const SliceGrid& grid);
std::string edges_csv_header();
std::string edge_to_csv_row(const EdgeEstimate& e, const SliceGrid& grid);

} // namespace specsense
