#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "specsense/filter_design.hpp"
#include "specsense/filterbank.hpp"

using namespace specsense;

namespace {

struct Template {
    double pass_dev_db;
    double stop_atten_db;
};

// direct DTFT template measurement on a dense grid (the oracle the design
// must satisfy)
Template measure(const FirFilter& h, double f_pass, double f_stop) {
    const auto grid = uniform_grid(4096);
    const auto resp = freq_response(h, grid);
    Template t{0.0, 1e9};
    for (size_t i = 0; i < grid.size(); ++i) {
        const double db = magnitude_db(resp[i]);
        if (grid[i] <= f_pass) t.pass_dev_db = std::max(t.pass_dev_db, std::abs(db));
        if (grid[i] >= f_stop) t.stop_atten_db = std::min(t.stop_atten_db, -db);
    }
    return t;
}

double mag_at(const FirFilter& h, double f) {
    const std::vector<double> grid{f};
    return std::abs(freq_response(h, grid)[0]);
}

const FilterSpec kModalSpec{0.1, 0.115, 30.0};

} // namespace

TEST_CASE("design_lowpass meets the modal template") {
    const auto h = design_lowpass(kModalSpec);
    CHECK(h.length() % 2 == 1);
    CHECK(h.is_symmetric());
    const auto t = measure(h, 0.1, 0.115);
    CHECK(t.pass_dev_db <= 0.5);
    CHECK(t.stop_atten_db >= 30.0);
}

TEST_CASE("design_lowpass with a wide transition gives a very short filter") {
    const auto h = design_lowpass(FilterSpec{0.25, 0.75, 30.0});
    CHECK(h.length() < 21);
    const double mid_db = 20.0 * std::log10(mag_at(h, 0.5));
    CHECK(mid_db < -0.5);
    CHECK(mid_db > -30.0);
}

TEST_CASE("design_lowpass rejects infeasible specs") {
    CHECK_THROWS_AS((void)design_lowpass(FilterSpec{0.2, 0.1, 30.0}),
                    std::invalid_argument);
    CHECK_THROWS_AS((void)design_lowpass(FilterSpec{0.1, 0.115, 20.0}),
                    std::invalid_argument);
}

TEST_CASE("design_lowpass honors the length granularity") {
    const auto h = design_lowpass(kModalSpec, 840);
    CHECK((h.length() - 1) % 840 == 0);
    CHECK(h.length() % 2 == 1);
    const auto t = measure(h, 0.1, 0.115);
    CHECK(t.stop_atten_db >= 30.0);
}

TEST_CASE("complement of the modal filter is highpass with matching template") {
    const auto h = design_lowpass(kModalSpec);
    const auto c = complementary(h);
    // margin for the passband ripple surviving in the complement's stopband
    const auto grid = uniform_grid(4096);
    const auto resp = freq_response(c, grid);
    for (size_t i = 0; i < grid.size(); ++i) {
        const double db = magnitude_db(resp[i]);
        if (grid[i] <= 0.1 - 0.005) CHECK(db <= -28.0);
        if (grid[i] >= 0.115 + 0.005) CHECK(db >= -0.5);
    }
}

TEST_CASE("CD-II stretches the modal passband edge by D") {
    const auto h = design_lowpass(kModalSpec);
    for (int d : {3, 4, 5, 6, 7}) {
        const auto g = coeff_decimate_ii(h, d, 0.115);
        const double dc = mag_at(g, 0.0);
        // -3 dB edge relative to DC lies within one stretched transition of
        // d * f_pass
        const double trans = 0.015 * d;
        double edge = 0.0;
        const auto grid = uniform_grid(4096);
        const auto resp = freq_response(g, grid);
        for (size_t i = 0; i < grid.size(); ++i) {
            if (std::abs(resp[i]) / dc < std::sqrt(0.5)) {
                edge = grid[i];
                break;
            }
        }
        CHECK(edge > 0.1 * d - trans);
        CHECK(edge < 0.1 * d + trans);
    }
}

TEST_CASE("decimated-then-interpolated modal has images at k/4 with stretched width") {
    const BankConfig cfg;
    const auto h = design_bank_modal(cfg.spec, modal_length_granularity(cfg.d_set));
    const int d = 5;
    auto g = coeff_decimate_ii(h, d, cfg.spec.f_stop);
    // unit DC gain as assembled in the bank
    double dc = 0.0;
    for (double v : g.coeffs) dc += v;
    for (double& v : g.coeffs) v /= dc;
    const auto mb = interpolate(g, 8);
    CHECK(mb.coeffs.size() == (g.coeffs.size() - 1) * 8 + 1);

    // half-width 0.1*D/8 = 0.0625 around centers {0, 0.25, 0.5, 0.75, 1}
    const double hw = 0.1 * d / 8.0;
    const auto grid = uniform_grid(4096);
    const auto resp = freq_response(mb, grid);
    const double tw = 0.015 * d / 8.0;
    for (size_t i = 0; i < grid.size(); ++i) {
        const double f = grid[i];
        double dist = 1.0;
        for (int k = 0; k <= 4; ++k) dist = std::min(dist, std::abs(f - k * 0.25));
        const double db = magnitude_db(resp[i]);
        if (dist < hw - tw) CHECK(db > -1.0);
        if (dist > hw + tw) CHECK(db < -30.0);
    }
}

TEST_CASE("masking geometry covers the widest subband and rejects the image") {
    const BankConfig cfg;
    const auto geom = masking_geometry(cfg);
    CHECK(geom.pass_halfwidth >= 0.0875);
    CHECK(geom.stop_offset <= 0.25 - 0.0875);
    CHECK(geom.pass_halfwidth == doctest::Approx(0.09).epsilon(1e-12));
    CHECK(geom.stop_offset == doctest::Approx(0.16).epsilon(1e-12));
}

TEST_CASE("masking filter for band 0 is lowpass meeting its template") {
    const BankConfig cfg;
    const auto h = design_masking(0, cfg);
    CHECK(h.is_symmetric(1e-15));
    const auto t = measure(h, 0.0875, 0.1625);
    CHECK(t.pass_dev_db <= 0.5);
    CHECK(t.stop_atten_db >= 30.0);
}

TEST_CASE("masking filter for band 4 is symmetric around 0.5") {
    const BankConfig cfg;
    const auto h = design_masking(4, cfg);
    const auto grid = uniform_grid(1024);
    const auto resp = freq_response(h, grid);
    for (size_t i = 0; i < grid.size() / 2; ++i) {
        const double m1 = std::abs(resp[i]);
        const double m2 = std::abs(resp[grid.size() - 1 - i]);
        CHECK(m1 == doctest::Approx(m2).epsilon(1e-9));
    }
    CHECK(mag_at(h, 0.5) == doctest::Approx(1.0).epsilon(0.02));
}

TEST_CASE("masking rejects out-of-range bands; valid configs stay feasible") {
    const BankConfig cfg;
    CHECK_THROWS_AS((void)design_masking(9, cfg), std::invalid_argument);
    CHECK_THROWS_AS((void)design_masking(-1, cfg), std::invalid_argument);

    // the validation constraint D*f_stop <= 1 guarantees an image gap, so a
    // near-degenerate template still yields pass < stop
    BankConfig tight = cfg;
    tight.spec.f_pass = 0.124;
    tight.spec.f_stop = 0.1249;
    tight.d_set = {3, 4, 5, 6, 7};
    const auto geom = masking_geometry(tight);
    CHECK(geom.pass_halfwidth < geom.stop_offset);
}

TEST_CASE("cascade of multiband and masking isolates one band") {
    // (D=5, k=3): single band on [0.3125, 0.4375], out-of-band <= -30 dB
    const BankConfig cfg;
    const auto set = build_bank(cfg, 5);
    const auto& cascade = set.cascades[3];
    const auto grid = uniform_grid(4096);
    const auto resp = freq_response(cascade, grid);
    const double tw = 0.015 * 5 / 8.0;
    for (size_t i = 0; i < grid.size(); ++i) {
        const double f = grid[i];
        const double db = magnitude_db(resp[i]);
        if (f > 0.3125 + tw && f < 0.4375 - tw) CHECK(db > -1.0);
        if (f < 0.3125 - tw || f > 0.4375 + tw) CHECK(db < -30.0);
    }
}

TEST_CASE("every designed filter is exactly symmetric") {
    const BankConfig cfg;
    const auto bf = design_bank_filters(cfg);
    CHECK(bf.modal.is_symmetric());
    for (const auto& mk : bf.masking) CHECK(mk.is_symmetric(1e-15));
    for (int d : cfg.d_set) {
        const auto g = coeff_decimate_ii(bf.modal, d, cfg.spec.f_stop);
        CHECK(g.is_symmetric());
        CHECK(g.length() % 2 == 1);
        CHECK(interpolate(g, cfg.m).is_symmetric());
    }
}

TEST_CASE("bank modal transition matches the designed prototype") {
    const BankConfig cfg;
    const auto bf = design_bank_filters(cfg);
    const double t = bank_modal_transition(cfg);
    CHECK(t > 0.0);
    CHECK(t < cfg.spec.f_stop - cfg.spec.f_pass);
    // realized -6 dB point sits at f_pass by the symmetric-anchor rule
    double cutoff = 0.0;
    const auto grid = uniform_grid(8192);
    const auto resp = freq_response(bf.modal, grid);
    for (size_t i = 0; i < grid.size(); ++i)
        if (std::abs(resp[i]) < 0.5) {
            cutoff = grid[i];
            break;
        }
    CHECK(cutoff == doctest::Approx(cfg.spec.f_pass).epsilon(0.02));
}
