#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "specsense/edge_detect.hpp"
#include "specsense/energy.hpp"
#include "specsense/signal_gen.hpp"

using namespace specsense;

TEST_CASE("decision_metric definition") {
    CHECK(decision_metric(std::vector<double>{1.0, -2.0, 2.0}) == 9.0);
    CHECK(decision_metric(std::vector<double>(64, 0.0)) == 0.0);
}

TEST_CASE("decision_metric of unit-variance noise concentrates at N") {
    // chi-square concentration: N=65536 within 2%, checked per seed
    const long n = 65536;
    for (int s = 1; s <= 20; ++s) {
        GaussianRng rng(substream_seed(77, s));
        std::vector<double> x(n);
        for (double& v : x) v = rng();
        CHECK(decision_metric(x) == doctest::Approx(double(n)).epsilon(0.02));
    }
}

TEST_CASE("measure_row of zeros is all zeros") {
    const BankConfig cfg;
    const auto set = build_bank(cfg, 5);
    const std::vector<double> x(cfg.n_samples + set.group_delay_samples, 0.0);
    for (double v : measure_row(set, x, cfg)) CHECK(v == 0.0);
}

TEST_CASE("measure_row rejects short input") {
    const BankConfig cfg;
    const auto set = build_bank(cfg, 5);
    const std::vector<double> x(cfg.n_samples, 0.0);
    CHECK_THROWS_AS((void)measure_row(set, x, cfg), std::invalid_argument);
}

TEST_CASE("noise-only rows at D=5: interior bands hold sigma^2*N/8 each") {
    BankConfig cfg;
    const auto set = build_bank(cfg, 5);
    const int seeds = 20;
    std::vector<double> mean(set.bands(), 0.0);
    for (int s = 1; s <= seeds; ++s) {
        Scenario sc;
        sc.noise_var = 1.0;
        sc.seed = 4000 + s;
        sc.n_total = cfg.n_samples + set.group_delay_samples;
        const auto x = generate(sc);
        const auto row = measure_row(set, x, cfg);
        for (int k = 0; k < set.bands(); ++k) mean[k] += row[k] / seeds;
    }
    for (int k = 1; k < 8; ++k)
        CHECK(mean[k] == doctest::Approx(cfg.n_samples * 0.125).epsilon(0.15));
}

TEST_CASE("a channel covering band 4 dominates its row by 20 dB") {
    BankConfig cfg;
    const auto set = build_bank(cfg, 5);
    Scenario sc;
    sc.noise_var = 1e-6; // high SNR construction
    sc.channels = {{0.4375, 0.5625, 60.0}};
    sc.seed = 11;
    sc.n_total = cfg.n_samples + set.group_delay_samples;
    const auto x = generate(sc);
    const auto row = measure_row(set, x, cfg);
    for (int k = 0; k < set.bands(); ++k) {
        if (k == 4) continue;
        CHECK(10.0 * std::log10(row[4] / row[k]) > 20.0);
    }
}

TEST_CASE("row additivity against the periodogram oracle") {
    // sum_k P[D][k] equals the oracle total in-range energy within 10%
    BankConfig cfg;
    const auto banks = build_all_banks(cfg);
    Scenario sc = make_preset("input1", 10.0, 1.0, 21,
                              cfg.n_samples + banks.front().group_delay_samples);
    const auto x = generate(sc);
    const auto grid = slice_grid(cfg, cfg.d_set);
    for (const auto& set : banks) {
        const auto row = measure_row(set, x, cfg);
        double row_sum = 0.0;
        for (double v : row) row_sum += v;

        const auto seg = std::span<const double>(x).subspan(
            set.group_delay_samples, cfg.n_samples);
        const auto oracle = oracle_spectrum(seg, grid);
        double total = 0.0;
        for (double v : oracle) total += v;
        CHECK(row_sum == doctest::Approx(total).epsilon(0.10));
    }
}

TEST_CASE("monotonicity in D for wideband noise") {
    // even-k nondecreasing, odd-k nonincreasing in expectation (10% slack)
    BankConfig cfg;
    cfg.n_samples = 4096;
    const auto banks = build_all_banks(cfg);
    const int seeds = 20;
    std::vector<std::vector<double>> mean(banks.size(),
                                          std::vector<double>(cfg.bands(), 0.0));
    for (int s = 1; s <= seeds; ++s) {
        Scenario sc;
        sc.noise_var = 1.0;
        sc.seed = 600 + s;
        sc.n_total = cfg.n_samples + banks.front().group_delay_samples;
        const auto x = generate(sc);
        for (size_t b = 0; b < banks.size(); ++b) {
            const auto row = measure_row(banks[b], x, cfg);
            for (int k = 0; k < cfg.bands(); ++k) mean[b][k] += row[k] / seeds;
        }
    }
    for (size_t b = 0; b + 1 < banks.size(); ++b)
        for (int k = 0; k < cfg.bands(); ++k) {
            if (k % 2 == 0)
                CHECK(mean[b + 1][k] >= mean[b][k] * 0.9);
            else
                CHECK(mean[b + 1][k] <= mean[b][k] * 1.1);
        }
}

TEST_CASE("EnergyMatrix CSV serialization") {
    EnergyMatrix p;
    p.bands = 3;
    p.n_effective = 4;
    p.rows[5] = {1.0, 0.5, 0.25};
    p.rows[3] = {2.0, 1.0, 0.125};
    CHECK(p.to_csv() == "D,k0,k1,k2\n3,2,1,0.125\n5,1,0.5,0.25\n");
    CHECK(p.at(5, 1) == 0.5);
    CHECK_THROWS_AS((void)p.row(4), std::invalid_argument);
}
