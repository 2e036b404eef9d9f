#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <vector>

#include "specsense/edge_detect.hpp"
#include "specsense/energy.hpp"
#include "specsense/signal_gen.hpp"

using namespace specsense;

TEST_CASE("generation is bit-deterministic in the seed") {
    Scenario sc = make_preset("input1", 10.0, 1.0, 42, 8192);
    const auto a = generate(sc);
    const auto b = generate(sc);
    CHECK(a == b);
    sc.seed = 43;
    CHECK(generate(sc) != a);
}

TEST_CASE("empty channel list gives pure AWGN with the right energy") {
    Scenario sc;
    sc.noise_var = 1.0;
    sc.n_total = 65536;
    sc.seed = 1;
    const auto x = generate(sc);
    CHECK(decision_metric(x) == doctest::Approx(65536.0).epsilon(0.02));
}

TEST_CASE("presets carry the published channel edges") {
    const auto s1 = make_preset("input1", 10.0, 1.0, 0, 4096);
    REQUIRE(s1.channels.size() == 3);
    CHECK(s1.channels[0].f_rising == 0.0);
    CHECK(s1.channels[0].f_falling == 0.13);
    CHECK(s1.channels[1].f_rising == 0.3);
    CHECK(s1.channels[1].f_falling == 0.65);
    CHECK(s1.channels[2].f_rising == 0.78);
    CHECK(s1.channels[2].f_falling == 0.89);

    const auto s2 = make_preset("input2", 10.0, 1.0, 0, 4096);
    REQUIRE(s2.channels.size() == 4);
    CHECK(s2.channels[0].f_rising == 0.06);
    CHECK(s2.channels[0].f_falling == 0.16);
    CHECK(s2.channels[1].f_rising == 0.34);
    CHECK(s2.channels[1].f_falling == 0.49);
    CHECK(s2.channels[2].f_rising == 0.65);
    CHECK(s2.channels[2].f_falling == 0.77);
    CHECK(s2.channels[3].f_rising == 0.89);
    CHECK(s2.channels[3].f_falling == 1.0);

    CHECK_THROWS_AS((void)make_preset("input3", 10.0, 1.0, 0, 4096),
                    std::invalid_argument);
}

TEST_CASE("overlapping channels are rejected") {
    Scenario sc;
    sc.n_total = 1024;
    sc.channels = {{0.1, 0.4, 10.0}, {0.3, 0.6, 10.0}};
    CHECK_THROWS_AS((void)generate(sc), std::invalid_argument);
}

TEST_CASE("channel PSD is flat within 1.5 dB") {
    Scenario sc;
    sc.noise_var = 1e-8;
    sc.channels = {{0.3, 0.65, 80.0}};
    sc.seed = 5;
    sc.n_total = 131072;
    const auto x = generate(sc);
    const auto bins = periodogram(x);
    const size_t nfft = (bins.size() - 1) * 2;

    // average the periodogram into 50 sub-bands spanning the channel interior
    const double lo = 0.3 + 0.01, hi = 0.65 - 0.01;
    const int nb = 50;
    std::vector<double> band(nb, 0.0);
    std::vector<int> count(nb, 0);
    for (size_t k = 0; k < bins.size(); ++k) {
        const double f = 2.0 * double(k) / double(nfft);
        if (f < lo || f >= hi) continue;
        const int b = std::min(nb - 1, int((f - lo) / (hi - lo) * nb));
        band[b] += bins[k];
        ++count[b];
    }
    double mn = 1e300, mx = 0.0;
    for (int b = 0; b < nb; ++b) {
        const double v = band[b] / count[b];
        mn = std::min(mn, v);
        mx = std::max(mx, v);
    }
    CHECK(10.0 * std::log10(mx / mn) <= 1.5);
}

TEST_CASE("out-of-channel leakage is below -40 dB of the in-band PSD") {
    Scenario sc;
    sc.noise_var = 0.0; // isolate the synthesis filter skirt
    sc.channels = {{0.3, 0.65, 0.0}};
    sc.seed = 6;
    sc.n_total = 131072;
    const auto x = generate(sc);
    const auto bins = periodogram(x, /*hann_window=*/true);
    const size_t nfft = (bins.size() - 1) * 2;

    double inband = 0.0;
    long n_in = 0;
    double worst_out = 0.0;
    for (size_t k = 0; k < bins.size(); ++k) {
        const double f = 2.0 * double(k) / double(nfft);
        if (f > 0.31 && f < 0.64) {
            inband += bins[k];
            ++n_in;
        }
    }
    inband /= n_in;
    for (size_t k = 0; k < bins.size(); ++k) {
        const double f = 2.0 * double(k) / double(nfft);
        if (f < 0.29 || f > 0.66) worst_out = std::max(worst_out, bins[k]);
    }
    CHECK(10.0 * std::log10(worst_out / inband) <= -40.0);
}

TEST_CASE("oracle_spectrum: AWGN energy is proportional to slice width") {
    const BankConfig cfg;
    const auto grid = slice_grid(cfg, cfg.d_set);
    const int seeds = 10;
    std::vector<double> mean(grid.slices.size(), 0.0);
    const long n = 65536;
    for (int s = 1; s <= seeds; ++s) {
        Scenario sc;
        sc.noise_var = 1.0;
        sc.seed = 300 + s;
        sc.n_total = n;
        const auto e = oracle_spectrum(generate(sc), grid);
        for (size_t i = 0; i < e.size(); ++i) mean[i] += e[i] / seeds;
    }
    for (size_t i = 0; i < grid.slices.size(); ++i)
        CHECK(mean[i] == doctest::Approx(n * grid.slices[i].width()).epsilon(0.10));
}

TEST_CASE("oracle_spectrum: a single channel concentrates in its slices") {
    const BankConfig cfg;
    const auto grid = slice_grid(cfg, cfg.d_set);
    Scenario sc;
    sc.noise_var = 1e-9;
    sc.channels = {{0.3, 0.65, 90.0}};
    sc.seed = 8;
    sc.n_total = 65536;
    const auto e = oracle_spectrum(generate(sc), grid);
    double total = 0.0, in = 0.0;
    for (size_t i = 0; i < e.size(); ++i) {
        total += e[i];
        if (grid.slices[i].hi > 0.3 && grid.slices[i].lo < 0.65) in += e[i];
    }
    CHECK(in / total >= 0.95);
}

TEST_CASE("oracle_spectrum of zeros is zero") {
    const BankConfig cfg;
    const auto grid = slice_grid(cfg, cfg.d_set);
    const std::vector<double> x(8192, 0.0);
    for (double v : oracle_spectrum(x, grid)) CHECK(v == 0.0);
}

TEST_CASE("scenario text round-trip") {
    Scenario sc = make_preset("input2", 7.5, 0.25, 99, 12345);
    const auto text = scenario_to_text(sc);
    const auto back = scenario_from_text(text);
    CHECK(back.noise_var == sc.noise_var);
    CHECK(back.seed == sc.seed);
    CHECK(back.n_total == sc.n_total);
    REQUIRE(back.channels.size() == sc.channels.size());
    for (size_t i = 0; i < sc.channels.size(); ++i) {
        CHECK(back.channels[i].f_rising == sc.channels[i].f_rising);
        CHECK(back.channels[i].f_falling == sc.channels[i].f_falling);
        CHECK(back.channels[i].snr_db == sc.channels[i].snr_db);
    }
}

TEST_CASE("sample file round-trip with magic header") {
    namespace fs = std::filesystem;
    const auto dir = fs::temp_directory_path() / "specsense_test_sig";
    fs::create_directories(dir);
    const auto path = (dir / "samples.bin").string();

    Scenario sc;
    sc.noise_var = 1.0;
    sc.seed = 17;
    sc.n_total = 1000;
    const auto x = generate(sc);
    save_samples(x, path);

    // header check
    std::FILE* f = std::fopen(path.c_str(), "rb");
    REQUIRE(f != nullptr);
    char magic[8];
    REQUIRE(std::fread(magic, 1, 8, f) == 8);
    std::fclose(f);
    CHECK(std::string(magic, 5) == "WBSIG");
    CHECK(magic[5] == '\0');
    CHECK(magic[6] == '\0');
    CHECK(magic[7] == '\1');

    CHECK(load_samples(path) == x);
    fs::remove_all(dir);
}
