#include "specsense/sensing.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace specsense {

std::vector<std::vector<int>> stage_schedule(const std::vector<int>& d_set) {
    if (d_set.empty()) throw std::invalid_argument("stage_schedule: empty d_set");
    const int mid = static_cast<int>(d_set.size()) / 2;
    std::vector<std::vector<int>> stages;
    int lo = mid, hi = mid;
    stages.push_back({d_set[mid]});
    while (lo > 0 || hi + 1 < static_cast<int>(d_set.size())) {
        lo = std::max(0, lo - 1);
        hi = std::min(static_cast<int>(d_set.size()) - 1, hi + 1);
        stages.emplace_back(d_set.begin() + lo, d_set.begin() + hi + 1);
    }
    return stages;
}

double max_error_vs_truth(const std::vector<EdgeEstimate>& edges,
                          const Scenario& truth) {
    double worst = 0.0;
    for (const auto& ch : truth.channels) {
        for (int side = 0; side < 2; ++side) {
            const double f_true = side == 0 ? ch.f_rising : ch.f_falling;
            const auto dir = side == 0 ? EdgeDirection::rising : EdgeDirection::falling;
            double best = 100.0; // no matching edge counts as a full-scale miss
            for (const auto& e : edges)
                if (e.direction == dir)
                    best = std::min(best, error_metric(f_true, e.f_approx));
            worst = std::max(worst, best);
        }
    }
    return worst;
}

long cycle_input_length(const BankConfig& cfg,
                        const std::vector<SubbandFilterSet>& banks) {
    long per_row_max = 0, total = 0;
    for (const auto& b : banks) {
        const long need = cfg.n_samples + b.group_delay_samples;
        per_row_max = std::max(per_row_max, need);
        total += need;
    }
    return cfg.fresh_samples_per_row ? total : per_row_max;
}

CycleResult run_cycle(std::span<const double> x, const BankConfig& cfg,
                      const std::vector<SubbandFilterSet>& banks,
                      const Scenario* truth, int max_stages) {
    cfg.validate();
    if (banks.size() != cfg.d_set.size())
        throw std::invalid_argument("run_cycle: need one bank per D in d_set");
    if (static_cast<long>(x.size()) < cycle_input_length(cfg, banks))
        throw std::invalid_argument("run_cycle: input too short for the cycle");

    auto bank_of = [&](int d) -> const SubbandFilterSet& {
        for (const auto& b : banks)
            if (b.decimation == d) return b;
        throw std::invalid_argument("run_cycle: no bank for D=" + std::to_string(d));
    };

    auto schedule = stage_schedule(cfg.d_set);
    if (max_stages >= 0 && static_cast<int>(schedule.size()) > max_stages)
        schedule.resize(max_stages);

    CycleResult result;
    result.p.bands = cfg.bands();
    long elapsed = 0;
    long fresh_offset = 0;

    std::vector<int> measured;
    for (const auto& subset : schedule) {
        for (int d : subset) {
            if (std::find(measured.begin(), measured.end(), d) != measured.end())
                continue;
            const auto& bank = bank_of(d);
            const long need = cfg.n_samples + bank.group_delay_samples;
            std::span<const double> seg =
                cfg.fresh_samples_per_row ? x.subspan(fresh_offset, need)
                                          : x.subspan(0, need);
            if (cfg.fresh_samples_per_row) fresh_offset += need;
            add_row(result.p, bank, seg, cfg);
            measured.push_back(d);
            elapsed += need; // serial reconfiguration: each row costs N + delay
        }

        StageResult stage;
        stage.d_subset = subset;
        stage.elapsed_samples = elapsed;

        const auto grid = slice_grid(cfg, subset);
        const auto se = slice_energies(result.p, grid, cfg);
        auto edges = find_edges(se, grid);
        for (auto& e : edges) {
            e = refine_edge(e, se, grid, cfg);
            e.stage = static_cast<int>(result.stages.size()) + 1;
        }
        stage.edges = std::move(edges);
        if (truth != nullptr)
            stage.max_error_pct = max_error_vs_truth(stage.edges, *truth);
        result.stages.push_back(std::move(stage));
    }
    return result;
}

CycleResult run_cycle(std::span<const double> x, const BankConfig& cfg,
                      const Scenario* truth, int max_stages) {
    return run_cycle(x, cfg, build_all_banks(cfg), truth, max_stages);
}

std::string stages_to_csv(const CycleResult& r) {
    std::ostringstream os;
    os << "stage,elapsed_samples,max_error_pct\n";
    char buf[64];
    for (size_t i = 0; i < r.stages.size(); ++i) {
        os << (i + 1) << ',' << r.stages[i].elapsed_samples << ',';
        if (r.stages[i].max_error_pct) {
            std::snprintf(buf, sizeof buf, "%.17g", *r.stages[i].max_error_pct);
            os << buf;
        }
        os << "\n";
    }
    return os.str();
}

} // namespace specsense
