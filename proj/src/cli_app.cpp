#include "specsense/cli_app.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "specsense/analysis.hpp"
#include "specsense/edge_detect.hpp"
#include "specsense/filter_design.hpp"
#include "specsense/sensing.hpp"
#include "specsense/signal_gen.hpp"

namespace fs = std::filesystem;

namespace specsense {

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitConfig = 3;
constexpr int kExitRuntime = 4;

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

} // namespace

BankConfig config_from_text(const std::string& text) {
    BankConfig cfg;
    std::istringstream is(text);
    std::string line;
    while (std::getline(is, line)) {
        line = trim(line);
        if (line.empty() || line[0] == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw ConfigError("config: bad line: " + line);
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        if (key == "m") cfg.m = std::stoi(val);
        else if (key == "d_set") {
            cfg.d_set.clear();
            std::istringstream ds(val);
            std::string tok;
            while (std::getline(ds, tok, ',')) cfg.d_set.push_back(std::stoi(trim(tok)));
        } else if (key == "f_pass") cfg.spec.f_pass = std::stod(val);
        else if (key == "f_stop") cfg.spec.f_stop = std::stod(val);
        else if (key == "atten_db") cfg.spec.atten_db = std::stod(val);
        else if (key == "n_samples") cfg.n_samples = std::stoi(val);
        else if (key == "noise_var") cfg.noise_var = std::stod(val);
        else if (key == "threshold_margin") cfg.threshold_margin = std::stod(val);
        else if (key == "fresh_samples_per_row")
            cfg.fresh_samples_per_row = (val == "1" || val == "true");
        else throw ConfigError("config: unknown key: " + key);
    }
    cfg.validate();
    return cfg;
}

BankConfig load_config(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw ConfigError("cannot open config file: " + path);
    std::ostringstream os;
    os << f.rdbuf();
    return config_from_text(os.str());
}

void atomic_write_file(const std::string& path, const std::string& content) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) throw std::runtime_error("cannot write file: " + tmp);
        f << content;
        if (!f) throw std::runtime_error("short write: " + tmp);
    }
    fs::rename(tmp, path);
}

std::string RunManifest::to_json() const {
    nlohmann::json j;
    j["command"] = command;
    j["config"] = config_path;
    j["scenario"] = scenario;
    j["seed"] = seed;
    j["out_dir"] = out_dir;
    j["files"] = files;
    return j.dump(2) + "\n";
}

namespace {

struct CommonArgs {
    std::string config_path;
    std::string preset;
    std::string scenario_path;
    std::uint64_t seed = 1;
    double snr_db = 10.0;
    int samples = 0; // 0 = keep config value
    int stages = -1; // -1 = all
    std::string out_dir = "out";
};

void add_common_flags(CLI::App* sub, CommonArgs& a, bool with_scenario) {
    sub->add_option("--config", a.config_path, "bank configuration file (key=value)");
    if (with_scenario) {
        sub->add_option("--preset", a.preset, "built-in scenario: input1 or input2");
        sub->add_option("--scenario", a.scenario_path, "scenario file path");
        sub->add_option("--snr-db", a.snr_db, "per-channel SNR for presets (dB)")
            ->capture_default_str();
    }
    sub->add_option("--seed", a.seed, "generator seed")->capture_default_str();
    sub->add_option("--samples", a.samples, "samples per energy measurement (N)");
    sub->add_option("--out", a.out_dir, "output directory")->capture_default_str();
}

BankConfig resolve_config(const CommonArgs& a) {
    BankConfig cfg = a.config_path.empty() ? BankConfig{} : load_config(a.config_path);
    if (a.samples > 0) cfg.n_samples = a.samples;
    cfg.validate();
    return cfg;
}

// Preset scenarios get exactly the samples one cycle needs; file scenarios
// must already be long enough. The config's noise floor follows the scenario.
Scenario resolve_scenario(const CommonArgs& a, BankConfig& cfg, long needed) {
    if (!a.preset.empty() && !a.scenario_path.empty())
        throw ConfigError("give either --preset or --scenario, not both");
    if (!a.preset.empty()) {
        if (!is_preset_name(a.preset)) throw ConfigError("unknown preset: " + a.preset);
        return make_preset(a.preset, a.snr_db, cfg.noise_var, a.seed, needed);
    }
    if (!a.scenario_path.empty()) {
        Scenario s;
        try {
            s = load_scenario(a.scenario_path);
        } catch (const std::exception& e) {
            throw ConfigError(e.what());
        }
        s.seed = a.seed;
        if (s.n_total < needed)
            throw ConfigError("scenario n_total too small; need >= " +
                              std::to_string(needed));
        cfg.noise_var = s.noise_var;
        return s;
    }
    throw ConfigError("a scenario is required: --preset input1|input2 or --scenario FILE");
}

void write_outputs(RunManifest& manifest,
                   const std::vector<std::pair<std::string, std::string>>& files) {
    fs::create_directories(manifest.out_dir);
    for (const auto& [name, content] : files) {
        const std::string path = (fs::path(manifest.out_dir) / name).string();
        atomic_write_file(path, content);
        manifest.files.push_back(name);
    }
    manifest.files.push_back("manifest.json");
    atomic_write_file((fs::path(manifest.out_dir) / "manifest.json").string(),
                      manifest.to_json());
}

int cmd_sense(const CommonArgs& a) {
    BankConfig cfg = resolve_config(a);
    const auto banks = build_all_banks(cfg);
    const long needed = cycle_input_length(cfg, banks);
    const Scenario scenario = resolve_scenario(a, cfg, needed);

    const auto x = generate(scenario);
    const auto result = run_cycle(x, cfg, banks, &scenario, a.stages);

    std::ostringstream edges_csv;
    edges_csv << edges_csv_header() << "\n";
    for (const auto& st : result.stages) {
        const auto grid = slice_grid(cfg, st.d_subset);
        for (const auto& e : st.edges) edges_csv << edge_to_csv_row(e, grid) << "\n";
    }

    RunManifest manifest;
    manifest.command = "sense";
    manifest.config_path = a.config_path.empty() ? "default" : a.config_path;
    manifest.scenario = a.preset.empty() ? a.scenario_path : a.preset;
    manifest.seed = scenario.seed;
    manifest.out_dir = a.out_dir;
    write_outputs(manifest, {{"edges.csv", edges_csv.str()},
                             {"error_vs_time.csv", stages_to_csv(result)},
                             {"pmatrix.csv", result.p.to_csv()}});
    return kExitOk;
}

struct EdgeStat {
    double f_actual = 0.0;
    EdgeDirection direction = EdgeDirection::rising;
    double sum_f = 0.0;
    double sum_err = 0.0;
    double max_err = 0.0;
    int n = 0;
};

int cmd_tables(const CommonArgs& a, int seeds) {
    BankConfig cfg = resolve_config(a);
    const auto banks = build_all_banks(cfg);
    const long needed = cycle_input_length(cfg, banks);

    std::ostringstream table1;
    table1 << "preset,edge_index,direction,f_actual,f_approx_mean,error_mean_pct,"
              "error_max_pct\n";
    std::vector<std::pair<std::string, std::string>> outputs;

    int count_mismatches = 0;
    for (const std::string preset : {"input1", "input2"}) {
        const Scenario proto = make_preset(preset, a.snr_db, cfg.noise_var, 0, needed);
        std::vector<EdgeStat> stats;
        for (const auto& ch : proto.channels) {
            stats.push_back({ch.f_rising, EdgeDirection::rising, 0, 0, 0, 0});
            stats.push_back({ch.f_falling, EdgeDirection::falling, 0, 0, 0, 0});
        }

        std::vector<double> stage_err_sum;
        std::vector<long> stage_elapsed;
        for (int s = 0; s < seeds; ++s) {
            Scenario sc = proto;
            sc.seed = a.seed + static_cast<std::uint64_t>(s);
            const auto x = generate(sc);
            const auto result = run_cycle(x, cfg, banks, &sc, a.stages);

            if (stage_err_sum.empty()) {
                stage_err_sum.assign(result.stages.size(), 0.0);
                stage_elapsed.resize(result.stages.size());
                for (size_t i = 0; i < result.stages.size(); ++i)
                    stage_elapsed[i] = result.stages[i].elapsed_samples;
            }
            for (size_t i = 0; i < result.stages.size(); ++i)
                stage_err_sum[i] += result.stages[i].max_error_pct.value_or(0.0);

            const auto& final_edges = result.stages.back().edges;
            if (final_edges.size() != stats.size()) {
                ++count_mismatches;
                std::cerr << "warning: " << preset << " seed " << sc.seed
                          << ": detected " << final_edges.size() << " edges, expected "
                          << stats.size() << "\n";
                continue;
            }
            for (size_t i = 0; i < stats.size(); ++i) {
                const double err = error_metric(stats[i].f_actual, final_edges[i].f_approx);
                stats[i].sum_f += final_edges[i].f_approx;
                stats[i].sum_err += err;
                stats[i].max_err = std::max(stats[i].max_err, err);
                ++stats[i].n;
            }
        }

        char buf[256];
        for (size_t i = 0; i < stats.size(); ++i) {
            const auto& st = stats[i];
            const int n = std::max(1, st.n);
            std::snprintf(buf, sizeof buf, "%s,%zu,%s,%.17g,%.17g,%.17g,%.17g\n",
                          preset.c_str(), i, to_string(st.direction), st.f_actual,
                          st.sum_f / n, st.sum_err / n, st.max_err);
            table1 << buf;
        }

        std::ostringstream evt;
        evt << "stage,elapsed_samples,max_error_pct\n";
        for (size_t i = 0; i < stage_err_sum.size(); ++i) {
            std::snprintf(buf, sizeof buf, "%zu,%ld,%.17g\n", i + 1, stage_elapsed[i],
                          stage_err_sum[i] / seeds);
            evt << buf;
        }
        outputs.emplace_back("error_vs_time_" + preset + ".csv", evt.str());
    }

    const auto rows = tradeoff_sweep(cfg);
    outputs.emplace_back("table1.csv", table1.str());
    outputs.emplace_back("tradeoff.csv", tradeoff_to_csv(rows));
    outputs.emplace_back("report.txt", complexity_report_text(cfg));

    RunManifest manifest;
    manifest.command = "tables";
    manifest.config_path = a.config_path.empty() ? "default" : a.config_path;
    manifest.scenario = "input1,input2";
    manifest.seed = a.seed;
    manifest.out_dir = a.out_dir;
    write_outputs(manifest, outputs);
    if (count_mismatches > 0)
        std::cerr << "warning: " << count_mismatches
                  << " run(s) with unexpected edge count\n";
    return kExitOk;
}

int cmd_gen(const CommonArgs& a) {
    BankConfig cfg = resolve_config(a);
    const auto banks = build_all_banks(cfg);
    const Scenario scenario = resolve_scenario(a, cfg, cycle_input_length(cfg, banks));
    const auto x = generate(scenario);

    RunManifest manifest;
    manifest.command = "gen";
    manifest.config_path = a.config_path.empty() ? "default" : a.config_path;
    manifest.scenario = a.preset.empty() ? a.scenario_path : a.preset;
    manifest.seed = scenario.seed;
    manifest.out_dir = a.out_dir;

    fs::create_directories(a.out_dir);
    atomic_write_file((fs::path(a.out_dir) / "scenario.txt").string(),
                      scenario_to_text(scenario));
    manifest.files.push_back("scenario.txt");
    save_samples(x, (fs::path(a.out_dir) / "samples.bin").string());
    manifest.files.push_back("samples.bin");
    manifest.files.push_back("manifest.json");
    atomic_write_file((fs::path(a.out_dir) / "manifest.json").string(),
                      manifest.to_json());
    return kExitOk;
}

std::string filter_to_text(const FirFilter& f) {
    std::ostringstream os;
    os << "# kind=" << to_string(f.kind) << " D=" << f.decimation
       << " M=" << f.interpolation << " band=" << f.band << " len=" << f.length()
       << "\n";
    char buf[64];
    for (double c : f.coeffs) {
        std::snprintf(buf, sizeof buf, "%.17g", c);
        os << buf << "\n";
    }
    return os.str();
}

int cmd_dump_bank(const CommonArgs& a, int d) {
    BankConfig cfg = resolve_config(a);
    if (d == 0) d = cfg.middle_d();
    const auto filters = design_bank_filters(cfg);
    const auto set = build_bank(cfg, d);

    std::ostringstream os;
    os << filter_to_text(filters.modal);
    for (const auto& mk : filters.masking) os << filter_to_text(mk);
    for (const auto& c : set.cascades) os << filter_to_text(c);

    RunManifest manifest;
    manifest.command = "dump-bank";
    manifest.config_path = a.config_path.empty() ? "default" : a.config_path;
    manifest.scenario = "";
    manifest.seed = 0;
    manifest.out_dir = a.out_dir;
    write_outputs(manifest, {{"bank_D" + std::to_string(d) + ".txt", os.str()}});
    return kExitOk;
}

} // namespace

int cli_main(int argc, const char* const* argv) {
    CLI::App app{"wideband spectrum sensing with a reconfigurable "
                 "coefficient-decimation filter bank"};
    app.require_subcommand(1);

    CommonArgs sense_args, tables_args, gen_args, bank_args;
    int seeds = 20;
    int bank_d = 0;

    auto* sense = app.add_subcommand("sense", "run one sensing cycle, write edge/"
                                              "energy/time CSVs");
    add_common_flags(sense, sense_args, true);
    sense->add_option("--stages", sense_args.stages, "limit the number of stages");

    auto* tables = app.add_subcommand(
        "tables", "multi-seed edge table, complexity sweep, error-vs-time data");
    add_common_flags(tables, tables_args, true);
    tables->add_option("--stages", tables_args.stages, "limit the number of stages");
    tables->add_option("--seeds", seeds, "number of seeds")->capture_default_str();

    auto* gen = app.add_subcommand("gen", "generate a scenario and raw samples");
    add_common_flags(gen, gen_args, true);

    auto* bank = app.add_subcommand("dump-bank", "write the designed filters");
    add_common_flags(bank, bank_args, false);
    bank->add_option("--d", bank_d, "decimation factor (default: middle of d_set)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (sense->parsed()) return cmd_sense(sense_args);
        if (tables->parsed()) return cmd_tables(tables_args, seeds);
        if (gen->parsed()) return cmd_gen(gen_args);
        if (bank->parsed()) return cmd_dump_bank(bank_args, bank_d);
        return kExitUsage;
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRuntime;
    }
}

} // namespace specsense
