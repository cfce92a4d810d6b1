// mcfplan: sweep crosstalk response, evaluate network throughput, validate
// fiber geometry. One structured config file names every input; flags
// override selected values. Exit codes: 0 ok, 1 validation, 2 runtime.

#include <CLI11.hpp>
#include <mcfplan/mcfplan.hpp>

#include <cstdio>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace {

using namespace mcfplan;

struct Options {
    std::string config;
    std::string out;                       // overrides [files] out_dir
    std::optional<double> reach_km;
    std::vector<double> ratios;
    std::optional<int> lanes;
    std::optional<int> k;
    bool disable_icxt = false;
};

RunConfig load_with_overrides(const Options& opt) {
    RunConfig cfg = load_run_config(opt.config);
    if (!opt.out.empty())
        cfg.out_dir = opt.out;
    if (opt.reach_km) {
        if (!(*opt.reach_km > 0.0))
            throw InvalidInput("--reach-km must be > 0");
        cfg.reach_km = *opt.reach_km;
    }
    if (!opt.ratios.empty())
        cfg.ratios = opt.ratios;
    for (Scenario& sc : cfg.scenarios) {
        if (opt.lanes) {
            if (*opt.lanes < 1)
                throw InvalidInput("--lanes must be >= 1");
            sc.lanes = *opt.lanes;
        }
        if (opt.k) {
            if (*opt.k < 1)
                throw InvalidInput("--k must be >= 1");
            sc.k = *opt.k;
        }
    }
    return cfg;
}

std::string out_path(const RunConfig& cfg, const char* file) {
    namespace fs = std::filesystem;
    fs::create_directories(cfg.out_dir);
    return (fs::path(cfg.out_dir) / file).string();
}

void print_report(const GeometryReport& rep, const std::string& label) {
    std::printf("fiber %-14s %s\n", label.c_str(), rep.ok() ? "PASS" : "FAIL");
    for (const GeometryFinding& f : rep.findings)
        std::printf("  [%s] %s\n", f.hard ? "hard" : "warn", f.what.c_str());
}

// Hard geometry findings on a fiber variant block sweep and evaluate runs.
void require_geometry(const FiberSpec& spec, const GeometryLimits& lim, const std::string& label) {
    const GeometryReport rep = validate_geometry(spec, lim);
    for (const GeometryFinding& f : rep.findings)
        if (f.hard)
            throw InvalidInput("geometry: " + label + ": " + f.what);
}

int run_sweep(const Options& opt) {
    const RunConfig cfg = load_with_overrides(opt);
    const double reach_m = cfg.reach_km * km;

    // Compute everything first so a failure cannot leave partial output.
    std::vector<SweepRow> rows;
    for (const auto& [name, spec] : cfg.fibers) {
        if (!spec.multicore())
            continue;
        for (double ratio : cfg.ratios)
            require_geometry(spec.with_trench_ratio(ratio), cfg.geometry,
                             name + " ratio " + std::to_string(ratio));
        const auto part = sweep_fiber_response(spec, cfg.band, cfg.ratios, reach_m);
        rows.insert(rows.end(), part.begin(), part.end());
        for (double ratio : cfg.ratios) {
            const auto ul = classify_ul_icxt(spec.with_trench_ratio(ratio), cfg.band, reach_m,
                                             cfg.ul_threshold_db);
            std::printf("%s ratio %.2f: worst ICXT %.3f dB at %.3f THz core %d over %.0f km: %s\n",
                        name.c_str(), ratio, ul.worst_mu_db, ul.worst_f_thz, ul.worst_core,
                        cfg.reach_km, ul.is_ul ? "UL" : "not UL");
        }
    }
    if (rows.empty())
        throw InvalidInput("sweep: no multicore fiber in the configuration");

    CsvFile pcc(out_path(cfg, "pcc.csv"), {"fiber", "ratio", "f_THz", "value"});
    CsvFile mcc(out_path(cfg, "mcc.csv"), {"fiber", "ratio", "f_THz", "value"});
    CsvFile icxt(out_path(cfg, "icxt.csv"), {"fiber", "ratio", "f_THz", "value"});
    for (const SweepRow& r : rows) {
        const std::vector<std::string> key = {r.fiber, csv_fixed(r.wtr_ratio), csv_fixed(r.f_thz)};
        auto with = [&key](std::string v) {
            std::vector<std::string> row = key;
            row.push_back(std::move(v));
            return row;
        };
        pcc.row(with(csv_linear(r.pcc_per_m)));
        mcc.row(with(csv_linear(r.mcc_per_m)));
        icxt.row(with(csv_fixed(r.icxt_db)));
    }
    std::printf("wrote %s/pcc.csv %s/mcc.csv %s/icxt.csv (%zu rows each)\n",
                cfg.out_dir.c_str(), cfg.out_dir.c_str(), cfg.out_dir.c_str(), rows.size());
    return 0;
}

int run_evaluate(const Options& opt) {
    const RunConfig cfg = load_with_overrides(opt);

    for (const Scenario& sc : cfg.scenarios) {
        FiberSpec spec = cfg.fibers.at(sc.fiber);
        if (sc.wtr_ratio)
            spec = spec.with_trench_ratio(*sc.wtr_ratio);
        require_geometry(spec, cfg.geometry, "scenario " + sc.name + " fiber " + sc.fiber);
    }

    GnNliEstimator nli;
    EvaluationContext ctx;
    ctx.topo = &cfg.topo;
    ctx.fibers = &cfg.fibers;
    ctx.band = &cfg.band;
    ctx.qot = &cfg.qot;
    ctx.gmi = &cfg.gmi;
    ctx.nli = &nli;
    ctx.disable_icxt_gate = opt.disable_icxt;

    const std::vector<ChannelInfo> channels = cfg.band.channels();
    std::vector<ScenarioResult> results;
    for (const Scenario& sc : cfg.scenarios)
        results.push_back(evaluate_scenario(ctx, sc));

    // MCF vs bundled-pair comparison: a multicore scenario is set against the
    // first single-core scenario with the same lane count and k.
    auto bundled_total = [&](const Scenario& like) -> std::optional<double> {
        for (std::size_t i = 0; i < cfg.scenarios.size(); ++i) {
            const Scenario& sc = cfg.scenarios[i];
            if (!cfg.fibers.at(sc.fiber).multicore() && sc.lanes == like.lanes && sc.k == like.k)
                return results[i].total_gbps;
        }
        return std::nullopt;
    };

    CsvFile tuples(out_path(cfg, "tuples.csv"),
                   {"scenario", "src", "dst", "path_index", "path_km", "channel", "f_THz", "lane",
                    "snr_ase_db", "snr_nli_db", "snr_icxt_db", "mu_icxt_db", "gsnr_db", "m",
                    "bitrate_gbps"});
    CsvFile cpct(out_path(cfg, "cpct.csv"), {"scenario", "src", "dst", "cpct_gbps"});
    CsvFile summary(out_path(cfg, "summary.csv"),
                    {"scenario", "fiber", "lanes", "k", "icxt_gate", "tuples", "rejected",
                     "total_gbps", "mcf_over_bumfp"});

    for (std::size_t i = 0; i < results.size(); ++i) {
        const Scenario& sc = cfg.scenarios[i];
        const ScenarioResult& res = results[i];
        for (const TupleResult& t : res.tuples)
            tuples.row({res.scenario, t.src, t.dst, csv_int(t.path_index), csv_fixed(t.path_km),
                        csv_int(t.channel),
                        csv_fixed(channels[static_cast<std::size_t>(t.channel)].f_thz),
                        csv_int(t.lane), csv_fixed(t.snr_ase_db), csv_fixed(t.snr_nli_db),
                        csv_fixed(t.snr_icxt_db), csv_fixed(t.mu_db), csv_fixed(t.gsnr_db),
                        csv_int(t.m), csv_fixed(t.bitrate_gbps)});
        for (const ConnectionThroughput& c : res.connections)
            cpct.row({res.scenario, c.src, c.dst, csv_fixed(c.cpct_gbps)});

        std::string ratio_cell;
        if (cfg.fibers.at(sc.fiber).multicore()) {
            if (const auto base = bundled_total(sc); base && *base > 0.0)
                ratio_cell = csv_linear(res.total_gbps / *base);
        }
        summary.row({res.scenario, sc.fiber, csv_int(sc.lanes), csv_int(sc.k),
                     opt.disable_icxt ? "off" : "on", csv_int(static_cast<long>(res.tuples.size())),
                     csv_int(res.rejected_tuples), csv_fixed(res.total_gbps), ratio_cell});
        std::printf("%s: fiber %s lanes %d k %d: total %.1f Gbps, %ld of %zu tuples rejected%s%s\n",
                    res.scenario.c_str(), sc.fiber.c_str(), sc.lanes, sc.k, res.total_gbps,
                    res.rejected_tuples, res.tuples.size(),
                    ratio_cell.empty() ? "" : ", vs bundled pairs x",
                    ratio_cell.c_str());
    }
    std::printf("wrote %s/tuples.csv %s/cpct.csv %s/summary.csv\n", cfg.out_dir.c_str(),
                cfg.out_dir.c_str(), cfg.out_dir.c_str());
    return 0;
}

int run_validate(const Options& opt) {
    const RunConfig cfg = load_with_overrides(opt);
    bool all_ok = true;
    for (const auto& [name, spec] : cfg.fibers) {
        const GeometryReport shipped = validate_geometry(spec, cfg.geometry);
        print_report(shipped, name + " (shipped)");
        all_ok = all_ok && shipped.ok();
        if (!spec.multicore())
            continue;
        for (double ratio : cfg.ratios) {
            char label[64];
            std::snprintf(label, sizeof label, "%s ratio %.2f", name.c_str(), ratio);
            const GeometryReport rep = validate_geometry(spec.with_trench_ratio(ratio), cfg.geometry);
            print_report(rep, label);
            all_ok = all_ok && rep.ok();
        }
    }
    std::printf("limits: cladding <= %.1f um, trench separation >= %.1f um, outer margin %.1f um, "
                "band %.3f..%.3f THz, V cutoff %.3f (warning only)\n",
                cfg.geometry.max_cladding_um, cfg.geometry.min_trench_separation_um,
                cfg.geometry.outer_margin_um, cfg.geometry.f_min_thz, cfg.geometry.f_max_thz,
                cfg.geometry.v_cutoff);
    std::printf("%s\n", all_ok ? "geometry: all checks passed" : "geometry: hard violations found");
    return all_ok ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Multicore-fiber network planning: crosstalk sweeps, throughput, geometry"};
    app.require_subcommand(1);

    Options opt;
    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--config", opt.config, "run configuration file")
            ->envname("MCFPLAN_CONFIG")
            ->required()
            ->check(CLI::ExistingFile);
        cmd->add_option("--out", opt.out, "output directory (overrides the config)");
    };

    CLI::App* sweep = app.add_subcommand("sweep", "coupling and crosstalk vs frequency to CSV");
    add_common(sweep);
    sweep->add_option("--reach-km", opt.reach_km, "crosstalk accumulation distance");
    sweep->add_option("--ratios", opt.ratios, "trench width to core radius ratios")
        ->delimiter(',');

    CLI::App* evaluate = app.add_subcommand("evaluate", "scenario throughput over the topology");
    add_common(evaluate);
    evaluate->add_option("--lanes", opt.lanes, "spatial lanes per scenario (override)");
    evaluate->add_option("--k", opt.k, "paths per connection (override)");
    evaluate->add_flag("--disable-icxt", opt.disable_icxt,
                       "drop the crosstalk gate from modulation selection");

    CLI::App* validate = app.add_subcommand("validate", "fiber geometry report");
    add_common(validate);
    validate->add_option("--ratios", opt.ratios, "trench ratios to check")->delimiter(',');

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }

    try {
        if (sweep->parsed())
            return run_sweep(opt);
        if (evaluate->parsed())
            return run_evaluate(opt);
        return run_validate(opt);
    } catch (const Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "unexpected error: %s\n", e.what());
        return 2;
    }
}
