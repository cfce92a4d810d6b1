#pragma once

#include <cmath>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "bandplan.hpp"
#include "errors.hpp"
#include "fiber.hpp"
#include "gmi.hpp"
#include "qot.hpp"
#include "scenario.hpp"
#include "textio.hpp"
#include "topology.hpp"

namespace mcfplan {

// Everything a run needs, loaded and cross-checked up front so a bad
// reference fails before any computation starts. Relative paths in the
// config file resolve against the config file's directory.
struct RunConfig {
    std::string config_path;
    std::string out_dir = "out";

    BandPlan band;
    QotParams qot;
    std::vector<GmiLevel> gmi;
    double penalty_gamma_db = 1.0;   // allowed QoT penalty behind the crosstalk limits
    double gth_db = 6.7280;          // required SNR common to all levels

    double reach_km = 10000.0;       // crosstalk sweep / classification reach
    std::vector<double> ratios = {1.0, 1.5, 2.0};
    double ul_threshold_db = -26.82; // highest-level crosstalk limit
    GeometryLimits geometry;

    std::map<std::string, FiberSpec> fibers;
    Topology topo;
    std::vector<Scenario> scenarios;
};

inline RunConfig load_run_config(const std::string& path) {
    namespace fs = std::filesystem;
    RunConfig cfg;
    cfg.config_path = path;
    const fs::path base = fs::path(path).parent_path();
    auto resolve = [&](const std::string& p) { return (base / p).string(); };

    std::vector<std::string> fiber_paths;
    std::string topology_path, scenario_path;
    bool saw_bands = false, saw_gmi = false;

    for (const TextSection& sec : read_sections(path)) {
        if (sec.header == "files") {
            const KeyValues kv = KeyValues::from(sec, path);
            for (const auto& [k, v] : kv.entries) {
                if (k == "fiber") fiber_paths.push_back(resolve(v.text));
                else if (k == "topology") topology_path = resolve(v.text);
                else if (k == "scenarios") scenario_path = resolve(v.text);
                else if (k == "out_dir") cfg.out_dir = v.text;
                else throw ParseError(line_context(path, v.number) + ": unknown files key '" + k + "'");
            }
        } else if (sec.header == "plan") {
            const KeyValues kv = KeyValues::from(sec, path);
            cfg.band.channel_spacing_ghz = kv.get_double("channel_spacing_ghz", cfg.band.channel_spacing_ghz);
            cfg.band.symbol_rate_gbaud = kv.get_double("symbol_rate_gbaud", cfg.band.symbol_rate_gbaud);
        } else if (sec.header == "bands") {
            saw_bands = true;
            cfg.band.bands.clear();
            for (const TextLine& l : sec.lines) {
                const auto tok = split_tokens(l.text);
                if (tok.size() != 4)
                    throw ParseError(line_context(path, l.number) + ": expected 'name f_start_thz count nf_db'");
                Band b;
                b.name = tok[0];
                b.f_start_thz = parse_double(tok[1], path, l.number);
                b.channel_count = static_cast<int>(parse_long(tok[2], path, l.number));
                b.nf_db = parse_double(tok[3], path, l.number);
                cfg.band.bands.push_back(std::move(b));
            }
        } else if (sec.header == "qot") {
            const KeyValues kv = KeyValues::from(sec, path);
            cfg.qot.snr_trx_db = kv.get_double("snr_trx_db", cfg.qot.snr_trx_db);
            cfg.qot.filter_penalty_per_node_db =
                kv.get_double("filter_penalty_per_node_db", cfg.qot.filter_penalty_per_node_db);
            cfg.qot.aging_margin_db = kv.get_double("aging_margin_db", cfg.qot.aging_margin_db);
            cfg.qot.launch_dbm = kv.get_double("launch_dbm", cfg.qot.launch_dbm);
            cfg.qot.launch_tilt_db_per_thz =
                kv.get_double("launch_tilt_db_per_thz", cfg.qot.launch_tilt_db_per_thz);
            cfg.qot.max_span_km = kv.get_double("max_span_km", cfg.qot.max_span_km);
        } else if (sec.header == "gmi") {
            saw_gmi = true;
            cfg.gmi.clear();
            for (const TextLine& l : sec.lines) {
                const auto tok = split_tokens(l.text);
                if (tok.size() != 6)
                    throw ParseError(line_context(path, l.number) +
                                     ": expected 'm bits chi gsnr_th_db icxt_th_db bitrate_gbps'");
                GmiLevel g;
                g.m = static_cast<int>(parse_long(tok[0], path, l.number));
                g.gmi_bits = static_cast<int>(parse_long(tok[1], path, l.number));
                g.chi = parse_double(tok[2], path, l.number);
                g.gsnr_threshold_db = parse_double(tok[3], path, l.number);
                g.icxt_threshold_db = parse_double(tok[4], path, l.number);
                g.net_bitrate_gbps = parse_double(tok[5], path, l.number);
                cfg.gmi.push_back(g);
            }
        } else if (sec.header == "thresholds") {
            const KeyValues kv = KeyValues::from(sec, path);
            cfg.penalty_gamma_db = kv.get_double("penalty_gamma_db", cfg.penalty_gamma_db);
            cfg.gth_db = kv.get_double("gth_db", cfg.gth_db);
        } else if (sec.header == "sweep") {
            const KeyValues kv = KeyValues::from(sec, path);
            cfg.reach_km = kv.get_double("reach_km", cfg.reach_km);
            cfg.ul_threshold_db = kv.get_double("ul_threshold_db", cfg.ul_threshold_db);
            if (const TextLine* t = kv.find("ratios")) {
                cfg.ratios.clear();
                for (const std::string& tok : split_tokens(t->text))
                    cfg.ratios.push_back(parse_double(tok, path, t->number));
            }
        } else if (sec.header == "geometry") {
            const KeyValues kv = KeyValues::from(sec, path);
            cfg.geometry.max_cladding_um = kv.get_double("max_cladding_um", cfg.geometry.max_cladding_um);
            cfg.geometry.min_trench_separation_um =
                kv.get_double("min_trench_separation_um", cfg.geometry.min_trench_separation_um);
            cfg.geometry.outer_margin_um = kv.get_double("outer_margin_um", cfg.geometry.outer_margin_um);
        } else if (!sec.header.empty()) {
            throw ParseError(line_context(path, sec.line) + ": unknown section [" + sec.header + "]");
        } else if (!sec.lines.empty()) {
            throw ParseError(line_context(path, sec.lines.front().number) + ": keys outside a section");
        }
    }

    if (!saw_bands)
        cfg.band = BandPlan::standard_cls();
    cfg.band.validate();
    if (!saw_gmi)
        cfg.gmi = default_gmi_table(cfg.band.symbol_rate_gbaud);
    validate_gmi_table(cfg.gmi);
    for (const GmiLevel& g : cfg.gmi) {
        const double want = net_bitrate_gbps(cfg.band.symbol_rate_gbaud, g.gmi_bits);
        if (std::abs(g.net_bitrate_gbps - want) > 1e-9)
            throw InvalidInput("gmi level " + std::to_string(g.m) + ": bitrate " +
                               std::to_string(g.net_bitrate_gbps) + " does not match " +
                               std::to_string(want) + " from the symbol rate and FEC overhead");
    }
    cfg.geometry.f_min_thz = cfg.band.f_min_thz();
    cfg.geometry.f_max_thz = cfg.band.f_max_thz();
    if (!(cfg.reach_km > 0.0))
        throw InvalidInput("sweep reach must be > 0 km");
    if (cfg.ratios.empty())
        throw InvalidInput("sweep needs at least one trench ratio");

    if (fiber_paths.empty())
        throw InvalidInput(path + ": [files] must list at least one fiber");
    for (const std::string& fp : fiber_paths) {
        FiberSpec spec = load_fiber(fp);
        if (cfg.fibers.count(spec.name))
            throw InvalidInput("duplicate fiber '" + spec.name + "' from " + fp);
        if (!spec.covers_band(cfg.band.f_min_thz(), cfg.band.f_max_thz()))
            throw InvalidInput("fiber '" + spec.name + "' curves do not cover the band plan");
        cfg.fibers.emplace(spec.name, std::move(spec));
    }
    if (topology_path.empty())
        throw InvalidInput(path + ": [files] must name a topology");
    cfg.topo = load_topology(topology_path);
    for (const TopoLink& l : cfg.topo.links)
        if (!cfg.fibers.count(l.fiber))
            throw InvalidInput("topology references unknown fiber '" + l.fiber + "'");
    if (scenario_path.empty())
        throw InvalidInput(path + ": [files] must name a scenarios file");
    cfg.scenarios = load_scenarios(scenario_path);
    for (const Scenario& sc : cfg.scenarios)
        if (!cfg.fibers.count(sc.fiber))
            throw InvalidInput("scenario '" + sc.name + "' references unknown fiber '" + sc.fiber + "'");
    return cfg;
}

} // namespace mcfplan
