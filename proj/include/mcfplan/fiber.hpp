#pragma once

#include <cmath>
#include <cstdio>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "curve.hpp"
#include "errors.hpp"
#include "layout.hpp"
#include "textio.hpp"
#include "trench.hpp"
#include "units.hpp"

namespace mcfplan {

// One fiber type: geometry plus its frequency profiles. Multicore fibers
// carry both a layout and a trench; single-core fibers carry neither.
// Curves stay in their file units (dB/km, um^2, ps^2/km, 1/(W km)) keyed
// in THz; geometry is stored in metres.
struct FiberSpec {
    std::string name;
    double cladding_diameter = 0.0;    // m
    double cladding_thickness = 0.0;   // m, manufacturing metadata
    double bend_radius = 0.0;          // m
    std::optional<CoreLayout> layout;
    std::optional<TrenchProfile> trench;
    FrequencyCurve attenuation_db_km;
    FrequencyCurve eff_area_um2;
    FrequencyCurve dispersion_ps2_km;
    FrequencyCurve nonlinear_gamma_w_km;

    bool multicore() const { return layout.has_value() && trench.has_value(); }

    bool covers_band(double f_min_thz, double f_max_thz) const {
        for (const FrequencyCurve* c : {&attenuation_db_km, &eff_area_um2,
                                        &dispersion_ps2_km, &nonlinear_gamma_w_km})
            if (!c->covers(f_min_thz) || !c->covers(f_max_thz))
                return false;
        return true;
    }

    // Same fiber with the trench width set to ratio * r1 (sweep variants).
    FiberSpec with_trench_ratio(double ratio) const {
        if (!trench)
            throw InvalidInput("fiber '" + name + "': no trench to rescale");
        if (!(ratio >= 0.0))
            throw InvalidInput("fiber '" + name + "': trench ratio must be >= 0");
        FiberSpec out = *this;
        out.trench->wtr = ratio * trench->r1;
        out.trench->validate();
        return out;
    }
};

inline FiberSpec load_fiber(const std::string& path) {
    FiberSpec fs;
    bool saw_head = false;
    for (const TextSection& sec : read_sections(path)) {
        const std::vector<std::string> head = split_tokens(sec.header);
        if (sec.header.empty()) {
            const KeyValues kv = KeyValues::from(sec, path);
            fs.name = kv.require("name", sec.line);
            fs.cladding_diameter = kv.require_double("cladding_diameter_um", sec.line) * um;
            fs.cladding_thickness = kv.get_double("cladding_thickness_um", 0.0) * um;
            fs.bend_radius = kv.require_double("bend_radius_mm", sec.line) * mm;
            saw_head = true;
        } else if (sec.header == "trench") {
            const KeyValues kv = KeyValues::from(sec, path);
            fs.trench = TrenchProfile::from_um(kv.require_double("r1_um", sec.line),
                                               kv.require_double("r2_um", sec.line),
                                               kv.require_double("wtr_um", sec.line),
                                               kv.require_double("delta1", sec.line),
                                               kv.get_double("delta_ratio", 2.0),
                                               kv.require_double("n_core", sec.line));
        } else if (sec.header == "layout") {
            std::string type;
            double pitch_um = 0.0;
            std::vector<std::pair<double, double>> pos_um;
            for (const TextLine& l : sec.lines) {
                std::string k, v;
                if (split_key_value(l.text, k, v)) {
                    if (k == "type") type = v;
                    else if (k == "pitch_um") pitch_um = parse_double(v, path, l.number);
                    else throw ParseError(line_context(path, l.number) + ": unknown layout key '" + k + "'");
                    continue;
                }
                const auto tok = split_tokens(l.text);
                if (tok.size() != 3 || tok[0] != "core")
                    throw ParseError(line_context(path, l.number) + ": expected 'core x_um y_um'");
                pos_um.emplace_back(parse_double(tok[1], path, l.number),
                                    parse_double(tok[2], path, l.number));
            }
            if (type == "square") fs.layout = CoreLayout::square(pitch_um);
            else if (type == "hex") fs.layout = CoreLayout::hexagonal(pitch_um);
            else if (type == "custom") fs.layout = CoreLayout::custom(pitch_um, pos_um);
            else throw ParseError(line_context(path, sec.line) + ": layout type must be square, hex or custom");
        } else if (head.size() == 2 && head[0] == "curve") {
            std::vector<std::pair<double, double>> knots;
            for (const TextLine& l : sec.lines) {
                const auto tok = split_tokens(l.text);
                if (tok.size() != 2)
                    throw ParseError(line_context(path, l.number) + ": expected 'f_THz value'");
                knots.emplace_back(parse_double(tok[0], path, l.number),
                                   parse_double(tok[1], path, l.number));
            }
            FrequencyCurve curve(fs.name + "/" + head[1], std::move(knots));
            if (head[1] == "attenuation") fs.attenuation_db_km = std::move(curve);
            else if (head[1] == "eff_area") fs.eff_area_um2 = std::move(curve);
            else if (head[1] == "dispersion") fs.dispersion_ps2_km = std::move(curve);
            else if (head[1] == "nonlinear_gamma") fs.nonlinear_gamma_w_km = std::move(curve);
            else throw ParseError(line_context(path, sec.line) + ": unknown curve '" + head[1] + "'");
        } else {
            throw ParseError(line_context(path, sec.line) + ": unknown section [" + sec.header + "]");
        }
    }
    if (!saw_head)
        throw ParseError(path + ": missing fiber header (name, cladding, bend radius)");
    if (!(fs.cladding_diameter > 0.0))
        throw InvalidInput("fiber '" + fs.name + "': cladding diameter must be > 0");
    if (!(fs.bend_radius > 0.0))
        throw InvalidInput("fiber '" + fs.name + "': bend radius must be > 0");
    if (fs.layout.has_value() != fs.trench.has_value())
        throw InvalidInput("fiber '" + fs.name + "': multicore fibers need both [layout] and [trench]");
    for (const auto& [curve, key] : {std::pair{&fs.attenuation_db_km, "attenuation"},
                                     {&fs.eff_area_um2, "eff_area"},
                                     {&fs.dispersion_ps2_km, "dispersion"},
                                     {&fs.nonlinear_gamma_w_km, "nonlinear_gamma"}})
        if (curve->empty())
            throw InvalidInput("fiber '" + fs.name + "': missing [curve " + std::string(key) + "]");
    return fs;
}

// Fabrication and model-validity checks. Hard findings should block a run;
// warnings should not.
struct GeometryFinding {
    bool hard = false;
    std::string what;
};

struct GeometryReport {
    std::string fiber;
    std::vector<GeometryFinding> findings;

    bool ok() const {
        for (const auto& f : findings)
            if (f.hard) return false;
        return true;
    }
};

struct GeometryLimits {
    double max_cladding_um = 230.0;         // fabrication limit
    double min_trench_separation_um = 3.0;  // clearance between adjacent trenches
    double outer_margin_um = 0.0;           // required radial clearance inside the cladding
    double f_min_thz = 184.5;               // band used for the cutoff check
    double f_max_thz = 204.525;
    double v_cutoff = 2.405;                // single-mode limit, warning only
};

inline GeometryReport validate_geometry(const FiberSpec& spec, const GeometryLimits& lim = {}) {
    GeometryReport rep;
    rep.fiber = spec.name;
    char buf[160];
    const double cd_um = spec.cladding_diameter / um;
    if (cd_um > lim.max_cladding_um) {
        std::snprintf(buf, sizeof buf, "cladding %.1f um exceeds %.1f um", cd_um, lim.max_cladding_um);
        rep.findings.push_back({true, buf});
    }
    if (spec.multicore()) {
        const double edge_um = (spec.layout->max_core_offset() + spec.trench->r2 + spec.trench->wtr) / um;
        if (edge_um + lim.outer_margin_um > cd_um / 2.0) {
            std::snprintf(buf, sizeof buf,
                          "outermost trench edge %.2f um + margin %.2f um exceeds cladding radius %.2f um",
                          edge_um, lim.outer_margin_um, cd_um / 2.0);
            rep.findings.push_back({true, buf});
        }
        const double sep_um = (spec.layout->pitch - 2.0 * (spec.trench->r2 + spec.trench->wtr)) / um;
        if (sep_um < lim.min_trench_separation_um) {
            std::snprintf(buf, sizeof buf,
                          "adjacent trench separation %.2f um below minimum %.2f um",
                          sep_um, lim.min_trench_separation_um);
            rep.findings.push_back({true, buf});
        }
    }
    if (spec.trench) {
        // V1 grows with f, so the high edge of the band is the binding one.
        const double v_hi = v_number(lim.f_max_thz * thz, *spec.trench);
        if (v_hi > lim.v_cutoff) {
            std::snprintf(buf, sizeof buf, "V1 = %.3f at %.3f THz exceeds single-mode cutoff %.3f",
                          v_hi, lim.f_max_thz, lim.v_cutoff);
            rep.findings.push_back({false, buf});
        }
    }
    if (!spec.covers_band(lim.f_min_thz, lim.f_max_thz)) {
        std::snprintf(buf, sizeof buf, "frequency curves do not cover %.3f..%.3f THz",
                      lim.f_min_thz, lim.f_max_thz);
        rep.findings.push_back({true, buf});
    }
    return rep;
}

} // namespace mcfplan
