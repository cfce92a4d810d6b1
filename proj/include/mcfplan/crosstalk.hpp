#pragma once

#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "bandplan.hpp"
#include "errors.hpp"
#include "fiber.hpp"
#include "trench.hpp"
#include "units.hpp"

namespace mcfplan {

// Per-length power transfer rate between two adjacent cores, in 1/m:
// omega = c kappa^2 r_b n_core / (pi f pitch).
inline double power_coupling_coefficient(double f_hz, double kappa_per_m, const FiberSpec& spec) {
    if (!(kappa_per_m >= 0.0))
        throw InvalidInput("power_coupling_coefficient: kappa must be >= 0");
    if (!spec.multicore())
        throw InvalidInput("fiber '" + spec.name + "' is single-core, no coupling geometry");
    return c_light * kappa_per_m * kappa_per_m * spec.bend_radius * spec.trench->n_core /
           (std::numbers::pi * f_hz * spec.layout->pitch);
}

inline double fiber_pcc(double f_hz, const FiberSpec& spec, const CouplingOptions& opt = {}) {
    if (!spec.multicore())
        throw InvalidInput("fiber '" + spec.name + "' is single-core, no coupling geometry");
    const double kappa = mode_coupling_coefficient(f_hz, *spec.trench, spec.layout->pitch, opt);
    return power_coupling_coefficient(f_hz, kappa, spec);
}

// Mean crosstalk power ratio accumulated into one core from n_ac equally
// coupled neighbours over a length in metres. Grows from 0 at length 0 and
// saturates at n_ac.
inline double mean_icxt(double omega_per_m, int n_ac, double length_m) {
    if (!(omega_per_m >= 0.0) || n_ac < 1 || !(length_m >= 0.0))
        throw InvalidInput("mean_icxt: need omega >= 0, n_ac >= 1, length >= 0");
    const double n = static_cast<double>(n_ac);
    const double e = std::exp(-(n + 1.0) * omega_per_m * length_m);
    return (n - n * e) / (1.0 + n * e);
}

struct UlClassification {
    bool is_ul = false;
    double worst_f_thz = 0.0;
    int worst_core = -1;       // core id with the maximal adjacency
    double worst_mu_db = 0.0;
};

// Scans every channel and core at the given reach; UL means everything
// stays below the threshold, so modulation choice can ignore crosstalk.
inline UlClassification classify_ul_icxt(const FiberSpec& spec, const BandPlan& band,
                                         double reach_m, double threshold_db,
                                         const CouplingOptions& opt = {}) {
    if (!spec.multicore())
        throw InvalidInput("classify_ul_icxt: fiber '" + spec.name + "' is single-core");
    UlClassification out;
    double worst = -std::numeric_limits<double>::infinity();
    for (const ChannelInfo& ch : band.channels()) {
        const double om = fiber_pcc(ch.f_thz * thz, spec, opt);
        for (const Core& core : spec.layout->cores) {
            if (core.n_adjacent < 1)
                continue;
            const double mu = mean_icxt(om, core.n_adjacent, reach_m);
            const double mu_db = linear_to_db(mu);
            if (mu_db > worst) {
                worst = mu_db;
                out.worst_f_thz = ch.f_thz;
                out.worst_core = core.id;
                out.worst_mu_db = mu_db;
            }
        }
    }
    if (!std::isfinite(worst))
        throw InvalidInput("classify_ul_icxt: no coupled core pair in '" + spec.name + "'");
    out.is_ul = worst < threshold_db;
    return out;
}

struct SweepRow {
    std::string fiber;
    double wtr_ratio = 0.0;
    double f_thz = 0.0;
    double pcc_per_m = 0.0;
    double mcc_per_m = 0.0;
    double icxt_db = 0.0;      // at the sweep reach, worst core
};

// Frequency response of one fiber for several trench widths, one row per
// (ratio, channel). icxt_db uses the maximal-adjacency core.
inline std::vector<SweepRow> sweep_fiber_response(const FiberSpec& spec, const BandPlan& band,
                                                  const std::vector<double>& wtr_ratios,
                                                  double reach_m,
                                                  const CouplingOptions& opt = {}) {
    if (!spec.multicore())
        throw InvalidInput("sweep_fiber_response: fiber '" + spec.name + "' is single-core");
    std::vector<SweepRow> rows;
    const int n_worst = spec.layout->max_adjacency();
    if (n_worst < 1)
        throw InvalidInput("sweep_fiber_response: no coupled core pair in '" + spec.name + "'");
    const std::vector<ChannelInfo> chans = band.channels();
    for (double ratio : wtr_ratios) {
        const FiberSpec variant = spec.with_trench_ratio(ratio);
        for (const ChannelInfo& ch : chans) {
            SweepRow row;
            row.fiber = spec.name;
            row.wtr_ratio = ratio;
            row.f_thz = ch.f_thz;
            row.mcc_per_m = mode_coupling_coefficient(ch.f_thz * thz, *variant.trench,
                                                      variant.layout->pitch, opt);
            row.pcc_per_m = power_coupling_coefficient(ch.f_thz * thz, row.mcc_per_m, variant);
            row.icxt_db = linear_to_db(mean_icxt(row.pcc_per_m, n_worst, reach_m));
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

} // namespace mcfplan
