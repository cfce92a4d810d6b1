#pragma once

#include <cmath>
#include <numbers>
#include <string>

#include "errors.hpp"
#include "units.hpp"

namespace mcfplan {

// Linear fit of the LP01 cladding decay parameter against the V number,
// valid for trench profiles with delta_ratio == 2. The default keeps
// W1 < V1 across the C+L+S band so the single-mode relation
// u1_sq = v1^2 - w1^2 stays non-negative in-band.
struct WFit {
    double slope = 1.1428;
    double intercept = -0.996;
};

// u1_sq relations. step_index is the standard single-mode identity.
// quartic_index substitutes the core index for the unspecified index in
// the quartic variant and exists only for side-by-side comparison.
enum class U1Relation { step_index, quartic_index };

struct CouplingOptions {
    WFit w_fit{};
    U1Relation u1_relation = U1Relation::step_index;
};

// Geometry of one trench-assisted core. Lengths in metres.
// r2 is measured from the core center to the trench inner edge.
struct TrenchProfile {
    double r1 = 0.0;
    double r2 = 0.0;
    double wtr = 0.0;
    double delta1 = 0.0;
    double delta_ratio = 2.0;
    double n_core = 0.0;

    static TrenchProfile from_um(double r1_um, double r2_um, double wtr_um,
                                 double delta1, double delta_ratio, double n_core) {
        TrenchProfile t;
        t.r1 = r1_um * um;
        t.r2 = r2_um * um;
        t.wtr = wtr_um * um;
        t.delta1 = delta1;
        t.delta_ratio = delta_ratio;
        t.n_core = n_core;
        t.validate();
        return t;
    }

    void validate() const {
        if (!(r1 > 0.0))
            throw InvalidInput("trench: core radius r1 must be > 0");
        if (!(r2 >= r1))
            throw InvalidInput("trench: trench inner edge r2 must be >= r1");
        if (!(wtr >= 0.0))
            throw InvalidInput("trench: trench width must be >= 0");
        if (!(delta1 > 0.0 && delta1 < 0.05))
            throw InvalidInput("trench: delta1 must be in (0, 0.05)");
        if (!(n_core > 1.0))
            throw InvalidInput("trench: core index must be > 1");
        // The W1 fit is calibrated for a trench depth of twice the core
        // contrast; any other ratio is outside the model.
        if (std::abs(delta_ratio - 2.0) > 1e-12)
            throw InvalidInput("trench: delta_ratio must be exactly 2");
    }
};

struct CouplingIntermediates {
    double v1 = 0.0;
    double w1 = 0.0;
    double u1_sq = 0.0;
    double gamma_trench = 0.0;   // in (0, 1], == 1 when wtr == 0
    double k1_w1 = 0.0;
};

// Normalized frequency of the core: V1 = 2 pi f r1 n_core sqrt(2 delta1) / c.
inline double v_number(double f_hz, const TrenchProfile& t) {
    if (!(f_hz > 0.0))
        throw InvalidInput("v_number: frequency must be > 0");
    return 2.0 * std::numbers::pi * f_hz * t.r1 * t.n_core * std::sqrt(2.0 * t.delta1) / c_light;
}

inline double w_parameter(double v1, const WFit& fit = {}) {
    const double w1 = fit.slope * v1 + fit.intercept;
    if (!(w1 > 0.0))
        throw NonPositiveW("w_parameter: fit gives W1 <= 0 at V1 = " + std::to_string(v1));
    return w1;
}

// Modified Bessel K1 evaluated by its large-argument form, the regime the
// fit targets.
inline double bessel_k1_asymptotic(double w1) {
    return std::sqrt(std::numbers::pi / (2.0 * w1)) * std::exp(-w1);
}

inline CouplingIntermediates coupling_intermediates(double f_hz, const TrenchProfile& t,
                                                    double pitch_m,
                                                    const CouplingOptions& opt = {}) {
    if (!(pitch_m > 0.0))
        throw InvalidInput("coupling: pitch must be > 0");
    CouplingIntermediates ci;
    ci.v1 = v_number(f_hz, t);
    ci.w1 = w_parameter(ci.v1, opt.w_fit);
    switch (opt.u1_relation) {
    case U1Relation::step_index:
        ci.u1_sq = ci.v1 * ci.v1 - ci.w1 * ci.w1;
        break;
    case U1Relation::quartic_index: {
        const double k0r1 = 2.0 * std::numbers::pi * f_hz * t.r1 / (t.n_core * c_light);
        ci.u1_sq = k0r1 * k0r1 * (std::pow(t.n_core, 4.0) - 1.0);
        break;
    }
    }
    if (ci.u1_sq < 0.0)
        throw OutsideModel("coupling: u1_sq < 0 (W1 exceeds V1), geometry/fit outside single-mode model");
    ci.gamma_trench = ci.w1 / (ci.w1 + 1.2 * (1.0 + ci.v1) * t.wtr / pitch_m);
    ci.k1_w1 = bessel_k1_asymptotic(ci.w1);
    return ci;
}

// Field coupling strength between two adjacent cores at pitch_m, in 1/m.
inline double mode_coupling_coefficient(double f_hz, const TrenchProfile& t, double pitch_m,
                                        const CouplingOptions& opt = {}) {
    const CouplingIntermediates ci = coupling_intermediates(f_hz, t, pitch_m, opt);
    const double amplitude = std::sqrt(ci.gamma_trench * t.delta1) / t.r1;
    const double mode_shape = ci.u1_sq / (ci.v1 * ci.v1 * ci.v1 * ci.k1_w1 * ci.k1_w1);
    const double overlap = std::sqrt(std::numbers::pi * t.r1 / (2.0 * ci.w1 * pitch_m));
    const double decay = std::exp(-(ci.w1 * pitch_m + 1.2 * (1.0 + ci.v1) * t.wtr) / t.r1);
    return amplitude * mode_shape * overlap * decay;
}

} // namespace mcfplan
