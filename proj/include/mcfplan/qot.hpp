#pragma once

#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "errors.hpp"
#include "fiber.hpp"
#include "units.hpp"

namespace mcfplan {

// Defaults below that have no measured source are assumed values; reports
// label them as such.
struct QotParams {
    double snr_trx_db = 26.0;                 // transceiver back-to-back SNR
    double filter_penalty_per_node_db = 0.25; // per traversed add/drop node
    double aging_margin_db = 1.0;
    double launch_dbm = 0.0;                  // per channel at every span input
    double launch_tilt_db_per_thz = 0.0;      // linear pre-tilt around the plan center
    double max_span_km = 80.0;
};

inline double launch_power_w(const QotParams& p, double f_thz, double f_center_thz) {
    return dbm_to_watt(p.launch_dbm + p.launch_tilt_db_per_thz * (f_thz - f_center_thz));
}

// Equal spans, as many as needed to keep each at or under the cap.
inline std::vector<double> segment_link(double length_km, double max_span_km = 80.0) {
    if (!(length_km > 0.0))
        throw InvalidInput("segment_link: length must be > 0");
    if (!(max_span_km > 0.0))
        throw InvalidInput("segment_link: max span must be > 0");
    const int n = static_cast<int>(std::ceil(length_km / max_span_km));
    return std::vector<double>(static_cast<std::size_t>(n), length_km / n);
}

struct SpanState {
    int span_index = 0;
    double length_m = 0.0;
    double launch_w = 0.0;     // per channel at span input
    double received_w = 0.0;   // per channel at span output, before the amplifier
    double gain = 0.0;         // amplifier gain restoring the launch power
};

// Spans of one link at one channel; the amplifier exactly undoes the span
// loss (per-channel gain equalization).
inline std::vector<SpanState> make_spans(double length_km, double att_db_km, double launch_w,
                                         double max_span_km = 80.0) {
    std::vector<SpanState> out;
    int idx = 0;
    for (double span_km : segment_link(length_km, max_span_km)) {
        SpanState s;
        s.span_index = idx++;
        s.length_m = span_km * km;
        s.launch_w = launch_w;
        s.gain = std::pow(10.0, att_db_km * span_km / 10.0);
        s.received_w = launch_w / s.gain;
        out.push_back(s);
    }
    return out;
}

// Amplifier noise referred to the channel bandwidth.
inline double ase_power(double nf_db, double f_hz, double gain_linear, double r_ch_baud) {
    if (!(gain_linear >= 1.0))
        throw InvalidInput("ase_power: gain must be >= 1");
    return db_to_linear(nf_db) * h_planck * f_hz * (gain_linear - 1.0) * r_ch_baud;
}

// Nonlinear interference added by one span. Implementations may assume all
// co-propagating channels launch at the same power as this one.
class NliEstimator {
public:
    virtual ~NliEstimator() = default;
    virtual double span_nli_w(const FiberSpec& fiber, double span_length_m, double f_thz,
                              double launch_w, double symbol_rate_baud,
                              double occupied_bandwidth_hz) const = 0;
};

// Incoherent per-span Gaussian-noise closed form over the full occupied
// bandwidth. Cubic in launch power.
class GnNliEstimator final : public NliEstimator {
public:
    double span_nli_w(const FiberSpec& fiber, double span_length_m, double f_thz,
                      double launch_w, double symbol_rate_baud,
                      double occupied_bandwidth_hz) const override {
        const double a_np = att_db_km_to_np_m(fiber.attenuation_db_km(f_thz));  // 1/m
        const double l_eff = (1.0 - std::exp(-a_np * span_length_m)) / a_np;
        const double l_eff_a = 1.0 / a_np;
        const double beta2 = std::abs(fiber.dispersion_ps2_km(f_thz)) * 1e-27;  // s^2/m
        const double gam = fiber.nonlinear_gamma_w_km(f_thz) * 1e-3;            // 1/(W m)
        const double psd = launch_w / symbol_rate_baud;
        const double phase = std::asinh(std::numbers::pi * std::numbers::pi / 2.0 * beta2 *
                                        l_eff_a * occupied_bandwidth_hz * occupied_bandwidth_hz);
        return (8.0 / 27.0) * gam * gam * l_eff * l_eff * psd * psd * psd * phase *
               symbol_rate_baud / (std::numbers::pi * beta2 * l_eff_a);
    }
};

inline double icxt_noise_power(double mu_icxt, double p_tx_w) {
    if (!(mu_icxt >= 0.0))
        throw InvalidInput("icxt_noise_power: mu must be >= 0");
    return mu_icxt * p_tx_w;
}

// Noise added within one span, all referred to that span's launch power.
struct SpanNoise {
    double launch_w = 0.0;
    double p_ase = 0.0;
    double p_nli = 0.0;
    double p_icxt = 0.0;
};

struct QotBreakdown {
    double snr_ase = 0.0;    // linear; +inf when the term is absent
    double snr_nli = 0.0;
    double snr_icxt = 0.0;
    double snr_trx = 0.0;
    double penalty_filter_db = 0.0;
    double margin_aging_db = 0.0;
    double gsnr_db = 0.0;
};

// Noise-to-signal ratios add across spans; penalties come off in dB at the
// end. More spans can only lower each component SNR.
inline QotBreakdown accumulate_gsnr(const std::vector<SpanNoise>& spans, double snr_trx_db,
                                    double penalty_filter_db, double aging_margin_db) {
    if (spans.empty())
        throw InvalidInput("accumulate_gsnr: need at least one span");
    double inv_ase = 0.0, inv_nli = 0.0, inv_icxt = 0.0;
    for (const SpanNoise& s : spans) {
        if (!(s.launch_w > 0.0))
            throw InvalidInput("accumulate_gsnr: span launch power must be > 0");
        inv_ase += s.p_ase / s.launch_w;
        inv_nli += s.p_nli / s.launch_w;
        inv_icxt += s.p_icxt / s.launch_w;
    }
    const double inf = std::numeric_limits<double>::infinity();
    QotBreakdown out;
    out.snr_ase = inv_ase > 0.0 ? 1.0 / inv_ase : inf;
    out.snr_nli = inv_nli > 0.0 ? 1.0 / inv_nli : inf;
    out.snr_icxt = inv_icxt > 0.0 ? 1.0 / inv_icxt : inf;
    out.snr_trx = std::isinf(snr_trx_db) ? inf : db_to_linear(snr_trx_db);
    out.penalty_filter_db = penalty_filter_db;
    out.margin_aging_db = aging_margin_db;
    const double inv_trx = std::isinf(snr_trx_db) ? 0.0 : db_to_linear(-snr_trx_db);
    const double inv_total = inv_ase + inv_nli + inv_icxt + inv_trx;
    if (!(inv_total > 0.0))
        throw InvalidInput("accumulate_gsnr: no noise term present");
    out.gsnr_db = 10.0 * std::log10(1.0 / inv_total) - penalty_filter_db - aging_margin_db;
    return out;
}

} // namespace mcfplan
