#pragma once

#include <cmath>
#include <optional>
#include <vector>

#include "errors.hpp"
#include "units.hpp"

namespace mcfplan {

struct GmiLevel {
    int m = 0;                       // 1..6
    int gmi_bits = 0;                // bits/symbol: 2,4,...,12
    double chi = 0.0;                // crosstalk sensitivity factor
    double gsnr_threshold_db = 0.0;  // minimum GSNR for this level
    double icxt_threshold_db = 0.0;  // maximum tolerable accumulated crosstalk
    double net_bitrate_gbps = 0.0;
};

// Tolerable crosstalk for a level: the leaked power that eats exactly
// penalty_gamma_db of margin at the level's required SNR.
// mu_th = 10 log10((1 - 10^(-Gamma/10)) / (chi 10^(Gth/10))).
inline double icxt_threshold(double chi, double penalty_gamma_db, double gsnr_req_db) {
    if (!(penalty_gamma_db > 0.0))
        throw InvalidInput("icxt_threshold: penalty must be > 0 dB");
    if (!(chi > 0.0))
        throw InvalidInput("icxt_threshold: chi must be > 0");
    return linear_to_db((1.0 - std::pow(10.0, -penalty_gamma_db / 10.0)) /
                        (chi * std::pow(10.0, gsnr_req_db / 10.0)));
}

// Net data rate after 28% FEC overhead. The factor 100/128 keeps the
// arithmetic exact in binary floating point: 64 GBaud x 2 bits -> 100 Gbps.
inline double net_bitrate_gbps(double symbol_rate_gbaud, int gmi_bits) {
    return symbol_rate_gbaud * gmi_bits * 100.0 / 128.0;
}

inline void validate_gmi_table(const std::vector<GmiLevel>& table) {
    if (table.empty())
        throw InvalidInput("gmi table: empty");
    for (std::size_t i = 0; i < table.size(); ++i) {
        const GmiLevel& l = table[i];
        if (l.m != static_cast<int>(i) + 1)
            throw InvalidInput("gmi table: levels must be m = 1..n in order");
        if (l.gmi_bits <= 0 || l.chi <= 0.0 || l.net_bitrate_gbps <= 0.0)
            throw InvalidInput("gmi table: bits, chi and bitrate must be positive");
        if (i > 0) {
            if (!(l.gsnr_threshold_db > table[i - 1].gsnr_threshold_db))
                throw InvalidInput("gmi table: gsnr thresholds must increase with m");
            if (!(l.icxt_threshold_db < table[i - 1].icxt_threshold_db))
                throw InvalidInput("gmi table: icxt thresholds must decrease with m");
            if (!(l.net_bitrate_gbps > table[i - 1].net_bitrate_gbps))
                throw InvalidInput("gmi table: bitrates must increase with m");
        }
    }
}

// Shipped operating points. GSNR thresholds come from the common required
// SNR (6.728 dB) plus 10 log10(chi); crosstalk limits take a 1 dB penalty
// allowance at that SNR.
inline std::vector<GmiLevel> default_gmi_table(double symbol_rate_gbaud = 64.0) {
    const double chi[6] = {0.5, 1.0, 3.41, 5.0, 10.0, 21.0};
    const double gsnr_th[6] = {3.7177, 6.7280, 12.0555, 13.7177, 16.7280, 19.9502};
    const double icxt_th[6] = {-10.58, -13.59, -18.93, -20.58, -23.59, -26.82};
    std::vector<GmiLevel> table;
    for (int m = 1; m <= 6; ++m) {
        GmiLevel l;
        l.m = m;
        l.gmi_bits = 2 * m;
        l.chi = chi[m - 1];
        l.gsnr_threshold_db = gsnr_th[m - 1];
        l.icxt_threshold_db = icxt_th[m - 1];
        l.net_bitrate_gbps = net_bitrate_gbps(symbol_rate_gbaud, l.gmi_bits);
        table.push_back(l);
    }
    validate_gmi_table(table);
    return table;
}

// Highest level whose GSNR requirement is met and, when the crosstalk gate
// is applied, whose crosstalk limit is respected. No level -> no value.
// Pass -inf as worst_mu_icxt_db when the tuple sees no crosstalk at all.
// The table must have been validated after load.
inline std::optional<GmiLevel> select_gmi(double gsnr_db, double worst_mu_icxt_db,
                                          const std::vector<GmiLevel>& table,
                                          bool apply_icxt_gate = true) {
    for (auto it = table.rbegin(); it != table.rend(); ++it) {
        if (gsnr_db < it->gsnr_threshold_db)
            continue;
        if (apply_icxt_gate && !(worst_mu_icxt_db < it->icxt_threshold_db))
            continue;
        return *it;
    }
    return std::nullopt;
}

} // namespace mcfplan
