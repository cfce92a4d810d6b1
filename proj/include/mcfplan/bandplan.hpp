#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "errors.hpp"
#include "units.hpp"

namespace mcfplan {

struct Band {
    std::string name;        // C, L or S
    double f_start_thz = 0.0;
    int channel_count = 0;
    double nf_db = 0.0;      // amplifier noise figure for this band
};

struct ChannelInfo {
    int index = 0;           // position in the plan-wide ascending grid
    double f_thz = 0.0;
    int band = 0;            // index into BandPlan::bands
};

// Channel grid over up to three bands on one fixed spacing. Bands must not
// overlap, so every channel center is unique.
struct BandPlan {
    std::vector<Band> bands;
    double channel_spacing_ghz = 75.0;
    double symbol_rate_gbaud = 64.0;

    static BandPlan standard_cls() {
        BandPlan p;
        p.bands = {{"L", 184.500, 64, 5.0}, {"C", 189.300, 64, 4.5}, {"S", 194.100, 140, 6.0}};
        p.validate();
        return p;
    }

    void validate() const {
        if (bands.empty())
            throw InvalidInput("band plan: no bands");
        if (!(channel_spacing_ghz > 0.0) || !(symbol_rate_gbaud > 0.0))
            throw InvalidInput("band plan: spacing and symbol rate must be > 0");
        if (symbol_rate_gbaud > channel_spacing_ghz)
            throw InvalidInput("band plan: symbol rate exceeds channel spacing");
        for (std::size_t i = 0; i < bands.size(); ++i)
            for (std::size_t j = i + 1; j < bands.size(); ++j)
                if (bands[i].name == bands[j].name)
                    throw InvalidInput("band plan: duplicate band '" + bands[i].name + "'");
        double prev_end = -1.0;
        std::string prev_name;
        for (const Band& b : ordered()) {
            if (b.name != "C" && b.name != "L" && b.name != "S")
                throw InvalidInput("band plan: band name must be C, L or S, got '" + b.name + "'");
            if (b.channel_count < 1)
                throw InvalidInput("band '" + b.name + "': channel count must be >= 1");
            if (prev_end >= 0.0 && b.f_start_thz <= prev_end)
                throw InvalidInput("band plan: '" + b.name + "' overlaps '" + prev_name + "'");
            prev_end = b.f_start_thz + (b.channel_count - 1) * channel_spacing_ghz * 1e-3;
            prev_name = b.name;
        }
    }

    // Bands sorted by start frequency; the member order is as configured.
    std::vector<Band> ordered() const {
        std::vector<Band> s = bands;
        std::sort(s.begin(), s.end(),
                  [](const Band& a, const Band& b) { return a.f_start_thz < b.f_start_thz; });
        return s;
    }

    std::vector<ChannelInfo> channels() const {
        validate();
        std::vector<ChannelInfo> out;
        const double step = channel_spacing_ghz * 1e-3;
        for (const Band& b : ordered()) {
            int bi = 0;
            for (std::size_t i = 0; i < bands.size(); ++i)
                if (bands[i].name == b.name) bi = static_cast<int>(i);
            for (int i = 0; i < b.channel_count; ++i)
                out.push_back({static_cast<int>(out.size()), b.f_start_thz + i * step, bi});
        }
        return out;
    }

    int total_channels() const {
        int n = 0;
        for (const Band& b : bands) n += b.channel_count;
        return n;
    }

    // Bandwidth loading the amplifiers and the nonlinear term.
    double occupied_bandwidth_hz() const {
        return total_channels() * channel_spacing_ghz * ghz;
    }

    double f_min_thz() const { return ordered().front().f_start_thz; }
    double f_max_thz() const {
        const Band b = ordered().back();
        return b.f_start_thz + (b.channel_count - 1) * channel_spacing_ghz * 1e-3;
    }

    double nf_db_of(const ChannelInfo& ch) const { return bands[static_cast<std::size_t>(ch.band)].nf_db; }
    const std::string& band_name_of(const ChannelInfo& ch) const {
        return bands[static_cast<std::size_t>(ch.band)].name;
    }
};

} // namespace mcfplan
