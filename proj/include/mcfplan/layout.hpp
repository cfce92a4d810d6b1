#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "units.hpp"

namespace mcfplan {

struct Core {
    int id = 0;
    double x = 0.0;        // m
    double y = 0.0;        // m
    int n_adjacent = 0;    // cores at exactly one pitch distance
};

// Core positions of one fiber cross-section. Two cores couple only when
// their spacing equals the pitch (relative tolerance 1e-9); anything
// closer than the pitch is a geometry error.
struct CoreLayout {
    double pitch = 0.0;    // m
    std::vector<Core> cores;

    static constexpr double rel_tol = 1e-9;

    static CoreLayout square(double pitch_um) {
        const double p = pitch_um * um;
        const double h = p / 2.0;
        CoreLayout lay;
        lay.pitch = p;
        lay.cores = {{0, -h, -h, 0}, {1, h, -h, 0}, {2, h, h, 0}, {3, -h, h, 0}};
        lay.recount_adjacency();
        return lay;
    }

    static CoreLayout hexagonal(double pitch_um) {
        const double p = pitch_um * um;
        CoreLayout lay;
        lay.pitch = p;
        lay.cores.push_back({0, 0.0, 0.0, 0});
        for (int k = 0; k < 6; ++k) {
            const double a = k * std::numbers::pi / 3.0;
            lay.cores.push_back({k + 1, p * std::cos(a), p * std::sin(a), 0});
        }
        lay.recount_adjacency();
        return lay;
    }

    static CoreLayout custom(double pitch_um, const std::vector<std::pair<double, double>>& pos_um) {
        CoreLayout lay;
        lay.pitch = pitch_um * um;
        int id = 0;
        for (const auto& [x, y] : pos_um)
            lay.cores.push_back({id++, x * um, y * um, 0});
        lay.recount_adjacency();
        return lay;
    }

    void recount_adjacency() {
        if (!(pitch > 0.0))
            throw InvalidInput("layout: pitch must be > 0");
        for (auto& c : cores) c.n_adjacent = 0;
        for (std::size_t i = 0; i < cores.size(); ++i) {
            for (std::size_t j = i + 1; j < cores.size(); ++j) {
                const double d = std::hypot(cores[i].x - cores[j].x, cores[i].y - cores[j].y);
                if (d < pitch * (1.0 - rel_tol))
                    throw InvalidInput("layout: cores " + std::to_string(cores[i].id) + " and " +
                                       std::to_string(cores[j].id) + " closer than the pitch");
                if (std::abs(d - pitch) <= pitch * rel_tol) {
                    ++cores[i].n_adjacent;
                    ++cores[j].n_adjacent;
                }
            }
        }
    }

    int max_adjacency() const {
        int m = 0;
        for (const auto& c : cores) m = std::max(m, c.n_adjacent);
        return m;
    }

    // Outermost core distance from the fiber axis, for cladding checks.
    double max_core_offset() const {
        double m = 0.0;
        for (const auto& c : cores) m = std::max(m, std::hypot(c.x, c.y));
        return m;
    }
};

// Adjacency count seen by each spatial lane. Lanes fill cores worst-first
// (highest adjacency first); lanes beyond the core count wrap onto
// parallel fibers of the same layout, so the pattern repeats.
inline std::vector<int> lane_adjacency_counts(const CoreLayout& lay, int lanes) {
    if (lanes < 1)
        throw InvalidInput("lane_adjacency_counts: lanes must be >= 1");
    if (lay.cores.empty())
        throw InvalidInput("lane_adjacency_counts: layout has no cores");
    std::vector<int> per_core;
    per_core.reserve(lay.cores.size());
    for (const auto& c : lay.cores) per_core.push_back(c.n_adjacent);
    std::sort(per_core.rbegin(), per_core.rend());
    std::vector<int> out(static_cast<std::size_t>(lanes));
    for (int l = 0; l < lanes; ++l)
        out[static_cast<std::size_t>(l)] = per_core[static_cast<std::size_t>(l) % per_core.size()];
    return out;
}

} // namespace mcfplan
