#pragma once

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"

namespace mcfplan {

// Piecewise-linear function of frequency, knots keyed in THz.
// Evaluation outside [front, back] throws: fiber data must cover the
// band plan explicitly, extrapolated loss or dispersion is never silent.
class FrequencyCurve {
public:
    FrequencyCurve() = default;

    FrequencyCurve(std::string name, std::vector<std::pair<double, double>> knots)
        : name_(std::move(name)), knots_(std::move(knots)) {
        if (knots_.empty())
            throw InvalidInput("curve '" + name_ + "': no knots");
        for (std::size_t i = 1; i < knots_.size(); ++i)
            if (knots_[i].first <= knots_[i - 1].first)
                throw InvalidInput("curve '" + name_ + "': knot frequencies must be strictly ascending");
    }

    bool empty() const { return knots_.empty(); }
    const std::string& name() const { return name_; }
    double front_thz() const { return knots_.front().first; }
    double back_thz() const { return knots_.back().first; }

    bool covers(double f_thz) const {
        return !knots_.empty() && f_thz >= knots_.front().first && f_thz <= knots_.back().first;
    }

    double operator()(double f_thz) const {
        if (knots_.empty())
            throw MissingCurve("curve '" + name_ + "' is empty");
        if (!covers(f_thz))
            throw MissingCurve("curve '" + name_ + "' does not cover " + std::to_string(f_thz) + " THz");
        if (knots_.size() == 1)
            return knots_.front().second;
        auto hi = std::lower_bound(knots_.begin(), knots_.end(), f_thz,
                                   [](const auto& k, double f) { return k.first < f; });
        if (hi == knots_.begin())
            return hi->second;
        if (hi == knots_.end())
            return knots_.back().second;
        auto lo = std::prev(hi);
        const double t = (f_thz - lo->first) / (hi->first - lo->first);
        return lo->second + t * (hi->second - lo->second);
    }

    const std::vector<std::pair<double, double>>& knots() const { return knots_; }

private:
    std::string name_;
    std::vector<std::pair<double, double>> knots_;
};

} // namespace mcfplan
