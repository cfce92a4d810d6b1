#pragma once

#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include "errors.hpp"

namespace mcfplan {

// Fixed formats keep identical runs byte-identical: linear quantities get
// 13 significant digits, dB/THz/km values six decimals.
inline std::string csv_linear(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12e", v);
    return buf;
}

inline std::string csv_fixed(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

inline std::string csv_int(long v) { return std::to_string(v); }

class CsvFile {
public:
    CsvFile(const std::string& path, const std::vector<std::string>& header) : out_(path) {
        if (!out_)
            throw InvalidInput("cannot write '" + path + "'");
        row(header);
    }

    void row(const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) out_ << ',';
            out_ << cells[i];
        }
        out_ << '\n';
    }

private:
    std::ofstream out_;
};

} // namespace mcfplan
