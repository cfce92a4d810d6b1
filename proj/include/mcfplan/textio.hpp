#pragma once

#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "errors.hpp"

// One plain-text format serves every data file (fibers, topologies,
// configs, scenarios): '#' comments, [section] headers, and within a
// section either "key = value" pairs or whitespace-separated records.
// Errors always carry file and line so bad data is locatable.

namespace mcfplan {

struct TextLine {
    int number = 0;
    std::string text;
};

struct TextSection {
    std::string header;   // token(s) inside [...]; "" for the preamble
    int line = 0;
    std::vector<TextLine> lines;
};

inline std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

inline std::vector<std::string> split_tokens(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream in(s);
    std::string tok;
    while (in >> tok) out.push_back(tok);
    return out;
}

// Splits "key = value" at the first '='. Returns false for bare records.
inline bool split_key_value(const std::string& line, std::string& key, std::string& value) {
    const auto eq = line.find('=');
    if (eq == std::string::npos) return false;
    key = trim(line.substr(0, eq));
    value = trim(line.substr(eq + 1));
    return !key.empty();
}

inline std::string line_context(const std::string& path, int line) {
    return path + ":" + std::to_string(line);
}

inline double parse_double(const std::string& tok, const std::string& path, int line) {
    double v = 0.0;
    const char* b = tok.data();
    const char* e = b + tok.size();
    auto [p, ec] = std::from_chars(b, e, v);
    if (ec != std::errc() || p != e)
        throw ParseError(line_context(path, line) + ": expected a number, got '" + tok + "'");
    return v;
}

inline long parse_long(const std::string& tok, const std::string& path, int line) {
    long v = 0;
    const char* b = tok.data();
    const char* e = b + tok.size();
    auto [p, ec] = std::from_chars(b, e, v);
    if (ec != std::errc() || p != e)
        throw ParseError(line_context(path, line) + ": expected an integer, got '" + tok + "'");
    return v;
}

inline std::vector<TextSection> read_sections(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw ParseError("cannot open '" + path + "'");
    std::vector<TextSection> sections;
    sections.push_back({"", 0, {}});
    std::string raw;
    int number = 0;
    while (std::getline(in, raw)) {
        ++number;
        const auto hash = raw.find('#');
        if (hash != std::string::npos) raw.erase(hash);
        const std::string line = trim(raw);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw ParseError(line_context(path, number) + ": unterminated section header");
            const std::string header = trim(line.substr(1, line.size() - 2));
            if (header.empty())
                throw ParseError(line_context(path, number) + ": empty section header");
            sections.push_back({header, number, {}});
            continue;
        }
        sections.back().lines.push_back({number, line});
    }
    if (sections.front().header.empty() && sections.front().lines.empty())
        sections.erase(sections.begin());
    return sections;
}

// Key/value view over one section; unknown keys are rejected by callers
// that enumerate what they consumed.
struct KeyValues {
    std::string path;
    std::vector<std::pair<std::string, TextLine>> entries;

    static KeyValues from(const TextSection& sec, const std::string& path) {
        KeyValues kv;
        kv.path = path;
        for (const auto& l : sec.lines) {
            std::string k, v;
            if (!split_key_value(l.text, k, v))
                throw ParseError(line_context(path, l.number) + ": expected 'key = value', got '" + l.text + "'");
            kv.entries.emplace_back(k, TextLine{l.number, v});
        }
        return kv;
    }

    const TextLine* find(const std::string& key) const {
        for (const auto& [k, v] : entries)
            if (k == key) return &v;
        return nullptr;
    }

    std::string require(const std::string& key, int section_line) const {
        if (const TextLine* t = find(key)) return t->text;
        throw ParseError(line_context(path, section_line) + ": missing required key '" + key + "'");
    }

    double require_double(const std::string& key, int section_line) const {
        const TextLine* t = find(key);
        if (!t) throw ParseError(line_context(path, section_line) + ": missing required key '" + key + "'");
        return parse_double(t->text, path, t->number);
    }

    double get_double(const std::string& key, double fallback) const {
        const TextLine* t = find(key);
        return t ? parse_double(t->text, path, t->number) : fallback;
    }

    long get_long(const std::string& key, long fallback) const {
        const TextLine* t = find(key);
        return t ? parse_long(t->text, path, t->number) : fallback;
    }

    std::string get_string(const std::string& key, const std::string& fallback) const {
        const TextLine* t = find(key);
        return t ? t->text : fallback;
    }
};

} // namespace mcfplan
