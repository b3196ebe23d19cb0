#pragma once

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "wiretap/metrics.hpp"

namespace wiretap {

// Fixed, versioned column set: every row carries its axis value, the
// estimate, the confidence interval, and the raw counts behind it.
inline constexpr const char* kCsvHeader =
    "axis_db,value,ci_low,ci_high,trials,errors_or_events";

inline std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.10g", v);
    return buf;
}

inline std::string curve_to_csv(const MetricCurve& c) {
    std::string s = kCsvHeader;
    s += '\n';
    for (const auto& p : c.points) {
        s += format_double(p.x);
        s += ',';
        s += format_double(p.value);
        s += ',';
        s += format_double(p.ci_low);
        s += ',';
        s += format_double(p.ci_high);
        s += ',';
        s += std::to_string(p.trials);
        s += ',';
        s += std::to_string(p.events);
        s += '\n';
    }
    return s;
}

inline void write_curve_csv(const std::string& path, const MetricCurve& c) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("write_curve_csv: cannot open " + path);
    out << curve_to_csv(c);
}

inline MetricCurve read_curve_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("read_curve_csv: cannot open " + path);
    MetricCurve c;
    c.metric_id = path;
    std::string line;
    if (!std::getline(in, line))
        throw std::runtime_error("read_curve_csv: empty file " + path);
    if (line.rfind("axis_db", 0) != 0)
        throw std::runtime_error("read_curve_csv: missing header in " + path);
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string cell;
        std::vector<std::string> cells;
        while (std::getline(ls, cell, ',')) cells.push_back(cell);
        if (cells.size() != 6)
            throw std::runtime_error("read_curve_csv: malformed row in " + path);
        CurvePoint p;
        p.x = std::stod(cells[0]);
        p.value = std::stod(cells[1]);
        p.ci_low = std::stod(cells[2]);
        p.ci_high = std::stod(cells[3]);
        p.trials = std::stoll(cells[4]);
        p.events = std::stoll(cells[5]);
        c.points.push_back(p);
    }
    return c;
}

// FNV-1a, used for config and fixture digests in run manifests.
inline std::uint64_t fnv1a64(const std::string& data) {
    std::uint64_t h = 0xCBF29CE484222325ULL;
    for (unsigned char ch : data) {
        h ^= ch;
        h *= 0x100000001B3ULL;
    }
    return h;
}

inline std::uint64_t fnv1a64_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("fnv1a64_file: cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return fnv1a64(ss.str());
}

inline std::string hex64(std::uint64_t v) {
    char buf[20];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

}  // namespace wiretap
