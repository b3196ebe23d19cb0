#pragma once

#include <charconv>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace wiretap {

struct ConfigError : std::runtime_error {
    std::string field;
    ConfigError(std::string field_, const std::string& msg)
        : std::runtime_error("config: " + field_ + ": " + msg),
          field(std::move(field_)) {}
};

// Full experiment description. Parsed from a flat sectioned text format
// ('#'/';' comments, [section] headers, key = value lines); unknown
// sections or keys are rejected so typos surface as diagnostics instead
// of silently applied defaults.
struct ScenarioConfig {
    // [scenario]
    std::string kind = "uncoded-bpsk";
    // [sweep]
    std::string axis = "snr";  // snr | ebno | delta (delta: analytic-limit only)
    double start = 0.0;
    double stop = 6.0;
    double step = 1.0;
    long long trials = 1000;
    std::uint64_t seed = 1;
    int workers = 0;  // 0 = all hardware threads; never affects results
    // [metric]
    int t = 10;
    std::vector<double> deltas;
    int sb = 64;
    int n = 127;
    double rate = 1.0;  // axis conversion for analytic curves
    // [channel]
    double alpha = 0.0;
    // [codes]
    std::string ldpc_fixture = "data/ldpc_1056_880.pchk";
    std::uint64_t scrambler_seed = 1;
    int blocks_per_sb = 1;
    int max_iters = 50;
    // [modem]
    std::string modem = "bpsk";  // bpsk | dpsk
    int order = 2;
    // [output]
    std::string out_dir = "out";

    // resolved at parse time, not part of the serialized form
    std::string resolved_fixture;

    bool operator==(const ScenarioConfig& o) const {
        return kind == o.kind && axis == o.axis && start == o.start &&
               stop == o.stop && step == o.step && trials == o.trials &&
               seed == o.seed && workers == o.workers && t == o.t &&
               deltas == o.deltas && sb == o.sb && n == o.n && rate == o.rate &&
               alpha == o.alpha && ldpc_fixture == o.ldpc_fixture &&
               scrambler_seed == o.scrambler_seed &&
               blocks_per_sb == o.blocks_per_sb && max_iters == o.max_iters &&
               modem == o.modem && order == o.order && out_dir == o.out_dir;
    }
};

inline const std::set<std::string>& known_scenario_kinds() {
    static const std::set<std::string> kinds = {
        "analytic-ber",    "analytic-be-cdf", "analytic-ber-cdf-iid",
        "analytic-limit",  "uncoded-bpsk",    "scrambler-bch",
        "dpsk-bch",        "keyed-jamming",   "ldpc-awgn-kl"};
    return kinds;
}

inline bool scenario_uses_fixture(const std::string& kind) {
    return kind == "keyed-jamming" || kind == "ldpc-awgn-kl";
}

namespace detail {

inline std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

inline std::string shortest_double(double v) {
    char buf[40];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

inline double parse_double(const std::string& field, const std::string& v) {
    try {
        std::size_t pos = 0;
        const double d = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument("trailing characters");
        return d;
    } catch (const std::exception&) {
        throw ConfigError(field, "not a number: '" + v + "'");
    }
}

inline long long parse_int(const std::string& field, const std::string& v) {
    try {
        std::size_t pos = 0;
        const long long d = std::stoll(v, &pos);
        if (pos != v.size()) throw std::invalid_argument("trailing characters");
        return d;
    } catch (const std::exception&) {
        throw ConfigError(field, "not an integer: '" + v + "'");
    }
}

inline std::uint64_t parse_u64(const std::string& field, const std::string& v) {
    try {
        std::size_t pos = 0;
        const std::uint64_t d = std::stoull(v, &pos);
        if (pos != v.size()) throw std::invalid_argument("trailing characters");
        return d;
    } catch (const std::exception&) {
        throw ConfigError(field, "not a non-negative integer: '" + v + "'");
    }
}

inline std::vector<double> parse_delta_list(const std::string& field,
                                            const std::string& v) {
    std::vector<double> out;
    std::string cur;
    std::istringstream ss(v);
    while (std::getline(ss, cur, ',')) {
        cur = trim(cur);
        if (cur.empty()) continue;
        out.push_back(parse_double(field, cur));
    }
    return out;
}

}  // namespace detail

inline void validate_config(const ScenarioConfig& c) {
    if (!known_scenario_kinds().count(c.kind))
        throw ConfigError("scenario.kind", "unknown scenario kind '" + c.kind + "'");
    if (c.axis != "snr" && c.axis != "ebno" && c.axis != "delta")
        throw ConfigError("sweep.axis", "must be snr, ebno or delta");
    if (c.axis == "delta" && c.kind != "analytic-limit")
        throw ConfigError("sweep.axis", "delta axis is only valid for analytic-limit");
    if (!(c.step > 0.0)) throw ConfigError("sweep.step", "must be > 0");
    if (c.stop < c.start) throw ConfigError("sweep.stop", "must be >= start");
    if (c.trials < 1) throw ConfigError("sweep.trials", "must be >= 1");
    if (c.workers < 0) throw ConfigError("sweep.workers", "must be >= 0");
    if (c.t < 0) throw ConfigError("metric.t", "must be >= 0");
    for (double d : c.deltas)
        if (d < 0.0 || d > 0.5)
            throw ConfigError("metric.deltas", "each delta must lie in [0, 0.5]");
    if (c.sb < 1) throw ConfigError("metric.sb", "must be >= 1");
    if (c.n < 1) throw ConfigError("metric.n", "must be >= 1");
    if (!(c.rate > 0.0) || c.rate > 1.0)
        throw ConfigError("metric.rate", "must be in (0, 1]");
    if (c.alpha < 0.0) throw ConfigError("channel.alpha", "must be >= 0");
    if (c.blocks_per_sb < 1) throw ConfigError("codes.blocks_per_sb", "must be >= 1");
    if (c.max_iters < 1) throw ConfigError("codes.max_iters", "must be >= 1");
    if (c.modem != "bpsk" && c.modem != "dpsk")
        throw ConfigError("modem.kind", "must be bpsk or dpsk");
    if (c.order != 2 && c.order != 4)
        throw ConfigError("modem.order", "must be 2 or 4");
    if (c.out_dir.empty()) throw ConfigError("output.dir", "must not be empty");
    if (scenario_uses_fixture(c.kind)) {
        const std::string& p =
            c.resolved_fixture.empty() ? c.ldpc_fixture : c.resolved_fixture;
        if (!std::filesystem::exists(p))
            throw ConfigError("codes.ldpc_fixture", "fixture not found: " + p);
    }
}

inline std::vector<double> config_grid(const ScenarioConfig& c) {
    std::vector<double> g;
    const long long npts =
        static_cast<long long>(std::floor((c.stop - c.start) / c.step + 1e-9)) + 1;
    for (long long i = 0; i < npts; ++i) g.push_back(c.start + static_cast<double>(i) * c.step);
    if (g.empty()) throw ConfigError("sweep", "empty grid");
    return g;
}

// Parses the sectioned text; `base_dir` anchors relative fixture paths.
inline ScenarioConfig parse_config_text(const std::string& text,
                                        const std::string& base_dir = ".") {
    ScenarioConfig c;
    c.deltas = {};
    std::istringstream in(text);
    std::string line, section;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        line = detail::trim(line);
        if (line.empty() || line[0] == '#' || line[0] == ';') continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw ConfigError("line " + std::to_string(lineno),
                                  "malformed section header");
            section = detail::trim(line.substr(1, line.size() - 2));
            continue;
        }
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(lineno), "expected key = value");
        const std::string key = detail::trim(line.substr(0, eq));
        const std::string val = detail::trim(line.substr(eq + 1));
        const std::string field = section + "." + key;

        if (section == "scenario") {
            if (key == "kind") c.kind = val;
            else throw ConfigError(field, "unknown key");
        } else if (section == "sweep") {
            if (key == "axis") c.axis = val;
            else if (key == "start") c.start = detail::parse_double(field, val);
            else if (key == "stop") c.stop = detail::parse_double(field, val);
            else if (key == "step") c.step = detail::parse_double(field, val);
            else if (key == "trials") c.trials = detail::parse_int(field, val);
            else if (key == "seed") c.seed = detail::parse_u64(field, val);
            else if (key == "workers") c.workers = static_cast<int>(detail::parse_int(field, val));
            else throw ConfigError(field, "unknown key");
        } else if (section == "metric") {
            if (key == "t") c.t = static_cast<int>(detail::parse_int(field, val));
            else if (key == "deltas") c.deltas = detail::parse_delta_list(field, val);
            else if (key == "sb") c.sb = static_cast<int>(detail::parse_int(field, val));
            else if (key == "n") c.n = static_cast<int>(detail::parse_int(field, val));
            else if (key == "rate") c.rate = detail::parse_double(field, val);
            else throw ConfigError(field, "unknown key");
        } else if (section == "channel") {
            if (key == "alpha") c.alpha = detail::parse_double(field, val);
            else throw ConfigError(field, "unknown key");
        } else if (section == "codes") {
            if (key == "ldpc_fixture") c.ldpc_fixture = val;
            else if (key == "scrambler_seed") c.scrambler_seed = detail::parse_u64(field, val);
            else if (key == "blocks_per_sb") c.blocks_per_sb = static_cast<int>(detail::parse_int(field, val));
            else if (key == "max_iters") c.max_iters = static_cast<int>(detail::parse_int(field, val));
            else throw ConfigError(field, "unknown key");
        } else if (section == "modem") {
            if (key == "kind") c.modem = val;
            else if (key == "order") c.order = static_cast<int>(detail::parse_int(field, val));
            else throw ConfigError(field, "unknown key");
        } else if (section == "output") {
            if (key == "dir") c.out_dir = val;
            else throw ConfigError(field, "unknown key");
        } else {
            throw ConfigError(section.empty() ? key : section, "unknown section");
        }
    }

    if (std::filesystem::path(c.ldpc_fixture).is_relative())
        c.resolved_fixture =
            (std::filesystem::path(base_dir) / c.ldpc_fixture).string();
    else
        c.resolved_fixture = c.ldpc_fixture;

    validate_config(c);
    return c;
}

inline ScenarioConfig parse_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config", "cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    const std::string dir = std::filesystem::path(path).parent_path().string();
    return parse_config_text(ss.str(), dir.empty() ? "." : dir);
}

// Canonical serialization: every field, fixed order. Re-parsing the
// output reproduces the same configuration.
inline std::string normalized_text(const ScenarioConfig& c) {
    std::ostringstream o;
    o << "[scenario]\n";
    o << "kind = " << c.kind << "\n";
    o << "[sweep]\n";
    o << "axis = " << c.axis << "\n";
    o << "start = " << detail::shortest_double(c.start) << "\n";
    o << "stop = " << detail::shortest_double(c.stop) << "\n";
    o << "step = " << detail::shortest_double(c.step) << "\n";
    o << "trials = " << c.trials << "\n";
    o << "seed = " << c.seed << "\n";
    o << "workers = " << c.workers << "\n";
    o << "[metric]\n";
    o << "t = " << c.t << "\n";
    o << "deltas =";
    for (std::size_t i = 0; i < c.deltas.size(); ++i)
        o << (i ? "," : " ") << detail::shortest_double(c.deltas[i]);
    o << "\n";
    o << "sb = " << c.sb << "\n";
    o << "n = " << c.n << "\n";
    o << "rate = " << detail::shortest_double(c.rate) << "\n";
    o << "[channel]\n";
    o << "alpha = " << detail::shortest_double(c.alpha) << "\n";
    o << "[codes]\n";
    o << "ldpc_fixture = " << c.ldpc_fixture << "\n";
    o << "scrambler_seed = " << c.scrambler_seed << "\n";
    o << "blocks_per_sb = " << c.blocks_per_sb << "\n";
    o << "max_iters = " << c.max_iters << "\n";
    o << "[modem]\n";
    o << "kind = " << c.modem << "\n";
    o << "order = " << c.order << "\n";
    o << "[output]\n";
    o << "dir = " << c.out_dir << "\n";
    return o.str();
}

}  // namespace wiretap
