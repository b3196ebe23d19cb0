#pragma once

#include <chrono>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "wiretap/config.hpp"
#include "wiretap/csv.hpp"
#include "wiretap/llr_analysis.hpp"
#include "wiretap/scenarios.hpp"
#include "wiretap/version.hpp"

namespace wiretap {

struct RunManifest {
    std::string config_digest;
    std::string tool_version;
    std::map<std::string, std::string> fixture_digests;
    std::string started;
    std::string finished;
    std::vector<std::string> outputs;  // CSV files, relative to out_dir
    std::string summary_path;
};

namespace detail {

inline std::string iso_now() {
    const auto t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    char buf[32];
    std::tm tm{};
    gmtime_r(&t, &tm);
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

inline MetricCurve analytic_curve(const ScenarioConfig& cfg,
                                  const std::vector<double>& grid,
                                  const std::string& metric_id, double delta) {
    MetricCurve c;
    c.metric_id = metric_id;
    c.axis = cfg.axis == "snr" ? Axis::SnrDb
             : cfg.axis == "ebno" ? Axis::EbnoDb
                                  : Axis::Delta;
    for (double x : grid) {
        double v = 0.0;
        if (cfg.kind == "analytic-limit") {
            v = limiting_value(x, cfg.sb);
        } else {
            const double snr_db =
                cfg.axis == "snr" ? x : ebno_to_snr_db(x, cfg.rate);
            const double p = ber_bpsk_awgn(db_to_linear(snr_db));
            if (cfg.kind == "analytic-ber")
                v = p;
            else if (cfg.kind == "analytic-be-cdf")
                v = be_cdf_analytic(cfg.n, cfg.t, p);
            else
                v = ber_cdf_ac_exact_iid(cfg.sb, delta, p);
        }
        c.points.push_back({x, v, v, v, 0, 0});
    }
    return c;
}

inline void append_summary_points(nlohmann::json& j,
                                  const std::vector<SweepSummaryPoint>& pts) {
    for (const auto& s : pts) {
        j.push_back({{"x", s.x},
                     {"snr_db", s.snr_db},
                     {"trials", s.trials},
                     {"avg_iterations", s.avg_iterations},
                     {"inner_failure_rate", s.inner_failure_rate},
                     {"outer_failure_rate", s.outer_failure_rate}});
    }
}

}  // namespace detail

// Executes one configuration: one CSV per metric curve plus a JSON
// summary embedding the normalized config. Outputs are a pure function
// of (config, seed, fixture bytes); the worker count only changes wall
// time.
inline RunManifest run(const ScenarioConfig& cfg, bool dump_llrs = false) {
    RunManifest man;
    man.tool_version = kVersion;
    man.started = detail::iso_now();
    const std::string norm = normalized_text(cfg);
    man.config_digest = hex64(fnv1a64(norm));

    std::filesystem::create_directories(cfg.out_dir);
    const std::vector<double> grid = config_grid(cfg);

    std::vector<MetricCurve> curves;
    std::vector<SweepSummaryPoint> summary;
    std::vector<KlPoint> kl_points;

    SweepSpec spec;
    spec.axis = cfg.axis == "snr" ? Axis::SnrDb : Axis::EbnoDb;
    spec.grid = grid;
    spec.t = cfg.t;
    spec.deltas = cfg.deltas;
    spec.trials = cfg.trials;
    spec.seed = cfg.seed;
    spec.workers = cfg.workers;

    if (cfg.kind.rfind("analytic-", 0) == 0) {
        if (cfg.kind == "analytic-ber-cdf-iid") {
            for (double d : cfg.deltas)
                curves.push_back(detail::analytic_curve(
                    cfg, grid, "ber_cdf_ac_iid_d" + detail::format_delta(d), d));
        } else if (cfg.kind == "analytic-ber") {
            curves.push_back(detail::analytic_curve(cfg, grid, "ber_analytic", 0));
        } else if (cfg.kind == "analytic-be-cdf") {
            curves.push_back(detail::analytic_curve(cfg, grid, "be_cdf_analytic", 0));
        } else {
            curves.push_back(detail::analytic_curve(cfg, grid, "limiting_value", 0));
        }
    } else if (cfg.kind == "uncoded-bpsk") {
        const UncodedBpskScenario scen(cfg.n);
        SweepOutput out = run_metric_sweep(scen, spec);
        curves = std::move(out.curves);
        summary = std::move(out.summary);
    } else if (cfg.kind == "scrambler-bch") {
        const ScramblerBchScenario scen(cfg.scrambler_seed, cfg.blocks_per_sb);
        SweepOutput out = run_metric_sweep(scen, spec);
        curves = std::move(out.curves);
        summary = std::move(out.summary);
    } else if (cfg.kind == "dpsk-bch") {
        if (cfg.modem != "dpsk")
            throw ConfigError("modem.kind", "dpsk-bch requires modem kind dpsk");
        const DpskBchScenario scen(cfg.order);
        SweepOutput out = run_metric_sweep(scen, spec);
        curves = std::move(out.curves);
        summary = std::move(out.summary);
    } else if (cfg.kind == "keyed-jamming") {
        const LdpcCode ldpc = ldpc_construct_fixture(cfg.resolved_fixture);
        man.fixture_digests[cfg.ldpc_fixture] =
            hex64(fnv1a64_file(cfg.resolved_fixture));
        const KeyedJammingScenario scen(&ldpc, cfg.alpha, cfg.max_iters);
        SweepOutput out = run_metric_sweep(scen, spec);
        curves = std::move(out.curves);
        summary = std::move(out.summary);
    } else if (cfg.kind == "ldpc-awgn-kl") {
        if (cfg.axis != "snr")
            throw ConfigError("sweep.axis", "ldpc-awgn-kl sweeps channel SNR");
        const LdpcCode ldpc = ldpc_construct_fixture(cfg.resolved_fixture);
        man.fixture_digests[cfg.ldpc_fixture] =
            hex64(fnv1a64_file(cfg.resolved_fixture));
        const LdpcAwgnScenario scen(&ldpc, cfg.max_iters);
        std::vector<std::vector<double>> raw;
        kl_points = kl_vs_ber_sweep(scen, grid, cfg.trials, cfg.seed, cfg.workers,
                                    dump_llrs ? &raw : nullptr);
        MetricCurve kl{Axis::SnrDb, "kl_vs_snr", {}, {}};
        MetricCurve ber{Axis::SnrDb, "post_ber_vs_snr", {}, {}};
        for (const auto& p : kl_points) {
            const long long samples = p.correct_samples + p.error_samples;
            if (!p.degenerate)
                kl.points.push_back(
                    {p.x_db, p.kl_bits, p.kl_bits, p.kl_bits, samples, p.error_samples});
            ber.points.push_back({p.x_db, p.post_ber, p.post_ber, p.post_ber, samples,
                                  p.error_samples});
        }
        curves.push_back(std::move(kl));
        curves.push_back(std::move(ber));
        if (dump_llrs) {
            for (std::size_t i = 0; i < raw.size(); ++i) {
                char name[64];
                std::snprintf(name, sizeof(name), "llr_samples_%03zu.f64", i);
                const std::string path =
                    (std::filesystem::path(cfg.out_dir) / name).string();
                std::ofstream os(path, std::ios::binary);
                // doubles are written little-endian on every supported target
                os.write(reinterpret_cast<const char*>(raw[i].data()),
                         static_cast<std::streamsize>(raw[i].size() * sizeof(double)));
                man.outputs.push_back(name);
            }
        }
    } else {
        throw ConfigError("scenario.kind", "unknown scenario kind '" + cfg.kind + "'");
    }

    for (const auto& c : curves) {
        const std::string name = c.metric_id + ".csv";
        write_curve_csv((std::filesystem::path(cfg.out_dir) / name).string(), c);
        man.outputs.push_back(name);
    }

    man.finished = detail::iso_now();

    nlohmann::json j;
    j["tool_version"] = man.tool_version;
    j["config_digest"] = man.config_digest;
    j["fixture_digests"] = man.fixture_digests;
    j["started"] = man.started;
    j["finished"] = man.finished;
    j["outputs"] = man.outputs;
    j["normalized_config"] = norm;
    if (!summary.empty()) {
        j["points"] = nlohmann::json::array();
        detail::append_summary_points(j["points"], summary);
    }
    if (!kl_points.empty()) {
        j["kl_points"] = nlohmann::json::array();
        for (const auto& p : kl_points)
            j["kl_points"].push_back({{"snr_db", p.x_db},
                                      {"post_ber", p.post_ber},
                                      {"kl_bits", p.kl_bits},
                                      {"correct_samples", p.correct_samples},
                                      {"error_samples", p.error_samples},
                                      {"degenerate", p.degenerate}});
    }
    man.summary_path =
        (std::filesystem::path(cfg.out_dir) / "summary.json").string();
    std::ofstream js(man.summary_path, std::ios::binary);
    js << j.dump(2) << "\n";
    return man;
}

}  // namespace wiretap
