// wiretapsim: secrecy-metric experiment runner.
//
// Subcommands:
//   analytic    closed-form curves (BPSK BER, binomial BE-CDF, exact iid
//               BER-CDF, limiting values)
//   sweep       Monte Carlo scenario sweeps from a config file
//   kl          LLR divergence sweep over an LDPC/AWGN chain
//   gap         security gap between two curve CSVs
//   reduce-bsc  effective binary symmetric channel report
//
// Exit codes: 0 success, 2 configuration error, 3 runtime error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "wiretap/config.hpp"
#include "wiretap/csv.hpp"
#include "wiretap/run.hpp"
#include "wiretap/scenarios.hpp"
#include "wiretap/version.hpp"

namespace {

struct Overrides {
    std::optional<std::uint64_t> seed;
    std::optional<long long> trials;
    std::optional<std::string> out;
    std::optional<int> workers;
};

wiretap::ScenarioConfig load_config(const std::string& path, const Overrides& ov) {
    wiretap::ScenarioConfig cfg = wiretap::parse_config(path);
    if (ov.seed) cfg.seed = *ov.seed;
    if (ov.trials) cfg.trials = *ov.trials;
    if (ov.out) cfg.out_dir = *ov.out;
    if (ov.workers) cfg.workers = *ov.workers;
    wiretap::validate_config(cfg);
    return cfg;
}

void add_overrides(CLI::App* cmd, Overrides& ov) {
    cmd->add_option("--seed", ov.seed, "override the config seed");
    cmd->add_option("--trials", ov.trials, "override the per-point trial count");
    cmd->add_option("--out", ov.out, "override the output directory");
    cmd->add_option("--workers", ov.workers,
                    "worker threads (affects speed only, never results)");
}

void report_run(const wiretap::RunManifest& man, const std::string& out_dir) {
    std::cout << "wrote " << man.outputs.size() << " output file(s) to " << out_dir
              << "\n";
    for (const auto& f : man.outputs) std::cout << "  " << f << "\n";
    std::cout << "summary: " << man.summary_path << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"short-blocklength secrecy metric toolkit"};
    app.set_version_flag("--version", wiretap::kVersion);
    app.require_subcommand(1);

    // --- analytic ---
    auto* analytic = app.add_subcommand("analytic", "closed-form metric curves");
    std::string an_config;
    std::string an_metric = "be-cdf";
    wiretap::ScenarioConfig an_cfg;
    an_cfg.trials = 1;
    Overrides an_ov;
    analytic->add_option("--config", an_config, "config file (kind analytic-*)");
    analytic->add_option("--metric", an_metric,
                         "ber | be-cdf | ber-cdf-iid | limit (ignored with --config)");
    analytic->add_option("--n", an_cfg.n, "block size for be-cdf");
    analytic->add_option("--t", an_cfg.t, "error-correction capability");
    analytic->add_option("--sb", an_cfg.sb, "post-decoder block size S_b");
    analytic->add_option("--deltas", [&an_cfg](const std::vector<std::string>& vals) {
        an_cfg.deltas.clear();
        for (const auto& v : vals)
            for (double d : wiretap::detail::parse_delta_list("deltas", v))
                an_cfg.deltas.push_back(d);
        return true;
    }, "comma-separated delta list");
    analytic->add_option("--rate", an_cfg.rate, "overall rate for axis conversion");
    analytic->add_option("--axis", an_cfg.axis, "snr | ebno | delta");
    analytic->add_option("--start", an_cfg.start, "grid start");
    analytic->add_option("--stop", an_cfg.stop, "grid stop");
    analytic->add_option("--step", an_cfg.step, "grid step");
    analytic->add_option("--out", an_cfg.out_dir, "output directory");

    // --- sweep ---
    auto* sweep = app.add_subcommand("sweep", "Monte Carlo scenario sweep");
    std::string sw_config;
    Overrides sw_ov;
    sweep->add_option("--config", sw_config, "scenario config file")->required();
    add_overrides(sweep, sw_ov);

    // --- kl ---
    auto* kl = app.add_subcommand("kl", "LLR divergence sweep");
    std::string kl_config;
    bool kl_dump = false;
    Overrides kl_ov;
    kl->add_option("--config", kl_config, "config file (kind ldpc-awgn-kl)")
        ->required();
    kl->add_flag("--dump-llrs", kl_dump,
                 "also write raw decoder LLRs (little-endian doubles)");
    add_overrides(kl, kl_ov);

    // --- gap ---
    auto* gap = app.add_subcommand("gap", "security gap between two curves");
    std::string gap_bob, gap_eve, gap_out;
    double gap_bob_target = 0, gap_eve_target = 0;
    gap->add_option("--bob", gap_bob, "legitimate receiver curve CSV")->required();
    gap->add_option("--bob-target", gap_bob_target, "reliability target")->required();
    gap->add_option("--eve", gap_eve, "eavesdropper curve CSV")->required();
    gap->add_option("--eve-target", gap_eve_target, "security target")->required();
    gap->add_option("--out", gap_out, "optional JSON output file");

    // --- reduce-bsc ---
    auto* red = app.add_subcommand("reduce-bsc", "effective BSC report");
    std::string red_eve, red_kl, red_out;
    double red_delta = 0.05, red_target = 0.995, red_bob_failure = 0.0;
    red->add_option("--eve-curve", red_eve, "Eve BER-CDF^ac curve CSV")->required();
    red->add_option("--delta", red_delta, "delta the curve was measured at")
        ->required();
    red->add_option("--target", red_target, "confidence target")->required();
    red->add_option("--kl-curve", red_kl, "optional KL-vs-axis curve CSV");
    red->add_option("--bob-failure-rate", red_bob_failure,
                    "legitimate receiver block failure rate");
    red->add_option("--out", red_out, "optional JSON output file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (analytic->parsed()) {
            wiretap::ScenarioConfig cfg;
            if (!an_config.empty()) {
                cfg = load_config(an_config, an_ov);
                if (cfg.kind.rfind("analytic-", 0) != 0)
                    throw wiretap::ConfigError("scenario.kind",
                                               "analytic subcommand needs an "
                                               "analytic-* kind");
            } else {
                cfg = an_cfg;
                if (an_metric == "ber") cfg.kind = "analytic-ber";
                else if (an_metric == "be-cdf") cfg.kind = "analytic-be-cdf";
                else if (an_metric == "ber-cdf-iid") cfg.kind = "analytic-ber-cdf-iid";
                else if (an_metric == "limit") {
                    cfg.kind = "analytic-limit";
                    cfg.axis = "delta";
                } else
                    throw wiretap::ConfigError("metric", "unknown analytic metric '" +
                                                             an_metric + "'");
                if (cfg.kind == "analytic-ber-cdf-iid" && cfg.deltas.empty())
                    cfg.deltas = {0.05, 0.15, 0.25};
                wiretap::validate_config(cfg);
            }
            report_run(wiretap::run(cfg), cfg.out_dir);
        } else if (sweep->parsed()) {
            const wiretap::ScenarioConfig cfg = load_config(sw_config, sw_ov);
            report_run(wiretap::run(cfg), cfg.out_dir);
        } else if (kl->parsed()) {
            wiretap::ScenarioConfig cfg = load_config(kl_config, kl_ov);
            if (cfg.kind != "ldpc-awgn-kl")
                throw wiretap::ConfigError("scenario.kind",
                                           "kl subcommand needs kind ldpc-awgn-kl");
            report_run(wiretap::run(cfg, kl_dump), cfg.out_dir);
        } else if (gap->parsed()) {
            const wiretap::MetricCurve bob = wiretap::read_curve_csv(gap_bob);
            const wiretap::MetricCurve eve = wiretap::read_curve_csv(gap_eve);
            const double g =
                wiretap::security_gap(bob, gap_bob_target, eve, gap_eve_target);
            nlohmann::json j;
            j["gap_db"] = g;
            j["bob_target"] = gap_bob_target;
            j["eve_target"] = gap_eve_target;
            std::cout << j.dump(2) << "\n";
            if (!gap_out.empty()) {
                std::ofstream os(gap_out, std::ios::binary);
                os << j.dump(2) << "\n";
            }
        } else if (red->parsed()) {
            wiretap::BscReductionInput in;
            in.eve_ber_cdf_ac = wiretap::read_curve_csv(red_eve);
            in.delta = red_delta;
            if (!red_kl.empty()) in.kl_by_x = wiretap::read_curve_csv(red_kl);
            in.bob_block_failure_rate = red_bob_failure;
            const wiretap::EffectiveBscReport rep =
                wiretap::reduce_to_bsc(in, red_delta, red_target);
            nlohmann::json j;
            j["p_wiretap_lower"] = rep.p_wiretap_lower;
            j["confidence"] = rep.confidence;
            j["operating_x_db"] = rep.operating_x_db;
            j["p_main"] = rep.p_main;
            j["residual_main_failure"] = rep.residual_main_failure;
            j["c_s_bits"] = rep.c_s_bits;
            j["soft_info_kl"] = rep.soft_info_kl;
            j["independence_note"] = rep.independence_note;
            std::cout << j.dump(2) << "\n";
            if (!red_out.empty()) {
                std::ofstream os(red_out, std::ios::binary);
                os << j.dump(2) << "\n";
            }
        }
    } catch (const wiretap::ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
