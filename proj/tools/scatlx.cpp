#include "scatter/commands.hpp"
#include "scatter/config.hpp"
#include "scatter/io.hpp"
#include "scatter/selfcheck.hpp"
#include "scatter/synth.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <optional>
#include <sstream>

namespace {

struct CommonArgs {
    std::string input;
    std::string config_path;
    std::string out;
    std::optional<std::string> reducer;
    std::optional<std::uint64_t> seed;
    std::vector<std::string> overrides;
};

void add_common(CLI::App* cmd, CommonArgs& args)
{
    cmd->add_option("input", args.input, "Signal CSV: header of channel names, one column per channel")->required();
    cmd->add_option("--config", args.config_path, "key = value configuration file");
    cmd->add_option("--out", args.out, "Output directory")->required();
    cmd->add_option("--reducer", args.reducer, "pca or maxpool");
    cmd->add_option("--seed", args.seed, "Clustering seed");
    cmd->add_option("--set", args.overrides, "Override one config field, key=value")->take_all();
}

scatter::PipelineConfig resolve_config(const CommonArgs& args)
{
    auto config = args.config_path.empty() ? scatter::PipelineConfig{} : scatter::load_config(args.config_path);
    if (args.reducer) scatter::set_config_value(config, "reducer", *args.reducer);
    if (args.seed) config.seed = *args.seed;
    for (const auto& kv : args.overrides) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos) throw scatter::InputError("--set expects key=value, got '" + kv + "'");
        scatter::set_config_value(config, kv.substr(0, eq), kv.substr(eq + 1));
    }
    scatter::validate(config);
    return config;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Scattering-based transient representation and detection"};
    app.require_subcommand(1);
    bool quiet = false;
    app.add_flag("--quiet", quiet, "Suppress progress output")->configurable(false);

    CommonArgs analyze_args, detect_args, monitor_args;
    scatter::AnalyzeOptions analyze_opts;
    bool skip_s2 = false;
    auto* analyze = app.add_subcommand("analyze", "Export Lx, theta, thresholds and S2 with a manifest");
    add_common(analyze, analyze_args);
    analyze->add_flag("--skip-s2", skip_s2, "Do not export S2");
    analyze->add_flag("--binary", analyze_opts.binary_s2, "Export S2 as raw float64 with a JSON sidecar");
    analyze->add_flag("--quiet", quiet);

    auto* detect = app.add_subcommand("detect", "Cluster frames and report transient intervals");
    add_common(detect, detect_args);
    detect->add_flag("--quiet", quiet);

    auto* monitor = app.add_subcommand("monitor", "Sliding-window theta trajectory");
    add_common(monitor, monitor_args);
    monitor->add_flag("--quiet", quiet);

    scatter::SynthParams synth_params;
    std::string synth_kind, synth_out;
    std::size_t switch_at = 0;
    auto* synth = app.add_subcommand("synth", "Write a seeded synthetic signal and its ground truth");
    synth->add_option("kind", synth_kind, "noise | burst | chirp | regime")->required();
    synth->add_option("--out", synth_out, "Output CSV path; ground truth goes to <out>.truth.json")->required();
    synth->add_option("--length", synth_params.length, "Samples");
    synth->add_option("--alpha", synth_params.alpha, "Background spectrum exponent");
    synth->add_option("--count", synth_params.count, "Number of bursts");
    synth->add_option("--snr", synth_params.snr, "Burst amplitude in background MADs");
    synth->add_option("--width", synth_params.burst_width, "Burst envelope standard deviation, samples");
    synth->add_option("--spike-width", synth_params.spike_width, "Spike standard deviation, samples");
    synth->add_option("--f-low", synth_params.f_low, "Lowest spike rate (chirp: start frequency), cycles/sample");
    synth->add_option("--f-high", synth_params.f_high, "Highest spike rate (chirp: end frequency), cycles/sample");
    synth->add_option("--switch-at", switch_at, "Regime: first bursty sample");
    synth->add_option("--rate", synth_params.burst_rate, "Regime: bursts per sample");
    synth->add_option("--seed", synth_params.seed, "Generator seed");
    synth->add_flag("--quiet", quiet);

    auto* selfcheck = app.add_subcommand("selfcheck", "Run the oracle and invariance checks");
    unsigned check_seed = 0;
    selfcheck->add_option("--seed", check_seed, "Random seed for the checks");
    selfcheck->add_flag("--quiet", quiet);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    std::ostream* log = quiet ? nullptr : &std::cerr;
    try {
        if (*analyze) {
            const auto config = resolve_config(analyze_args);
            analyze_opts.write_s2 = !skip_s2;
            scatter::run_analyze(scatter::read_signal_csv(analyze_args.input), config, analyze_args.out, analyze_opts, log);
        } else if (*detect) {
            const auto config = resolve_config(detect_args);
            scatter::run_detect(scatter::read_signal_csv(detect_args.input), config, detect_args.out, log);
        } else if (*monitor) {
            const auto config = resolve_config(monitor_args);
            scatter::run_monitor(scatter::read_signal_csv(monitor_args.input), config, monitor_args.out, log);
        } else if (*synth) {
            try {
                synth_params.kind = scatter::parse_synth_kind(synth_kind);
            } catch (const std::invalid_argument& e) {
                throw scatter::InputError(e.what());
            }
            synth_params.switch_at = switch_at;
            const auto signal = scatter::synthesize(synth_params);
            scatter::SignalTable table{{"x"}, {signal.samples}};
            scatter::write_file_atomic(synth_out, scatter::format_signal_csv(table));
            scatter::write_file_atomic(synth_out + ".truth.json", scatter::synth_truth_json(synth_params, signal));
            if (log) *log << "synth: " << signal.events.size() << " events -> " << synth_out << '\n';
        } else if (*selfcheck) {
            const auto rows = scatter::run_selfcheck(check_seed);
            bool all = true;
            for (const auto& r : rows) {
                all = all && r.passed;
                if (!quiet) std::printf("%-45s %s  %s\n", r.name.c_str(), r.passed ? "PASS" : "FAIL", r.detail.c_str());
            }
            return all ? 0 : 1;
        }
    } catch (const scatter::InputError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
