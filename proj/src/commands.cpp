#include "scatter/commands.hpp"

#include <json.hpp>

#include <cctype>
#include <cmath>

namespace scatter {

namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json config_json(const PipelineConfig& c)
{
    return {
        {"J1", c.J1},
        {"Q1", c.Q1},
        {"J2", c.J2},
        {"Q2", c.Q2},
        {"p", c.p},
        {"reducer", to_string(c.reducer)},
        {"window_len", c.window_len},
        {"hop", c.hop},
        {"k_max", c.k_max},
        {"frame_len", c.frame_len},
        {"min_duration", c.min_duration},
        {"seed", c.seed},
        {"sample_rate_hz", c.sample_rate_hz},
        {"cluster_on", c.cluster_on == ClusterInput::lx ? "lx" : "features"},
    };
}

void write_manifest(OutputTree& tree, std::string_view command, const SignalTable& signal, const PipelineConfig& config)
{
    ordered_json channels = ordered_json::array();
    for (std::size_t c = 0; c < signal.names.size(); ++c)
        channels.push_back({{"name", signal.names[c]}, {"directory", channel_directory(signal.names[c], c)}});
    ordered_json artifacts = ordered_json::object();
    for (const auto& [path, hash] : tree.hashes()) artifacts[path] = hash;

    const ordered_json manifest = {
        {"command", command},
        {"config", config_json(config)},
        {"config_text", serialize_config(config)},
        {"samples", signal.length()},
        {"feature_dimension", feature_dimension(config.geometry(), config.reducer)},
        {"channels", channels},
        {"artifacts", artifacts},
    };
    write_file_atomic(tree.root() / "manifest.json", manifest.dump(2) + "\n");
}

void note(std::ostream* log, const std::string& text)
{
    if (log) *log << text << '\n';
}

}  // namespace

std::string channel_directory(const std::string& name, std::size_t index)
{
    std::string out;
    for (char ch : name) {
        const auto u = static_cast<unsigned char>(ch);
        out += (std::isalnum(u) || ch == '.' || ch == '_' || ch == '-') ? ch : '_';
    }
    if (out.empty() || out == "." || out == "..") out = "channel" + std::to_string(index);
    return out;
}

void run_analyze(const SignalTable& signal, const PipelineConfig& config, const std::filesystem::path& out,
                 const AnalyzeOptions& options, std::ostream* log)
{
    validate(config);
    OutputTree tree(out);
    for (std::size_t c = 0; c < signal.channels.size(); ++c) {
        const auto dir = std::filesystem::path(channel_directory(signal.names[c], c));
        note(log, "analyze: channel " + signal.names[c]);
        const auto analysis = analyze_signal(signal.channels[c], config);
        const auto& rep = analysis.rep;

        tree.write(dir / "lx.csv", format_band_matrix_csv(rep.lx, "lx"));
        ordered_json theta = ordered_json::array();
        for (double v : rep.theta) theta.push_back(v);
        tree.write(dir / "theta.json", theta.dump() + "\n");
        tree.write(dir / "m.csv", format_matrix_csv(rep.thresholds, "l2_"));

        const auto& s2 = analysis.coeffs.s2;
        if (options.binary_s2) {
            tree.write(dir / "s2.f64", encode_tensor_binary(s2));
            tree.write(dir / "s2.json", tensor_sidecar_json(s2, "s2.f64"));
        } else if (options.write_s2) {
            // One file per second-layer band: rows are time, columns first-layer bands.
            for (std::size_t j = 0; j < s2.inner(); ++j) {
                BandMatrix slice(s2.length(), s2.outer());
                for (std::size_t i = 0; i < s2.outer(); ++i) {
                    const auto src = s2.band(i, j);
                    std::copy(src.begin(), src.end(), slice.band(i).begin());
                }
                tree.write(dir / ("s2_" + std::to_string(j) + ".csv"), format_band_matrix_csv(slice, "l1_"));
            }
        }
    }
    write_manifest(tree, "analyze", signal, config);
}

std::string detection_json(const DetectionResult& r, const PipelineConfig& config)
{
    ordered_json intervals = ordered_json::array();
    for (const auto& iv : r.intervals)
        intervals.push_back({{"start", iv.start}, {"end", iv.end}, {"cluster", iv.cluster}});
    ordered_json silhouettes = ordered_json::object();
    for (std::size_t k = 0; k < r.silhouettes.size(); ++k)
        if (!std::isnan(r.silhouettes[k])) silhouettes[std::to_string(k)] = r.silhouettes[k];
    const ordered_json j = {
        {"k", r.k},
        {"labels_path", "labels.csv"},
        {"intervals", intervals},
        {"config_echo", config_json(config)},
        {"transient_cluster", r.transient},
        {"transient_contrast", r.contrast},
        {"frame_len", r.frame_len},
        {"silhouettes", silhouettes},
    };
    return j.dump(2) + "\n";
}

std::string labels_csv(const DetectionResult& r)
{
    std::string out = "frame,start_sample,label\n";
    for (std::size_t f = 0; f < r.labels.size(); ++f)
        out += std::to_string(f) + ',' + std::to_string(f * r.frame_len) + ',' + std::to_string(r.labels[f]) + '\n';
    return out;
}

std::string intervals_csv(const DetectionResult& r)
{
    std::string out = "start_sample,end_sample\n";
    for (const auto& iv : r.intervals) out += std::to_string(iv.start) + ',' + std::to_string(iv.end) + '\n';
    return out;
}

std::vector<DetectionResult> run_detect(const SignalTable& signal, const PipelineConfig& config,
                                        const std::filesystem::path& out, std::ostream* log)
{
    validate(config);
    OutputTree tree(out);
    std::vector<DetectionResult> results;
    for (std::size_t c = 0; c < signal.channels.size(); ++c) {
        const auto dir = std::filesystem::path(channel_directory(signal.names[c], c));
        auto r = detect_transients(signal.channels[c], config);
        note(log, "detect: channel " + signal.names[c] + ": k=" + std::to_string(r.k) + ", " +
                      std::to_string(r.intervals.size()) + " intervals");
        tree.write(dir / "detection.json", detection_json(r, config));
        tree.write(dir / "labels.csv", labels_csv(r));
        tree.write(dir / "intervals.csv", intervals_csv(r));
        results.push_back(std::move(r));
    }
    write_manifest(tree, "detect", signal, config);
    return results;
}

std::vector<MonitorResult> run_monitor(const SignalTable& signal, const PipelineConfig& config,
                                       const std::filesystem::path& out, std::ostream* log)
{
    validate(config);
    if (signal.length() < config.window_len)
        throw InputError("signal shorter than window (" + std::to_string(signal.length()) + " < " +
                         std::to_string(config.window_len) + " samples)");
    OutputTree tree(out);
    std::vector<MonitorResult> results;
    for (std::size_t c = 0; c < signal.channels.size(); ++c) {
        const auto dir = std::filesystem::path(channel_directory(signal.names[c], c));
        auto r = monitor_signal(signal.channels[c], config);
        note(log, "monitor: channel " + signal.names[c] + ": " + std::to_string(r.windows.count) + " windows");
        tree.write(dir / "theta_trajectory.csv", format_matrix_csv(r.theta, "theta"));
        results.push_back(std::move(r));
    }
    write_manifest(tree, "monitor", signal, config);
    return results;
}

}  // namespace scatter
