#include "scatter/config.hpp"

#include "scatter/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace scatter {

namespace {

std::string_view trim(std::string_view s)
{
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

template <typename T>
T parse_number(std::string_view key, std::string_view value)
{
    T out{};
    const auto* end = value.data() + value.size();
    const auto [ptr, ec] = std::from_chars(value.data(), end, out);
    if (ec != std::errc() || ptr != end)
        throw InputError("config: invalid value '" + std::string(value) + "' for " + std::string(key));
    return out;
}

}  // namespace

void validate(const PipelineConfig& c)
{
    auto require = [](bool ok, const char* what) {
        if (!ok) throw InputError(std::string("config: ") + what);
    };
    require(c.J1 >= 1 && c.Q1 >= 1 && c.J2 >= 1 && c.Q2 >= 1, "J1, Q1, J2, Q2 must be positive");
    require(c.p > 0.0 && std::isfinite(c.p), "p must be positive");
    require(c.window_len >= 2, "window_len must be at least 2");
    require(c.hop >= 1 && c.hop <= c.window_len, "hop must be in [1, window_len]");
    require(c.k_max >= 1, "k_max must be at least 1");
    require(c.frame_len >= 1, "frame_len must be at least 1");
    require(c.sample_rate_hz > 0.0 && std::isfinite(c.sample_rate_hz), "sample_rate_hz must be positive");
}

void set_config_value(PipelineConfig& c, std::string_view key, std::string_view value)
{
    if (key == "J1") c.J1 = parse_number<int>(key, value);
    else if (key == "Q1") c.Q1 = parse_number<int>(key, value);
    else if (key == "J2") c.J2 = parse_number<int>(key, value);
    else if (key == "Q2") c.Q2 = parse_number<int>(key, value);
    else if (key == "p") c.p = parse_number<double>(key, value);
    else if (key == "reducer") {
        try {
            c.reducer = parse_reducer(value);
        } catch (const std::invalid_argument& e) {
            throw InputError(std::string("config: ") + e.what());
        }
    }
    else if (key == "window_len") c.window_len = parse_number<std::size_t>(key, value);
    else if (key == "hop") c.hop = parse_number<std::size_t>(key, value);
    else if (key == "k_max") c.k_max = parse_number<std::size_t>(key, value);
    else if (key == "frame_len") c.frame_len = parse_number<std::size_t>(key, value);
    else if (key == "min_duration") c.min_duration = parse_number<std::size_t>(key, value);
    else if (key == "seed") c.seed = parse_number<std::uint64_t>(key, value);
    else if (key == "sample_rate_hz") c.sample_rate_hz = parse_number<double>(key, value);
    else if (key == "cluster_on") {
        if (value == "lx") c.cluster_on = ClusterInput::lx;
        else if (value == "features") c.cluster_on = ClusterInput::features;
        else throw InputError("config: cluster_on must be lx or features");
    }
    else throw InputError("config: unknown key '" + std::string(key) + "'");
}

PipelineConfig parse_config(std::string_view text)
{
    PipelineConfig config;
    std::size_t line_no = 0;
    while (!text.empty()) {
        const auto nl = text.find('\n');
        auto line = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
        ++line_no;

        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos)
            throw InputError("config line " + std::to_string(line_no) + ": expected key = value");
        set_config_value(config, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
    validate(config);
    return config;
}

PipelineConfig load_config(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) throw InputError("cannot read config " + path.string());
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_config(buffer.str());
}

std::string serialize_config(const PipelineConfig& c)
{
    std::ostringstream out;
    out << "J1 = " << c.J1 << '\n'
        << "Q1 = " << c.Q1 << '\n'
        << "J2 = " << c.J2 << '\n'
        << "Q2 = " << c.Q2 << '\n'
        << "p = " << format_double(c.p) << '\n'
        << "reducer = " << to_string(c.reducer) << '\n'
        << "window_len = " << c.window_len << '\n'
        << "hop = " << c.hop << '\n'
        << "k_max = " << c.k_max << '\n'
        << "frame_len = " << c.frame_len << '\n'
        << "min_duration = " << c.min_duration << '\n'
        << "seed = " << c.seed << '\n'
        << "sample_rate_hz = " << format_double(c.sample_rate_hz) << '\n'
        << "cluster_on = " << (c.cluster_on == ClusterInput::lx ? "lx" : "features") << '\n';
    return out.str();
}

}  // namespace scatter
