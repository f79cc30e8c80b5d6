#include "scatter/io.hpp"
#include "scatter/pipeline.hpp"
#include "scatter/synth.hpp"

#include <gtest/gtest.h>
#include <json.hpp>

#include <fstream>
#include <map>
#include <sstream>

using namespace scatter;

namespace {

std::string slurp(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
}

// sha256sum-style listing: "<hex>  <name>" per line.
std::map<std::string, std::string> golden_hashes()
{
    std::map<std::string, std::string> out;
    std::istringstream in(slurp(std::string(TEST_DATA_DIR) + "/burst5.sha256"));
    std::string hash, name;
    while (in >> hash >> name) out[name] = hash;
    return out;
}

SynthParams burst5()
{
    SynthParams p;
    p.kind = SynthKind::burst;
    p.length = 1 << 17;
    p.count = 5;
    p.seed = 5;
    return p;
}

}  // namespace

TEST(Golden, Burst5FixtureIsReproduced)
{
    const auto p = burst5();
    const auto signal = synthesize(p);
    const auto golden = golden_hashes();
    EXPECT_EQ(sha256_hex(format_signal_csv({{"x"}, {signal.samples}})), golden.at("burst5.csv"));
    EXPECT_EQ(nlohmann::json::parse(synth_truth_json(p, signal)),
              nlohmann::json::parse(slurp(std::string(TEST_DATA_DIR) + "/burst5.truth.json")));
}

TEST(Golden, Burst5LxMatchesReferenceRun)
{
    const auto signal = synthesize(burst5());
    const auto analysis = analyze_signal(signal.samples, PipelineConfig{});
    const auto golden = golden_hashes();
    EXPECT_EQ(sha256_hex(format_band_matrix_csv(analysis.rep.lx, "lx")), golden.at("lx.csv"));
    nlohmann::ordered_json theta = nlohmann::ordered_json::array();
    for (double v : analysis.rep.theta) theta.push_back(v);
    EXPECT_EQ(sha256_hex(theta.dump() + "\n"), golden.at("theta.json"));
}
