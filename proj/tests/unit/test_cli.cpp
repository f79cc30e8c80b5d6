#include "scatter/io.hpp"

#include <gtest/gtest.h>
#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

namespace fs = std::filesystem;

namespace {

struct Outcome {
    int code = -1;
    std::string out;
    std::string err;
};

std::string slurp(const fs::path& p)
{
    std::ifstream in(p, std::ios::binary);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
}

class Cli : public ::testing::Test {
protected:
    void SetUp() override
    {
        dir_ = fs::temp_directory_path() /
               ("scatlx_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        fs::remove_all(dir_);
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }

    Outcome invoke(const std::string& args) const
    {
        const auto out = dir_ / "stdout.txt", err = dir_ / "stderr.txt";
        const std::string cmd =
            std::string(SCATLX_PATH) + " " + args + " >" + out.string() + " 2>" + err.string();
        const int status = std::system(cmd.c_str());
        return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, slurp(out), slurp(err)};
    }

    fs::path write(const std::string& name, const std::string& content) const
    {
        const auto p = dir_ / name;
        std::ofstream(p, std::ios::binary) << content;
        return p;
    }

    fs::path dir_;
};

}  // namespace

TEST_F(Cli, UsageErrorsExitTwo)
{
    EXPECT_EQ(invoke("").code, 2);
    EXPECT_EQ(invoke("transform x").code, 2);
    EXPECT_EQ(invoke("detect").code, 2);
    EXPECT_EQ(invoke("synth sine --out " + (dir_ / "s.csv").string()).code, 2);
}

TEST_F(Cli, NonRectangularCsvNamesTheLine)
{
    const auto bad = write("bad.csv", "a,b\n1,2\n3,4\n5\n");
    const auto r = invoke("detect " + bad.string() + " --out " + (dir_ / "o").string());
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.err.find("line 4"), std::string::npos) << r.err;
}

TEST_F(Cli, BadConfigExitsTwo)
{
    const auto cfg = write("c.cfg", "window_len = -5\n");
    const auto sig = write("s.csv", "x\n1\n2\n3\n");
    EXPECT_EQ(invoke("analyze " + sig.string() + " --config " + cfg.string() + " --out " + (dir_ / "o").string()).code, 2);
    EXPECT_EQ(invoke("analyze " + sig.string() + " --set nope=1 --out " + (dir_ / "o").string()).code, 2);
    EXPECT_EQ(invoke("analyze " + sig.string() + " --reducer mean --out " + (dir_ / "o").string()).code, 2);
}

TEST_F(Cli, MonitorShorterThanWindowIsInputError)
{
    const auto sig = write("s.csv", "x\n1\n2\n3\n4\n");
    const auto r = invoke("monitor " + sig.string() + " --out " + (dir_ / "o").string());
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.err.find("shorter than window"), std::string::npos);
}

TEST_F(Cli, PipelineFailureExitsOne)
{
    const auto sig = write("s.csv", "x\n1\n");
    EXPECT_EQ(invoke("analyze " + sig.string() + " --out " + (dir_ / "o").string()).code, 1);
}

TEST_F(Cli, SynthDetectRoundTripAndQuiet)
{
    const auto sig = dir_ / "b.csv";
    auto r = invoke("synth burst --length 16384 --count 3 --seed 2 --out " + sig.string() + " --quiet");
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_TRUE(r.out.empty());
    const auto truth = nlohmann::json::parse(slurp(sig.string() + ".truth.json"));
    EXPECT_EQ(truth["events"].size(), 3u);

    r = invoke("detect " + sig.string() + " --out " + (dir_ / "d").string() + " --quiet");
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_TRUE(r.out.empty());
    const auto det = nlohmann::json::parse(slurp(dir_ / "d" / "x" / "detection.json"));
    EXPECT_EQ(det["intervals"].size(), 3u);
    EXPECT_EQ(det["labels_path"], "labels.csv");
    EXPECT_TRUE(det.contains("config_echo"));
    EXPECT_TRUE(fs::exists(dir_ / "d" / "x" / "intervals.csv"));

    r = invoke("detect " + sig.string() + " --out " + (dir_ / "d2").string());
    EXPECT_EQ(r.code, 0);
    EXPECT_FALSE(r.out.empty() && r.err.empty());
}

TEST_F(Cli, AnalyzeZeroSignalAndManifest)
{
    std::string text = "ch 1\n";
    for (int i = 0; i < 400; ++i) text += "0\n";
    const auto sig = write("z.csv", text);
    const auto out = dir_ / "a";
    const auto r = invoke("analyze " + sig.string() + " --set J1=1 --set Q1=1 --set J2=1 --set Q2=1 --out " +
                       out.string() + " --quiet");
    ASSERT_EQ(r.code, 0) << r.err;
    const auto manifest = nlohmann::json::parse(slurp(out / "manifest.json"));
    EXPECT_EQ(manifest["feature_dimension"], 6);
    EXPECT_EQ(manifest["channels"][0]["directory"], "ch_1");
    for (const auto& [path, hash] : manifest["artifacts"].items())
        EXPECT_EQ(hash, scatter::sha256_hex(slurp(out / path)));

    const auto lx = scatter::parse_signal_csv(slurp(out / "ch_1" / "lx.csv"));
    for (const auto& ch : lx.channels)
        for (double v : ch) EXPECT_EQ(v, 0.0);
    for (double v : nlohmann::json::parse(slurp(out / "ch_1" / "theta.json"))) EXPECT_EQ(v, 0.0);
}

TEST_F(Cli, AnalyzeBinaryAndRepeatable)
{
    const auto sig = dir_ / "n.csv";
    ASSERT_EQ(invoke("synth noise --length 3000 --seed 4 --out " + sig.string() + " --quiet").code, 0);
    for (const char* name : {"a", "b"})
        ASSERT_EQ(invoke("analyze " + sig.string() + " --binary --out " + (dir_ / name).string() + " --quiet").code, 0);
    EXPECT_EQ(slurp(dir_ / "a" / "manifest.json"), slurp(dir_ / "b" / "manifest.json"));
    EXPECT_TRUE(fs::exists(dir_ / "a" / "x" / "s2.f64"));
    EXPECT_EQ(fs::file_size(dir_ / "a" / "x" / "s2.f64"), 3000u * 400u * 8u);
}

TEST_F(Cli, MonitorTiledRows)
{
    const auto sig = dir_ / "n.csv";
    ASSERT_EQ(invoke("synth noise --length 9000 --seed 4 --out " + sig.string() + " --quiet").code, 0);
    const auto r = invoke("monitor " + sig.string() + " --set window_len=3000 --set hop=3000 --out " +
                       (dir_ / "m").string() + " --quiet");
    ASSERT_EQ(r.code, 0) << r.err;
    const auto table = scatter::parse_signal_csv(slurp(dir_ / "m" / "x" / "theta_trajectory.csv"));
    EXPECT_EQ(table.length(), 3u);
    EXPECT_EQ(table.channels.size(), 20u);
}

TEST_F(Cli, SelfcheckPasses)
{
    const auto r = invoke("selfcheck");
    EXPECT_EQ(r.code, 0) << r.out << r.err;
    EXPECT_NE(r.out.find("PASS"), std::string::npos);
    EXPECT_EQ(r.out.find("FAIL"), std::string::npos);
}
