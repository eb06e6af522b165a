#include <gtest/gtest.h>

#include "penrose/cli.hpp"

#include <filesystem>
#include <fstream>
#include <unistd.h>

using namespace penrose;
namespace fs = std::filesystem;

namespace {

struct Run {
    int code;
    std::string out, err;
};

Run run(std::vector<std::string> args)
{
    std::ostringstream out, err;
    int code = cli::run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
protected:
    fs::path dir;
    void SetUp() override
    {
        dir = fs::temp_directory_path() / ("penrose_cli_" + std::to_string(::getpid()) + "_" +
                                           ::testing::UnitTest::GetInstance()->current_test_info()->name());
        fs::create_directories(dir);
    }
    void TearDown() override { fs::remove_all(dir); }
    std::string write(const std::string& name, const std::string& text)
    {
        auto p = dir / name;
        std::ofstream(p) << text;
        return p.string();
    }
};

} // namespace

TEST_F(CliTest, ConstructIsDeterministic)
{
    auto a = run({"construct", "--seed", "12"});
    auto b = run({"construct", "--seed", "12"});
    EXPECT_EQ(a.code, cli::kVerified);
    EXPECT_EQ(a.out, b.out);
    EXPECT_NE(a.out, run({"construct", "--seed", "13"}).out);
}

TEST_F(CliTest, VerifyConstructedCube)
{
    auto cube = write("cube.json", run({"construct", "--seed", "5"}).out);
    auto v = run({"verify", cube});
    EXPECT_EQ(v.code, cli::kVerified) << v.out << v.err;
    EXPECT_NE(v.out.find("0 fail"), std::string::npos);
    auto c = run({"classify", cube});
    EXPECT_EQ(c.code, cli::kVerified);
    EXPECT_EQ(c.out, "generic\n");
}

TEST_F(CliTest, PerturbedCubeFailsVerify)
{
    auto doc = io::json::parse(run({"construct", "--seed", "5"}).out);
    auto& m = doc["vertices"]["S_{12}"]["matrix"];
    m[0][0] = io::scalar_json(Rational(io::scalar_from<Rational>(m[0][0], "") + 1));
    auto v = run({"verify", write("bad.json", doc.dump())});
    EXPECT_EQ(v.code, cli::kViolation);
    EXPECT_NE(v.out.find("fail  "), std::string::npos);
}

TEST_F(CliTest, BrokenFaceInCompletion)
{
    auto doc = io::json::parse(run({"construct", "--seed", "6"}).out);
    // swap in a conic from elsewhere for S_{1}
    auto other = io::json::parse(run({"construct", "--seed", "7"}).out);
    doc["vertices"]["S_{1}"] = other["vertices"]["S_{1}"];
    auto r = run({"complete", write("seven.json", doc.dump())});
    EXPECT_EQ(r.code, cli::kViolation);
    EXPECT_NE(r.err.find("InconsistentFace"), std::string::npos) << r.err;
}

TEST_F(CliTest, CompleteRecoversTheEighth)
{
    auto text = run({"construct", "--seed", "8"}).out;
    auto cube = io::json::parse(text);
    auto r = run({"complete", write("cube.json", text)});
    ASSERT_EQ(r.code, cli::kVerified) << r.err;
    auto res = io::json::parse(r.out);
    auto got = io::sym_from<Rational>(res["T0"]["primal"], "/", 3);
    auto want = io::sym_from<Rational>(cube["vertices"]["S_{123}"]["matrix"], "/", 3);
    EXPECT_TRUE(proj_equal(got, want));
}

TEST_F(CliTest, InputErrors)
{
    auto bad = write("bad.json", R"({"params": {"S0": [[1,0,0],[0,1,0],[0,0,"1/0"]], "lines": [[1,0,0],[0,1,0],[0,0,1]], "d": [1,1,1]}})");
    auto r = run({"construct", bad});
    EXPECT_EQ(r.code, cli::kInputError);
    EXPECT_NE(r.err.find("input error"), std::string::npos);
    EXPECT_EQ(run({"verify", (dir / "missing.json").string()}).code, cli::kInputError);
    EXPECT_EQ(run({"verify", write("junk.json", "{ not json")}).code, cli::kInputError);
    EXPECT_EQ(run({"frobnicate"}).code, cli::kInputError);
    EXPECT_EQ(run({"scenario", "pascal"}).code, cli::kInputError);
    EXPECT_EQ(run({"--mode", "fuzzy", "construct"}).code, cli::kInputError);
    auto flt = write("float.json", R"({"params": {"S0": [[1,0,0],[0,1,0],[0,0,-1]], "lines": [[1,0,0],[0,1,0],[0,0,1]], "d": [0.5,1,1]}})");
    EXPECT_EQ(run({"construct", flt}).code, cli::kInputError);
    EXPECT_EQ(run({"--mode", "float", "construct", flt}).code, cli::kVerified);
}

TEST_F(CliTest, ScenarioIsDeterministic)
{
    auto a = run({"scenario", "brianchon", "--seed", "7"});
    EXPECT_EQ(a.code, cli::kVerified) << a.out;
    EXPECT_EQ(a.out, run({"scenario", "brianchon", "--seed", "7"}).out);
    EXPECT_NE(a.out.find("negative control"), std::string::npos);
}

TEST_F(CliTest, AllScenarios)
{
    auto a = run({"scenario", "all", "--seed", "3"});
    EXPECT_EQ(a.code, cli::kVerified) << a.out;
    EXPECT_NE(a.out.find("summary: 13 pass, 0 fail"), std::string::npos) << a.out;
}

TEST_F(CliTest, LiftThenSlice)
{
    auto cube = write("cube.json", run({"construct", "--seed", "9"}).out);
    auto lifted = run({"lift", cube, "--seed", "4"});
    ASSERT_EQ(lifted.code, cli::kVerified) << lifted.err;
    auto doc = io::json::parse(lifted.out);
    EXPECT_EQ(doc["config"]["m"], 4);
    auto sl = run({"slice", write("lifted.json", lifted.out)});
    EXPECT_EQ(sl.code, cli::kVerified) << sl.err;
}

TEST_F(CliTest, RenderWritesSvg)
{
    auto cube = write("cube.json", run({"construct", "--seed", "10"}).out);
    auto out = (dir / "cube.svg").string();
    auto r = run({"render", cube, "--out", out});
    EXPECT_EQ(r.code, cli::kVerified) << r.err;
    std::ifstream in(out);
    std::stringstream ss;
    ss << in.rdbuf();
    EXPECT_NE(ss.str().find("<svg"), std::string::npos);
    EXPECT_NE(ss.str().find("</svg>"), std::string::npos);
}

TEST_F(CliTest, HelpExitsCleanly)
{
    auto r = run({"--help"});
    EXPECT_EQ(r.code, cli::kVerified);
    EXPECT_NE(r.out.find("construct"), std::string::npos);
}
