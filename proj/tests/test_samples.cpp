#include <gtest/gtest.h>

#include "penrose/cli.hpp"

using namespace penrose;

namespace {

int run(std::vector<std::string> args, std::string* out = nullptr)
{
    std::ostringstream o, e;
    int code = cli::run_cli(args, o, e);
    if (out) *out = o.str();
    return code;
}

std::string sample(const char* name) { return std::string(PENROSE_SAMPLES_DIR) + "/" + name; }

} // namespace

TEST(Samples, CubesVerify)
{
    for (auto f : {"cube.json", "salmon-cube.json", "brianchon-cube.json", "quadric-cube.json", "hypercube.json"})
        EXPECT_EQ(run({"verify", sample(f)}), cli::kVerified) << f;
}

TEST(Samples, ParamsConstruct)
{
    std::string out;
    EXPECT_EQ(run({"construct", sample("salmon-params.json")}, &out), cli::kVerified);
    EXPECT_EQ(io::json::parse(out)["mode"], "exact");
    EXPECT_EQ(run({"construct", sample("float-params.json")}, &out), cli::kVerified);
    EXPECT_EQ(io::json::parse(out)["mode"], "float");
    EXPECT_EQ(run({"construct", sample("bad-scalar.json")}), cli::kInputError);
}

TEST(Samples, Labels)
{
    std::string out;
    run({"classify", sample("salmon-cube.json")}, &out);
    EXPECT_EQ(out, "Dual Salmon\n");
    run({"classify", sample("brianchon-cube.json")}, &out);
    EXPECT_EQ(out, "Brianchon\n");
}

TEST(Samples, SevenConfigurations)
{
    std::string out;
    EXPECT_EQ(run({"complete", sample("seven.json")}, &out), cli::kVerified);
    auto cube = io::json::parse(std::ifstream(sample("cube.json")));
    auto want = io::sym_from<Rational>(cube["vertices"]["S_{123}"]["matrix"], "/", 3);
    EXPECT_TRUE(proj_equal(io::sym_from<Rational>(io::json::parse(out)["T0"]["primal"], "/", 3), want));
    EXPECT_EQ(run({"complete", sample("seven-broken.json")}), cli::kViolation);
    EXPECT_EQ(run({"lift", sample("seven-with-frame.json")}, &out), cli::kVerified);
    EXPECT_EQ(out, [] {
        std::ifstream in(sample("quadric-seven.json"));
        std::stringstream ss;
        ss << in.rdbuf();
        return ss.str();
    }());
    EXPECT_EQ(run({"slice", sample("quadric-seven.json")}), cli::kVerified);
    EXPECT_EQ(run({"slice", sample("quadric-seven-plane.json")}), cli::kVerified);
}
