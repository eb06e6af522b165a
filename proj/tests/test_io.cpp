#include <gtest/gtest.h>

#include "penrose/corpus.hpp"
#include "penrose/io/document.hpp"
#include "penrose/io/svg.hpp"

#include <regex>

using namespace penrose;
using Q = Rational;

TEST(Io, CubeDocumentRoundTrip)
{
    RationalGen g(71, 3);
    for (int t = 0; t < 10; ++t) {
        auto L = build_lattice(random_params<Q>(g, t % 2 ? 4 : 3));
        auto doc = io::parse_document(io::cube_json(L).dump());
        auto R = io::lattice_from_cube<Q>(doc);
        for (IndexSet s = 0; s <= L.full(); ++s) {
            EXPECT_EQ(R.S[s], L.S[s]);
            EXPECT_EQ(R.f[s], L.f[s]);
            for (int k = 1; k <= 3; ++k)
                if (!contains(s, k)) EXPECT_EQ(R.chord_at(s, k), L.chord_at(s, k));
        }
        EXPECT_TRUE(verify_lattice(R).ok());
    }
}

TEST(Io, ParamsRoundTrip)
{
    RationalGen g(72, 3);
    for (int t = 0; t < 10; ++t) {
        auto q = random_params<Q>(g);
        auto r = io::params_from<Q>(io::params_json(q));
        EXPECT_EQ(r.S0, q.S0);
        for (int j = 1; j <= 3; ++j) {
            EXPECT_EQ(r.line(j), q.line(j));
            EXPECT_EQ(r.dj(j), q.dj(j));
            for (int k = j + 1; k <= 3; ++k) EXPECT_EQ(r.ajk(j, k), q.ajk(j, k));
        }
    }
}

TEST(Io, ScalarsByMode)
{
    io::json j = io::json::parse(R"([3, "-5/7", 0.5])");
    EXPECT_EQ(io::scalar_from<Q>(j[0], "/0"), Q(3));
    EXPECT_EQ(io::scalar_from<Q>(j[1], "/1"), Q(-5, 7));
    EXPECT_THROW(io::scalar_from<Q>(j[2], "/2"), Error);
    EXPECT_DOUBLE_EQ(io::scalar_from<double>(j[2], "/2"), 0.5);
    EXPECT_EQ(io::scalar_json(Q(-5, 7)), "-5/7");
    try {
        io::scalar_from<Q>(j[2], "/params/d/2");
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), "ValidationError");
        EXPECT_NE(std::string(e.what()).find("/params/d/2"), std::string::npos);
    }
}

TEST(Io, VertexKeys)
{
    EXPECT_EQ(io::vertex_key(0), "S_{}");
    EXPECT_EQ(io::vertex_key(0b101), "S_{13}");
    EXPECT_EQ(io::parse_vertex_key("S_{23}", 3, "/"), IndexSet(0b110));
    EXPECT_EQ(io::parse_vertex_key("S_{}", 3, "/"), IndexSet(0));
    EXPECT_THROW(io::parse_vertex_key("S_{4}", 3, "/"), Error);
    EXPECT_THROW(io::parse_vertex_key("S_{11}", 3, "/"), Error);
    EXPECT_THROW(io::parse_vertex_key("S{1}", 3, "/"), Error);
}

TEST(Io, MalformedDocuments)
{
    try {
        io::parse_document("{\n  \"a\": [1, 2,\n}");
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), "ParseError");
        EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos);
    }
    auto bad = io::json::parse(R"({"m": 3, "S0": [[1,0,0],[0,1,0],[0,0,-1]], "lines": [[1,0,0]], "d": [1]})");
    EXPECT_THROW(io::params_from<Q>(bad), Error); // n defaults to 3
    auto asym = io::json::parse(R"([[1,2,0],[0,1,0],[0,0,1]])");
    EXPECT_THROW(io::sym_from<Q>(asym, "/S0", 3), Error);
}

TEST(Io, SevenFromCube)
{
    RationalGen g(73, 2);
    auto L = build_lattice(random_params<Q>(g));
    auto seven = io::seven_from_document<Q>(io::cube_json(L));
    EXPECT_FALSE(seven.has(kEighth));
    auto back = io::config_from<Q>(io::config_json(seven));
    for (IndexSet s = 0; s < kEighth; ++s) EXPECT_EQ(back.at(s).primal, seven.at(s).primal);
}

TEST(Io, SvgSamplesLieOnTheConic)
{
    RationalGen g(74, 2);
    auto L = build_lattice(random_params<Q>(g));
    io::Viewport vp;
    int checked = 0;
    for (IndexSet s = 0; s <= kEighth; ++s) {
        if (L.S[s].is_zero()) continue;
        auto q = io::chart_conic(poly_to_sym(L.S[s]));
        for (const auto& line : io::sample_conic(q, vp, 128))
            for (const auto& p : line) {
                EXPECT_LE(std::fabs(q(p.x, p.y)), 1e-6 * q.scale() * (1 + p.x * p.x + p.y * p.y));
                ++checked;
            }
    }
    EXPECT_GT(checked, 0);
    std::string svg = io::render_svg(L);
    EXPECT_NE(svg.find("<svg"), std::string::npos);
    EXPECT_NE(svg.find("</svg>"), std::string::npos);
    EXPECT_TRUE(std::regex_search(svg, std::regex("<polyline")));
}

TEST(Io, UnitCircleSamples)
{
    auto circle = SymMatrix<Q>::diag({Q(1), Q(1), Q(-1)});
    auto q = io::chart_conic(circle);
    auto lines = io::sample_conic(q, io::Viewport{}, 64);
    ASSERT_FALSE(lines.empty());
    for (const auto& l : lines)
        for (const auto& p : l) EXPECT_NEAR(p.x * p.x + p.y * p.y, 1.0, 1e-9);
}
