#include <gtest/gtest.h>

#include "penrose/completion.hpp"
#include "penrose/scenarios.hpp"

#include <map>

using namespace penrose;
using Q = Rational;
using P = HomogeneousPoly<Q>;

namespace {

P var(int i) { return P::variable(3, i); }

P circle() { return var(0) * var(0) + var(1) * var(1) - var(2) * var(2); }

SalmonData<Q> square_salmon()
{
    SalmonData<Q> s;
    s.S0 = circle();
    s.p = {Vec<Q>{1, 0, 0}, Vec<Q>{0, 1, 0}, Vec<Q>{0, 0, 1}};
    s.d = {Q(1), Q(4), Q(9)};
    return s;
}

PappusData<Q> parallel_pappus()
{
    // l: y = 0, l': y = z
    PappusData<Q> p;
    p.P = {Vec<Q>{0, 0, 1}, Vec<Q>{1, 0, 1}, Vec<Q>{3, 0, 1}};
    p.Pp = {Vec<Q>{0, 1, 1}, Vec<Q>{2, 1, 1}, Vec<Q>{5, 1, 1}};
    return p;
}

MongeData<Q> three_circles()
{
    MongeData<Q> d;
    d.c = {{{Q(0), Q(0)}, {Q(4), Q(0)}, {Q(1), Q(3)}}};
    d.r = {Q(1), Q(2), Q(1)};
    return d;
}

} // namespace

TEST(Scenarios, LabelsAndVerdictsOnRandomDraws)
{
    const std::map<std::string, std::string> label{
        {"dual-salmon", "Dual Salmon"}, {"brianchon", "Brianchon"},  {"pappus", "Pappos"},
        {"braikenridge-maclaurin", "Braikenridge-Maclaurin"},         {"desargues", "Desargues"},
        {"monge", "Dual Salmon"}};
    for (const auto& [name, want] : label) {
        for (int seed = 0; seed < 20; ++seed) {
            RationalGen g(3000 + seed, 3);
            auto pr = run_named_scenario<Q>(name, g);
            EXPECT_EQ(pr.positive.label, want) << name << " seed " << seed;
            EXPECT_TRUE(pr.positive.engine_ok) << name << " seed " << seed;
            EXPECT_TRUE(pr.positive.penrose_ok && pr.positive.classical_ok) << name << " seed " << seed;
            EXPECT_FALSE(pr.negative.penrose_ok) << name << " seed " << seed;
            EXPECT_FALSE(pr.negative.classical_ok) << name << " seed " << seed;
            EXPECT_TRUE(pr.ok()) << name << " seed " << seed;
        }
    }
}

TEST(Scenarios, InternalMongeInFloat)
{
    for (int seed = 0; seed < 10; ++seed) {
        RationalGen g(3100 + seed, 3);
        auto pr = run_named_scenario<Q>("monge-internal", g);
        EXPECT_FALSE(pr.has_negative);
        EXPECT_EQ(pr.positive.label, "generic");
        EXPECT_TRUE(pr.positive.penrose_ok && pr.positive.classical_ok) << seed;
    }
}

TEST(Scenarios, SquareSalmonCarriersMeet)
{
    auto s = square_salmon();
    auto v = run_dual_salmon(s);
    EXPECT_TRUE(v.penrose_ok);
    EXPECT_TRUE(v.classical_ok);
    EXPECT_EQ(v.label, "Dual Salmon");
    // carrier ij is d_j p_i - √(d_i d_j) p_j
    auto inst = build_dual_salmon(s);
    std::map<std::string, Vec<Q>> w;
    for (const auto& x : inst.witnesses) w[x.name] = x.c;
    EXPECT_TRUE(proj_equal(w["carrier{12}"], Vec<Q>{4, -2, 0}));
    EXPECT_TRUE(proj_equal(w["carrier{13}"], Vec<Q>{9, 0, -3}));
    EXPECT_TRUE(proj_equal(w["carrier{23}"], Vec<Q>{0, 9, -6}));
    EXPECT_TRUE(proj_equal(w["common"], Vec<Q>{1, 2, 3}));
    s.sigma = {1, 1, -1};
    auto neg = run_dual_salmon(s);
    EXPECT_FALSE(neg.penrose_ok);
    EXPECT_FALSE(neg.classical_ok);
}

TEST(Scenarios, BrianchonOnTheUnitCircle)
{
    BrianchonData<Q> b;
    b.S0 = poly_to_sym(circle());
    b.P = {Vec<Q>{1, 1, 1}, Vec<Q>{7, -1, 5}, Vec<Q>{-1, 7, 5}};
    auto v = run_brianchon(b);
    EXPECT_EQ(v.label, "Brianchon");
    EXPECT_TRUE(v.penrose_ok);
    EXPECT_TRUE(v.classical_ok);
    b.two_triangles = true;
    auto neg = run_brianchon(b);
    EXPECT_FALSE(neg.penrose_ok);
    EXPECT_FALSE(neg.classical_ok);
}

TEST(Scenarios, BrianchonRejectsInteriorPoint)
{
    BrianchonData<Q> b;
    b.S0 = poly_to_sym(circle());
    b.P = {Vec<Q>{0, 0, 1}, Vec<Q>{7, -1, 5}, Vec<Q>{-1, 7, 5}};
    try {
        build_brianchon(b);
        FAIL() << "interior point accepted";
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), "InteriorPoint");
    }
}

TEST(Scenarios, PappusOnParallelLines)
{
    auto p = parallel_pappus();
    EXPECT_TRUE(pappus_oracle(p));
    auto v = run_pappus(p);
    EXPECT_EQ(v.label, "Pappos");
    EXPECT_TRUE(v.penrose_ok);
    auto L = build_lattice(build_pappus(p).params);
    EXPECT_TRUE(proj_equal(L.S[kEighth], var(1) * (var(1) - var(2))));

    p.Pp[2] = Vec<Q>{5, 2, 1};
    auto neg = run_pappus(p);
    EXPECT_FALSE(neg.penrose_ok);
    EXPECT_FALSE(neg.classical_ok);
}

TEST(Scenarios, PappusNeedsCollinearTriples)
{
    auto p = parallel_pappus();
    p.P[2] = Vec<Q>{3, 1, 2};
    try {
        build_pappus(p);
        FAIL() << "C off AB accepted";
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), "DegeneratePosition");
    }
}

TEST(Scenarios, FinalConicThroughTheHexagon)
{
    for (int seed = 0; seed < 15; ++seed) {
        RationalGen g(3200 + seed, 3);
        auto d = random_axis_data<Q>(g);
        auto L = build_lattice(axis_params(d, Signs{-1, -1, -1}));
        const auto& S = L.S[kEighth];
        ASSERT_FALSE(S.is_zero());
        auto hex = axis_vertices(d, Signs{-1, -1, -1});
        for (const auto& v : hex) EXPECT_EQ(S.evaluate(v), Q(0));
        // the same six points, as read off the lattice
        auto pts = second_layer_points(L);
        ASSERT_EQ(pts.size(), 6u);
        for (const auto& p : pts) {
            bool found = false;
            for (const auto& v : hex) found = found || proj_equal(p, v);
            EXPECT_TRUE(found);
        }
        EXPECT_TRUE(on_common_conic(hex));
    }
}

TEST(Scenarios, HexagonNeedsOddSignProduct)
{
    RationalGen g(3300);
    auto d = random_axis_data<Q>(g);
    EXPECT_THROW(build_braikenridge_maclaurin(d, Signs{1, 1, 1}), Error);
}

TEST(Scenarios, DesarguesFinalVertexVanishes)
{
    for (int seed = 0; seed < 10; ++seed) {
        RationalGen g(3400 + seed, 3);
        auto d = random_axis_data<Q>(g);
        auto L = build_lattice(build_desargues(d).params);
        EXPECT_TRUE(L.S[kEighth].is_zero());
        EXPECT_TRUE(carriers_concurrent(L));
        EXPECT_TRUE(desargues_oracle(d));
    }
}

TEST(Scenarios, MongeReferenceCircles)
{
    auto d = three_circles();
    auto v = run_monge(d);
    EXPECT_EQ(v.label, "Dual Salmon");
    EXPECT_TRUE(v.penrose_ok);
    EXPECT_TRUE(v.classical_ok);
    // external centre of the first two circles
    auto inst = build_monge(d);
    ASSERT_EQ(inst.witnesses.size(), 3u);
    EXPECT_TRUE(proj_equal(inst.witnesses[0].c, Vec<Q>{-4, 0, 1}));
    ASSERT_TRUE(inst.seven);
    EXPECT_TRUE(validate_seven(*inst.seven).ok());

    d.sigma = {1, 1, -1};
    auto neg = run_monge(d);
    EXPECT_FALSE(neg.penrose_ok);
    EXPECT_FALSE(neg.classical_ok);
}

TEST(Scenarios, InputErrors)
{
    auto kind_of = [](auto&& f) {
        try {
            f();
        } catch (const Error& e) {
            return e.kind();
        }
        return std::string("none");
    };
    auto s = square_salmon();
    s.d[1] = Q(2);
    EXPECT_EQ(kind_of([&] { build_dual_salmon(s); }), "IrrationalData");
    EXPECT_FALSE(run_dual_salmon(s).built);

    auto m = three_circles();
    m.c[2] = m.c[0];
    EXPECT_EQ(kind_of([&] { build_monge(m); }), "ConcentricCircles");
    m = three_circles();
    m.r[1] = Q(0);
    EXPECT_EQ(kind_of([&] { build_monge(m); }), "DegeneratePosition");

    RationalGen g(1);
    EXPECT_EQ(kind_of([&] { run_named_scenario<Q>("pascal", g); }), "UnknownScenario");
}

TEST(Scenarios, FloatModeAgrees)
{
    SalmonData<double> s;
    s.S0 = HomogeneousPoly<double>::variable(3, 0) * HomogeneousPoly<double>::variable(3, 0) +
           HomogeneousPoly<double>::variable(3, 1) * HomogeneousPoly<double>::variable(3, 1) -
           HomogeneousPoly<double>::variable(3, 2) * HomogeneousPoly<double>::variable(3, 2);
    s.p = {Vec<double>{1, 0, 0}, Vec<double>{0, 1, 0}, Vec<double>{0, 0, 1}};
    s.d = {1.0, 2.0, 3.0}; // irrational roots are fine here
    auto v = run_dual_salmon(s);
    EXPECT_TRUE(v.penrose_ok);
    EXPECT_TRUE(v.classical_ok);
}
