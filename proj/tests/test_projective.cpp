#include <gtest/gtest.h>

#include "penrose/completion.hpp"
#include "penrose/core/random.hpp"

using namespace penrose;
using Q = Rational;
using P = HomogeneousPoly<Q>;

namespace {

P var(int i) { return P::variable(3, i); }

SymMatrix<Q> form(const P& f) { return poly_to_sym(f); }

SymMatrix<Q> unit_circle() { return form(var(0) * var(0) + var(1) * var(1) - var(2) * var(2)); }

} // namespace

TEST(Projective, MeetAndJoin)
{
    ProjHyperplane<Q> a{{1, 0, 0}}, b{{0, 1, -1}};
    auto X = meet2(a, b);
    EXPECT_TRUE(proj_equal(X.c, Vec<Q>{0, 1, 1}));
    EXPECT_TRUE(incident(X, a) && incident(X, b));
    auto l = join2(ProjPoint<Q>{{1, 0, 0}}, ProjPoint<Q>{{0, 1, 0}});
    EXPECT_TRUE(proj_equal(l.c, Vec<Q>{0, 0, 1}));
}

TEST(Projective, CollinearAndConcurrent)
{
    EXPECT_TRUE(collinear<Q>({{{1, 2, 1}}, {{2, 4, 2}}, {{0, 0, 1}}}));
    EXPECT_FALSE(collinear<Q>({{{1, 0, 0}}, {{0, 1, 0}}, {{0, 0, 1}}}));
    // x = 0, y = 0 and x + y = 0 all pass through (0:0:1)
    std::vector<ProjHyperplane<Q>> hs{{{1, 0, 0}}, {{0, 1, 0}}, {{1, 1, 0}}};
    EXPECT_TRUE(concurrent(hs));
    auto c = common_point(hs);
    ASSERT_TRUE(c);
    EXPECT_TRUE(proj_equal(c->c, Vec<Q>{0, 0, 1}));
    hs.push_back({{0, 0, 1}});
    EXPECT_FALSE(concurrent(hs));
}

TEST(Projective, CompleteConicDualIsAdjugate)
{
    RationalGen g(21);
    for (int t = 0; t < 20; ++t) {
        SymMatrix<Q> a(3);
        for (int i = 0; i < 3; ++i)
            for (int j = i; j < 3; ++j) a.set(i, j, g.rational());
        if (rank(a) < 2) continue;
        auto c = complete_from_primal(a);
        EXPECT_TRUE(complete_pair_valid(c.primal, c.dual));
        // A·A* is a multiple of the identity
        auto prod = a.dense() * c.dual.dense();
        EXPECT_EQ(prod, det(a.dense()) * Matrix<Q>::identity(3));
    }
}

TEST(Projective, PolarOfPointOnConicIsTangent)
{
    auto s = unit_circle();
    ProjPoint<Q> p{{Q(3), Q(4), Q(5)}};
    auto t = polar(s, p);
    EXPECT_TRUE(incident(p, t));
    EXPECT_TRUE(proj_equal(t.c, Vec<Q>{3, 4, -5}));
    // a tangent line is a point of the dual conic
    auto c = complete_from_primal(s);
    EXPECT_EQ(c.dual.quad(t.c), Q(0));
    EXPECT_TRUE(proj_equal(pole(c, t).c, p.c));
}

TEST(Projective, DoubleContactFrozenChord)
{
    // S - 4(x - z)² touches S along x = z
    auto s = unit_circle();
    P l = var(0) - var(2);
    auto t = s - Q(4) * form(l * l);
    auto dc = double_contact(s, t);
    EXPECT_EQ(dc.chord, l);
    EXPECT_TRUE(in_double_contact(s, t));
}

TEST(Projective, DoubleContactRandomPencils)
{
    RationalGen g(22);
    for (int trial = 0; trial < 25; ++trial) {
        SymMatrix<Q> a(3);
        for (int i = 0; i < 3; ++i)
            for (int j = i; j < 3; ++j) a.set(i, j, g.rational());
        if (rank(a) < 3) continue;
        P l = P::linear(g.vec<Q>(3));
        if (l.is_zero()) continue;
        Q k = g.nonzero();
        auto b = Q(g.nonzero()) * (a + k * form(l * l));
        auto dc = double_contact(a, b);
        EXPECT_TRUE(proj_equal(dc.chord, l));
    }
}

TEST(Projective, GenericConicsAreNotInContact)
{
    auto s = unit_circle();
    auto t = form(var(0) * var(0) + Q(2) * var(1) * var(1) - Q(3) * var(2) * var(2) + var(0) * var(2));
    EXPECT_FALSE(in_double_contact(s, t));
    EXPECT_THROW(double_contact(s, Q(7) * s), Error);
}

TEST(Projective, PencilDegenerates)
{
    // x² + y² - z² and x² - y²: members degenerate at det(A + tB) = 0
    auto a = unit_circle();
    auto b = form(var(0) * var(0) - var(1) * var(1));
    auto ds = pencil_degenerates(a, b);
    EXPECT_FALSE(ds.empty());
    for (const auto& d : ds)
        if (d.exact && !d.infinite) EXPECT_EQ(det(pencil_member(a, b, Q(d.t)).dense()), Q(0));
}

TEST(Projective, Line3DPluckerRelation)
{
    RationalGen g(23);
    for (int t = 0; t < 20; ++t) {
        ProjPoint<Q> x{g.vec<Q>(4)}, y{g.vec<Q>(4)};
        if (vec_is_zero(x.c) || vec_is_zero(y.c) || proj_equal(x.c, y.c)) continue;
        auto L = Line3D<Q>::join(x, y);
        EXPECT_EQ(L.plucker_relation(), Q(0));
        EXPECT_TRUE(L.through(x));
        EXPECT_TRUE(L.through(y));
        for (const auto& h : L.planes()) EXPECT_TRUE(incident(x, h) && incident(y, h));
        auto M = Line3D<Q>::meet(L.planes()[0], L.planes()[1]);
        EXPECT_TRUE(proj_equal(M.p, L.p));
    }
}

TEST(Projective, LinesThroughACommonPoint)
{
    ProjPoint<Q> O{{1, 0, 0, 0}};
    std::vector<Line3D<Q>> ls;
    for (auto v : {Vec<Q>{0, 1, 0, 0}, Vec<Q>{0, 0, 1, 0}, Vec<Q>{0, 1, 1, 1}})
        ls.push_back(Line3D<Q>::join(O, ProjPoint<Q>{v}));
    EXPECT_TRUE(lines_concurrent(ls));
    EXPECT_FALSE(lines_coplanar(ls));
    auto c = lines_common_point(ls);
    ASSERT_TRUE(c);
    EXPECT_TRUE(proj_equal(c->c, O.c));
}
