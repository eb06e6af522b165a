#include <gtest/gtest.h>

#include "penrose/completion.hpp"
#include "penrose/core/random.hpp"

#include <algorithm>
#include <numeric>

using namespace penrose;
using Q = Rational;
using P = HomogeneousPoly<Q>;

namespace {

P var(int i) { return P::variable(3, i); }

// Leibniz expansion, kept deliberately naive
Q leibniz(const Matrix<Q>& m)
{
    int k = m.rows();
    std::vector<int> perm(k);
    std::iota(perm.begin(), perm.end(), 0);
    Q total = 0;
    do {
        int inv = 0;
        for (int i = 0; i < k; ++i)
            for (int j = i + 1; j < k; ++j) inv += perm[i] > perm[j];
        Q term = inv % 2 ? Q(-1) : Q(1);
        for (int i = 0; i < k; ++i) term *= m(i, perm[i]);
        total += term;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return total;
}

Matrix<Q> random_matrix(RationalGen& g, int r, int c)
{
    Matrix<Q> m(r, c);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < c; ++j) m(i, j) = g.rational();
    return m;
}

} // namespace

TEST(Core, SquareExpansion)
{
    P l = var(0) + Q(2) * var(1) - var(2);
    EXPECT_EQ((l * l).to_string(), "x^2 + 4*x*y - 2*x*z + 4*y^2 - 4*y*z + z^2");
}

TEST(Core, DeterminantFrozen)
{
    auto m = Matrix<Q>::from_rows({{2, 1, 0}, {1, 3, 1}, {0, 1, 4}});
    EXPECT_EQ(det(m), Q(18));
    EXPECT_EQ(rank(m), 3);
    auto sing = Matrix<Q>::from_rows({{1, 2, 3}, {2, 4, 6}, {1, 0, 1}});
    EXPECT_EQ(det(sing), Q(0));
    EXPECT_EQ(rank(sing), 2);
}

TEST(Core, DeterminantMatchesLeibniz)
{
    RationalGen g(11, 5);
    for (int t = 0; t < 40; ++t) {
        int k = 2 + t % 4;
        auto m = random_matrix(g, k, k);
        EXPECT_EQ(det(m), leibniz(m));
    }
}

TEST(Core, RankOfProducts)
{
    RationalGen g(12);
    for (int t = 0; t < 30; ++t) {
        int r = 1 + t % 3;
        auto a = random_matrix(g, 4, r), b = random_matrix(g, r, 4);
        EXPECT_LE(rank(a * b), r);
        EXPECT_EQ(rank(a * b), std::min(rank(a), rank(b)));
    }
}

TEST(Core, InverseAndAdjugate)
{
    RationalGen g(13, 3);
    for (int t = 0; t < 20; ++t) {
        auto m = random_matrix(g, 3, 3);
        if (is_zero(det(m))) continue;
        EXPECT_EQ(m * inverse(m), Matrix<Q>::identity(3));
        EXPECT_EQ(m * adjugate(m), det(m) * Matrix<Q>::identity(3));
    }
}

TEST(Core, NullspaceIsAnnihilated)
{
    RationalGen g(14);
    for (int t = 0; t < 20; ++t) {
        auto m = random_matrix(g, 2, 4);
        auto ns = nullspace(m);
        EXPECT_EQ(static_cast<int>(ns.size()), 4 - rank(m));
        for (const auto& v : ns) EXPECT_TRUE(vec_is_zero(m * v));
    }
}

TEST(Core, FormMatrixRoundTrip)
{
    RationalGen g(15);
    for (int t = 0; t < 20; ++t) {
        SymMatrix<Q> s(4);
        for (int i = 0; i < 4; ++i)
            for (int j = i; j < 4; ++j) s.set(i, j, g.rational());
        auto f = sym_to_poly(s);
        EXPECT_EQ(poly_to_sym(f), s);
        Vec<Q> x = g.vec<Q>(4);
        EXPECT_EQ(f.evaluate(x), s.quad(x));
    }
}

TEST(Core, PolynomialRingLaws)
{
    RationalGen g(16);
    for (int t = 0; t < 20; ++t) {
        P a = P::linear(g.vec<Q>(3)), b = P::linear(g.vec<Q>(3)), c = P::linear(g.vec<Q>(3));
        EXPECT_EQ(a * (b + c), a * b + a * c);
        EXPECT_EQ(a * b, b * a);
        EXPECT_TRUE((a - a).is_zero());
        Vec<Q> x = g.vec<Q>(3);
        EXPECT_EQ((a * b).evaluate(x), a.evaluate(x) * b.evaluate(x));
    }
}

TEST(Core, DegreeLimits)
{
    EXPECT_THROW(P(5, 2), Error);
    EXPECT_THROW(P(3, 5), Error);
    P q = var(0) * var(1);
    EXPECT_THROW(q * q * q, Error);
}

TEST(Core, ParseScalar)
{
    EXPECT_EQ(parse_scalar<Q>("3/4"), Q(3, 4));
    EXPECT_EQ(parse_scalar<Q>("-12"), Q(-12));
    EXPECT_THROW(parse_scalar<Q>("0.25"), Error);
    EXPECT_DOUBLE_EQ(parse_scalar<double>("0.25"), 0.25);
    EXPECT_DOUBLE_EQ(parse_scalar<double>("-1/8"), -0.125);
    EXPECT_THROW(parse_scalar<Q>("1/0"), Error);
    EXPECT_THROW(parse_scalar<Q>("two"), Error);
    EXPECT_THROW(parse_scalar<Q>(""), Error);
}

TEST(Core, ToleranceScopeRestores)
{
    double before = tolerance();
    {
        ToleranceScope s(1e-3);
        EXPECT_DOUBLE_EQ(tolerance(), 1e-3);
        EXPECT_TRUE(scalar_traits<double>::negligible(5e-4, 1));
    }
    EXPECT_DOUBLE_EQ(tolerance(), before);
    EXPECT_FALSE(scalar_traits<double>::negligible(5e-4, 1));
}

TEST(Core, NormalizeProjective)
{
    Vec<Q> v{Q(0), Q(-4, 3), Q(2)};
    EXPECT_EQ(normalize_projective(v), (Vec<Q>{Q(0), Q(2), Q(-3)}));
    EXPECT_TRUE(proj_equal(v, Vec<Q>{Q(0), Q(-2), Q(3)}));
    EXPECT_FALSE(proj_equal(v, Vec<Q>{Q(0), Q(2), Q(3)}));
}

TEST(Core, ExtractDoubleLine)
{
    P l = var(0) + Q(2) * var(1) - Q(3) * var(2);
    auto sl = extract_double_line(Q(-5, 2) * (l * l));
    EXPECT_EQ(sl.line, l);
    EXPECT_EQ(sl.sign, -1);
    EXPECT_THROW(extract_double_line(var(0) * var(1)), Error);
}

TEST(Core, RealRootsSeparateRationalAndIrrational)
{
    // (t - 1)(t + 2)(t² - 2)
    UniPoly p = UniPoly::linear(-1, 1) * UniPoly::linear(2, 1) * UniPoly({Q(-2), Q(0), Q(1)});
    auto roots = real_roots(p);
    ASSERT_EQ(roots.size(), 4u);
    std::vector<double> approx;
    int rational = 0;
    for (const auto& r : roots) {
        approx.push_back(r.approx);
        if (r.rational) {
            ++rational;
            EXPECT_TRUE(p.eval(r.value) == 0);
        } else {
            EXPECT_LT(r.lo, r.hi);
            EXPECT_NE(sgn(p.eval(r.lo)), sgn(p.eval(r.hi)));
        }
    }
    EXPECT_EQ(rational, 2);
    std::sort(approx.begin(), approx.end());
    EXPECT_NEAR(approx[0], -2, 1e-12);
    EXPECT_NEAR(approx[1], -std::sqrt(2.0), 1e-9);
    EXPECT_NEAR(approx[2], 1, 1e-12);
    EXPECT_NEAR(approx[3], std::sqrt(2.0), 1e-9);
    EXPECT_TRUE(real_roots(UniPoly({Q(1), Q(0), Q(1)})).empty());
}

TEST(Core, PencilDeterminantMatchesPointwise)
{
    RationalGen g(17);
    for (int t = 0; t < 10; ++t) {
        SymMatrix<Q> a(3), b(3);
        for (int i = 0; i < 3; ++i)
            for (int j = i; j < 3; ++j) {
                a.set(i, j, g.rational());
                b.set(i, j, g.rational());
            }
        UniPoly d = pencil_det(a, b);
        for (int x = -3; x <= 3; ++x) EXPECT_EQ(d.eval(Q(x)), leibniz((a + Q(x) * b).dense()));
    }
}

TEST(Core, RandomGeneratorIsReproducible)
{
    RationalGen a(99, 4), b(99, 4);
    for (int i = 0; i < 50; ++i) EXPECT_EQ(a.rational(), b.rational());
    RationalGen c(3);
    for (int i = 0; i < 50; ++i) EXPECT_NE(c.nonzero(), Q(0));
}
