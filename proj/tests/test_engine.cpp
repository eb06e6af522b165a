#include <gtest/gtest.h>

#include "penrose/corpus.hpp"

#include <algorithm>
#include <numeric>

using namespace penrose;
using Q = Rational;
using P = HomogeneousPoly<Q>;

namespace {

P var(int i, int m = 3) { return P::variable(m, i); }

IndexSet bit(int j) { return IndexSet(1u << (j - 1)); }

// Bordered matrix written out by hand, entries as polynomials of mixed degree.
std::vector<std::vector<P>> bordered(const PenroseParams<Q>& q)
{
    int n = q.n, m = q.m;
    std::vector<std::vector<P>> b(n + 1, std::vector<P>(n + 1, P(m, 0)));
    b[0][0] = q.S0;
    for (int j = 1; j <= n; ++j) {
        b[0][j] = b[j][0] = q.p[j - 1];
        b[j][j] = P::constant(m, q.d[j - 1]);
        for (int k = 1; k <= n; ++k)
            if (k != j) b[j][k] = P::constant(m, q.a[j - 1][k - 1]);
    }
    return b;
}

// Leibniz sum over permutations; the zero polynomial of any degree acts as 0.
P leibniz(const std::vector<std::vector<P>>& b, const std::vector<int>& rows, const std::vector<int>& cols, int m)
{
    int k = static_cast<int>(rows.size());
    std::vector<int> perm(k);
    std::iota(perm.begin(), perm.end(), 0);
    std::optional<P> total;
    do {
        int inv = 0;
        for (int i = 0; i < k; ++i)
            for (int j = i + 1; j < k; ++j) inv += perm[i] > perm[j];
        P term = P::constant(m, inv % 2 ? Q(-1) : Q(1));
        bool zero = false;
        for (int i = 0; i < k && !zero; ++i) {
            const P& e = b[rows[i]][cols[perm[i]]];
            if (e.is_zero()) zero = true;
            else term = term * e;
        }
        if (zero) continue;
        if (total) *total += term;
        else total = term;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return total ? *total : P(m, 0);
}

std::vector<int> with_zero(IndexSet s)
{
    std::vector<int> r{0};
    for (int j : members(s)) r.push_back(j);
    return r;
}

std::vector<int> plain(IndexSet s) { return members(s); }

PenroseParams<Q> general_params(const P& S0, std::vector<P> p, std::vector<Q> d, Q a12, Q a13, Q a23)
{
    auto q = PenroseParams<Q>::blank(S0.vars(), 3);
    q.S0 = S0;
    q.p = std::move(p);
    q.d = std::move(d);
    q.set_a(1, 2, a12);
    q.set_a(1, 3, a13);
    q.set_a(2, 3, a23);
    return q;
}

P circle() { return var(0) * var(0) + var(1) * var(1) - var(2) * var(2); }

bool proportional(const P& a, const P& b) { return proj_equal(a, b); }

} // namespace

TEST(Engine, SmallCasesOfTheBorderedMatrix)
{
    auto q = PenroseParams<Q>::blank(3, 1);
    q.S0 = circle();
    q.p = {var(0)};
    q.d = {Q(3)};
    auto L = build_lattice(q);
    EXPECT_EQ(L.S[0], circle());
    EXPECT_EQ(L.S[1], Q(3) * circle() - var(0) * var(0));
    EXPECT_EQ(L.f[0], Q(1));
    EXPECT_EQ(L.f[1], Q(3));
}

TEST(Engine, SecondLayerFrozenExample)
{
    P x = var(0), y = var(1), z = var(2);
    auto q = PenroseParams<Q>::preset(circle(), x, y, x + y + z, Q(0), Q(0), Q(0));
    auto L = build_lattice(q);
    P expect = Q(2) * x * x + Q(3) * y * y + Q(2) * x * y + Q(2) * x * z + Q(2) * y * z;
    EXPECT_EQ(L.S[bit(2) | bit(3)], expect);
}

TEST(Engine, VerticesMatchLeibnizExpansion)
{
    RationalGen g(31, 3);
    for (int t = 0; t < 25; ++t) {
        int m = 3 + t % 2, n = 3 + (t % 5 == 0);
        auto q = random_params<Q>(g, m, n);
        auto L = build_lattice(q);
        auto b = bordered(q);
        for (IndexSet s = 0; s <= L.full(); ++s) {
            EXPECT_EQ(L.S[s], leibniz(b, with_zero(s), with_zero(s), m)) << set_label(s);
            P fs = s == 0 ? P::constant(m, 1) : leibniz(b, plain(s), plain(s), m);
            EXPECT_EQ(P::constant(m, L.f[s]), fs);
            for (int k = 1; k <= n; ++k) {
                if (contains(s, k)) continue;
                EXPECT_EQ(L.chord_at(s, k), leibniz(b, plain(with(s, k)), with_zero(s), m));
            }
        }
    }
}

TEST(Engine, LowLayerClosedForms)
{
    RationalGen g(32, 4);
    for (int t = 0; t < 20; ++t) {
        auto q = random_params<Q>(g);
        auto L = build_lattice(q);
        for (int j = 1; j <= 3; ++j) {
            EXPECT_EQ(L.f[bit(j)], q.dj(j));
            EXPECT_EQ(L.S[bit(j)], q.dj(j) * q.S0 - q.line(j) * q.line(j));
            EXPECT_TRUE(proportional(L.chord_at(0, j), q.line(j)));
        }
        for (int j = 1; j <= 3; ++j)
            for (int k = j + 1; k <= 3; ++k) {
                Q a = q.ajk(j, k), dj = q.dj(j), dk = q.dj(k);
                const P &pj = q.line(j), &pk = q.line(k);
                EXPECT_EQ(L.f[bit(j) | bit(k)], dj * dk - a * a);
                EXPECT_EQ(L.S[bit(j) | bit(k)], (dj * dk - a * a) * q.S0 - dk * (pj * pj) + Q(2) * a * (pj * pk) - dj * (pk * pk));
                EXPECT_TRUE(proportional(L.chord_at(bit(j), k), a * pj - dj * pk));
            }
    }
}

TEST(Engine, PresetChordsOfTheFirstLayer)
{
    P x = var(0), y = var(1), z = var(2);
    Q a = 2, b = 3, c = 5;
    auto L = build_lattice(PenroseParams<Q>::preset(circle(), x, y, x + Q(2) * y + z, a, b, c));
    EXPECT_TRUE(proportional(L.chord_at(bit(1), 2), c * x + y));
    EXPECT_TRUE(proportional(L.chord_at(bit(2), 1), c * y + x));
}

TEST(Engine, EighthVertexHasPresetLeadingCoefficient)
{
    RationalGen g(33, 3);
    for (int t = 0; t < 20; ++t) {
        auto q = random_preset<Q>(g);
        auto L = build_lattice(q);
        Q a = q.ajk(2, 3), b = q.ajk(1, 3), c = q.ajk(1, 2);
        Q lead = 1 - a * a - b * b - 2 * a * b * c - c * c;
        // with every line zeroed only the S0 term survives
        auto q0 = q;
        for (auto& l : q0.p) l = P(3, 1);
        auto L0 = build_lattice(q0);
        EXPECT_TRUE(L0.S[kEighth] == lead * q.S0 || L0.S[kEighth] == -lead * q.S0);
        EXPECT_FALSE(L.S[kEighth].is_zero() && !is_zero(lead));
    }
}

TEST(Engine, ZeroLinesGiveMultiplesOfS0)
{
    auto q = PenroseParams<Q>::preset(circle(), P(3, 1), P(3, 1), P(3, 1), Q(1, 2), Q(1, 3), Q(1, 5));
    auto L = build_lattice(q);
    for (IndexSet s = 0; s <= kEighth; ++s) EXPECT_TRUE(proportional(L.S[s], circle()));
}

TEST(Engine, FScalarOfTheTopWhenPairsVanish)
{
    // d = (1, 4, 9) and a_ij = σ_ij √(d_i d_j)
    for (int s12 : {-1, 1})
        for (int s13 : {-1, 1})
            for (int s23 : {-1, 1}) {
                auto q = general_params(circle(), {var(0), var(1), var(2)}, {Q(1), Q(4), Q(9)}, Q(2 * s12), Q(3 * s13),
                                        Q(6 * s23));
                auto L = build_lattice(q, false);
                EXPECT_EQ(L.f[bit(1) | bit(2)], Q(0));
                EXPECT_EQ(L.f[kEighth], Q(2 * 36 * (s12 * s13 * s23 - 1)));
            }
}

TEST(Engine, EdgeIdentityOnCorpus)
{
    RationalGen g(34, 2);
    for (int t = 0; t < 40; ++t) {
        auto q = random_params<Q>(g, 3 + t % 2, 3 + (t % 4 == 0));
        auto L = build_lattice(q, false);
        for (IndexSet s = 0; s <= L.full(); ++s)
            for (int k = 1; k <= L.n(); ++k)
                if (!contains(s, k)) EXPECT_TRUE(edge_residual(L, s, k).is_zero());
    }
}

TEST(Engine, HypercubeHasThirtyTwoEdges)
{
    RationalGen g(35);
    auto L = build_lattice(random_params<Q>(g, 3, 4));
    EXPECT_EQ(L.S.size(), 16u);
    auto rep = verify_edges(L);
    EXPECT_EQ(rep.checks.size(), 32u);
    EXPECT_TRUE(rep.ok());
}

TEST(Engine, BrokenLatticeFailsConstruction)
{
    RationalGen g(36);
    auto L = build_lattice(random_params<Q>(g));
    L.S[bit(2)] += var(0) * var(1);
    auto rep = verify_edges(L);
    EXPECT_FALSE(rep.ok());
    int failures = rep.count(Status::Fail);
    EXPECT_EQ(failures, 3); // the three edges at that vertex
}

TEST(Engine, FacePointOfCoordinateLines)
{
    P x = var(0), y = var(1);
    auto L = build_lattice(PenroseParams<Q>::preset(circle(), x, y, x + y + var(2), Q(1, 3), Q(1, 5), Q(2)));
    auto fr = face_point(L, Face{0, 1, 2});
    ASSERT_TRUE(fr.concurrent);
    ASSERT_TRUE(fr.point);
    EXPECT_TRUE(proj_equal(fr.point->c, Vec<Q>{0, 0, 1}));
}

TEST(Engine, ConcurrentLinesShareEveryFacePoint)
{
    P x = var(0), y = var(1);
    auto L = build_lattice(PenroseParams<Q>::preset(circle(), x, y, x - Q(3) * y, Q(1, 2), Q(2), Q(-3)));
    for (const auto& fc : L.faces()) {
        auto fr = face_point(L, fc);
        ASSERT_TRUE(fr.point) << set_label(fc.base);
        EXPECT_TRUE(proj_equal(fr.point->c, Vec<Q>{0, 0, 1}));
    }
}

TEST(Engine, FaceConicAndDiagonalForms)
{
    RationalGen g(37, 2);
    for (int t = 0; t < 15; ++t) {
        auto q = random_params<Q>(g);
        auto L = build_lattice(q);
        for (int j = 1; j <= 3; ++j)
            for (int k = j + 1; k <= 3; ++k) {
                P H = face_conic(L.matrix, 0, j, k);
                P expect = q.ajk(j, k) * q.S0 - q.line(j) * q.line(k);
                EXPECT_TRUE(H == expect || H == -expect);
                // S_k S_j - S0 S_jk = H²
                EXPECT_EQ(L.S[bit(k)] * L.S[bit(j)] - L.S[0] * L.S[bit(j) | bit(k)], H * H);
            }
        for (int k = 1; k <= 3; ++k) {
            int i = k == 1 ? 2 : 1, j = 6 - i - k;
            EXPECT_EQ(face_diagonal(L.matrix, k), q.ajk(j, k) * q.line(i) - q.ajk(i, k) * q.line(j));
        }
    }
}

TEST(Engine, FaceDiagonalWithEqualParameters)
{
    P x = var(0), y = var(1), z = var(2);
    auto L = build_lattice(PenroseParams<Q>::preset(circle(), x, y, z + x, Q(3), Q(3), Q(3)));
    for (int k = 1; k <= 3; ++k) {
        P qk = face_diagonal(L.matrix, k);
        std::vector<int> o;
        for (int i = 1; i <= 3; ++i)
            if (i != k) o.push_back(i);
        const auto& p = L.params.p;
        EXPECT_TRUE(proportional(qk, p[o[0] - 1] - p[o[1] - 1]));
    }
}

TEST(Engine, FaceAndRelationSweepsPass)
{
    RationalGen g(38, 2);
    for (int t = 0; t < 15; ++t) {
        auto L = build_lattice(random_params<Q>(g));
        auto rep = verify_lattice(L);
        EXPECT_TRUE(rep.ok());
        EXPECT_EQ(rep.count(Status::Flag), 0);
    }
}

TEST(Engine, RelationsSurviveVanishingParameter)
{
    RationalGen g(39, 2);
    auto q = random_params<Q>(g);
    q.set_a(1, 3, Q(0));
    auto L = build_lattice(q);
    EXPECT_TRUE(verify_relations(L).ok());
    EXPECT_TRUE(verify_diagonals(L).ok());
}

TEST(Engine, DesnanotJacobi)
{
    RationalGen g(40, 3);
    std::mt19937 pick(5);
    for (int t = 0; t < 50; ++t) {
        auto q = random_params<Q>(g, 3, 4);
        auto b = bordered_matrix(q);
        std::vector<int> idx{0, 1, 2, 3, 4};
        std::shuffle(idx.begin(), idx.end(), pick);
        std::vector<int> rows(idx.begin(), idx.begin() + 1);
        std::shuffle(idx.begin(), idx.end(), pick);
        std::vector<int> cols(idx.begin(), idx.begin() + 1);
        std::vector<int> rfree, cfree;
        for (int i = 0; i < 5; ++i) {
            if (std::find(rows.begin(), rows.end(), i) == rows.end()) rfree.push_back(i);
            if (std::find(cols.begin(), cols.end(), i) == cols.end()) cfree.push_back(i);
        }
        std::shuffle(rfree.begin(), rfree.end(), pick);
        std::shuffle(cfree.begin(), cfree.end(), pick);
        EXPECT_TRUE(desnanot_jacobi_residual(b, rows, cols, rfree[0], rfree[1], cfree[0], cfree[1]).is_zero());
    }
}

TEST(Engine, DegeneracyFindings)
{
    P x = var(0), y = var(1), z = var(2);
    auto base = general_params(circle(), {x, y, x + y + z}, {Q(1), Q(4), Q(9)}, Q(1), Q(1, 2), Q(2));

    auto qd = base;
    qd.d[0] = 0;
    auto Ld = build_lattice(qd);
    EXPECT_EQ(Ld.S[bit(1)], -(x * x));
    auto fd = classify_degeneracies(Ld);
    ASSERT_TRUE(std::any_of(fd.begin(), fd.end(), [](const Finding& f) { return f.kind == "d_j=0" && f.verified; }));

    auto qf = base;
    qf.set_a(1, 2, Q(-2));
    auto Lf = build_lattice(qf);
    EXPECT_EQ(Lf.info[bit(1) | bit(2)].rank, 1);
    // -(√d1 p2 ± √d2 p1)² with √d1 = 1, √d2 = 2
    P carrier = y + Q(2) * x;
    EXPECT_EQ(Lf.S[bit(1) | bit(2)], -(carrier * carrier));
    auto ff = classify_degeneracies(Lf);
    EXPECT_TRUE(std::any_of(ff.begin(), ff.end(), [](const Finding& f) { return f.kind == "f=0" && f.verified; }));

    auto qa = base;
    qa.set_a(2, 3, Q(0));
    auto La = build_lattice(qa);
    EXPECT_TRUE(proportional(La.chord_at(0, 2), La.chord_at(bit(3), 2)));
    EXPECT_TRUE(proportional(La.chord_at(0, 3), La.chord_at(bit(2), 3)));
    auto fa = classify_degeneracies(La);
    EXPECT_TRUE(std::any_of(fa.begin(), fa.end(), [](const Finding& f) { return f.kind == "a_jk=0" && f.verified; }));
    auto fr = face_point(La, Face{0, 2, 3});
    EXPECT_TRUE(fr.concurrent);
    EXPECT_TRUE(fr.point);
}

TEST(Engine, FloatModeAgreesWithExact)
{
    RationalGen g(41, 3);
    for (int t = 0; t < 10; ++t) {
        auto q = random_params<Q>(g);
        auto Lq = build_lattice(q);
        auto qd = PenroseParams<double>::blank(3, 3);
        qd.S0 = q.S0.cast<double>();
        for (int j = 0; j < 3; ++j) {
            qd.p[j] = q.p[j].cast<double>();
            qd.d[j] = q.d[j].get_d();
            for (int k = 0; k < 3; ++k) qd.a[j][k] = q.a[j][k].get_d();
        }
        auto Ld = build_lattice(qd);
        for (IndexSet s = 0; s <= kEighth; ++s) EXPECT_TRUE(proj_equal(Ld.S[s], Lq.S[s].cast<double>()));
    }
}

TEST(Engine, InvalidParameters)
{
    auto q = PenroseParams<Q>::blank(3, 3);
    q.p.pop_back();
    EXPECT_THROW(build_lattice(q), Error);
    auto r = PenroseParams<Q>::blank(3, 3);
    r.m = 5;
    EXPECT_THROW(build_lattice(r), Error);
}
