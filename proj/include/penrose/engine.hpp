#pragma once

#include "core/poly_matrix.hpp"
#include "projective.hpp"
#include "report.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace penrose {

// Subsets of {1..n}; bit j-1 stands for index j.
using IndexSet = unsigned;

inline bool contains(IndexSet s, int j) { return (s >> (j - 1)) & 1u; }
inline IndexSet with(IndexSet s, int j) { return s | (1u << (j - 1)); }
inline int set_size(IndexSet s) { return __builtin_popcount(s); }

inline std::vector<int> members(IndexSet s)
{
    std::vector<int> out;
    for (int j = 1; j <= 8; ++j)
        if (contains(s, j)) out.push_back(j);
    return out;
}

/// "{}", "{1}", "{12}", ...
inline std::string set_label(IndexSet s)
{
    std::string out = "{";
    for (int j : members(s)) out += std::to_string(j);
    return out + "}";
}

template <class T>
struct PenroseParams {
    using Poly = HomogeneousPoly<T>;

    int m = 3;
    int n = 3;
    Poly S0;
    std::vector<Poly> p; // p_1..p_n stored at 0..n-1
    std::vector<T> d;
    std::vector<std::vector<T>> a; // symmetric, diagonal unused

    const Poly& line(int j) const { return p[j - 1]; }
    const T& dj(int j) const { return d[j - 1]; }
    const T& ajk(int j, int k) const { return a[j - 1][k - 1]; }
    void set_a(int j, int k, const T& v) { a[j - 1][k - 1] = a[k - 1][j - 1] = v; }

    static PenroseParams blank(int m, int n)
    {
        PenroseParams q;
        q.m = m;
        q.n = n;
        q.S0 = Poly(m, 2);
        q.p.assign(n, Poly(m, 1));
        q.d.assign(n, T(0));
        q.a.assign(n, std::vector<T>(n, T(0)));
        return q;
    }

    // d = −1 preset with (a, b, c) = (a23, a13, a12)
    static PenroseParams preset(const Poly& S0, const Poly& p, const Poly& q, const Poly& r, const T& a,
                                const T& b, const T& c)
    {
        PenroseParams x = blank(S0.vars(), 3);
        x.S0 = S0;
        x.p = {p, q, r};
        x.d.assign(3, T(-1));
        x.set_a(2, 3, a);
        x.set_a(1, 3, b);
        x.set_a(1, 2, c);
        return x;
    }

    void validate() const
    {
        if (m != 3 && m != 4) throw Error("VariableCountMismatch", "m must be 3 or 4");
        if (n < 1 || n > 4) throw Error("SizeMismatch", "n must be 1..4");
        if (static_cast<int>(p.size()) != n || static_cast<int>(d.size()) != n || static_cast<int>(a.size()) != n)
            throw Error("SizeMismatch", "parameter arrays do not match n");
        if (!S0.is_zero() && (S0.vars() != m || S0.degree() != 2)) throw Error("DegreeMismatch", "S0 must be a quadratic form");
        for (const auto& l : p)
            if (!l.is_zero() && (l.vars() != m || l.degree() != 1)) throw Error("DegreeMismatch", "p_j must be linear");
    }
};

template <class T>
PolyMatrix<T> bordered_matrix(const PenroseParams<T>& q)
{
    q.validate();
    using Poly = HomogeneousPoly<T>;
    PolyMatrix<T> b(q.n + 1, q.m);
    b(0, 0) = q.S0.is_zero() ? Poly(q.m, 2) : q.S0;
    for (int j = 1; j <= q.n; ++j) {
        b.set_sym(0, j, q.line(j));
        b(j, j) = Poly::constant(q.m, q.dj(j));
        for (int k = j + 1; k <= q.n; ++k) b.set_sym(j, k, Poly::constant(q.m, q.ajk(j, k)));
    }
    return b;
}

namespace detail {
inline std::vector<int> rows_of(IndexSet s, bool with_zero)
{
    std::vector<int> r;
    if (with_zero) r.push_back(0);
    for (int j : members(s)) r.push_back(j);
    return r;
}
template <class T>
T constant_of(const HomogeneousPoly<T>& f)
{
    return f.is_zero() ? T(0) : f.coeff(Monomial{});
}
} // namespace detail

// Named subdeterminants. Rows and columns always in increasing index order.

template <class T>
HomogeneousPoly<T> vertex(const PolyMatrix<T>& b, IndexSet s)
{
    auto r = detail::rows_of(s, true);
    return b.subdet(r, r);
}

template <class T>
HomogeneousPoly<T> chord(const PolyMatrix<T>& b, IndexSet s, int k)
{
    if (contains(s, k)) throw Error("IndexInSet", "chord index already in the base set");
    return b.subdet(detail::rows_of(with(s, k), false), detail::rows_of(s, true));
}

template <class T>
T f_scalar(const PolyMatrix<T>& b, IndexSet s)
{
    auto r = detail::rows_of(s, false);
    return detail::constant_of(b.subdet(r, r));
}

template <class T>
T g_scalar(const PolyMatrix<T>& b, IndexSet s, int j, int k)
{
    return detail::constant_of(b.subdet(detail::rows_of(with(s, j), false), detail::rows_of(with(s, k), false)));
}

template <class T>
HomogeneousPoly<T> face_conic(const PolyMatrix<T>& b, IndexSet s, int j, int k)
{
    return b.subdet(detail::rows_of(with(s, j), true), detail::rows_of(with(s, k), true));
}

/// q_k for n = 3: rows = the two other indices, columns {0, k}.
template <class T>
HomogeneousPoly<T> face_diagonal(const PolyMatrix<T>& b, int k)
{
    if (b.order() != 4) throw Error("SizeMismatch", "face diagonals need n = 3");
    std::vector<int> rows;
    for (int i = 1; i <= 3; ++i)
        if (i != k) rows.push_back(i);
    return b.subdet(rows, {0, k});
}

template <class T>
struct VertexInfo {
    int rank = 0;
    std::optional<Complete<T>> complete; // when the adjugate is nonzero
    std::optional<HomogeneousPoly<T>> double_line; // rank-1 vertices: the carrier
    bool point_pair_candidate = false; // rank 1: may equally be read as a point pair
};

struct Face {
    IndexSet base;
    int j, k;
};

template <class T>
struct FaceReport {
    Face face;
    std::array<HomogeneousPoly<T>, 4> chords; // (Ω,j) (Ω,k) (Ω∪j,k) (Ω∪k,j)
    std::optional<ProjPoint<T>> point;
    bool concurrent = false;
    std::vector<std::string> notes;
};

template <class T>
struct PenroseLattice {
    PenroseParams<T> params;
    PolyMatrix<T> matrix;
    std::vector<HomogeneousPoly<T>> S; // indexed by IndexSet
    std::vector<T> f;
    std::vector<std::vector<HomogeneousPoly<T>>> chords; // [Ω][k-1], zero when k ∈ Ω
    std::vector<VertexInfo<T>> info;

    int n() const { return params.n; }
    int m() const { return params.m; }
    IndexSet full() const { return (1u << params.n) - 1; }
    const HomogeneousPoly<T>& chord_at(IndexSet s, int k) const { return chords[s][k - 1]; }

    std::vector<Face> faces() const
    {
        std::vector<Face> out;
        for (int j = 1; j <= n(); ++j)
            for (int k = j + 1; k <= n(); ++k)
                for (IndexSet s = 0; s <= full(); ++s)
                    if (!contains(s, j) && !contains(s, k)) out.push_back({s, j, k});
        return out;
    }
};

template <class T>
HomogeneousPoly<T> edge_residual(const PenroseLattice<T>& L, IndexSet s, int k)
{
    IndexSet t = with(s, k);
    const auto& c = L.chord_at(s, k);
    HomogeneousPoly<T> r = L.f[t] * L.S[s] - L.f[s] * L.S[t];
    if (!c.is_zero()) r -= c * c;
    return r;
}

template <class T>
VertexInfo<T> vertex_info(const HomogeneousPoly<T>& s, int m)
{
    VertexInfo<T> v;
    SymMatrix<T> a = s.is_zero() ? SymMatrix<T>(m) : poly_to_sym(s);
    v.rank = rank(a);
    if (v.rank == 1) {
        v.double_line = extract_double_line(s).line;
        v.point_pair_candidate = true;
    } else if (v.rank >= m - 1) {
        SymMatrix<T> d = adjugate(a);
        if (!d.is_zero()) v.complete = Complete<T>{a, d};
    }
    return v;
}

/// All vertices, chords and f-scalars. The edge identity is checked for every edge
/// and a violation throws.
template <class T>
PenroseLattice<T> build_lattice(const PenroseParams<T>& q, bool verify = true)
{
    PenroseLattice<T> L;
    L.params = q;
    L.matrix = bordered_matrix(q);
    std::size_t count = std::size_t(1) << q.n;
    L.S.resize(count);
    L.f.resize(count);
    L.chords.assign(count, std::vector<HomogeneousPoly<T>>(q.n, HomogeneousPoly<T>(q.m, 1)));
    L.info.resize(count);
    for (IndexSet s = 0; s < count; ++s) {
        L.S[s] = vertex(L.matrix, s);
        L.f[s] = f_scalar(L.matrix, s);
        for (int k = 1; k <= q.n; ++k)
            if (!contains(s, k)) L.chords[s][k - 1] = chord(L.matrix, s, k);
        L.info[s] = vertex_info(L.S[s], q.m);
    }
    if (verify) {
        for (IndexSet s = 0; s < count; ++s)
            for (int k = 1; k <= q.n; ++k) {
                if (contains(s, k)) continue;
                auto r = edge_residual(L, s, k);
                IndexSet t = with(s, k);
                const auto& c = L.chord_at(s, k);
                double sc = std::max({1.0, std::fabs(scalar_traits<T>::to_double(L.f[t])) * L.S[s].max_abs(),
                                      std::fabs(scalar_traits<T>::to_double(L.f[s])) * L.S[t].max_abs(),
                                      c.max_abs() * c.max_abs()});
                if (!poly_negligible(r, sc))
                    throw Error("EdgeIdentityViolated", "edge " + set_label(s) + "+" + std::to_string(k) + ": " + r.to_string());
            }
    }
    return L;
}

template <class T>
FaceReport<T> face_point(const PenroseLattice<T>& L, Face fc)
{
    FaceReport<T> r;
    r.face = fc;
    r.chords = {L.chord_at(fc.base, fc.j), L.chord_at(fc.base, fc.k), L.chord_at(with(fc.base, fc.j), fc.k),
                L.chord_at(with(fc.base, fc.k), fc.j)};
    std::vector<ProjHyperplane<T>> hs;
    for (const auto& c : r.chords) {
        if (c.is_zero()) {
            r.notes.push_back("ZeroChord");
            continue;
        }
        hs.push_back(ProjHyperplane<T>::from_poly(c));
    }
    if (hs.empty()) return r;
    std::vector<Vec<T>> rows;
    for (const auto& h : hs) rows.push_back(h.c);
    int rk = stacked_rank(rows);
    r.concurrent = rk <= 2;
    if (!r.concurrent) {
        r.notes.push_back("NotConcurrent");
        return r;
    }
    if (L.m() == 3) {
        if (rk == 2) r.point = common_point(hs);
        else r.notes.push_back("chords coincide");
    }
    return r;
}

// ---- verification sweep ----

namespace detail {
template <class T>
std::string residual_text(const HomogeneousPoly<T>& r)
{
    return r.is_zero() ? "0" : r.to_string();
}
template <class T>
bool clean(const HomogeneousPoly<T>& r, double scale)
{
    return poly_negligible(r, scale);
}
template <class T>
double scale_of(std::initializer_list<const HomogeneousPoly<T>*> ps)
{
    double s = 1;
    for (auto* p : ps) s = std::max(s, p->max_abs());
    return s;
}
} // namespace detail

template <class T>
Report verify_edges(const PenroseLattice<T>& L)
{
    Report rep;
    for (IndexSet s = 0; s <= L.full(); ++s)
        for (int k = 1; k <= L.n(); ++k) {
            if (contains(s, k)) continue;
            auto r = edge_residual(L, s, k);
            double sc = detail::scale_of<T>({&L.S[s], &L.S[with(s, k)]});
            rep.add("edge " + set_label(s) + "-" + set_label(with(s, k)), "edge identity f'S - fS' = chord^2",
                    detail::clean(r, sc * sc), detail::residual_text(r));
        }
    return rep;
}

template <class T>
Report verify_faces(const PenroseLattice<T>& L)
{
    Report rep;
    for (const auto& fc : L.faces()) {
        auto fr = face_point(L, fc);
        std::string name = "face " + set_label(fc.base) + " free " + std::to_string(fc.j) + std::to_string(fc.k);
        Check c{name, "face chords meet in a common point", fr.concurrent ? Status::Pass : Status::Fail, "0", {}};
        if (!fr.concurrent) c.residual = "rank > 2";
        for (const auto& note : fr.notes)
            if (note == "ZeroChord" && c.status == Status::Pass) c.status = Status::Flag;
        if (fr.point) {
            std::string w = "[";
            for (std::size_t i = 0; i < fr.point->c.size(); ++i)
                w += (i ? ":" : "") + scalar_traits<T>::to_string(fr.point->c[i]);
            c.witnesses.push_back(w + "]");
        }
        c.witnesses.insert(c.witnesses.end(), fr.notes.begin(), fr.notes.end());
        rep.add(c);

        // H² = S_{Ω∪k} S_{Ω∪j} − S_Ω S_{Ω∪jk}
        auto H = face_conic(L.matrix, fc.base, fc.j, fc.k);
        IndexSet sj = with(fc.base, fc.j), sk = with(fc.base, fc.k), sjk = with(sj, fc.k);
        auto res = L.S[sk] * L.S[sj] - L.S[fc.base] * L.S[sjk] - H * H;
        double sc = detail::scale_of<T>({&L.S[sk], &L.S[sj], &L.S[fc.base], &L.S[sjk]});
        rep.add("face conic " + set_label(fc.base) + " free " + std::to_string(fc.j) + std::to_string(fc.k),
                "face conic identity", detail::clean(res, sc * sc), detail::residual_text(res));
    }
    return rep;
}

template <class T>
Report verify_diagonals(const PenroseLattice<T>& L)
{
    Report rep;
    if (L.n() != 3) return rep;
    const auto& B = L.matrix;
    std::array<HomogeneousPoly<T>, 4> q;
    for (int k = 1; k <= 3; ++k) q[k] = face_diagonal(B, k);
    auto bit = [](int j) { return IndexSet(1u << (j - 1)); };
    for (int m = 1; m <= 3; ++m) {
        int j = m == 1 ? 2 : 1, k = m == 3 ? 2 : 3;
        auto lhs = L.chord_at(bit(j), m) * L.chord_at(bit(k), m) - L.chord_at(0, m) * L.chord_at(bit(j) | bit(k), m);
        auto res = lhs - q[j] * q[k];
        double sc = detail::scale_of<T>({&L.chord_at(bit(j), m), &L.chord_at(bit(k), m), &q[j], &q[k]});
        rep.add("face diagonal product, edge direction " + std::to_string(m), "face diagonal identity",
                detail::clean(res, sc * sc), detail::residual_text(res));
    }
    // q_k passes through the face points of the two faces spanned by the other indices
    for (int k = 1; k <= 3; ++k) {
        int i = k == 1 ? 2 : 1, j = k == 3 ? 2 : 3;
        if (q[k].is_zero()) {
            rep.add(Check{"face diagonal q" + std::to_string(k) + " incidence", "face diagonal through opposite face points",
                          Status::Flag, "0", {"q vanishes"}});
            continue;
        }
        bool ok = true;
        std::vector<std::string> notes;
        for (IndexSet base : {IndexSet(0), bit(k)}) {
            auto fr = face_point(L, {base, i, j});
            if (!fr.point) {
                notes.push_back("face " + set_label(base) + " has no isolated point");
                continue;
            }
            ok = ok && incident(*fr.point, ProjHyperplane<T>::from_poly(q[k]));
        }
        Check c{"face diagonal q" + std::to_string(k) + " incidence", "face diagonal through opposite face points",
                ok ? (notes.empty() ? Status::Pass : Status::Flag) : Status::Fail, ok ? "0" : "not incident", notes};
        rep.add(c);
    }
    return rep;
}

template <class T>
Report verify_relations(const PenroseLattice<T>& L)
{
    Report rep;
    if (L.n() != 3) return rep;
    const auto& B = L.matrix;
    std::array<HomogeneousPoly<T>, 4> q;
    for (int k = 1; k <= 3; ++k) q[k] = face_diagonal(B, k);
    auto bit = [](int j) { return IndexSet(1u << (j - 1)); };
    int perms[6][3] = {{1, 2, 3}, {1, 3, 2}, {2, 1, 3}, {2, 3, 1}, {3, 1, 2}, {3, 2, 1}};
    for (auto& pm : perms) {
        int j = pm[0], l = pm[1], m = pm[2];
        T g = g_scalar(B, bit(j), l, m);
        auto H0lm = face_conic(B, 0, l, m), Hjlm = face_conic(B, bit(j), l, m);
        auto H0jm = face_conic(B, 0, j, m), Hjml = face_conic(B, bit(j), m, l);
        auto r1 = g * H0lm - L.params.ajk(l, m) * Hjlm - q[l] * q[m];
        auto r2 = g * H0jm - L.params.ajk(j, m) * Hjml - L.chord_at(bit(j), m) * q[m];
        std::string tag = std::to_string(j) + std::to_string(l) + std::to_string(m);
        double sc = detail::scale_of<T>({&H0lm, &Hjlm, &q[l], &q[m]});
        rep.add("relation A (" + tag + ")", "face conic / diagonal relation via Sylvester", detail::clean(r1, sc * sc),
                detail::residual_text(r1));
        rep.add("relation B (" + tag + ")", "face conic / diagonal relation via Sylvester", detail::clean(r2, sc * sc),
                detail::residual_text(r2));
    }
    return rep;
}

template <class T>
Report verify_lattice(const PenroseLattice<T>& L)
{
    Report rep = verify_edges(L);
    rep.append(verify_faces(L));
    rep.append(verify_diagonals(L));
    rep.append(verify_relations(L));
    return rep;
}

// ---- vanishing-parameter findings ----

struct Finding {
    std::string kind;
    std::string detail;
    bool verified = true;
};

template <class T>
std::vector<Finding> classify_degeneracies(const PenroseLattice<T>& L)
{
    std::vector<Finding> out;
    const auto& q = L.params;
    auto bit = [](int j) { return IndexSet(1u << (j - 1)); };
    auto parallel = [](const HomogeneousPoly<T>& a, const HomogeneousPoly<T>& b) {
        if (a.is_zero() || b.is_zero()) return true;
        return proj_equal(a, b);
    };
    for (int j = 1; j <= q.n; ++j)
        for (int k = j + 1; k <= q.n; ++k) {
            if (!is_zero(q.ajk(j, k))) continue;
            bool ok = parallel(L.chord_at(0, j), L.chord_at(bit(k), j)) && parallel(L.chord_at(0, k), L.chord_at(bit(j), k));
            out.push_back({"a_jk=0", "a" + std::to_string(j) + std::to_string(k) +
                                         " = 0: chords of face {" + std::to_string(j) + std::to_string(k) + "} collapse to two",
                           ok});
        }
    for (int j = 1; j <= q.n; ++j) {
        if (!is_zero(q.dj(j))) continue;
        HomogeneousPoly<T> expect = -(q.line(j) * q.line(j));
        bool ok = L.S[bit(j)] == expect;
        for (int k = 1; k <= q.n; ++k)
            if (k != j) ok = ok && parallel(L.chord_at(bit(j), k), q.line(j));
        out.push_back({"d_j=0", "d" + std::to_string(j) + " = 0: S_{" + std::to_string(j) +
                                    "} = -p^2, a double line that is also a point pair; adjacent chords collapse onto p" +
                                    std::to_string(j),
                       ok});
    }
    for (IndexSet s = 1; s <= L.full(); ++s) {
        if (!is_zero(L.f[s]) || set_size(s) < 2) continue;
        bool lower_clean = false, lower_vanish = false;
        for (int k : members(s)) {
            IndexSet t = s & ~bit(k);
            if (is_zero(L.f[t])) lower_vanish = true;
            else lower_clean = true;
        }
        if (lower_clean && !lower_vanish) {
            bool ok = L.info[s].rank <= 1;
            out.push_back({"f=0", "f" + set_label(s) + " = 0: S" + set_label(s) + " is a double line", ok});
        } else {
            out.push_back({"f=0 unresolved", "f" + set_label(s) + " vanishes together with a lower-layer f; not analysed", true});
        }
    }
    if (L.info[0].rank == 1)
        out.push_back({"S0 double line", "first-layer vertices are line pairs crossing on the carrier of S0",
                       [&] {
                           for (int j = 1; j <= q.n; ++j)
                               if (L.info[bit(j)].rank > 2) return false;
                           return true;
                       }()});
    return out;
}

/// Desnanot–Jacobi for the bordered matrix, in deletion form: with r1 < r2 and
/// c1 < c2 outside I and J,
///   |I+r1;J+c1|·|I+r2;J+c2| − |I+r1;J+c2|·|I+r2;J+c1| = |I+r1+r2;J+c1+c2|·|I;J|.
template <class T>
HomogeneousPoly<T> desnanot_jacobi_residual(const PolyMatrix<T>& b, const std::vector<int>& rows,
                                            const std::vector<int>& cols, int r1, int r2, int c1, int c2)
{
    if (r1 > r2) std::swap(r1, r2);
    if (c1 > c2) std::swap(c1, c2);
    auto ins = [](std::vector<int> v, std::initializer_list<int> extra) {
        for (int e : extra) v.push_back(e);
        std::sort(v.begin(), v.end());
        return v;
    };
    auto lhs = b.subdet(ins(rows, {r1}), ins(cols, {c1})) * b.subdet(ins(rows, {r2}), ins(cols, {c2})) -
               b.subdet(ins(rows, {r1}), ins(cols, {c2})) * b.subdet(ins(rows, {r2}), ins(cols, {c1}));
    return lhs - b.subdet(ins(rows, {r1, r2}), ins(cols, {c1, c2})) * b.subdet(rows, cols);
}

} // namespace penrose
