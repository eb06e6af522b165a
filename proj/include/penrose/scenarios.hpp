#pragma once

#include "core/random.hpp"
#include "engine.hpp"
#include "seven.hpp"

#include <array>
#include <cmath>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace penrose {

// Classical special cases of the cube lattice. Each builder returns parameters
// plus witnesses read back from the lattice; each scenario also has an oracle
// that works from the raw points and lines only.

template <class T>
struct Witness {
    std::string name;
    std::string kind; // "point" or "line"
    Vec<T> c;
};

template <class T>
struct ScenarioInstance {
    std::string name;
    PenroseParams<T> params;
    std::optional<SevenConfig<T>> seven; // Monge keeps its direct configuration here
    std::vector<Witness<T>> witnesses;
    std::string predicate;
    std::string mode = scalar_traits<T>::mode;
    std::vector<std::string> notes;
};

// σ signs in the order (12, 13, 23).
using Signs = std::array<int, 3>;

inline int sign_at(const Signs& s, int i, int j)
{
    if (i > j) std::swap(i, j);
    return i == 1 ? (j == 2 ? s[0] : s[1]) : s[2];
}

namespace detail {

template <class T>
HomogeneousPoly<T> lin(const Vec<T>& c) { return HomogeneousPoly<T>::linear(c); }

template <class T>
T det3(const Vec<T>& a, const Vec<T>& b, const Vec<T>& c) { return dot(a, cross(b, c)); }

template <class T>
bool det3_vanishes(const Vec<T>& a, const Vec<T>& b, const Vec<T>& c)
{
    return scalar_traits<T>::negligible(det3(a, b, c), vec_scale(a) * vec_scale(b) * vec_scale(c));
}

template <class T>
T root_of(const T& x, const std::string& what)
{
    T r;
    if (!scalar_traits<T>::sqrt(x, r)) {
        if (scalar_traits<T>::sign(x) < 0) throw Error("IrrationalData", what + " is negative");
        throw Error("IrrationalData", what + " is not a perfect square; use float mode");
    }
    return r;
}

template <class T>
Vec<T> meet(const Vec<T>& a, const Vec<T>& b) { return meet2(ProjHyperplane<T>{a}, ProjHyperplane<T>{b}).c; }

template <class T>
Vec<T> join(const Vec<T>& a, const Vec<T>& b) { return join2(ProjPoint<T>{a}, ProjPoint<T>{b}).c; }

template <class T>
bool same(const Vec<T>& a, const Vec<T>& b) { return proj_equal(a, b); }

template <class T>
Vec<T> scaled_sum(const T& s, const Vec<T>& a, const T& t, const Vec<T>& b)
{
    Vec<T> r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = s * a[i] + t * b[i];
    return r;
}

} // namespace detail

/// Points where a line meets a conic (m = 3). `real` is -1, 0 or 1 for no, one
/// (tangent) or two real points; `points` is filled when they are representable.
template <class T>
struct LineConicMeet {
    int real = -1;
    bool contained = false;
    std::vector<Vec<T>> points;
};

template <class T>
LineConicMeet<T> meet_line_conic(const Vec<T>& line, const SymMatrix<T>& conic, bool need_points = true)
{
    auto basis = nullspace(Matrix<T>::from_rows({line}));
    if (basis.size() != 2) throw Error("DegeneratePosition", "not a line");
    const Vec<T>& P = basis[0];
    const Vec<T>& Q = basis[1];
    T qa = conic.quad(P), qb = dot(P, conic * Q), qc = conic.quad(Q);
    double sc = std::max({1.0, std::fabs(scalar_traits<T>::to_double(qa)), std::fabs(scalar_traits<T>::to_double(qb)),
                          std::fabs(scalar_traits<T>::to_double(qc))});
    auto zero = [&](const T& x, double s) { return scalar_traits<T>::negligible(x, s); };
    LineConicMeet<T> out;
    if (zero(qa, sc) && zero(qb, sc) && zero(qc, sc)) {
        out.contained = true;
        out.real = 1;
        return out;
    }
    T disc = qb * qb - qa * qc;
    if (zero(disc, sc * sc)) {
        out.real = 0;
        if (zero(qc, sc)) out.points.push_back(normalize_projective(Q));
        else out.points.push_back(normalize_projective(detail::scaled_sum(qc, P, T(-qb), Q)));
        return out;
    }
    out.real = scalar_traits<T>::sign(disc) > 0 ? 1 : -1;
    if (out.real < 0 || !need_points) return out;
    T r = detail::root_of(disc, "line-conic discriminant");
    if (zero(qc, sc)) {
        out.points.push_back(normalize_projective(Q));
        out.points.push_back(normalize_projective(detail::scaled_sum(T(2 * qb), P, T(-qa), Q)));
    } else {
        out.points.push_back(normalize_projective(detail::scaled_sum(qc, P, T(-qb + r), Q)));
        out.points.push_back(normalize_projective(detail::scaled_sum(qc, P, T(-qb - r), Q)));
    }
    return out;
}

/// Six points (rows x², xy, y², xz, yz, z²) on one conic.
template <class T>
bool on_common_conic(const std::vector<Vec<T>>& pts)
{
    if (pts.size() != 6) throw Error("SizeMismatch", "need six points");
    Matrix<T> M(6, 6);
    double sc = 1;
    for (int i = 0; i < 6; ++i) {
        const auto& p = pts[i];
        Vec<T> row = {p[0] * p[0], p[0] * p[1], p[1] * p[1], p[0] * p[2], p[1] * p[2], p[2] * p[2]};
        for (int j = 0; j < 6; ++j) M(i, j) = row[j];
        sc *= std::max(1e-300, vec_scale(row));
    }
    return scalar_traits<T>::negligible(det(M), sc);
}

// ---- Penrose-side readings ----

inline IndexSet pair_set(int i, int j) { return with(with(0, i), j); }

/// Carriers of the three second-layer double lines, or nothing if one is not rank 1.
template <class T>
std::optional<std::array<Vec<T>, 3>> second_layer_carriers(const PenroseLattice<T>& L)
{
    std::array<Vec<T>, 3> out;
    const std::array<std::pair<int, int>, 3> pairs{{{1, 2}, {1, 3}, {2, 3}}};
    for (int k = 0; k < 3; ++k) {
        const auto& v = L.info[pair_set(pairs[k].first, pairs[k].second)];
        if (v.rank != 1 || !v.double_line) return std::nullopt;
        out[k] = v.double_line->linear_coeffs();
    }
    return out;
}

template <class T>
bool carriers_concurrent(const PenroseLattice<T>& L)
{
    auto c = second_layer_carriers(L);
    return c && detail::det3_vanishes((*c)[0], (*c)[1], (*c)[2]);
}

/// The point pairs of the second layer: carrier {ij} cut by S_{i}.
template <class T>
std::vector<Vec<T>> second_layer_points(const PenroseLattice<T>& L)
{
    auto c = second_layer_carriers(L);
    if (!c) throw Error("NotRankOne", "a second-layer vertex is not a double line");
    std::vector<Vec<T>> pts;
    const std::array<std::pair<int, int>, 3> pairs{{{1, 2}, {1, 3}, {2, 3}}};
    for (int k = 0; k < 3; ++k) {
        auto mt = meet_line_conic((*c)[k], poly_to_sym(L.S[with(0, pairs[k].first)]));
        if (mt.contained || mt.points.empty()) throw Error("DegeneratePosition", "carrier does not cut the first layer in points");
        for (const auto& p : mt.points) pts.push_back(p);
        if (mt.points.size() == 1) pts.push_back(mt.points[0]);
    }
    return pts;
}

/// Final conic through all six second-layer points (and not identically zero).
template <class T>
bool final_conic_through_points(const PenroseLattice<T>& L)
{
    const auto& S = L.S[kEighth];
    if (S.is_zero() || !second_layer_carriers(L)) return false;
    double sc = S.max_abs();
    for (const auto& p : second_layer_points(L))
        if (!scalar_traits<T>::negligible(S.evaluate(p), sc * std::pow(vec_scale(p), 2))) return false;
    return true;
}

// ---- classify ----

namespace detail {
template <class T>
bool f_vanishes(const PenroseLattice<T>& L, IndexSet s)
{
    double sc = 1;
    for (int j : members(s)) sc *= std::max(1.0, std::fabs(scalar_traits<T>::to_double(L.params.dj(j))));
    for (int j : members(s))
        for (int k : members(s))
            if (j < k) sc = std::max(sc, std::pow(std::fabs(scalar_traits<T>::to_double(L.params.ajk(j, k))), set_size(s)));
    return scalar_traits<T>::negligible(L.f[s], sc);
}
} // namespace detail

/// Name of the classical special case a cube lattice falls into, or "generic".
template <class T>
std::string classify(const PenroseLattice<T>& L)
{
    if (L.n() != 3 || L.m() != 3) return "generic";
    for (auto s : {pair_set(1, 2), pair_set(1, 3), pair_set(2, 3)})
        if (!detail::f_vanishes(L, s) || L.info[s].rank != 1) return "generic";
    bool f123 = detail::f_vanishes(L, kEighth);
    int r0 = L.info[0].rank;
    if (r0 == 1) {
        if (f123) return "Desargues";
        return L.info[kEighth].rank == 2 ? "Pappos" : "Braikenridge-Maclaurin";
    }
    if (!f123) return "generic";
    bool pairs = true;
    for (int j = 1; j <= 3; ++j) pairs = pairs && L.info[with(0, j)].rank == 2;
    if (pairs) return r0 == 2 ? "Pappos" : "Brianchon";
    return "Dual Salmon";
}

// ---- dual Salmon ----

template <class T>
struct SalmonData {
    HomogeneousPoly<T> S0;
    std::array<Vec<T>, 3> p;
    std::array<T, 3> d;
    Signs sigma{1, 1, 1};
};

namespace detail {
template <class T>
void set_tangent_branch(PenroseParams<T>& q, const Signs& sigma)
{
    for (int i = 1; i <= 3; ++i)
        for (int j = i + 1; j <= 3; ++j) {
            T r = root_of(T(q.dj(i) * q.dj(j)), "d" + std::to_string(i) + "*d" + std::to_string(j));
            q.set_a(i, j, T(sign_at(sigma, i, j) * r));
        }
}

template <class T>
void add_carrier_witnesses(ScenarioInstance<T>& inst, const PenroseLattice<T>& L, const std::string& kind)
{
    auto c = second_layer_carriers(L);
    if (!c) return;
    const char* names[] = {"carrier{12}", "carrier{13}", "carrier{23}"};
    for (int k = 0; k < 3; ++k) inst.witnesses.push_back({names[k], kind, (*c)[k]});
    std::vector<Vec<T>> rows((*c).begin(), (*c).end());
    auto ns = nullspace(Matrix<T>::from_rows(rows));
    if (ns.size() == 1) inst.witnesses.push_back({"common", kind == "line" ? "point" : "line", normalize_projective(ns[0])});
}
} // namespace detail

template <class T>
ScenarioInstance<T> build_dual_salmon(const SalmonData<T>& in)
{
    ScenarioInstance<T> inst;
    inst.name = "dual-salmon";
    auto q = PenroseParams<T>::blank(3, 3);
    q.S0 = in.S0;
    for (int j = 0; j < 3; ++j) {
        q.p[j] = detail::lin(in.p[j]);
        q.d[j] = in.d[j];
    }
    detail::set_tangent_branch(q, in.sigma);
    inst.params = q;
    if (rank(poly_to_sym(in.S0)) != 3) inst.notes.push_back("S0 is not regular");
    auto L = build_lattice(q);
    detail::add_carrier_witnesses(inst, L, "line");
    inst.predicate = "the carriers of S{12}, S{13}, S{23} are concurrent";
    return inst;
}

/// Oracle: carrier ij ∝ d_j p_i − σ_ij √(d_i d_j) p_j, straight from the data.
template <class T>
bool dual_salmon_oracle(const SalmonData<T>& in)
{
    std::array<Vec<T>, 3> c;
    const std::array<std::pair<int, int>, 3> pairs{{{1, 2}, {1, 3}, {2, 3}}};
    for (int k = 0; k < 3; ++k) {
        auto [i, j] = pairs[k];
        T r = detail::root_of(T(in.d[i - 1] * in.d[j - 1]), "d_i*d_j");
        if (is_zero(in.d[j - 1])) c[k] = detail::scaled_sum(T(0), in.p[i - 1], T(1), in.p[j - 1]);
        else c[k] = detail::scaled_sum(in.d[j - 1], in.p[i - 1], T(-sign_at(in.sigma, i, j) * r), in.p[j - 1]);
    }
    return detail::det3_vanishes(c[0], c[1], c[2]);
}

// ---- Brianchon ----

template <class T>
struct BrianchonData {
    SymMatrix<T> S0;
    std::array<Vec<T>, 3> P;
    bool two_triangles = false; // flips σ23 into the non-concurrent branch
};

inline Signs brianchon_signs(bool two_triangles) { return {1, 1, two_triangles ? -1 : 1}; }

template <class T>
ScenarioInstance<T> build_brianchon(const BrianchonData<T>& in)
{
    ScenarioInstance<T> inst;
    inst.name = "brianchon";
    auto q = PenroseParams<T>::blank(3, 3);
    q.S0 = sym_to_poly(in.S0);
    for (int j = 0; j < 3; ++j) {
        Vec<T> pol = in.S0 * in.P[j];
        if (vec_is_zero(pol)) throw Error("DegeneratePosition", "point is a vertex of S0");
        auto mt = meet_line_conic(pol, in.S0, false);
        if (mt.real < 0) throw Error("InteriorPoint", "P" + std::to_string(j + 1) + " has no real tangents");
        q.p[j] = detail::lin(pol);
        q.d[j] = in.S0.quad(in.P[j]);
        if (is_zero(q.d[j])) inst.notes.push_back("P" + std::to_string(j + 1) + " lies on S0: tangent-degenerate");
    }
    detail::set_tangent_branch(q, brianchon_signs(in.two_triangles));
    inst.params = q;
    auto L = build_lattice(q);
    for (int j = 0; j < 3; ++j) inst.witnesses.push_back({"P" + std::to_string(j + 1), "point", in.P[j]});
    detail::add_carrier_witnesses(inst, L, "line");
    inst.predicate = "the three main diagonals of the circumscribed hexagon are concurrent";
    return inst;
}

template <class T>
bool brianchon_penrose(const PenroseLattice<T>& L)
{
    for (int j = 1; j <= 3; ++j)
        if (L.info[with(0, j)].rank != 2) return false;
    return carriers_concurrent(L);
}

/// Oracle: tangents at the contact points, then the hexagon whose opposite
/// sides are the tangent pairs; diagonals joined straight (12, 23) and
/// crossed (13), or the other parity for two triangles.
template <class T>
bool brianchon_oracle(const BrianchonData<T>& in)
{
    std::array<std::array<Vec<T>, 2>, 3> t;
    for (int j = 0; j < 3; ++j) {
        Vec<T> pol = in.S0 * in.P[j];
        auto mt = meet_line_conic(pol, in.S0);
        if (mt.real != 1 || mt.points.size() != 2) throw Error("InteriorPoint", "no tangent pair");
        for (int s = 0; s < 2; ++s) t[j][s] = in.S0 * mt.points[s];
    }
    auto diag = [&](int i, int j, bool crossed) {
        Vec<T> a = detail::meet(t[i][0], t[j][crossed ? 1 : 0]);
        Vec<T> b = detail::meet(t[i][1], t[j][crossed ? 0 : 1]);
        return detail::join(a, b);
    };
    bool flip = in.two_triangles;
    return detail::det3_vanishes(diag(0, 1, false), diag(1, 2, flip), diag(0, 2, true));
}

// ---- hexagon and triangles around an axis: Pappus, Braikenridge–Maclaurin, Desargues ----

/// Axis line m and line pairs (u_i, v_i) meeting on it.
template <class T>
struct AxisData {
    Vec<T> m;
    std::array<Vec<T>, 3> u, v;
};

/// S0 = m², m = α_i u_i + β_i v_i, p_i = β_i v_i − α_i u_i, d_i = 1, a_ij = σ_ij.
/// Then S_{i} = 4 α_i β_i u_i v_i, and carrier ij passes through u_i∧u_j, v_i∧v_j
/// for σ = +1 and through u_i∧v_j, v_i∧u_j for σ = −1.
template <class T>
PenroseParams<T> axis_params(const AxisData<T>& in, const Signs& sigma)
{
    auto q = PenroseParams<T>::blank(3, 3);
    auto m = detail::lin(in.m);
    q.S0 = m * m;
    for (int j = 0; j < 3; ++j) {
        if (detail::same(in.u[j], in.v[j])) throw Error("DegeneratePosition", "u and v coincide");
        auto ns = nullspace(Matrix<T>::from_cols({in.u[j], in.v[j], in.m}));
        if (ns.empty()) throw Error("DegeneratePosition", "u" + std::to_string(j + 1) + "∧v" + std::to_string(j + 1) + " is off the axis");
        const Vec<T>& k = ns[0];
        if (is_zero(k[0]) || is_zero(k[1]) || is_zero(k[2])) throw Error("DegeneratePosition", "a side coincides with the axis");
        T al = -k[0] / k[2], be = -k[1] / k[2];
        q.p[j] = detail::lin(detail::scaled_sum(be, in.v[j], T(-al), in.u[j]));
        q.d[j] = T(1);
    }
    for (int i = 1; i <= 3; ++i)
        for (int j = i + 1; j <= 3; ++j) q.set_a(i, j, T(sign_at(sigma, i, j)));
    return q;
}

/// Vertices of the hexagon (or of the two triangles) picked out by σ, in pair order 12, 13, 23.
template <class T>
std::vector<Vec<T>> axis_vertices(const AxisData<T>& in, const Signs& sigma)
{
    std::vector<Vec<T>> pts;
    const std::array<std::pair<int, int>, 3> pairs{{{1, 2}, {1, 3}, {2, 3}}};
    for (auto [i, j] : pairs) {
        bool plus = sign_at(sigma, i, j) > 0;
        pts.push_back(detail::meet(in.u[i - 1], plus ? in.u[j - 1] : in.v[j - 1]));
        pts.push_back(detail::meet(in.v[i - 1], plus ? in.v[j - 1] : in.u[j - 1]));
    }
    return pts;
}

template <class T>
ScenarioInstance<T> build_braikenridge_maclaurin(const AxisData<T>& in, const Signs& sigma = {-1, -1, -1})
{
    if (sigma[0] * sigma[1] * sigma[2] != -1) throw Error("DegeneratePosition", "σ12σ13σ23 must be -1 for a hexagon");
    ScenarioInstance<T> inst;
    inst.name = "braikenridge-maclaurin";
    inst.params = axis_params(in, sigma);
    auto L = build_lattice(inst.params);
    inst.witnesses.push_back({"axis", "line", in.m});
    int k = 0;
    for (const auto& p : second_layer_points(L)) inst.witnesses.push_back({"V" + std::to_string(++k), "point", p});
    inst.predicate = "the six second-layer points lie on S{123}";
    return inst;
}

template <class T>
bool braikenridge_maclaurin_oracle(const AxisData<T>& in, const Signs& sigma = {-1, -1, -1})
{
    return on_common_conic(axis_vertices(in, sigma));
}

template <class T>
ScenarioInstance<T> build_desargues(const AxisData<T>& in)
{
    ScenarioInstance<T> inst;
    inst.name = "desargues";
    inst.params = axis_params(in, Signs{1, 1, 1});
    auto L = build_lattice(inst.params);
    inst.witnesses.push_back({"axis", "line", in.m});
    detail::add_carrier_witnesses(inst, L, "line");
    if (!L.S[kEighth].is_zero()) inst.notes.push_back("S{123} does not vanish");
    inst.predicate = "the joins of corresponding vertices are concurrent";
    return inst;
}

template <class T>
bool desargues_penrose(const PenroseLattice<T>& L)
{
    return carriers_concurrent(L) && poly_negligible(L.S[kEighth], std::max(1.0, L.S[0].max_abs()));
}

/// Oracle: triangles u1u2u3 and v1v2v3 perspective from the axis; joins of corresponding vertices.
template <class T>
bool desargues_oracle(const AxisData<T>& in)
{
    auto corner = [&](const std::array<Vec<T>, 3>& s, int i, int j) { return detail::meet(s[i], s[j]); };
    Vec<T> a = detail::join(corner(in.u, 0, 1), corner(in.v, 0, 1));
    Vec<T> b = detail::join(corner(in.u, 0, 2), corner(in.v, 0, 2));
    Vec<T> c = detail::join(corner(in.u, 1, 2), corner(in.v, 1, 2));
    return detail::det3_vanishes(a, b, c);
}

// Pappus. Hexagon A B' C A' B C' with A, B, C on ℓ and A', B', C' on ℓ'. The sides
// u1 = AB', v1 = A'B, u2 = BC', v2 = B'C, u3 = CA' give X1 = u1∧v1, X2 = u2∧v2 and the
// axis m = X1X2; the sixth side is taken as the line from A through u3∧m. This is
// a Braikenridge–Maclaurin zigzag with σ = (−,−,−): the final conic is ℓℓ' exactly
// when that sixth side passes through C'.
template <class T>
struct PappusData {
    std::array<Vec<T>, 3> P;  // A, B, C
    std::array<Vec<T>, 3> Pp; // A', B', C'
};

inline constexpr Signs kPappusSigns{-1, -1, -1};

template <class T>
AxisData<T> pappus_axis(const PappusData<T>& in)
{
    const auto &A = in.P[0], &B = in.P[1], &C = in.P[2];
    const auto &A1 = in.Pp[0], &B1 = in.Pp[1], &C1 = in.Pp[2];
    try {
        Vec<T> l = detail::join(A, B), l1 = detail::join(A1, B1);
        if (!detail::det3_vanishes(A, B, C)) throw Error("DegeneratePosition", "C is not on AB");
        if (detail::same(l, l1)) throw Error("DegeneratePosition", "the two carrier lines coincide");
        Vec<T> Q = detail::meet(l, l1);
        for (const auto* X : {&A, &B, &C, &A1, &B1, &C1})
            if (detail::same(*X, Q)) throw Error("DegeneratePosition", "a point sits at the crossing of the carriers");
        if (detail::same(A, C) || detail::same(B, C) || detail::same(A1, C1) || detail::same(B1, C1))
            throw Error("DegeneratePosition", "repeated point");
        AxisData<T> ax;
        ax.u = {detail::join(A, B1), detail::join(B, C1), detail::join(C, A1)};
        ax.v[0] = detail::join(A1, B);
        ax.v[1] = detail::join(B1, C);
        Vec<T> X1 = detail::meet(ax.u[0], ax.v[0]), X2 = detail::meet(ax.u[1], ax.v[1]);
        ax.m = detail::join(X1, X2);
        ax.v[2] = detail::join(detail::meet(ax.u[2], ax.m), A);
        return ax;
    } catch (const Error& e) {
        if (e.kind() == "DegeneratePosition") throw;
        throw Error("DegeneratePosition", e.what());
    }
}

template <class T>
ScenarioInstance<T> build_pappus(const PappusData<T>& in)
{
    ScenarioInstance<T> inst;
    inst.name = "pappus";
    AxisData<T> ax = pappus_axis(in);
    try {
        inst.params = axis_params(ax, kPappusSigns);
    } catch (const Error& e) {
        throw Error("DegeneratePosition", e.what());
    }
    auto L = build_lattice(inst.params);
    inst.witnesses.push_back({"l", "line", detail::join(in.P[0], in.P[1])});
    inst.witnesses.push_back({"l'", "line", detail::join(in.Pp[0], in.Pp[1])});
    inst.witnesses.push_back({"axis", "line", ax.m});
    int k = 0;
    for (const auto& p : second_layer_points(L)) inst.witnesses.push_back({"V" + std::to_string(++k), "point", p});
    inst.predicate = "S{123} is the line pair l·l' and C' is a second-layer point";
    return inst;
}

template <class T>
bool pappus_penrose(const PenroseLattice<T>& L, const PappusData<T>& in)
{
    const auto& S = L.S[kEighth];
    if (S.is_zero() || L.info[kEighth].rank != 2) return false;
    auto pair = detail::lin(detail::join(in.P[0], in.P[1])) * detail::lin(detail::join(in.Pp[0], in.Pp[1]));
    if (!proj_equal(S, pair)) return false;
    // five hexagon vertices already force l·l'; the sixth has to be C' itself
    for (const auto& v : second_layer_points(L))
        if (detail::same(v, in.Pp[2])) return true;
    return false;
}

/// Oracle: the three cross-joins AB'∧A'B, BC'∧B'C, CA'∧C'A are collinear.
template <class T>
bool pappus_oracle(const PappusData<T>& in)
{
    auto x = [&](int i, int j) {
        return detail::meet(detail::join(in.P[i], in.Pp[j]), detail::join(in.Pp[i], in.P[j]));
    };
    return detail::det3_vanishes(x(0, 1), x(1, 2), x(2, 0));
}

// ---- Monge ----

// Built line-wise: a line (u, v, w) touches the circle with centre (a, b) and
// radius r iff r²(u² + v²) − (au + bv + w)² = 0. So S0 = u² + v² (the circular
// points), p_i = the centre, d_i = r_i², and the second-layer carriers are the
// homothety centres, external for σ = +1.
template <class T>
struct MongeData {
    std::array<std::array<T, 2>, 3> c;
    std::array<T, 3> r;
    Signs sigma{1, 1, 1};
};

template <class T>
Vec<T> monge_center(const MongeData<T>& in, int i) { return {in.c[i][0], in.c[i][1], T(1)}; }

/// Circle as a point conic.
template <class T>
SymMatrix<T> circle_matrix(const std::array<T, 2>& c, const T& r)
{
    SymMatrix<T> s(3);
    s.set(0, 0, T(1));
    s.set(1, 1, T(1));
    s.set(0, 2, T(-c[0]));
    s.set(1, 2, T(-c[1]));
    s.set(2, 2, T(c[0] * c[0] + c[1] * c[1] - r * r));
    return s;
}

template <class T>
ScenarioInstance<T> build_monge(const MongeData<T>& in)
{
    for (int i = 0; i < 3; ++i) {
        if (scalar_traits<T>::sign(in.r[i]) <= 0) throw Error("DegeneratePosition", "radius must be positive");
        for (int j = i + 1; j < 3; ++j)
            if (in.c[i] == in.c[j]) throw Error("ConcentricCircles", "circles " + std::to_string(i + 1) + " and " + std::to_string(j + 1) + " share a centre");
    }
    ScenarioInstance<T> inst;
    inst.name = "monge";
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            if (i == j) continue;
            T dx = in.c[i][0] - in.c[j][0], dy = in.c[i][1] - in.c[j][1], dr = in.r[i] - in.r[j];
            if (scalar_traits<T>::sign(dr) > 0 && scalar_traits<T>::sign(T(dr * dr - dx * dx - dy * dy)) >= 0)
                inst.notes.push_back("circle " + std::to_string(j + 1) + " lies inside circle " + std::to_string(i + 1));
        }
    auto q = PenroseParams<T>::blank(3, 3);
    q.S0 = detail::lin(Vec<T>{T(1), T(0), T(0)}) * detail::lin(Vec<T>{T(1), T(0), T(0)}) +
           detail::lin(Vec<T>{T(0), T(1), T(0)}) * detail::lin(Vec<T>{T(0), T(1), T(0)});
    for (int j = 0; j < 3; ++j) {
        q.p[j] = detail::lin(monge_center(in, j));
        q.d[j] = in.r[j] * in.r[j];
    }
    for (int i = 1; i <= 3; ++i)
        for (int j = i + 1; j <= 3; ++j) q.set_a(i, j, T(sign_at(in.sigma, i, j) * in.r[i - 1] * in.r[j - 1]));
    inst.params = q;
    auto L = build_lattice(q);

    SevenConfig<T> seven;
    seven.m = 3;
    seven.set(0, SymMatrix<T>::diag({T(1), T(1), T(0)}), SymMatrix<T>::diag({T(0), T(0), T(1)}));
    for (int j = 1; j <= 3; ++j) {
        auto circ = circle_matrix(in.c[j - 1], in.r[j - 1]);
        seven.set(with(0, j), adjugate(circ), circ);
        if (!proj_equal(poly_to_sym(L.S[with(0, j)]), adjugate(circ)))
            throw Error("InconsistentFace", "first layer is not the dual circle " + std::to_string(j));
    }
    for (auto s : {pair_set(1, 2), pair_set(1, 3), pair_set(2, 3)}) seven.set(s, poly_to_sym(L.S[s]));
    inst.seven = seven;

    auto c = second_layer_carriers(L);
    if (c) {
        const char* names[] = {"H12", "H13", "H23"};
        for (int k = 0; k < 3; ++k) inst.witnesses.push_back({names[k], "point", (*c)[k]});
    }
    bool internal = in.sigma[0] * in.sigma[1] * in.sigma[2] < 0;
    inst.predicate = internal ? "the internal tangent pairs touch the line-wise conic S{123}"
                              : "the homothety centres are collinear";
    return inst;
}

/// Oracle: homothety centres r_j c_i − σ r_i c_j and a 3×3 determinant.
template <class T>
bool monge_oracle(const MongeData<T>& in)
{
    std::array<Vec<T>, 3> h;
    const std::array<std::pair<int, int>, 3> pairs{{{0, 1}, {0, 2}, {1, 2}}};
    for (int k = 0; k < 3; ++k) {
        auto [i, j] = pairs[k];
        h[k] = detail::scaled_sum(in.r[j], monge_center(in, i), T(-sign_at(in.sigma, i + 1, j + 1) * in.r[i]), monge_center(in, j));
    }
    return detail::det3_vanishes(h[0], h[1], h[2]);
}

/// Oracle for three internal centres: the six internal tangents, drawn with
/// trigonometry in doubles, lie on one line-wise conic.
template <class T>
bool monge_internal_oracle(const MongeData<T>& in, double tol = 1e-9)
{
    std::vector<std::array<double, 3>> lines;
    const std::array<std::pair<int, int>, 3> pairs{{{0, 1}, {0, 2}, {1, 2}}};
    for (auto [i, j] : pairs) {
        double ri = scalar_traits<T>::to_double(in.r[i]), rj = scalar_traits<T>::to_double(in.r[j]);
        double cx = scalar_traits<T>::to_double(in.c[i][0]), cy = scalar_traits<T>::to_double(in.c[i][1]);
        double ex = scalar_traits<T>::to_double(in.c[j][0]), ey = scalar_traits<T>::to_double(in.c[j][1]);
        double ix = (rj * cx + ri * ex) / (ri + rj), iy = (rj * cy + ri * ey) / (ri + rj);
        double dx = cx - ix, dy = cy - iy, D = std::hypot(dx, dy);
        if (D <= ri) return false; // overlapping circles: no internal tangents
        double th = std::asin(ri / D), base = std::atan2(dy, dx);
        for (double s : {1.0, -1.0}) {
            double a = base + s * th;
            double nx = -std::sin(a), ny = std::cos(a);
            lines.push_back({nx, ny, -(nx * ix + ny * iy)});
        }
    }
    Matrix<double> M(6, 6);
    for (int k = 0; k < 6; ++k) {
        const auto& l = lines[k];
        double row[6] = {l[0] * l[0], l[0] * l[1], l[1] * l[1], l[0] * l[2], l[1] * l[2], l[2] * l[2]};
        double nrm = 0;
        for (double x : row) nrm = std::max(nrm, std::fabs(x));
        for (int j = 0; j < 6; ++j) M(k, j) = row[j] / nrm;
    }
    return std::fabs(det(M)) <= tol;
}

// ---- running a scenario ----

struct ScenarioVerdict {
    std::string name;
    std::string label;
    bool built = false;
    bool engine_ok = false;
    bool penrose_ok = false;
    bool classical_ok = false;
    std::string error;
    Report report;
    std::vector<std::string> notes;

    bool agree() const { return penrose_ok == classical_ok; }
};

/// Builds, runs the full lattice sweep, then the Penrose-side predicate; the
/// oracle is run separately. Build errors count as a failed Penrose side.
template <class T>
ScenarioVerdict run_scenario(const std::string& name, const std::function<ScenarioInstance<T>()>& build,
                             const std::function<bool(const PenroseLattice<T>&)>& predicate,
                             const std::function<bool()>& oracle)
{
    ScenarioVerdict v;
    v.name = name;
    try {
        auto inst = build();
        v.built = true;
        v.notes = inst.notes;
        auto L = build_lattice(inst.params);
        v.report = verify_lattice(L);
        v.engine_ok = v.report.ok();
        v.label = classify(L);
        v.penrose_ok = v.engine_ok && predicate(L);
        v.report.add(name + " predicate", inst.predicate, v.penrose_ok, v.penrose_ok ? "0" : "predicate fails");
    } catch (const Error& e) {
        v.error = e.kind();
        v.notes.push_back(e.what());
    }
    try {
        v.classical_ok = oracle();
    } catch (const Error& e) {
        v.classical_ok = false;
        v.notes.push_back(std::string("oracle: ") + e.what());
    }
    return v;
}

template <class T>
ScenarioVerdict run_dual_salmon(const SalmonData<T>& in)
{
    return run_scenario<T>("dual-salmon", [&] { return build_dual_salmon(in); },
                           [](const PenroseLattice<T>& L) { return carriers_concurrent(L); },
                           [&] { return dual_salmon_oracle(in); });
}

template <class T>
ScenarioVerdict run_brianchon(const BrianchonData<T>& in)
{
    return run_scenario<T>("brianchon", [&] { return build_brianchon(in); },
                           [](const PenroseLattice<T>& L) { return brianchon_penrose(L); },
                           [&] { return brianchon_oracle(in); });
}

template <class T>
ScenarioVerdict run_pappus(const PappusData<T>& in)
{
    return run_scenario<T>("pappus", [&] { return build_pappus(in); },
                           [&](const PenroseLattice<T>& L) { return pappus_penrose(L, in); },
                           [&] { return pappus_oracle(in); });
}

template <class T>
ScenarioVerdict run_braikenridge_maclaurin(const AxisData<T>& in, const Signs& sigma = {-1, -1, -1})
{
    return run_scenario<T>("braikenridge-maclaurin", [&] { return build_braikenridge_maclaurin(in, sigma); },
                           [](const PenroseLattice<T>& L) { return final_conic_through_points(L); },
                           [&] { return braikenridge_maclaurin_oracle(in, sigma); });
}

template <class T>
ScenarioVerdict run_desargues(const AxisData<T>& in)
{
    return run_scenario<T>("desargues", [&] { return build_desargues(in); },
                           [](const PenroseLattice<T>& L) { return desargues_penrose(L); },
                           [&] { return desargues_oracle(in); });
}

template <class T>
ScenarioVerdict run_monge(const MongeData<T>& in)
{
    bool internal = in.sigma[0] * in.sigma[1] * in.sigma[2] < 0 && in.sigma[0] < 0 && in.sigma[1] < 0;
    return run_scenario<T>("monge", [&] { return build_monge(in); },
                           [internal](const PenroseLattice<T>& L) {
                               return internal ? final_conic_through_points(L) : carriers_concurrent(L);
                           },
                           [&, internal] { return internal ? monge_internal_oracle(in) : monge_oracle(in); });
}

// ---- random data ----

namespace detail {
template <class T>
Vec<T> point_on(const Vec<T>& line, RationalGen& g)
{
    auto b = nullspace(Matrix<T>::from_rows({line}));
    return scaled_sum(g.scalar<T>(), b[0], g.scalar<T>(), b[1]);
}

template <class T>
Matrix<T> random_transform(RationalGen& g)
{
    for (;;) {
        Matrix<T> M(3, 3);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) M(i, j) = from_int<T>(g.integer(-3, 3));
        if (!is_zero(det(M))) return M;
    }
}

inline int random_sign(RationalGen& g) { return g.integer(0, 1) ? 1 : -1; }
} // namespace detail

template <class T>
SalmonData<T> random_salmon_data(RationalGen& g)
{
    SalmonData<T> s;
    for (;;) {
        s.S0 = sym_to_poly(SymMatrix<T>::from_matrix([&] {
            Matrix<T> M(3, 3);
            for (int i = 0; i < 3; ++i)
                for (int j = i; j < 3; ++j) M(i, j) = M(j, i) = g.scalar<T>();
            return M;
        }()));
        if (!s.S0.is_zero() && rank(poly_to_sym(s.S0)) == 3) break;
    }
    do
        for (int j = 0; j < 3; ++j) {
            s.p[j] = g.vec<T>(3);
            int k = g.integer(1, 4);
            s.d[j] = from_int<T>(k * k);
        }
    while (detail::det3_vanishes(s.p[0], s.p[1], s.p[2]));
    s.sigma[0] = detail::random_sign(g);
    s.sigma[1] = detail::random_sign(g);
    s.sigma[2] = s.sigma[0] * s.sigma[1];
    return s;
}

/// Points on x² + y² = 2z² (where x² + y² − z² is a square), moved by a random collineation.
template <class T>
BrianchonData<T> random_brianchon_data(RationalGen& g)
{
    BrianchonData<T> b;
    Matrix<T> M = detail::random_transform<T>(g);
    b.S0 = SymMatrix<T>::diag({T(1), T(1), T(-1)}).congruence(inverse(M));
    for (int j = 0; j < 3; ++j) {
        T s = from_int<T>(g.integer(-5, 5)), t = from_int<T>(g.integer(1, 5));
        Vec<T> P = {T(s * s + 2 * s * t - t * t), T(-s * s + 2 * s * t + t * t), T(s * s + t * t)};
        b.P[j] = M * P;
    }
    return b;
}

template <class T>
PappusData<T> random_pappus_data(RationalGen& g)
{
    Matrix<T> M = detail::random_transform<T>(g);
    PappusData<T> p;
    for (int j = 0; j < 3; ++j) {
        p.P[j] = M * Vec<T>{g.scalar<T>(), T(0), T(1)};
        p.Pp[j] = M * Vec<T>{g.scalar<T>(), T(1), T(1)};
    }
    return p;
}

namespace detail {
// every cross meet a proper point off the axis, all of them distinct
template <class T>
bool axis_generic(const AxisData<T>& a)
{
    std::vector<Vec<T>> pts;
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j)
            for (const auto* l : {&a.u[i], &a.v[i]})
                for (const auto* r : {&a.u[j], &a.v[j]}) pts.push_back(cross(*l, *r));
    for (std::size_t i = 0; i < pts.size(); ++i) {
        if (vec_is_zero(pts[i]) || is_zero(dot(pts[i], a.m))) return false;
        for (std::size_t j = 0; j < i; ++j)
            if (vec_is_zero(cross(pts[i], pts[j]))) return false;
    }
    return true;
}
} // namespace detail

template <class T>
AxisData<T> random_axis_data(RationalGen& g)
{
    for (;;) {
        AxisData<T> a;
        do a.m = g.vec<T>(3);
        while (vec_is_zero(Vec<T>{a.m[0], a.m[1]}));
        for (int j = 0; j < 3; ++j) {
            Vec<T> X = detail::point_on(a.m, g);
            a.u[j] = cross(X, g.vec<T>(3));
            a.v[j] = cross(X, g.vec<T>(3));
        }
        if (detail::axis_generic(a)) return a;
    }
}

template <class T>
MongeData<T> random_monge_data(RationalGen& g)
{
    MongeData<T> d;
    do
        for (int j = 0; j < 3; ++j) {
            d.c[j] = {from_int<T>(g.integer()), from_int<T>(g.integer())};
            d.r[j] = from_int<T>(g.integer(1, 4));
        }
    while (detail::det3_vanishes(monge_center(d, 0), monge_center(d, 1), monge_center(d, 2)));
    return d;
}

// ---- named scenarios with a negative control ----

struct ScenarioPair {
    ScenarioVerdict positive, negative;
    bool has_negative = true;

    bool ok() const
    {
        bool pos = positive.penrose_ok && positive.classical_ok;
        bool neg = !has_negative || (!negative.penrose_ok && !negative.classical_ok);
        return pos && neg;
    }
};

inline const std::vector<std::string>& scenario_names()
{
    static const std::vector<std::string> names{"dual-salmon", "brianchon", "pappus", "braikenridge-maclaurin",
                                                "desargues", "monge", "monge-internal"};
    return names;
}

namespace detail {
inline bool usable(const ScenarioVerdict& v)
{
    if (!v.built) return false;
    for (const auto& n : v.notes)
        if (n.rfind("oracle:", 0) == 0) return false;
    return true;
}

// one perturbed datum: the line v_k is swung off its point on the axis
template <class T>
AxisData<T> off_axis(AxisData<T> a, int k, int attempt)
{
    Vec<T> e(3, T(0));
    e[attempt % 3] = from_int<T>(1 + attempt / 3);
    for (int i = 0; i < 3; ++i) a.v[k][i] += e[i];
    return a;
}

template <class T>
PappusData<T> off_line(PappusData<T> p, int attempt)
{
    Vec<T> e(3, T(0));
    e[attempt % 3] = from_int<T>(1 + attempt / 3);
    for (int i = 0; i < 3; ++i) p.Pp[2][i] += e[i];
    return p;
}
} // namespace detail

/// Draws data from g until the positive instance is non-degenerate, then runs it
/// and its negative control.
template <class T>
ScenarioPair run_named_scenario(const std::string& name, RationalGen& g, int max_draws = 500)
{
    ScenarioPair out;
    for (int draw = 0; draw < max_draws; ++draw) {
        if (name == "dual-salmon") {
            auto d = random_salmon_data<T>(g);
            out.positive = run_dual_salmon(d);
            if (!detail::usable(out.positive)) continue;
            d.sigma[2] = -d.sigma[2];
            out.negative = run_dual_salmon(d);
        } else if (name == "brianchon") {
            auto d = random_brianchon_data<T>(g);
            out.positive = run_brianchon(d);
            if (!detail::usable(out.positive)) continue;
            d.two_triangles = true;
            out.negative = run_brianchon(d);
        } else if (name == "pappus") {
            auto d = random_pappus_data<T>(g);
            out.positive = run_pappus(d);
            if (!detail::usable(out.positive)) continue;
            for (int a = 0; a < 9; ++a) {
                auto bad = detail::off_line(d, a);
                const auto& C = bad.Pp[2];
                if (detail::det3_vanishes(d.Pp[0], d.Pp[1], C) || detail::det3_vanishes(d.P[0], d.P[1], C)) continue;
                out.negative = run_pappus(bad);
                if (out.negative.built) break;
            }
        } else if (name == "braikenridge-maclaurin" || name == "desargues") {
            auto d = random_axis_data<T>(g);
            bool bm = name == "braikenridge-maclaurin";
            out.positive = bm ? run_braikenridge_maclaurin(d) : run_desargues(d);
            if (!detail::usable(out.positive)) continue;
            for (int a = 0; a < 9; ++a) {
                auto bad = detail::off_axis(d, 0, a);
                if (!detail::axis_generic(bad) || is_zero(dot(cross(bad.u[0], bad.v[0]), bad.m))) continue;
                out.negative = bm ? run_braikenridge_maclaurin(bad) : run_desargues(bad);
                break;
            }
        } else if (name == "monge") {
            auto d = random_monge_data<T>(g);
            out.positive = run_monge(d);
            if (!detail::usable(out.positive)) continue;
            d.sigma = {1, 1, -1};
            out.negative = run_monge(d);
        } else if (name == "monge-internal") {
            auto d = random_monge_data<double>(g);
            d.sigma = {-1, -1, -1};
            bool apart = true;
            for (int i = 0; i < 3; ++i)
                for (int j = i + 1; j < 3; ++j) {
                    double dx = d.c[i][0] - d.c[j][0], dy = d.c[i][1] - d.c[j][1];
                    apart = apart && std::hypot(dx, dy) > d.r[i] + d.r[j];
                }
            if (!apart) continue;
            auto v = run_monge(d);
            if (!detail::usable(v)) continue;
            out.positive = v;
            out.has_negative = false;
        } else {
            throw Error("UnknownScenario", "no scenario named '" + name + "'");
        }
        return out;
    }
    throw Error("DegeneratePosition", "no usable draw for " + name);
}

} // namespace penrose
