#pragma once

#include "core/normalize.hpp"
#include "core/univariate.hpp"

#include <optional>
#include <string>
#include <vector>

namespace penrose {

template <class T>
struct ProjPoint {
    Vec<T> c;
    int dim() const { return static_cast<int>(c.size()); }
};

template <class T>
struct ProjHyperplane {
    Vec<T> c;
    int dim() const { return static_cast<int>(c.size()); }
    HomogeneousPoly<T> poly() const { return HomogeneousPoly<T>::linear(c); }
    static ProjHyperplane from_poly(const HomogeneousPoly<T>& f) { return {f.linear_coeffs()}; }
};

template <class T>
bool operator==(const ProjPoint<T>& a, const ProjPoint<T>& b) { return proj_equal(a.c, b.c); }
template <class T>
bool operator==(const ProjHyperplane<T>& a, const ProjHyperplane<T>& b) { return proj_equal(a.c, b.c); }

template <class T>
T dot(const Vec<T>& a, const Vec<T>& b)
{
    T acc(0);
    for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
    return acc;
}

template <class T>
double vec_scale(const Vec<T>& v)
{
    double s = 0;
    for (const auto& x : v) s = std::max(s, std::fabs(scalar_traits<T>::to_double(x)));
    return s;
}

template <class T>
bool incident(const ProjPoint<T>& p, const ProjHyperplane<T>& h)
{
    return scalar_traits<T>::negligible(dot(p.c, h.c), vec_scale(p.c) * vec_scale(h.c));
}

template <class T>
Vec<T> cross(const Vec<T>& a, const Vec<T>& b)
{
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

template <class T>
ProjPoint<T> meet2(const ProjHyperplane<T>& a, const ProjHyperplane<T>& b)
{
    Vec<T> c = cross(a.c, b.c);
    if (scalar_traits<T>::exact ? vec_is_zero(c) : vec_scale(c) <= tolerance() * vec_scale(a.c) * vec_scale(b.c))
        throw Error("CoincidentLines", "meet of proportional lines");
    return {c};
}

template <class T>
ProjHyperplane<T> join2(const ProjPoint<T>& p, const ProjPoint<T>& q)
{
    Vec<T> c = cross(p.c, q.c);
    if (scalar_traits<T>::exact ? vec_is_zero(c) : vec_scale(c) <= tolerance() * vec_scale(p.c) * vec_scale(q.c))
        throw Error("CoincidentArguments", "join of equal points");
    return {c};
}

template <class T>
int stacked_rank(const std::vector<Vec<T>>& rows)
{
    return rank(Matrix<T>::from_rows(rows));
}

/// Lines (m=3) through one point, or planes (m=4) through one line.
template <class T>
bool concurrent(const std::vector<ProjHyperplane<T>>& hs)
{
    if (hs.empty()) throw Error("EmptyInput", "concurrent() of nothing");
    std::vector<Vec<T>> rows;
    for (const auto& h : hs) rows.push_back(h.c);
    return stacked_rank(rows) <= 2;
}

template <class T>
bool coaxial(const std::vector<ProjHyperplane<T>>& hs) { return concurrent(hs); }

template <class T>
bool collinear(const std::vector<ProjPoint<T>>& ps)
{
    if (ps.empty()) throw Error("EmptyInput", "collinear() of nothing");
    std::vector<Vec<T>> rows;
    for (const auto& p : ps) rows.push_back(p.c);
    return stacked_rank(rows) <= 2;
}

/// Common point of several hyperplanes, if their span leaves exactly a point.
template <class T>
std::optional<ProjPoint<T>> common_point(const std::vector<ProjHyperplane<T>>& hs)
{
    std::vector<Vec<T>> rows;
    for (const auto& h : hs) rows.push_back(h.c);
    auto ns = nullspace(Matrix<T>::from_rows(rows));
    if (ns.size() != 1) return std::nullopt;
    return ProjPoint<T>{normalize_projective(ns[0])};
}

template <class T>
std::optional<ProjHyperplane<T>> common_hyperplane(const std::vector<ProjPoint<T>>& ps)
{
    std::vector<Vec<T>> rows;
    for (const auto& p : ps) rows.push_back(p.c);
    auto ns = nullspace(Matrix<T>::from_rows(rows));
    if (ns.size() != 1) return std::nullopt;
    return ProjHyperplane<T>{normalize_projective(ns[0])};
}

// ---- lines in space (Plücker) ----

/// Primal coordinates (p01, p02, p03, p12, p13, p23) with p_ij = P_i Q_j − P_j Q_i.
template <class T>
struct Line3D {
    Vec<T> p;

    static constexpr int I[6] = {0, 0, 0, 1, 1, 2};
    static constexpr int J[6] = {1, 2, 3, 2, 3, 3};

    static Line3D join(const ProjPoint<T>& a, const ProjPoint<T>& b)
    {
        Line3D l;
        l.p.resize(6);
        for (int k = 0; k < 6; ++k) l.p[k] = a.c[I[k]] * b.c[J[k]] - a.c[J[k]] * b.c[I[k]];
        if (l.degenerate(vec_scale(a.c) * vec_scale(b.c))) throw Error("CoincidentArguments", "join of equal points");
        return l;
    }

    static Line3D meet(const ProjHyperplane<T>& a, const ProjHyperplane<T>& b)
    {
        Vec<T> pi(6);
        for (int k = 0; k < 6; ++k) pi[k] = a.c[I[k]] * b.c[J[k]] - a.c[J[k]] * b.c[I[k]];
        // Hodge star: primal p_ij = dual π_kl with (i,j,k,l) an even permutation
        Line3D l;
        l.p = {pi[5], -pi[4], pi[3], pi[2], -pi[1], pi[0]};
        if (l.degenerate(vec_scale(a.c) * vec_scale(b.c))) throw Error("CoincidentArguments", "meet of equal planes");
        return l;
    }

    bool degenerate(double scale) const
    {
        if constexpr (scalar_traits<T>::exact) return vec_is_zero(p);
        else return vec_scale(p) <= tolerance() * scale;
    }

    T plucker_relation() const { return p[0] * p[5] - p[1] * p[4] + p[2] * p[3]; }

    /// Dual coordinates, same index order as p.
    Vec<T> dual() const { return {p[5], -p[4], p[3], p[2], -p[1], p[0]}; }

    static Matrix<T> skew(const Vec<T>& v)
    {
        Matrix<T> m(4, 4);
        for (int k = 0; k < 6; ++k) {
            m(I[k], J[k]) = v[k];
            m(J[k], I[k]) = -v[k];
        }
        return m;
    }

    // L·u = P(Q·u) − Q(P·u): zero iff the plane u contains the line
    bool in_plane(const ProjHyperplane<T>& u) const
    {
        Vec<T> r = skew(p) * u.c;
        double s = vec_scale(p) * vec_scale(u.c);
        for (const auto& x : r)
            if (!scalar_traits<T>::negligible(x, s)) return false;
        return true;
    }

    bool through(const ProjPoint<T>& x) const
    {
        Vec<T> r = skew(dual()) * x.c;
        double s = vec_scale(p) * vec_scale(x.c);
        for (const auto& v : r)
            if (!scalar_traits<T>::negligible(v, s)) return false;
        return true;
    }

    /// Two points spanning the line.
    std::vector<ProjPoint<T>> points() const
    {
        std::vector<ProjPoint<T>> out;
        for (const auto& v : nullspace(skew(dual()))) out.push_back({normalize_projective(v)});
        return out;
    }
    /// Two planes through the line.
    std::vector<ProjHyperplane<T>> planes() const
    {
        std::vector<ProjHyperplane<T>> out;
        for (const auto& v : nullspace(skew(p))) out.push_back({normalize_projective(v)});
        return out;
    }

    friend bool operator==(const Line3D& a, const Line3D& b) { return proj_equal(a.p, b.p); }
};

/// Lines of space through one point (all pairwise coplanar and not all in one plane
/// is not required): the union of their plane spans has rank ≤ 3.
template <class T>
bool lines_concurrent(const std::vector<Line3D<T>>& ls)
{
    std::vector<Vec<T>> rows;
    for (const auto& l : ls)
        for (const auto& h : l.planes()) rows.push_back(h.c);
    return stacked_rank(rows) <= 3;
}

template <class T>
bool lines_coplanar(const std::vector<Line3D<T>>& ls)
{
    std::vector<Vec<T>> rows;
    for (const auto& l : ls)
        for (const auto& q : l.points()) rows.push_back(q.c);
    return stacked_rank(rows) <= 3;
}

template <class T>
std::optional<ProjPoint<T>> lines_common_point(const std::vector<Line3D<T>>& ls)
{
    std::vector<ProjHyperplane<T>> hs;
    for (const auto& l : ls)
        for (const auto& h : l.planes()) hs.push_back(h);
    return common_point(hs);
}

template <class T>
std::optional<ProjHyperplane<T>> lines_common_plane(const std::vector<Line3D<T>>& ls)
{
    std::vector<ProjPoint<T>> ps;
    for (const auto& l : ls)
        for (const auto& q : l.points()) ps.push_back(q);
    return common_hyperplane(ps);
}

// ---- complete conics / quadrics ----

template <class T>
struct Complete {
    SymMatrix<T> primal;
    SymMatrix<T> dual;
    int order() const { return primal.order(); }
};

template <class T>
using CompleteConic = Complete<T>;
template <class T>
using CompleteQuadric = Complete<T>;

template <class T>
Complete<T> complete_from_primal(const SymMatrix<T>& a)
{
    if (a.is_zero()) throw Error("ZeroMatrix", "primal matrix is zero");
    SymMatrix<T> d = adjugate(a);
    if (d.is_zero() || (!scalar_traits<T>::exact && d.max_abs() <= tolerance() * std::pow(a.max_abs(), a.order() - 1)))
        throw Error("NeedsDualPartner", "primal of rank <= order-2 does not determine its dual");
    return {a, d};
}

/// Checks primal·dual ∝ identity for a caller-supplied partner.
template <class T>
bool complete_pair_valid(const SymMatrix<T>& a, const SymMatrix<T>& d)
{
    if (a.is_zero() && d.is_zero()) return false;
    Matrix<T> prod = a.dense() * d.dense();
    int k = a.order();
    double s = a.max_abs() * d.max_abs();
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) {
            if (i != j && !scalar_traits<T>::negligible(prod(i, j), s)) return false;
            if (i == j && !scalar_traits<T>::negligible(prod(i, i) - prod(0, 0), s)) return false;
        }
    return true;
}

template <class T>
ProjHyperplane<T> polar(const SymMatrix<T>& a, const ProjPoint<T>& p)
{
    Vec<T> h = a * p.c;
    if (scalar_traits<T>::exact ? vec_is_zero(h) : vec_scale(h) <= tolerance() * a.max_abs() * vec_scale(p.c))
        throw Error("DegenerateSetMember", "point lies in the kernel of the polarity");
    return {h};
}

template <class T>
ProjHyperplane<T> polar(const Complete<T>& c, const ProjPoint<T>& p) { return polar(c.primal, p); }

/// Pole of a hyperplane: the point whose polar it is (dual matrix applied).
template <class T>
ProjPoint<T> pole(const Complete<T>& c, const ProjHyperplane<T>& h)
{
    Vec<T> v = c.dual * h.c;
    if (vec_is_zero(v)) throw Error("DegenerateSetMember", "hyperplane in the kernel of the dual");
    return {v};
}

// ---- pencils and contact ----

struct PencilDegeneracy {
    bool infinite = false; // the member B itself
    bool exact = true; // t known exactly
    Rational t;
    double approx = 0;
    Rational lo, hi;
    int rank = -1; // -1 when the member is only known approximately
};

template <class T>
SymMatrix<T> pencil_member(const SymMatrix<T>& a, const SymMatrix<T>& b, const T& t)
{
    return a + t * b;
}

template <class T>
std::vector<PencilDegeneracy> pencil_degenerates(const SymMatrix<T>& a, const SymMatrix<T>& b)
{
    if (proj_equal(a, b)) throw Error("ProjectivelyEqual", "pencil of a matrix with itself");
    UniPoly d = pencil_det(a, b);
    if (d.is_zero()) throw Error("SingularPencil", "every member of the pencil is degenerate");
    std::vector<PencilDegeneracy> out;
    for (const auto& r : real_roots(d)) {
        PencilDegeneracy g;
        g.exact = r.rational;
        g.t = r.rational ? r.value : Rational(r.approx);
        g.lo = r.lo;
        g.hi = r.hi;
        g.approx = r.approx;
        if (r.rational || !scalar_traits<T>::exact)
            g.rank = rank(pencil_member(a, b, scalar_traits<T>::from_rational(g.t)));
        out.push_back(g);
    }
    if (d.degree() < a.order()) {
        PencilDegeneracy g;
        g.infinite = true;
        g.rank = rank(b);
        out.push_back(g);
    }
    return out;
}

template <class T>
struct DoubleContact {
    HomogeneousPoly<T> chord; // primitive, first nonzero coefficient positive
    T t = T(0); // A + t·B = sign·c·chord² (c > 0); unused when infinite
    bool infinite = false; // B itself is the double member
    int sign = 1;
};

namespace detail {

template <class T>
std::optional<DoubleContact<T>> rank_one_at(const SymMatrix<T>& m, const T& t, bool infinite)
{
    if (rank(m) != 1) return std::nullopt;
    auto sl = extract_double_line(sym_to_poly(m));
    DoubleContact<T> dc;
    dc.chord = sl.line;
    dc.sign = sl.sign;
    dc.t = t;
    dc.infinite = infinite;
    return dc;
}

} // namespace detail

/// Rank-1 member of span{A, B}: the chord of contact (plane of the contact ring for m=4).
template <class T>
DoubleContact<T> double_contact(const SymMatrix<T>& a, const SymMatrix<T>& b)
{
    if (proj_equal(a, b)) throw Error("ProjectivelyEqual", "conics coincide");
    if (auto dc = detail::rank_one_at(a - b, T(-1), false)) return *dc;
    bool irrational = false;
    if constexpr (scalar_traits<T>::exact) {
        UniPoly g = rank_one_locus(a, b);
        if (g.degree() >= 1) {
            std::optional<DoubleContact<T>> at_zero;
            for (const auto& r : real_roots(g)) {
                if (!r.rational) {
                    irrational = true;
                    continue;
                }
                auto dc = detail::rank_one_at(pencil_member(a, b, r.value), r.value, false);
                if (!dc) continue;
                if (sgn(r.value) != 0) return *dc;
                at_zero = dc;
            }
            if (at_zero) return *at_zero;
        }
    } else {
        UniPoly d = pencil_det(a, b);
        std::vector<double> cands;
        for (const auto& r : real_roots(d)) cands.push_back(r.approx);
        for (const auto& r : real_roots(d.derivative())) cands.push_back(r.approx);
        std::optional<DoubleContact<T>> at_zero;
        for (double t : cands) {
            auto dc = detail::rank_one_at(pencil_member(a, b, t), t, false);
            if (!dc) continue;
            if (std::fabs(t) > tolerance()) return *dc;
            at_zero = dc;
        }
        if (at_zero) return *at_zero;
    }
    if (auto dc = detail::rank_one_at(b, T(0), true)) return *dc;
    if (irrational) throw Error("IrrationalContact", "rank-1 member exists only at an irrational parameter");
    throw Error("NoContact", "pencil has no rank-1 member");
}

template <class T>
DoubleContact<T> double_contact(const Complete<T>& a, const Complete<T>& b)
{
    return double_contact(a.primal, b.primal);
}

template <class T>
bool in_double_contact(const SymMatrix<T>& a, const SymMatrix<T>& b)
{
    try {
        double_contact(a, b);
        return true;
    } catch (const Error& e) {
        if (e.kind() == "NoContact" || e.kind() == "IrrationalContact") return false;
        throw;
    }
}

template <class T>
struct RingContact {
    ProjHyperplane<T> plane;
    std::optional<ProjPoint<T>> point; // polar of the ring plane
    T t = T(0);
    bool infinite = false;
    int sign = 1;
    bool x_contact = false; // ring point lies on the ring plane
};

template <class T>
RingContact<T> ring_contact(const SymMatrix<T>& a, const SymMatrix<T>& b)
{
    auto dc = double_contact(a, b);
    RingContact<T> rc;
    rc.plane = ProjHyperplane<T>::from_poly(dc.chord);
    rc.t = dc.t;
    rc.infinite = dc.infinite;
    rc.sign = dc.sign;
    // any regular member of the pencil induces the same polarity on the ring plane
    for (int s : {0, 1, -1, 2, -2, 3}) {
        SymMatrix<T> m = s == 0 ? a : a + from_int<T>(s) * b;
        if (is_zero(det(m)) || (!scalar_traits<T>::exact && std::fabs(scalar_traits<T>::to_double(det(m))) <= tolerance() * std::pow(m.max_abs(), m.order()))) continue;
        Vec<T> pt = adjugate(m) * rc.plane.c;
        if (vec_is_zero(pt)) continue;
        rc.point = ProjPoint<T>{normalize_projective(pt)};
        break;
    }
    if (!rc.point) {
        Vec<T> pt = adjugate(a) * rc.plane.c;
        if (!vec_is_zero(pt)) rc.point = ProjPoint<T>{normalize_projective(pt)};
    }
    rc.x_contact = rc.point && incident(*rc.point, rc.plane);
    return rc;
}

} // namespace penrose
