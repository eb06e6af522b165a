#pragma once

#include "seven.hpp"

#include <array>
#include <cmath>
#include <deque>

namespace penrose {

/// Base plane spanned by P1..P3, apex O off it, and o given in the dual basis of (O,P1,P2,P3).
template <class T>
struct ExtrusionFrame {
    Vec<T> O, P1, P2, P3;
    Vec<T> u; // [u0:u1:u2:u3]

    Matrix<T> basis() const { return Matrix<T>::from_cols({O, P1, P2, P3}); }
    Matrix<T> plane_basis() const { return Matrix<T>::from_cols({P1, P2, P3}); }

    void validate() const
    {
        if (O.size() != 4 || P1.size() != 4 || P2.size() != 4 || P3.size() != 4 || u.size() != 4)
            throw Error("SizeMismatch", "frame vectors must have 4 entries");
        if (is_zero(det(basis()))) throw Error("DegenerateFrame", "O lies in the span of the P_i");
    }

    /// o in world coordinates.
    ProjHyperplane<T> o() const { return {inverse(basis()).transpose() * u}; }
    /// The base plane in world coordinates.
    ProjHyperplane<T> base_plane() const { return {inverse(basis()).transpose() * Vec<T>{T(1), T(0), T(0), T(0)}}; }

    static ExtrusionFrame standard(Vec<T> u = {T(1), T(0), T(0), T(0)})
    {
        // base plane x0 = 0 spanned by e1,e2,e3; apex e0
        return {{T(1), T(0), T(0), T(0)}, {T(0), T(1), T(0), T(0)}, {T(0), T(0), T(1), T(0)}, {T(0), T(0), T(0), T(1)}, u};
    }
};

template <class T>
SymMatrix<T> extrude_conic(const SymMatrix<T>& a, const ExtrusionFrame<T>& fr)
{
    if (a.order() != 3) throw Error("SizeMismatch", "extrusion takes a conic");
    if (a.is_zero()) throw Error("ZeroMatrix", "cannot extrude the zero conic");
    fr.validate();
    SymMatrix<T> local(4);
    for (int i = 0; i < 4; ++i) local.set(0, i, fr.u[i]);
    for (int i = 0; i < 3; ++i)
        for (int j = i; j < 3; ++j) local.set(i + 1, j + 1, a(i, j));
    return local.congruence(inverse(fr.basis()));
}

template <class T>
struct ExtrudedSeven {
    SevenConfig<T> config;
    std::array<T, 8> scale{}; // conic s was multiplied by scale[s] before extrusion
};

/// Rescales the seven so that differences along edges are exactly rank 1, then extrudes.
template <class T>
ExtrudedSeven<T> extrude_seven(const SevenConfig<T>& c, const ExtrusionFrame<T>& fr)
{
    if (c.m != 3) throw Error("SizeMismatch", "extrude_seven takes conics");
    for (IndexSet s = 0; s < kEighth; ++s) c.at(s);
    fr.validate();
    auto edges = cube_edges();
    std::array<std::optional<T>, 8> lam;
    lam[0] = T(1);
    std::deque<IndexSet> queue{0};
    auto pair_scale = [&](IndexSet a, IndexSet b) -> T {
        auto dc = double_contact(c.at(a).primal, c.at(b).primal);
        if (dc.infinite || is_zero(dc.t))
            throw Error("ScalingInconsistent", "edge " + set_label(a) + "-" + set_label(b) + " has a degenerate end as its rank-1 member");
        return -dc.t; // a − (−t)·b has rank 1
    };
    while (!queue.empty()) {
        IndexSet s = queue.front();
        queue.pop_front();
        for (const auto& e : edges) {
            IndexSet other;
            if (e.from == s) other = e.to();
            else if (e.to() == s) other = e.from;
            else continue;
            if (other == kEighth || lam[other]) continue;
            try {
                lam[other] = *lam[s] * pair_scale(s, other);
            } catch (const Error& err) {
                if (err.kind() == "ScalingInconsistent") throw;
                throw Error("ScalingInconsistent", "edge " + set_label(s) + "-" + set_label(other) + ": " + err.kind());
            }
            queue.push_back(other);
        }
    }
    // the redundant edges must agree
    for (const auto& e : edges) {
        if (e.to() == kEighth) continue;
        SymMatrix<T> diff = *lam[e.from] * c.at(e.from).primal - *lam[e.to()] * c.at(e.to()).primal;
        if (rank(diff) != 1)
            throw Error("ScalingInconsistent", "edge " + set_label(e.from) + "-" + set_label(e.to()) + " is not rank 1 after scaling");
    }
    ExtrudedSeven<T> out;
    out.config.m = 4;
    for (IndexSet s = 0; s < kEighth; ++s) {
        out.scale[s] = *lam[s];
        out.config.set(s, extrude_conic(*lam[s] * c.at(s).primal, fr));
    }
    return out;
}

/// Canonical exact basis of a plane: the unit-vector completions of its reduced row form.
template <class T>
Matrix<T> canonical_plane_basis(const ProjHyperplane<T>& h)
{
    if (vec_is_zero(h.c)) throw Error("ZeroVector", "zero plane");
    Matrix<T> row = Matrix<T>::from_rows({h.c});
    return Matrix<T>::from_cols(nullspace(row));
}

template <class T>
struct SliceResult {
    Complete<T> conic; // zero dual when tangent and no partner can be formed
    bool tangent = false;
};

template <class T>
SliceResult<T> slice_quadric(const Complete<T>& q, const Matrix<T>& basis)
{
    if (basis.rows() != 4 || basis.cols() != 3) throw Error("SizeMismatch", "slice basis must be 4x3");
    if (rank(basis) != 3) throw Error("DegenerateBasis", "slice basis does not span a plane");
    SliceResult<T> r;
    r.conic.primal = q.primal.congruence(basis);
    SymMatrix<T> d = adjugate(r.conic.primal);
    r.tangent = rank(r.conic.primal) < 3;
    r.conic.dual = d.is_zero() ? SymMatrix<T>(3) : d;
    return r;
}

/// Plane-wise form of the conic cut from q by a plane: B·adj(BᵀQB)·Bᵀ.
template <class T>
SymMatrix<T> section_dual(const SymMatrix<T>& q, const ProjHyperplane<T>& plane)
{
    Matrix<T> b = canonical_plane_basis(plane);
    SymMatrix<T> a = q.congruence(b);
    return adjugate(a).congruence(b.transpose());
}

template <class T>
struct SlicedCube {
    SevenConfig<T> config;
    std::array<bool, 8> tangent{};
    Report report;
};

template <class T>
SlicedCube<T> slice_cube(const SevenConfig<T>& cube, const Matrix<T>& basis)
{
    if (cube.m != 4) throw Error("SizeMismatch", "slice_cube takes quadrics");
    SlicedCube<T> out;
    out.config.m = 3;
    for (IndexSet s = 0; s <= kEighth; ++s) {
        if (!cube.has(s)) continue;
        auto r = slice_quadric(cube.at(s), basis);
        out.config.v[s] = r.conic;
        out.tangent[s] = r.tangent;
        if (r.tangent) out.report.add({"slice " + set_label(s), "tangent plane", Status::Flag, "rank < 3", {}});
    }
    out.report.append(validate_seven(out.config));
    return out;
}

// ---- ring planes, axes and spears of a quadric cube ----

template <class T>
struct FaceStructure {
    std::vector<Edge> edges;
    std::vector<Face> faces;
    std::vector<std::optional<ProjHyperplane<T>>> ring_plane; // per edge
    std::vector<std::optional<ProjPoint<T>>> ring_point;
    std::vector<std::optional<Line3D<T>>> axis; // per face
    std::vector<std::optional<Line3D<T>>> spear;
    std::optional<ProjPoint<T>> O;
    std::optional<ProjHyperplane<T>> o;
    std::optional<Line3D<T>> Omega; // single common axis
    std::optional<Line3D<T>> omega; // single common spear
    // Gram determinant of three unit ring planes: 0 when every axis is the same
    // line, 1 for orthogonal planes. Meaningful as a margin in float mode.
    double axis_margin = 0;
    std::vector<std::string> notes;

    int edge_index(IndexSet from, int k) const
    {
        for (std::size_t i = 0; i < edges.size(); ++i)
            if (edges[i].from == from && edges[i].k == k) return static_cast<int>(i);
        return -1;
    }
    /// Axis of the face through T^n and the eighth vertex: the two ring planes leaving T^n.
    std::optional<Line3D<T>> axis_at_eighth(int n) const
    {
        for (std::size_t i = 0; i < faces.size(); ++i)
            if (faces[i].base == (1u << (n - 1))) return axis[i];
        return std::nullopt;
    }
    std::optional<Line3D<T>> spear_at_eighth(int n) const
    {
        for (std::size_t i = 0; i < faces.size(); ++i)
            if (faces[i].base == (1u << (n - 1))) return spear[i];
        return std::nullopt;
    }
};

namespace detail {

template <class T>
std::vector<Vec<T>> independent(const std::vector<Vec<T>>& rows)
{
    std::vector<Vec<T>> out;
    for (const auto& r : rows) {
        auto trial = out;
        trial.push_back(r);
        if (stacked_rank(trial) > static_cast<int>(out.size())) out.push_back(r);
    }
    return out;
}

template <class T>
double gram3(const Vec<T>& a, const Vec<T>& b, const Vec<T>& c)
{
    std::array<std::vector<double>, 3> u;
    const Vec<T>* v[3] = {&a, &b, &c};
    for (int i = 0; i < 3; ++i) {
        double n = 0;
        for (const auto& x : *v[i]) {
            double d = scalar_traits<T>::to_double(x);
            u[i].push_back(d);
            n += d * d;
        }
        for (auto& d : u[i]) d /= std::sqrt(n);
    }
    double g[3][3];
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            g[i][j] = 0;
            for (std::size_t k = 0; k < u[i].size(); ++k) g[i][j] += u[i][k] * u[j][k];
        }
    return g[0][0] * (g[1][1] * g[2][2] - g[1][2] * g[2][1]) - g[0][1] * (g[1][0] * g[2][2] - g[1][2] * g[2][0]) +
           g[0][2] * (g[1][0] * g[2][1] - g[1][1] * g[2][0]);
}

} // namespace detail

template <class T>
FaceStructure<T> face_structure(const SevenConfig<T>& c)
{
    if (c.m != 4) throw Error("SizeMismatch", "face structure is defined for quadrics");
    FaceStructure<T> fs;
    fs.edges = cube_edges();
    fs.faces = cube_faces();
    fs.ring_plane.resize(fs.edges.size());
    fs.ring_point.resize(fs.edges.size());
    std::vector<Vec<T>> planes, points;
    for (std::size_t i = 0; i < fs.edges.size(); ++i) {
        const auto& e = fs.edges[i];
        if (!c.has(e.from) || !c.has(e.to())) continue;
        try {
            auto rc = ring_contact(c.at(e.from).primal, c.at(e.to()).primal);
            fs.ring_plane[i] = ProjHyperplane<T>{normalize_projective(rc.plane.c)};
            planes.push_back(fs.ring_plane[i]->c);
            if (rc.point) {
                fs.ring_point[i] = rc.point;
                points.push_back(rc.point->c);
            }
        } catch (const Error& err) {
            fs.notes.push_back("edge " + set_label(e.from) + "-" + set_label(e.to()) + ": " + err.kind());
        }
    }
    auto on_face = [&](const Face& f, const Edge& e) {
        auto vs = face_vertices(f);
        return std::find(vs.begin(), vs.end(), e.from) != vs.end() && std::find(vs.begin(), vs.end(), e.to()) != vs.end();
    };
    fs.axis.resize(fs.faces.size());
    fs.spear.resize(fs.faces.size());
    for (std::size_t fi = 0; fi < fs.faces.size(); ++fi) {
        std::vector<Vec<T>> hp, pt;
        for (std::size_t i = 0; i < fs.edges.size(); ++i) {
            if (!on_face(fs.faces[fi], fs.edges[i])) continue;
            if (fs.ring_plane[i]) hp.push_back(fs.ring_plane[i]->c);
            if (fs.ring_point[i]) pt.push_back(fs.ring_point[i]->c);
        }
        std::string label = set_label(fs.faces[fi].base) + "+" + std::to_string(fs.faces[fi].j) + std::to_string(fs.faces[fi].k);
        auto hi = detail::independent(hp);
        if (hi.size() == 2) fs.axis[fi] = Line3D<T>::meet({hi[0]}, {hi[1]});
        else if (!hp.empty()) fs.notes.push_back("face " + label + (hi.size() < 2 ? ": ring planes coincide" : ": ring planes not coaxial"));
        auto pi = detail::independent(pt);
        if (pi.size() == 2) fs.spear[fi] = Line3D<T>::join({pi[0]}, {pi[1]});
        else if (!pt.empty()) fs.notes.push_back("face " + label + (pi.size() < 2 ? ": ring points coincide" : ": ring points not collinear"));
    }
    int rp = stacked_rank(planes);
    if (rp >= 2) {
        auto hi = detail::independent(planes);
        for (const auto& h : planes) fs.axis_margin = std::max(fs.axis_margin, detail::gram3(hi[0], hi[1], h));
        if constexpr (!scalar_traits<T>::exact)
            fs.notes.push_back(std::string(rp == 3 ? "axes meet in O" : "axes coincide") + ", margin " + std::to_string(fs.axis_margin));
    }
    if (rp == 3) fs.O = ProjPoint<T>{normalize_projective(nullspace(Matrix<T>::from_rows(planes))[0])};
    else if (rp == 2) {
        auto hi = detail::independent(planes);
        fs.Omega = Line3D<T>::meet({hi[0]}, {hi[1]});
    } else fs.notes.push_back("ring planes span rank " + std::to_string(rp));
    int rq = stacked_rank(points);
    if (rq == 3) fs.o = ProjHyperplane<T>{normalize_projective(nullspace(Matrix<T>::from_rows(points))[0])};
    else if (rq == 2) {
        auto pi = detail::independent(points);
        fs.omega = Line3D<T>::join({pi[0]}, {pi[1]});
    } else fs.notes.push_back("ring points span rank " + std::to_string(rq));
    return fs;
}

/// O and o polar with respect to every assigned quadric.
template <class T>
bool polar_pair_everywhere(const SevenConfig<T>& c, const ProjPoint<T>& O, const ProjHyperplane<T>& o)
{
    for (IndexSet s = 0; s <= kEighth; ++s) {
        if (!c.has(s)) continue;
        Vec<T> h = c.at(s).primal * O.c;
        if (!proj_equal(h, o.c)) return false;
    }
    return true;
}

} // namespace penrose
