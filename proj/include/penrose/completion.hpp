#pragma once

#include "lift3d.hpp"

namespace penrose {

namespace detail {

/// r with a = r·b, if any.
template <class T>
std::optional<T> matrix_ratio(const SymMatrix<T>& a, const SymMatrix<T>& b)
{
    int k = a.order();
    int bi = -1, bj = -1;
    double best = 0;
    for (int i = 0; i < k; ++i)
        for (int j = i; j < k; ++j) {
            double v = std::fabs(scalar_traits<T>::to_double(b(i, j)));
            if (v > best) { best = v; bi = i; bj = j; }
        }
    if (bi < 0) return std::nullopt;
    T r = a(bi, bj) / b(bi, bj);
    SymMatrix<T> res = a - r * b;
    double s = std::max(a.max_abs(), 1e-300);
    for (int i = 0; i < k; ++i)
        for (int j = i; j < k; ++j)
            if (!scalar_traits<T>::negligible(res(i, j), s)) return std::nullopt;
    return r;
}

template <class T>
Matrix<double> to_double(const Matrix<T>& m)
{
    Matrix<double> out(m.rows(), m.cols());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) out(i, j) = scalar_traits<T>::to_double(m(i, j));
    return out;
}

template <class T>
Vec<double> to_double(const Vec<T>& v)
{
    Vec<double> out;
    for (const auto& x : v) out.push_back(scalar_traits<T>::to_double(x));
    return out;
}

/// Largest 2×2 minor relative to the squared entry scale: zero for rank ≤ 1.
inline double rank_one_residual(const SymMatrix<double>& m)
{
    double s = m.max_abs();
    if (s == 0) return 0;
    double r = 0;
    int k = m.order();
    for (int i1 = 0; i1 < k; ++i1)
        for (int i2 = i1 + 1; i2 < k; ++i2)
            for (int j1 = 0; j1 < k; ++j1)
                for (int j2 = j1 + 1; j2 < k; ++j2)
                    r = std::max(r, std::fabs(m(i1, j1) * m(i2, j2) - m(i1, j2) * m(i2, j1)));
    return r / (s * s);
}

} // namespace detail

// ---- edge scale and parameter recovery ----

template <class T>
struct EdgeScale {
    SymMatrix<T> scaled; // t·T
    HomogeneousPoly<T> chord;
    T t = T(0);
    bool infinite = false; // T itself is the double line; scaled is T
};

/// t with S0 − t·T of rank 1.
template <class T>
EdgeScale<T> normalize_edge_scale(const Complete<T>& s0, const Complete<T>& t)
{
    auto dc = double_contact(s0.primal, t.primal);
    EdgeScale<T> e;
    e.chord = dc.chord;
    e.infinite = dc.infinite;
    if (dc.infinite) {
        e.scaled = t.primal;
        return e;
    }
    e.t = -dc.t;
    e.scaled = e.t * t.primal;
    return e;
}

template <class T>
struct RecoveredParams {
    PenroseParams<T> params;
    std::array<T, 8> scale{}; // lattice vertex = scale[s]·input primal
    std::vector<std::string> notes;
};

namespace detail {

// S0 + t·T = c·ℓ² with ℓ the primitive chord; returns c.
template <class T>
T square_factor(const SymMatrix<T>& m, const HomogeneousPoly<T>& l)
{
    auto c = l.linear_coeffs();
    int k = 0;
    double best = -1;
    for (int i = 0; i < static_cast<int>(c.size()); ++i) {
        double v = std::fabs(scalar_traits<T>::to_double(c[i]));
        if (v > best) { best = v; k = i; }
    }
    return m(k, k) / (c[k] * c[k]);
}

} // namespace detail

template <class T>
RecoveredParams<T> recover_params(const SevenConfig<T>& seven)
{
    using Poly = HomogeneousPoly<T>;
    for (IndexSet s = 0; s < kEighth; ++s) seven.at(s);
    int m = seven.m;
    RecoveredParams<T> out;
    auto& q = out.params;
    q = PenroseParams<T>::blank(m, 3);
    const SymMatrix<T>& s0 = seven.at(0).primal;
    q.S0 = sym_to_poly(s0);

    for (int j = 1; j <= 3; ++j) {
        IndexSet tj = 1u << (j - 1);
        auto dc = double_contact(s0, seven.at(tj).primal);
        q.p[j - 1] = dc.chord;
        if (dc.infinite) {
            q.d[j - 1] = T(0);
        } else {
            if (is_zero(dc.t)) throw Error("DegenerateBasis", "S0 is the only rank-1 member on edge " + set_label(tj));
            T c = detail::square_factor(s0 + dc.t * seven.at(tj).primal, dc.chord);
            q.d[j - 1] = T(1) / c;
        }
    }
    for (int j = 1; j <= 3; ++j)
        for (int k = j + 1; k <= 3; ++k)
            if (proj_equal(q.line(j), q.line(k)))
                throw Error("DegenerateBasis", "contact chords " + std::to_string(j) + " and " + std::to_string(k) + " coincide");

    // λ·G + a²·S0 − 2a·p_j p_k = d_j d_k S0 − d_k p_j² − d_j p_k², linear in (λ, a², a)
    for (int j = 1; j <= 3; ++j)
        for (int k = j + 1; k <= 3; ++k) {
            IndexSet s = with(1u << (j - 1), k);
            const Poly& pj = q.line(j);
            const Poly& pk = q.line(k);
            Poly g = sym_to_poly(seven.at(s).primal);
            Poly rhs = T(q.dj(j) * q.dj(k)) * q.S0 - q.dj(k) * (pj * pj) - q.dj(j) * (pk * pk);
            Poly cross = T(-2) * (pj * pk);
            std::vector<Vec<T>> cols{poly_coeff_vector(g), poly_coeff_vector(q.S0), poly_coeff_vector(cross)};
            bool homogeneous = poly_negligible(rhs, 1.0 + g.max_abs());
            if (!homogeneous) cols.push_back(poly_coeff_vector(T(-1) * rhs));
            auto ns = nullspace(Matrix<T>::from_cols(cols));
            std::string label = "face " + std::to_string(j) + std::to_string(k);
            if (ns.empty()) throw Error("InconsistentFace", label + ": S" + set_label(s) + " is not in the predicted family");
            if (ns.size() > 1) throw Error("DegenerateBasis", label + ": face parameters are not determined");
            Vec<T> x = ns[0];
            T lambda, b, a;
            if (homogeneous) {
                if (is_zero(x[2])) throw Error("InconsistentFace", label + ": zero face parameter with vanishing d");
                T sc = x[1] / (x[2] * x[2]);
                lambda = sc * x[0];
                b = sc * x[1];
                a = sc * x[2];
            } else {
                if (is_zero(x[3])) throw Error("InconsistentFace", label + ": S" + set_label(s) + " is not in the predicted family");
                lambda = x[0] / x[3];
                b = x[1] / x[3];
                a = x[2] / x[3];
            }
            if (!scalar_traits<T>::negligible(b - a * a, 1.0 + std::fabs(scalar_traits<T>::to_double(b))))
                throw Error("InconsistentFace", label + ": coefficient of S0 does not match the squared face parameter");
            if (is_zero(lambda)) throw Error("InconsistentFace", label + ": zero scale");
            q.set_a(j, k, a);
            out.scale[s] = lambda;
            if (is_zero(a)) out.notes.push_back(label + ": a = 0");
        }

    auto L = build_lattice(q, false);
    for (IndexSet s = 0; s < kEighth; ++s) {
        SymMatrix<T> built = L.S[s].is_zero() ? SymMatrix<T>(m) : poly_to_sym(L.S[s]);
        auto r = detail::matrix_ratio(built, seven.at(s).primal);
        if (!r || is_zero(*r)) throw Error("InconsistentFace", "rebuilt vertex " + set_label(s) + " does not match its input");
        out.scale[s] = *r;
    }
    return out;
}

// ---- the shared-contact family ----

/// Members are block-diag(a0·K, B) in the basis E = (Ω span | ω span).
template <class T>
struct SharedContactFamily {
    int m = 3;
    int k = 1; // dimension of the Ω span
    Matrix<T> E;
    Matrix<T> Einv;
    SymMatrix<T> K;
    std::array<SymMatrix<T>, 4> generators; // world matrices for a0, b11, b12, b22

    SymMatrix<T> member(const Vec<T>& x) const
    {
        SymMatrix<T> local(m);
        for (int i = 0; i < k; ++i)
            for (int j = i; j < k; ++j) local.set(i, j, x[0] * K(i, j));
        local.set(k, k, x[1]);
        local.set(k, k + 1, x[2]);
        local.set(k + 1, k + 1, x[3]);
        return local.congruence(Einv);
    }

    /// Family coordinates (a0, b11, b12, b22) of a world matrix; nullopt when outside the family.
    std::optional<Vec<T>> coords(const SymMatrix<T>& w) const
    {
        SymMatrix<T> l = w.congruence(E);
        double s = std::max(l.max_abs(), 1e-300);
        for (int i = 0; i < k; ++i)
            for (int j = k; j < m; ++j)
                if (!scalar_traits<T>::negligible(l(i, j), s)) return std::nullopt;
        SymMatrix<T> blk(k);
        for (int i = 0; i < k; ++i)
            for (int j = i; j < k; ++j) blk.set(i, j, l(i, j));
        T a0 = T(0);
        if (!blk.is_zero()) {
            auto r = detail::matrix_ratio(blk, K);
            if (!r) return std::nullopt;
            a0 = *r;
        }
        return Vec<T>{a0, l(k, k), l(k, k + 1), l(k + 1, k + 1)};
    }
};

/// Family of conics/quadrics sharing S0's contact elements along the span of `omega_span`.
template <class T>
SharedContactFamily<T> shared_contact_family(const SymMatrix<T>& s0, const std::vector<Vec<T>>& omega_span)
{
    SharedContactFamily<T> f;
    f.m = s0.order();
    f.k = static_cast<int>(omega_span.size());
    if (f.k != f.m - 2) throw Error("PrereqNotMet", "common element has the wrong dimension");
    std::vector<Vec<T>> rows;
    for (const auto& u : omega_span) rows.push_back(s0 * u);
    auto polar_span = nullspace(Matrix<T>::from_rows(rows));
    if (static_cast<int>(polar_span.size()) != 2) throw Error("IncidentPolarPair", "polar of the common element is degenerate");
    std::vector<Vec<T>> cols = omega_span;
    cols.insert(cols.end(), polar_span.begin(), polar_span.end());
    f.E = Matrix<T>::from_cols(cols);
    if (scalar_traits<T>::exact ? is_zero(det(f.E)) : rank(f.E) < f.m)
        throw Error("IncidentPolarPair", "common element meets its polar");
    f.Einv = inverse(f.E);
    SymMatrix<T> l = s0.congruence(f.E);
    f.K = SymMatrix<T>(f.k);
    for (int i = 0; i < f.k; ++i)
        for (int j = i; j < f.k; ++j) f.K.set(i, j, l(i, j));
    if (f.K.is_zero()) throw Error("IncidentPolarPair", "common element lies on S0");
    for (int g = 0; g < 4; ++g) {
        Vec<T> x(4, T(0));
        x[g] = T(1);
        f.generators[g] = f.member(x);
    }
    return f;
}

/// Common point (2D) or common axis (3D) of all ring planes, as a spanning set; empty if none.
template <class T>
std::vector<Vec<T>> common_contact_element(const std::vector<HomogeneousPoly<T>>& chords, int m)
{
    std::vector<Vec<T>> rows;
    for (const auto& c : chords)
        if (!c.is_zero()) rows.push_back(c.linear_coeffs());
    if (rows.empty() || stacked_rank(rows) != 2) return {};
    auto ns = nullspace(Matrix<T>::from_rows(rows));
    if (static_cast<int>(ns.size()) != m - 2) return {};
    for (auto& v : ns) v = normalize_projective(v);
    return ns;
}

template <class T>
struct SecondCompletion {
    bool exact = false;
    std::optional<Complete<T>> value; // when exact
    Complete<double> approx;
    double residual = 0; // largest normalized 2×2 minor over the three contact pencils
    std::vector<std::string> notes;
};

/// The completion sharing the contact elements that the determinant formula does not give.
/// `det_t0` is the determinant completion, used to discard the stable root.
template <class T>
SecondCompletion<T> second_completion(const SevenConfig<T>& seven, const SharedContactFamily<T>& fam,
                                      const std::optional<SymMatrix<T>>& det_t0 = std::nullopt)
{
    using tr = scalar_traits<T>;
    std::array<Vec<T>, 3> x;
    for (int i = 1; i <= 3; ++i) {
        auto c = fam.coords(seven.at(s_vertex(i)).primal);
        if (!c) throw Error("PrereqNotMet", "S" + set_label(s_vertex(i)) + " is outside the shared-contact family");
        if (is_zero((*c)[0])) throw Error("NoSecondCompletion", "S" + set_label(s_vertex(i)) + " has no component on the common element");
        x[i - 1] = *c;
    }
    auto phi = [](const Vec<T>& v) -> T { return v[1] * v[3] - v[2] * v[2]; };
    // C_i/s0² = φ(X_B) + X0·L_i(X)
    auto Lrow = [&](const Vec<T>& s) {
        T s0 = s[0];
        return Vec<T>{phi(s) / (s0 * s0), -s[3] / s0, T(2) * s[2] / s0, -s[1] / s0};
    };
    Vec<T> l1 = Lrow(x[0]), l2 = Lrow(x[1]), l3 = Lrow(x[2]);
    Vec<T> p12(4), p13(4);
    for (int i = 0; i < 4; ++i) {
        p12[i] = l1[i] - l2[i];
        p13[i] = l1[i] - l3[i];
    }
    auto line = nullspace(Matrix<T>::from_rows({p12, p13}));
    if (line.size() != 2) throw Error("NoSecondCompletion", "the residual planes do not meet in a line");
    auto Q = [&](const Vec<T>& v) {
        T acc = phi(v);
        for (int i = 0; i < 4; ++i) acc += v[0] * l1[i] * v[i];
        return acc;
    };
    const Vec<T>& U = line[0];
    const Vec<T>& W = line[1];
    Vec<T> UW(4);
    for (int i = 0; i < 4; ++i) UW[i] = U[i] + W[i];
    T q20 = Q(U), q02 = Q(W), q11 = Q(UW) - q20 - q02;
    if (is_zero(q20) && is_zero(q02) && is_zero(q11)) throw Error("NoSecondCompletion", "the residual line lies on the cone");

    std::optional<Vec<T>> det_coords;
    if (det_t0 && !det_t0->is_zero()) det_coords = fam.coords(*det_t0);

    SecondCompletion<T> out;
    auto finish_exact = [&](const Vec<T>& v) {
        SymMatrix<T> w = fam.member(v);
        out.exact = true;
        SymMatrix<T> adj = adjugate(w);
        out.value = Complete<T>{w, adj};
        out.approx = Complete<double>{w.template cast<double>(), adj.template cast<double>()};
    };

    // roots (α:β) of q20 α² + q11 αβ + q02 β²
    std::vector<std::pair<T, T>> exact_roots;
    std::vector<std::pair<double, double>> approx_roots;
    if (is_zero(q20)) {
        exact_roots.push_back({T(1), T(0)});
        if (!is_zero(q11)) exact_roots.push_back({-q02, q11});
    } else {
        T disc = q11 * q11 - T(4) * q20 * q02;
        if (tr::sign(disc) < 0) {
            if (tr::exact || !tr::negligible(disc, tr::to_double(T(q11 * q11)) + std::fabs(tr::to_double(T(q20 * q02))))) throw Error("NoSecondCompletion", "no real completion");
            disc = T(0);
        }
        T r;
        if (tr::sqrt(disc, r)) {
            exact_roots.push_back({-q11 + r, T(2) * q20});
            exact_roots.push_back({-q11 - r, T(2) * q20});
        } else {
            double d = std::sqrt(tr::to_double(disc)), b = tr::to_double(q11), a2 = 2 * tr::to_double(q20);
            approx_roots.push_back({-b + d, a2});
            approx_roots.push_back({-b - d, a2});
            out.notes.push_back("irrational root");
        }
    }
    std::vector<Vec<T>> candidates;
    for (auto [al, be] : exact_roots) {
        Vec<T> v(4);
        for (int i = 0; i < 4; ++i) v[i] = al * U[i] + be * W[i];
        if (vec_is_zero(v) || tr::negligible(v[0], vec_scale(v))) continue; // on V
        if (det_coords && proj_equal(v, *det_coords)) {
            out.notes.push_back("determinant completion found on the residual line");
            continue;
        }
        candidates.push_back(v);
    }
    std::vector<SymMatrix<double>> approx_candidates;
    if (!approx_roots.empty()) {
        auto Ud = detail::to_double(U), Wd = detail::to_double(W);
        Matrix<double> Einv = detail::to_double(fam.Einv);
        SymMatrix<double> K = fam.K.template cast<double>();
        for (auto [al, be] : approx_roots) {
            Vec<double> v(4);
            for (int i = 0; i < 4; ++i) v[i] = al * Ud[i] + be * Wd[i];
            if (std::fabs(v[0]) <= 1e-12 * vec_scale(v)) continue;
            SymMatrix<double> local(fam.m);
            for (int i = 0; i < fam.k; ++i)
                for (int j = i; j < fam.k; ++j) local.set(i, j, v[0] * K(i, j));
            local.set(fam.k, fam.k, v[1]);
            local.set(fam.k, fam.k + 1, v[2]);
            local.set(fam.k + 1, fam.k + 1, v[3]);
            approx_candidates.push_back(local.congruence(Einv));
        }
    }
    if (!candidates.empty()) {
        finish_exact(candidates[0]);
        if (candidates.size() > 1) out.notes.push_back("two exact candidates; the first is returned");
    } else if (!approx_candidates.empty()) {
        out.approx = Complete<double>{approx_candidates[0], adjugate(approx_candidates[0])};
        if (approx_candidates.size() > 1) out.notes.push_back("two approximate candidates; the first is returned");
    } else {
        throw Error("NoSecondCompletion", "every root lies on V or is the determinant completion");
    }

    // residual: S_i − (a0_i/a0)·T has rank 1
    const SymMatrix<double>& t = out.approx.primal;
    double worst = 0;
    for (int i = 1; i <= 3; ++i) {
        SymMatrix<double> s = seven.at(s_vertex(i)).primal.template cast<double>();
        double tt = 0;
        // t parameter from the Ω block: choose the largest K entry
        int bi = 0, bj = 0;
        double best = -1;
        SymMatrix<double> ls = s.congruence(detail::to_double(fam.E)), lt = t.congruence(detail::to_double(fam.E));
        for (int a = 0; a < fam.k; ++a)
            for (int b = a; b < fam.k; ++b)
                if (std::fabs(lt(a, b)) > best) { best = std::fabs(lt(a, b)); bi = a; bj = b; }
        tt = ls(bi, bj) / lt(bi, bj);
        worst = std::max(worst, detail::rank_one_residual(s - tt * t));
    }
    out.residual = worst;
    return out;
}

// ---- the completion ----

template <class T>
struct CompletionResult {
    Complete<T> primary; // the determinant completion; a zero side is unknown
    bool unique = true;
    std::optional<SecondCompletion<T>> second;
    RecoveredParams<T> recovered;
    PenroseLattice<T> lattice;
    std::optional<int> case_label; // quadrics: the refinement case 1..4
    std::vector<std::string> notes;
};

template <class T>
struct RefinedCase {
    int label = 0;
    std::string name;
    bool axes_coplanar = false;
    bool spears_concurrent = false;
    int primal_rank = -1, dual_rank = -1;
    bool ranks_match = false;
};

namespace detail {

// axes and spears of the three faces at the eighth vertex
template <class T>
std::pair<std::vector<Line3D<T>>, std::vector<Line3D<T>>> eighth_axes_spears(const FaceStructure<T>& fs)
{
    std::vector<Line3D<T>> axes, spears;
    for (int n = 1; n <= 3; ++n) {
        auto a = fs.axis_at_eighth(n);
        auto s = fs.spear_at_eighth(n);
        if (!a || !s) throw Error("PrereqNotMet", "face axis or spear through T" + std::to_string(n) + " undefined");
        axes.push_back(*a);
        spears.push_back(*s);
    }
    return {axes, spears};
}

} // namespace detail

template <class T>
RefinedCase<T> refine_classify(const Complete<T>& t0, const FaceStructure<T>& fs)
{
    auto [axes, spears] = detail::eighth_axes_spears(fs);
    RefinedCase<T> c;
    c.axes_coplanar = lines_coplanar(axes);
    c.spears_concurrent = lines_concurrent(spears);
    c.label = 1 + (c.axes_coplanar ? 1 : 0) + (c.spears_concurrent ? 2 : 0);
    static const char* names[] = {"", "regular", "double plane + conic", "cone + double point", "incident double plane + double point"};
    static const int want_primal[] = {0, 4, 1, 3, 1};
    static const int want_dual[] = {0, 4, 3, 1, 1};
    c.name = names[c.label];
    c.primal_rank = t0.primal.is_zero() ? 0 : rank(t0.primal);
    c.dual_rank = t0.dual.is_zero() ? 0 : rank(t0.dual);
    c.ranks_match = c.primal_rank == want_primal[c.label] && (t0.dual.is_zero() || c.dual_rank == want_dual[c.label]);
    return c;
}

template <class T>
CompletionResult<T> complete(const SevenConfig<T>& seven)
{
    CompletionResult<T> r;
    int m = seven.m;
    r.recovered = recover_params(seven);
    r.lattice = build_lattice(r.recovered.params);
    const auto& L = r.lattice;
    SymMatrix<T> t0 = L.S[kEighth].is_zero() ? SymMatrix<T>(m) : poly_to_sym(L.S[kEighth]);
    r.primary.primal = t0;
    r.primary.dual = SymMatrix<T>(m);
    int rk = t0.is_zero() ? 0 : rank(t0);
    if (rk >= m - 1) {
        r.primary.dual = adjugate(t0);
    } else {
        bool duals = true;
        for (IndexSet s = 0; s < kEighth; ++s) duals = duals && seven.has_dual(s);
        if (duals) {
            try {
                auto dual_seven = seven.dualized();
                auto dr = recover_params(dual_seven);
                auto DL = build_lattice(dr.params);
                if (!DL.S[kEighth].is_zero()) r.primary.dual = poly_to_sym(DL.S[kEighth]);
                if (t0.is_zero()) r.notes.push_back("determinant completion vanishes point-wise; taken plane-wise");
                if (!t0.is_zero() && !r.primary.dual.is_zero() && !complete_pair_valid(t0, r.primary.dual))
                    r.notes.push_back("plane-wise completion is not a partner of the point-wise one");
            } catch (const Error& e) {
                r.notes.push_back("plane-wise completion failed: " + e.kind());
            }
        } else {
            r.notes.push_back("NeedsDualPartner: point-wise completion of rank " + std::to_string(rk));
        }
    }
    if (r.primary.primal.is_zero() && r.primary.dual.is_zero()) throw Error("NoCompletion", "both sides of the completion vanish");

    std::vector<HomogeneousPoly<T>> chords;
    for (const auto& e : cube_edges()) chords.push_back(L.chord_at(e.from, e.k));
    auto common = common_contact_element(chords, m);
    r.unique = common.empty();
    if (!r.unique) {
        r.notes.push_back(m == 3 ? "all face points coincide" : "all ring planes share one axis");
        try {
            auto fam = shared_contact_family(seven.at(0).primal, common);
            std::optional<SymMatrix<T>> det;
            if (!t0.is_zero()) det = t0;
            r.second = second_completion(seven, fam, det);
        } catch (const Error& e) {
            r.notes.push_back("second completion: " + e.kind() + " (" + e.what() + ")");
        }
    }
    if (m == 4 && !r.primary.primal.is_zero()) {
        try {
            SevenConfig<T> eight = seven;
            eight.v[kEighth] = r.primary;
            auto fs = face_structure(eight);
            auto c = refine_classify(r.primary, fs);
            r.case_label = c.label;
            r.notes.push_back("case " + std::to_string(c.label) + ": " + c.name + (c.ranks_match ? "" : " (ranks differ)"));
        } catch (const Error& e) {
            r.notes.push_back("refinement: " + e.kind());
        }
    }
    return r;
}

/// Eighth quadric built in the basis (O, X1, X2, X3) from the restrictions of S1, S2, S3.
template <class T>
Complete<T> complete_quadric_via_basis(const SevenConfig<T>& seven)
{
    if (seven.m != 4) throw Error("SizeMismatch", "basis construction is for quadrics");
    auto fs = face_structure(seven);
    std::vector<Line3D<T>> axes, spears;
    for (int n = 1; n <= 3; ++n) {
        auto a = fs.axis_at_eighth(n);
        if (!a) throw Error("PrereqNotMet", "face axis through T" + std::to_string(n) + " undefined");
        axes.push_back(*a);
        if (auto sp = fs.spear_at_eighth(n)) spears.push_back(*sp);
    }
    if (axes[0] == axes[1] && axes[1] == axes[2]) throw Error("AxesIdentical", "all face axes coincide");
    auto O = lines_common_point(axes);
    if (!O) throw Error("PrereqNotMet", "face axes are not concurrent");
    // coinciding ring points leave a spear undefined; o is then the plane of all ring points
    auto o = spears.size() == 3 ? lines_common_plane(spears) : fs.o;
    if (!o) throw Error("PrereqNotMet", "ring points do not span a common plane");
    if (incident(*O, *o)) throw Error("IncidentPolarPair", "O lies on o");

    std::vector<Vec<T>> cols{O->c};
    for (int n = 1; n <= 3; ++n) {
        auto hs = axes[n - 1].planes();
        auto ns = nullspace(Matrix<T>::from_rows({hs[0].c, hs[1].c, o->c}));
        if (ns.size() != 1) throw Error("PrereqNotMet", "axis lies in o");
        cols.push_back(ns[0]);
    }
    Matrix<T> E = Matrix<T>::from_cols(cols);
    if (scalar_traits<T>::exact ? is_zero(det(E)) : rank(E) < 4) throw Error("PrereqNotMet", "O, X1, X2, X3 are dependent");

    std::array<SymMatrix<T>, 3> M;
    for (int i = 1; i <= 3; ++i) {
        SymMatrix<T> l = seven.at(s_vertex(i)).primal.congruence(E);
        double s = l.max_abs();
        for (int k = 1; k < 4; ++k)
            if (!scalar_traits<T>::negligible(l(0, k), s)) throw Error("PrereqNotMet", "O and o are not polar for S" + set_label(s_vertex(i)));
        M[i - 1] = l;
    }
    // scales (α, β, γ) of S1, S2, S3 agreeing at O and on the three axis points
    auto row = [](const T& u, const T& v, int iu, int iv) {
        Vec<T> r(3, T(0));
        r[iu] = u;
        r[iv] = -v;
        return r;
    };
    std::vector<Vec<T>> eqs{row(M[0](0, 0), M[1](0, 0), 0, 1), row(M[0](0, 0), M[2](0, 0), 0, 2),
                            row(M[2](1, 1), M[1](1, 1), 2, 1), row(M[0](2, 2), M[2](2, 2), 0, 2),
                            row(M[0](3, 3), M[1](3, 3), 0, 1)};
    auto sc = nullspace(Matrix<T>::from_rows(eqs));
    if (sc.empty()) throw Error("InconsistentFace", "restrictions disagree on the axes");
    if (sc.size() > 1) throw Error("PrereqNotMet", "relative scales of S1, S2, S3 are not determined");
    for (int i = 0; i < 3; ++i) {
        if (is_zero(sc[0][i])) throw Error("PrereqNotMet", "zero scale");
        M[i] = sc[0][i] * M[i];
    }
    const auto &A = M[0], &B = M[1], &C = M[2];
    SymMatrix<T> D(4);
    D.set(0, 0, A(0, 0));
    D.set(1, 1, C(1, 1));
    D.set(2, 2, A(2, 2));
    D.set(3, 3, A(3, 3));
    D.set(1, 2, C(1, 2));
    D.set(1, 3, B(1, 3));
    D.set(2, 3, A(2, 3));
    SymMatrix<T> t0 = D.congruence(inverse(E));
    SymMatrix<T> adj = adjugate(t0);
    return Complete<T>{t0, adj.is_zero() ? SymMatrix<T>(4) : adj};
}

} // namespace penrose
