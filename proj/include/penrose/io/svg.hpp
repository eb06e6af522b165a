#pragma once

#include "../engine.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

namespace penrose::io {

struct Viewport {
    double x0 = -6, x1 = 6, y0 = -6, y1 = 6;
    bool inside(double x, double y) const { return x >= x0 && x <= x1 && y >= y0 && y <= y1; }
};

struct Pt2 {
    double x, y;
};

/// Conic coefficients in the chart: a x² + b xy + c y² + d x + e y + f.
struct ChartConic {
    double a = 0, b = 0, c = 0, d = 0, e = 0, f = 0;
    double operator()(double x, double y) const { return a * x * x + b * x * y + c * y * y + d * x + e * y + f; }
    double scale() const
    {
        return std::max({std::fabs(a), std::fabs(b), std::fabs(c), std::fabs(d), std::fabs(e), std::fabs(f)});
    }
};

/// Restriction to the chart x_k = 1; the other two coordinates become (x, y) in order.
template <class T>
ChartConic chart_conic(const SymMatrix<T>& s, int chart = 2)
{
    int i = chart == 0 ? 1 : 0, j = chart == 2 ? 1 : 2, k = chart;
    auto g = [&](int r, int c) { return scalar_traits<T>::to_double(s(r, c)); };
    return {g(i, i), 2 * g(i, j), g(j, j), 2 * g(i, k), 2 * g(j, k), g(k, k)};
}

namespace detail {
// real roots of p t² + q t + r, tolerant of a tiny negative discriminant
inline std::vector<double> quad_roots(double p, double q, double r, double sc)
{
    std::vector<double> out;
    double eps = 1e-12 * std::max(sc, 1e-300);
    if (std::fabs(p) <= eps) {
        if (std::fabs(q) > eps) out.push_back(-r / q);
        return out;
    }
    double disc = q * q - 4 * p * r;
    if (disc < -1e-12 * sc * sc) return out;
    disc = std::max(disc, 0.0);
    double sq = std::sqrt(disc);
    // stable form
    double t = -0.5 * (q + (q >= 0 ? sq : -sq));
    double r1 = t / p, r2 = t != 0 ? r / t : r1;
    out.push_back(std::min(r1, r2));
    out.push_back(std::max(r1, r2));
    return out;
}
} // namespace detail

/// Polylines through the real points of a conic inside the viewport: one
/// sweep over x solving for y and one over y solving for x, `samples` steps each.
inline std::vector<std::vector<Pt2>> sample_conic(const ChartConic& q, const Viewport& vp, int samples = 256)
{
    std::vector<std::vector<Pt2>> out;
    double sc = q.scale();
    if (sc == 0) return out;
    for (int pass = 0; pass < 2; ++pass) {
        std::vector<Pt2> lo, hi;
        auto flush = [&] {
            if (lo.size() > 1) out.push_back(lo);
            if (hi.size() > 1) out.push_back(hi);
            lo.clear();
            hi.clear();
        };
        for (int i = 0; i <= samples; ++i) {
            double s = pass == 0 ? vp.x0 + (vp.x1 - vp.x0) * i / samples : vp.y0 + (vp.y1 - vp.y0) * i / samples;
            std::vector<double> r;
            if (pass == 0) r = detail::quad_roots(q.c, q.b * s + q.e, q.a * s * s + q.d * s + q.f, sc);
            else r = detail::quad_roots(q.a, q.b * s + q.d, q.c * s * s + q.e * s + q.f, sc);
            if (r.empty()) {
                flush();
                continue;
            }
            auto mk = [&](double t) { return pass == 0 ? Pt2{s, t} : Pt2{t, s}; };
            Pt2 a = mk(r.front()), b = mk(r.back());
            if (vp.inside(a.x, a.y)) lo.push_back(a);
            else if (lo.size() > 1) { out.push_back(lo); lo.clear(); }
            else lo.clear();
            if (r.size() == 2) {
                if (vp.inside(b.x, b.y)) hi.push_back(b);
                else if (hi.size() > 1) { out.push_back(hi); hi.clear(); }
                else hi.clear();
            }
        }
        flush();
    }
    return out;
}

/// Segment of a chart line a x + b y + c = 0 clipped to the viewport.
inline std::optional<std::pair<Pt2, Pt2>> clip_line(double a, double b, double c, const Viewport& vp)
{
    std::vector<Pt2> hits;
    if (std::fabs(b) > 1e-12)
        for (double x : {vp.x0, vp.x1}) {
            double y = -(a * x + c) / b;
            if (y >= vp.y0 && y <= vp.y1) hits.push_back({x, y});
        }
    if (std::fabs(a) > 1e-12)
        for (double y : {vp.y0, vp.y1}) {
            double x = -(b * y + c) / a;
            if (x >= vp.x0 && x <= vp.x1) hits.push_back({x, y});
        }
    if (hits.size() < 2) return std::nullopt;
    return std::make_pair(hits.front(), hits.back());
}

namespace detail {
inline std::string num(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4f", v);
    return buf;
}
inline const char* palette(std::size_t i)
{
    static const char* c[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf", "#8c564b", "#e377c2",
                              "#7f7f7f", "#bcbd22", "#393b79", "#637939", "#843c39", "#7b4173", "#3182bd", "#e6550d"};
    return c[i % 16];
}
} // namespace detail

/// Schematic SVG of a planar lattice: vertex conics, chords dashed, face points as markers.
template <class T>
std::string render_svg(const PenroseLattice<T>& L, int chart = 2, int samples = 256, double size = 640)
{
    if (L.m() != 3) throw Error("SizeMismatch", "render draws planar lattices");
    auto dehom = [&](const Vec<T>& v, Pt2& out) {
        double w = scalar_traits<T>::to_double(v[chart]);
        if (std::fabs(w) < 1e-12) return false;
        int i = chart == 0 ? 1 : 0, j = chart == 2 ? 1 : 2;
        out = {scalar_traits<T>::to_double(v[i]) / w, scalar_traits<T>::to_double(v[j]) / w};
        return true;
    };

    std::vector<Pt2> marks;
    for (const auto& fc : L.faces()) {
        auto fr = face_point(L, fc);
        Pt2 p;
        if (fr.point && dehom(fr.point->c, p)) marks.push_back(p);
    }
    Viewport vp;
    double r = 4;
    for (const auto& p : marks) r = std::max(r, std::max(std::fabs(p.x), std::fabs(p.y)) * 1.25);
    r = std::min(r, 60.0);
    vp = {-r, r, -r, r};

    double k = size / (vp.x1 - vp.x0);
    auto sx = [&](double x) { return detail::num((x - vp.x0) * k); };
    auto sy = [&](double y) { return detail::num((vp.y1 - y) * k); };

    std::ostringstream os;
    os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << size << "\" height=\"" << size
       << "\" viewBox=\"0 0 " << size << " " << size << "\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    int note_line = 0;
    auto note = [&](const std::string& s) {
        os << "<text x=\"8\" y=\"" << 16 + 14 * note_line++ << "\" font-size=\"11\" fill=\"#444\">" << s << "</text>\n";
    };
    for (IndexSet s = 0; s <= L.full(); ++s) {
        std::string key = set_label(s);
        if (L.S[s].is_zero()) {
            note("S" + key + " vanishes");
            continue;
        }
        auto q = chart_conic(poly_to_sym(L.S[s]), chart);
        auto lines = sample_conic(q, vp, samples);
        if (lines.empty()) {
            note("S" + key + " has no real points in view");
            continue;
        }
        os << "<g id=\"S" << key << "\" stroke=\"" << detail::palette(s) << "\" fill=\"none\" stroke-width=\"1.5\">\n";
        for (const auto& pl : lines) {
            os << "<polyline points=\"";
            for (std::size_t i = 0; i < pl.size(); ++i) os << (i ? " " : "") << sx(pl[i].x) << "," << sy(pl[i].y);
            os << "\"/>\n";
        }
        os << "</g>\n";
    }
    os << "<g stroke=\"#888\" stroke-dasharray=\"6,4\" stroke-width=\"0.8\">\n";
    for (IndexSet s = 0; s <= L.full(); ++s)
        for (int j = 1; j <= L.n(); ++j) {
            if (contains(s, j)) continue;
            const auto& c = L.chord_at(s, j);
            if (c.is_zero()) continue;
            auto v = c.linear_coeffs();
            int i0 = chart == 0 ? 1 : 0, j0 = chart == 2 ? 1 : 2;
            auto seg = clip_line(scalar_traits<T>::to_double(v[i0]), scalar_traits<T>::to_double(v[j0]),
                                 scalar_traits<T>::to_double(v[chart]), vp);
            if (seg) os << "<line x1=\"" << sx(seg->first.x) << "\" y1=\"" << sy(seg->first.y) << "\" x2=\"" << sx(seg->second.x)
                        << "\" y2=\"" << sy(seg->second.y) << "\"/>\n";
        }
    os << "</g>\n<g fill=\"black\">\n";
    for (const auto& p : marks)
        if (vp.inside(p.x, p.y)) os << "<circle cx=\"" << sx(p.x) << "\" cy=\"" << sy(p.y) << "\" r=\"3\"/>\n";
    os << "</g>\n</svg>\n";
    return os.str();
}

} // namespace penrose::io
