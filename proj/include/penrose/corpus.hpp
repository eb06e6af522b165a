#pragma once

#include "core/random.hpp"
#include "engine.hpp"
#include "lift3d.hpp"

namespace penrose {

template <class T>
SymMatrix<T> random_regular_form(RationalGen& g, int m)
{
    for (;;) {
        SymMatrix<T> s(m);
        for (int i = 0; i < m; ++i)
            for (int j = i; j < m; ++j) s.set(i, j, g.scalar<T>());
        if (rank(s) == m) return s;
    }
}

/// Generic parameters: regular S0, every f-scalar and every vertex nonzero.
template <class T>
PenroseParams<T> random_params(RationalGen& g, int m = 3, int n = 3)
{
    for (;;) {
        auto q = PenroseParams<T>::blank(m, n);
        q.S0 = sym_to_poly(random_regular_form<T>(g, m));
        for (int j = 0; j < n; ++j) {
            Vec<T> c;
            do c = g.vec<T>(m);
            while (vec_is_zero(c));
            q.p[j] = HomogeneousPoly<T>::linear(c);
            q.d[j] = scalar_traits<T>::from_rational(g.nonzero());
        }
        for (int j = 1; j <= n; ++j)
            for (int k = j + 1; k <= n; ++k) q.set_a(j, k, g.scalar<T>());
        auto L = build_lattice(q, false);
        bool ok = true;
        for (IndexSet s = 0; s <= L.full() && ok; ++s) ok = !is_zero(L.f[s]) && !L.S[s].is_zero();
        if (ok) return q;
    }
}

/// d = −1 preset with random S0, lines and (a, b, c).
template <class T>
PenroseParams<T> random_preset(RationalGen& g, int m = 3)
{
    for (;;) {
        Vec<HomogeneousPoly<T>> lines;
        for (int j = 0; j < 3; ++j) lines.push_back(HomogeneousPoly<T>::linear(g.vec<T>(m)));
        auto q = PenroseParams<T>::preset(sym_to_poly(random_regular_form<T>(g, m)), lines[0], lines[1], lines[2],
                                          g.scalar<T>(), g.scalar<T>(), g.scalar<T>());
        bool ok = true;
        for (const auto& l : q.p) ok = ok && !l.is_zero();
        if (ok) return q;
    }
}

/// Extrusion frame with the standard basis and a random polarizing plane u (u0 ≠ 0).
template <class T>
ExtrusionFrame<T> random_frame(RationalGen& g)
{
    Vec<T> u = g.vec<T>(4);
    if (is_zero(u[0])) u[0] = T(1);
    return ExtrusionFrame<T>::standard(u);
}

} // namespace penrose
