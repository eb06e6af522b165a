#pragma once

#include "matrix.hpp"

namespace penrose {

// Deterministic representative of a projective vector:
// exact -> primitive integer vector, first nonzero entry positive;
// float -> scaled to unit max magnitude, first non-negligible entry positive.
template <class T>
Vec<T> normalize_projective(const Vec<T>& v)
{
    Vec<T> out = v;
    if constexpr (scalar_traits<T>::exact) {
        Integer l = 1, g = 0;
        for (const auto& x : v) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
        std::vector<Integer> n(v.size());
        for (std::size_t i = 0; i < v.size(); ++i) {
            n[i] = v[i].get_num() * (l / v[i].get_den());
            mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), n[i].get_mpz_t());
        }
        if (g == 0) return out;
        int s = 0;
        for (const auto& x : n)
            if (x != 0) { s = sgn(x); break; }
        for (std::size_t i = 0; i < v.size(); ++i) out[i] = Rational(n[i] * s / g);
    } else {
        double mx = 0;
        for (double x : v) mx = std::max(mx, std::fabs(x));
        if (mx == 0) return out;
        double s = 0;
        for (double x : v)
            if (std::fabs(x) > tolerance() * mx) { s = x > 0 ? 1 : -1; break; }
        for (auto& x : out) x = x * s / mx;
    }
    return out;
}

template <class T>
bool vec_is_zero(const Vec<T>& v)
{
    double mx = 0;
    for (const auto& x : v) mx = std::max(mx, std::fabs(scalar_traits<T>::to_double(x)));
    if constexpr (scalar_traits<T>::exact) {
        return std::all_of(v.begin(), v.end(), [](const T& x) { return is_zero(x); });
    } else {
        return mx == 0.0;
    }
}

/// Equality up to a nonzero scale factor (sign included).
template <class T>
bool proj_equal(const Vec<T>& a, const Vec<T>& b)
{
    if (a.size() != b.size()) return false;
    bool za = vec_is_zero(a), zb = vec_is_zero(b);
    if (za || zb) return za && zb;
    if constexpr (scalar_traits<T>::exact) {
        // a ∝ b  <=>  all 2x2 minors a_i b_j - a_j b_i vanish
        std::size_t k = 0;
        while (is_zero(a[k])) ++k;
        if (is_zero(b[k])) return false;
        for (std::size_t i = 0; i < a.size(); ++i)
            if (a[i] * b[k] != a[k] * b[i]) return false;
        return true;
    } else {
        Vec<T> na = normalize_projective(a), nb = normalize_projective(b);
        for (std::size_t i = 0; i < a.size(); ++i)
            if (std::fabs(na[i] - nb[i]) > tolerance()) return false;
        return true;
    }
}

template <class T>
Vec<T> poly_coeff_vector(const HomogeneousPoly<T>& f)
{
    Vec<T> v;
    for (const auto& e : monomials(f.vars(), f.degree())) v.push_back(f.coeff(e));
    return v;
}

template <class T>
bool proj_equal(const HomogeneousPoly<T>& f, const HomogeneousPoly<T>& g)
{
    if (f.is_zero() || g.is_zero()) return f.is_zero() && g.is_zero();
    if (f.vars() != g.vars() || f.degree() != g.degree()) return false;
    return proj_equal(poly_coeff_vector(f), poly_coeff_vector(g));
}

template <class T>
bool proj_equal(const SymMatrix<T>& a, const SymMatrix<T>& b)
{
    return a.order() == b.order() && proj_equal(a.upper(), b.upper());
}

template <class T>
HomogeneousPoly<T> normalize_poly(const HomogeneousPoly<T>& f)
{
    if (f.is_zero()) return f;
    auto mons = monomials(f.vars(), f.degree());
    Vec<T> v = normalize_projective(poly_coeff_vector(f));
    HomogeneousPoly<T> r(f.vars(), f.degree());
    for (std::size_t i = 0; i < mons.size(); ++i) r.set(mons[i], v[i]);
    return r;
}

template <class T>
struct SignedLine {
    HomogeneousPoly<T> line;
    int sign = 1; // f = sign * c * line^2 with c > 0
};

/// Inverts f = ±ℓ²: ℓ comes back primitive with first nonzero coefficient positive.
template <class T>
SignedLine<T> extract_double_line(const HomogeneousPoly<T>& f)
{
    if (f.degree() != 2 || f.is_zero()) throw Error("NotRankOne", "not a nonzero quadratic form");
    SymMatrix<T> a = poly_to_sym(f);
    if (rank(a) != 1) throw Error("NotRankOne", "quadratic form has rank " + std::to_string(rank(a)));
    int m = a.order();
    // the row through the largest diagonal entry is proportional to ℓ
    int k = 0;
    double best = -1;
    for (int i = 0; i < m; ++i) {
        double v = std::fabs(scalar_traits<T>::to_double(a(i, i)));
        if (v > best) { best = v; k = i; }
    }
    Vec<T> row(m);
    for (int j = 0; j < m; ++j) row[j] = a(k, j);
    int s = scalar_traits<T>::sign(a(k, k));
    SignedLine<T> out;
    out.line = HomogeneousPoly<T>::linear(normalize_projective(row));
    out.sign = s;
    return out;
}

} // namespace penrose
