#pragma once

#include "matrix.hpp"

#include <optional>
#include <vector>

namespace penrose {

// Dense univariate polynomial over ℚ, coefficients low to high.
class UniPoly {
public:
    UniPoly() = default;
    explicit UniPoly(std::vector<Rational> c) : c_(std::move(c)) { trim(); }
    static UniPoly constant(const Rational& a) { return UniPoly({a}); }
    static UniPoly linear(const Rational& a, const Rational& b) { return UniPoly({a, b}); } // a + b t

    int degree() const { return static_cast<int>(c_.size()) - 1; } // -1 for zero
    bool is_zero() const { return c_.empty(); }
    const std::vector<Rational>& coeffs() const { return c_; }
    Rational lead() const { return c_.empty() ? Rational(0) : c_.back(); }
    Rational operator[](int i) const { return i < static_cast<int>(c_.size()) ? c_[i] : Rational(0); }

    Rational eval(const Rational& x) const
    {
        Rational acc = 0;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
        return acc;
    }
    double eval(double x) const
    {
        double acc = 0;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + it->get_d();
        return acc;
    }

    UniPoly derivative() const
    {
        std::vector<Rational> d;
        for (std::size_t i = 1; i < c_.size(); ++i) d.push_back(c_[i] * static_cast<long>(i));
        return UniPoly(d);
    }

    friend UniPoly operator+(const UniPoly& a, const UniPoly& b)
    {
        std::vector<Rational> c(std::max(a.c_.size(), b.c_.size()), Rational(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i) c[i] += a.c_[i];
        for (std::size_t i = 0; i < b.c_.size(); ++i) c[i] += b.c_[i];
        return UniPoly(c);
    }
    friend UniPoly operator-(const UniPoly& a, const UniPoly& b)
    {
        std::vector<Rational> c(std::max(a.c_.size(), b.c_.size()), Rational(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i) c[i] += a.c_[i];
        for (std::size_t i = 0; i < b.c_.size(); ++i) c[i] -= b.c_[i];
        return UniPoly(c);
    }
    friend UniPoly operator*(const UniPoly& a, const UniPoly& b)
    {
        if (a.is_zero() || b.is_zero()) return UniPoly();
        std::vector<Rational> c(a.c_.size() + b.c_.size() - 1, Rational(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
        return UniPoly(c);
    }
    UniPoly& operator+=(const UniPoly& b) { return *this = *this + b; }
    UniPoly& operator-=(const UniPoly& b) { return *this = *this - b; }
    friend bool operator==(const UniPoly& a, const UniPoly& b) { return a.c_ == b.c_; }

    // a = q*b + r
    static void divmod(const UniPoly& a, const UniPoly& b, UniPoly& q, UniPoly& r)
    {
        if (b.is_zero()) throw Error("DivisionByZero", "polynomial division by zero");
        std::vector<Rational> rem = a.c_, quo(std::max(0, a.degree() - b.degree() + 1), Rational(0));
        for (int i = a.degree() - b.degree(); i >= 0; --i) {
            Rational f = rem[i + b.degree()] / b.lead();
            quo[i] = f;
            for (int j = 0; j <= b.degree(); ++j) rem[i + j] -= f * b.c_[j];
        }
        q = UniPoly(quo);
        rem.resize(std::max(0, b.degree()));
        r = UniPoly(rem);
    }

    UniPoly monic() const
    {
        if (is_zero()) return *this;
        std::vector<Rational> c = c_;
        Rational l = lead();
        for (auto& x : c) x /= l;
        return UniPoly(c);
    }

    static UniPoly gcd(UniPoly a, UniPoly b)
    {
        while (!b.is_zero()) {
            UniPoly q, r;
            divmod(a, b, q, r);
            a = b;
            b = r;
        }
        return a.monic();
    }

private:
    void trim()
    {
        while (!c_.empty() && sgn(c_.back()) == 0) c_.pop_back();
    }
    std::vector<Rational> c_;
};

struct RealRoot {
    bool rational = false;
    Rational value; // exact root when rational
    Rational lo, hi; // isolating interval (lo, hi]
    double approx = 0;
};

namespace detail {

inline int sign_changes(const std::vector<UniPoly>& seq, const Rational& x)
{
    int changes = 0, last = 0;
    for (const auto& p : seq) {
        int s = sgn(p.eval(x));
        if (s == 0) continue;
        if (last != 0 && s != last) ++changes;
        last = s;
    }
    return changes;
}

} // namespace detail

/// Distinct real roots of p, ascending. Rational roots are exact; the others come
/// with isolating intervals. Sturm sequences keep the isolation exact.
inline std::vector<RealRoot> real_roots(const UniPoly& p)
{
    std::vector<RealRoot> out;
    if (p.degree() <= 0) return out;
    UniPoly q, r;
    UniPoly::divmod(p, UniPoly::gcd(p, p.derivative()), q, r);
    q = q.monic();
    if (q.degree() == 0) return out;

    // integer-cleared leading coefficient bounds the denominators of rational roots
    Integer l = 1;
    for (const auto& c : q.coeffs()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
    Rational lc_int = Rational(l);

    std::vector<UniPoly> seq{q, q.derivative()};
    while (seq.back().degree() > 0) {
        UniPoly qq, rr;
        UniPoly::divmod(seq[seq.size() - 2], seq.back(), qq, rr);
        if (rr.is_zero()) break;
        seq.push_back(UniPoly() - rr);
    }

    Rational bound = 1;
    for (int i = 0; i < q.degree(); ++i) bound += ::abs(q[i]);

    struct Job { Rational lo, hi; };
    std::vector<Job> stack{{-bound, bound}};
    std::vector<std::pair<Rational, Rational>> isolated;
    while (!stack.empty()) {
        Job j = stack.back();
        stack.pop_back();
        int n = detail::sign_changes(seq, j.lo) - detail::sign_changes(seq, j.hi);
        if (n == 0) continue;
        if (n == 1) {
            isolated.emplace_back(j.lo, j.hi);
            continue;
        }
        Rational mid = (j.lo + j.hi) / 2;
        stack.push_back({mid, j.hi});
        stack.push_back({j.lo, mid});
    }
    std::sort(isolated.begin(), isolated.end(), [](const auto& a, const auto& b) { return a.first < b.first; });

    for (auto [lo, hi] : isolated) {
        RealRoot root;
        if (sgn(q.eval(hi)) == 0) {
            root.rational = true;
            root.value = hi;
        } else {
            int shi = sgn(q.eval(hi));
            while ((hi - lo) * lc_int >= Rational(1, 2)) {
                Rational mid = (lo + hi) / 2;
                int sm = sgn(q.eval(mid));
                if (sm == 0) { lo = hi = mid; break; }
                if (sm == shi) hi = mid;
                else lo = mid;
            }
            if (lo == hi) {
                root.rational = true;
                root.value = lo;
            } else {
                // the only candidate N / lc inside (lo, hi]
                Rational scaled = hi * lc_int;
                Integer n = scaled.get_num() / scaled.get_den(); // floor for positives
                if (scaled < 0 && Rational(n) != scaled) n -= 1;
                Rational cand = Rational(n) / lc_int;
                if (cand > lo && cand <= hi && sgn(q.eval(cand)) == 0) {
                    root.rational = true;
                    root.value = cand;
                }
            }
            if (!root.rational) {
                for (int it = 0; it < 80; ++it) {
                    Rational mid = (lo + hi) / 2;
                    int sm = sgn(q.eval(mid));
                    if (sm == 0) { root.rational = true; root.value = mid; break; }
                    if (sm == shi) hi = mid;
                    else lo = mid;
                }
            }
        }
        if (root.rational) {
            root.lo = root.hi = root.value;
            root.approx = root.value.get_d();
        } else {
            root.lo = lo;
            root.hi = hi;
            root.approx = Rational((lo + hi) / 2).get_d();
        }
        out.push_back(root);
    }
    return out;
}

/// det(A + t·B) as a polynomial in t.
template <class T>
UniPoly pencil_det(const SymMatrix<T>& a, const SymMatrix<T>& b)
{
    int k = a.order();
    std::vector<std::vector<UniPoly>> m(k, std::vector<UniPoly>(k));
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j)
            m[i][j] = UniPoly::linear(scalar_traits<T>::to_rational(a(i, j)), scalar_traits<T>::to_rational(b(i, j)));
    std::function<UniPoly(std::vector<int>, std::vector<int>)> rec = [&](std::vector<int> rows, std::vector<int> cols) {
        if (rows.size() == 1) return m[rows[0]][cols[0]];
        std::vector<int> rest(rows.begin() + 1, rows.end());
        UniPoly acc;
        for (std::size_t j = 0; j < cols.size(); ++j) {
            std::vector<int> sub;
            for (std::size_t t = 0; t < cols.size(); ++t)
                if (t != j) sub.push_back(cols[t]);
            UniPoly term = m[rows[0]][cols[j]] * rec(rest, sub);
            acc = (j % 2) ? acc - term : acc + term;
        }
        return acc;
    };
    std::vector<int> all(k);
    for (int i = 0; i < k; ++i) all[i] = i;
    return rec(all, all);
}

/// gcd of all 2×2 minors of A + t·B; its roots are the members of rank ≤ 1.
template <class T>
UniPoly rank_one_locus(const SymMatrix<T>& a, const SymMatrix<T>& b)
{
    int k = a.order();
    auto e = [&](int i, int j) {
        return UniPoly::linear(scalar_traits<T>::to_rational(a(i, j)), scalar_traits<T>::to_rational(b(i, j)));
    };
    UniPoly g;
    for (int i1 = 0; i1 < k; ++i1)
        for (int i2 = i1 + 1; i2 < k; ++i2)
            for (int j1 = 0; j1 < k; ++j1)
                for (int j2 = j1 + 1; j2 < k; ++j2) {
                    UniPoly mnr = e(i1, j1) * e(i2, j2) - e(i1, j2) * e(i2, j1);
                    g = UniPoly::gcd(g, mnr);
                    if (g.degree() == 0) return g;
                }
    return g;
}

} // namespace penrose
