#pragma once

#include "scalar.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

namespace penrose {

constexpr int kMaxDegree = 4;

// Exponent vector; unused trailing slots stay zero.
using Monomial = std::array<std::uint8_t, 4>;

inline int monomial_degree(const Monomial& e) { return e[0] + e[1] + e[2] + e[3]; }

/// All monomials of total degree d in m variables, graded-lex descending.
inline std::vector<Monomial> monomials(int m, int d)
{
    std::vector<Monomial> out;
    Monomial e{};
    std::function<void(int, int)> rec = [&](int var, int left) {
        if (var == m - 1) {
            e[var] = static_cast<std::uint8_t>(left);
            out.push_back(e);
            e[var] = 0;
            return;
        }
        for (int k = left; k >= 0; --k) {
            e[var] = static_cast<std::uint8_t>(k);
            rec(var + 1, left - k);
        }
        e[var] = 0;
    };
    rec(0, d);
    return out;
}

template <class T>
class HomogeneousPoly {
public:
    using Terms = std::map<Monomial, T, std::greater<Monomial>>;

    HomogeneousPoly() = default;
    HomogeneousPoly(int vars, int degree) : m_(vars), deg_(degree)
    {
        if (vars != 3 && vars != 4) throw Error("VariableCountMismatch", "m must be 3 or 4");
        if (degree < 0 || degree > kMaxDegree) throw Error("DegreeOverflow", "degree > 4");
    }

    static HomogeneousPoly constant(int vars, const T& c)
    {
        HomogeneousPoly r(vars, 0);
        r.set(Monomial{}, c);
        return r;
    }
    static HomogeneousPoly variable(int vars, int i)
    {
        HomogeneousPoly r(vars, 1);
        Monomial e{};
        e[i] = 1;
        r.set(e, from_int<T>(1));
        return r;
    }
    static HomogeneousPoly linear(const std::vector<T>& c)
    {
        HomogeneousPoly r(static_cast<int>(c.size()), 1);
        for (std::size_t i = 0; i < c.size(); ++i) {
            Monomial e{};
            e[i] = 1;
            r.set(e, c[i]);
        }
        return r;
    }

    int vars() const { return m_; }
    int degree() const { return deg_; }
    bool is_zero() const { return terms_.empty(); }
    const Terms& terms() const { return terms_; }

    T coeff(const Monomial& e) const
    {
        auto it = terms_.find(e);
        return it == terms_.end() ? T(0) : it->second;
    }

    void set(const Monomial& e, const T& c)
    {
        if (monomial_degree(e) != deg_) throw Error("DegreeMismatch", "monomial degree");
        if (penrose::is_zero(c))
            terms_.erase(e);
        else
            terms_[e] = c;
    }
    void accumulate(const Monomial& e, const T& c)
    {
        auto it = terms_.find(e);
        if (it == terms_.end()) {
            if (!penrose::is_zero(c)) terms_.emplace(e, c);
            return;
        }
        it->second += c;
        if (penrose::is_zero(it->second)) terms_.erase(it);
    }

    std::vector<T> linear_coeffs() const
    {
        if (deg_ != 1) throw Error("DegreeMismatch", "expected a linear form");
        std::vector<T> c(m_, T(0));
        for (const auto& [e, v] : terms_)
            for (int i = 0; i < m_; ++i)
                if (e[i]) c[i] = v;
        return c;
    }

    T evaluate(const std::vector<T>& pt) const
    {
        T acc(0);
        for (const auto& [e, c] : terms_) {
            T t = c;
            for (int i = 0; i < m_; ++i)
                for (int k = 0; k < e[i]; ++k) t *= pt[i];
            acc += t;
        }
        return acc;
    }

    double max_abs() const
    {
        double s = 0;
        for (const auto& [e, c] : terms_) s = std::max(s, std::fabs(scalar_traits<T>::to_double(c)));
        return s;
    }

    HomogeneousPoly operator-() const
    {
        HomogeneousPoly r = *this;
        for (auto& [e, c] : r.terms_) c = -c;
        return r;
    }

    HomogeneousPoly& operator+=(const HomogeneousPoly& g)
    {
        if (g.is_zero() && g.m_ == m_) return *this;
        if (m_ != g.m_) throw Error("VariableCountMismatch", "poly_add");
        if (is_zero()) {
            *this = g;
            return *this;
        }
        if (deg_ != g.deg_) throw Error("DegreeMismatch", "poly_add");
        for (const auto& [e, c] : g.terms_) accumulate(e, c);
        return *this;
    }
    HomogeneousPoly& operator-=(const HomogeneousPoly& g) { return *this += -g; }
    HomogeneousPoly& operator*=(const T& s)
    {
        if (penrose::is_zero(s)) {
            terms_.clear();
            return *this;
        }
        for (auto& [e, c] : terms_) c *= s;
        return *this;
    }

    friend HomogeneousPoly operator+(HomogeneousPoly f, const HomogeneousPoly& g) { return f += g; }
    friend HomogeneousPoly operator-(HomogeneousPoly f, const HomogeneousPoly& g) { return f -= g; }
    friend HomogeneousPoly operator*(HomogeneousPoly f, const T& s) { return f *= s; }
    friend HomogeneousPoly operator*(const T& s, HomogeneousPoly f) { return f *= s; }

    friend HomogeneousPoly operator*(const HomogeneousPoly& f, const HomogeneousPoly& g)
    {
        if (f.m_ != g.m_) throw Error("VariableCountMismatch", "poly_mul");
        if (f.deg_ + g.deg_ > kMaxDegree) throw Error("DegreeOverflow", "poly_mul degree > 4");
        HomogeneousPoly r(f.m_, f.deg_ + g.deg_);
        for (const auto& [a, ca] : f.terms_)
            for (const auto& [b, cb] : g.terms_) {
                Monomial e;
                for (int i = 0; i < 4; ++i) e[i] = static_cast<std::uint8_t>(a[i] + b[i]);
                r.accumulate(e, ca * cb);
            }
        return r;
    }

    // Equality compares coefficients; two zero polys of any degree are equal.
    friend bool operator==(const HomogeneousPoly& f, const HomogeneousPoly& g)
    {
        if (f.is_zero() && g.is_zero()) return true;
        return f.m_ == g.m_ && f.deg_ == g.deg_ && f.terms_ == g.terms_;
    }

    std::string to_string() const
    {
        static const char* names[] = {"x", "y", "z", "w"};
        if (terms_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (const auto& [e, c] : terms_) {
            std::string cs = scalar_traits<T>::to_string(c);
            bool neg = !cs.empty() && cs[0] == '-';
            if (neg) cs = cs.substr(1);
            if (!first) os << (neg ? " - " : " + ");
            else if (neg) os << "-";
            first = false;
            bool unit = cs == "1" && monomial_degree(e) > 0;
            if (!unit) os << cs;
            bool star = !unit;
            for (int i = 0; i < m_; ++i) {
                if (!e[i]) continue;
                if (star) os << "*";
                star = true;
                os << names[i];
                if (e[i] > 1) os << "^" << int(e[i]);
            }
        }
        return os.str();
    }

    template <class U>
    HomogeneousPoly<U> cast() const
    {
        HomogeneousPoly<U> r(m_, deg_);
        for (const auto& [e, c] : terms_)
            r.set(e, scalar_traits<U>::from_rational(scalar_traits<T>::to_rational(c)));
        return r;
    }

private:
    int m_ = 3;
    int deg_ = 0;
    Terms terms_;
};

// True when f vanishes to within tolerance relative to `scale` (exact: f == 0).
template <class T>
bool poly_negligible(const HomogeneousPoly<T>& f, double scale)
{
    for (const auto& [e, c] : f.terms())
        if (!scalar_traits<T>::negligible(c, scale)) return false;
    return true;
}

} // namespace penrose
