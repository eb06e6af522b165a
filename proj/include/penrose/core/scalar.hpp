#pragma once

#include <gmpxx.h>

#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <string>
#include <utility>

namespace penrose {

using Rational = mpq_class;
using Integer = mpz_class;

// Every failure carries a short machine-readable kind ("NotRankOne", ...).
class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string& what)
        : std::runtime_error(kind + ": " + what), kind_(std::move(kind)) {}
    const std::string& kind() const noexcept { return kind_; }

private:
    std::string kind_;
};

namespace detail {
inline double& tolerance_slot()
{
    thread_local double tol = 1e-9;
    return tol;
}
} // namespace detail

inline double tolerance() { return detail::tolerance_slot(); }

/// Sets the float-mode tolerance for the current thread until destroyed.
class ToleranceScope {
public:
    explicit ToleranceScope(double tol) : saved_(detail::tolerance_slot())
    {
        detail::tolerance_slot() = tol;
    }
    ~ToleranceScope() { detail::tolerance_slot() = saved_; }
    ToleranceScope(const ToleranceScope&) = delete;
    ToleranceScope& operator=(const ToleranceScope&) = delete;

private:
    double saved_;
};

template <class T>
struct scalar_traits;

template <>
struct scalar_traits<Rational> {
    static constexpr bool exact = true;
    static constexpr const char* mode = "exact";

    static bool is_zero(const Rational& x) { return sgn(x) == 0; }
    // exact mode ignores the scale: zero means zero
    static bool negligible(const Rational& x, double) { return sgn(x) == 0; }
    static int sign(const Rational& x) { return sgn(x); }
    static Rational abs(const Rational& x) { return ::abs(x); }
    static double to_double(const Rational& x) { return x.get_d(); }
    static Rational from_double(double v) { return Rational(v); }
    static Rational from_rational(const Rational& q) { return q; }
    static Rational to_rational(const Rational& x) { return x; }

    static std::string to_string(const Rational& x) { return x.get_str(); }

    static bool sqrt(const Rational& x, Rational& out)
    {
        if (sgn(x) < 0) return false;
        Integer n = x.get_num(), d = x.get_den();
        Integer rn, rd;
        if (!mpz_perfect_square_p(n.get_mpz_t()) || !mpz_perfect_square_p(d.get_mpz_t()))
            return false;
        mpz_sqrt(rn.get_mpz_t(), n.get_mpz_t());
        mpz_sqrt(rd.get_mpz_t(), d.get_mpz_t());
        out = Rational(rn, rd);
        out.canonicalize();
        return true;
    }
};

template <>
struct scalar_traits<double> {
    static constexpr bool exact = false;
    static constexpr const char* mode = "float";

    static bool is_zero(double x) { return x == 0.0; }
    static bool negligible(double x, double scale)
    {
        return std::fabs(x) <= tolerance() * (scale > 0 ? scale : 1.0);
    }
    static int sign(double x) { return (x > 0) - (x < 0); }
    static double abs(double x) { return std::fabs(x); }
    static double to_double(double x) { return x; }
    static double from_double(double v) { return v; }
    static double from_rational(const Rational& q) { return q.get_d(); }
    static Rational to_rational(double x) { return Rational(x); }

    static std::string to_string(double x)
    {
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.17g", x);
        return buf;
    }

    static bool sqrt(double x, double& out)
    {
        if (x < 0) {
            if (-x > tolerance()) return false;
            x = 0;
        }
        out = std::sqrt(x);
        return true;
    }
};

template <class T>
inline bool is_zero(const T& x) { return scalar_traits<T>::is_zero(x); }

template <class T>
inline T from_int(long v) { return scalar_traits<T>::from_rational(Rational(v)); }

template <class T>
inline T from_frac(long n, long d) { return scalar_traits<T>::from_rational(Rational(n, d)); }

// Parses "7", "-3/4", or (float mode only) "0.25". Rejects zero denominators.
template <class T>
T parse_scalar(const std::string& s)
{
    if (s.empty()) throw Error("ParseError", "empty scalar");
    bool decimal = s.find_first_of(".eE") != std::string::npos;
    if (decimal) {
        if constexpr (scalar_traits<T>::exact) {
            throw Error("ParseError", "decimal literal '" + s + "' in exact mode");
        } else {
            std::size_t used = 0;
            double v = 0;
            try {
                v = std::stod(s, &used);
            } catch (const std::exception&) {
                throw Error("ParseError", "bad number '" + s + "'");
            }
            if (used != s.size()) throw Error("ParseError", "bad number '" + s + "'");
            return v;
        }
    }
    auto slash = s.find('/');
    auto digits_ok = [](const std::string& t, bool allow_sign) {
        std::size_t i = 0;
        if (allow_sign && !t.empty() && (t[0] == '-' || t[0] == '+')) i = 1;
        if (i >= t.size()) return false;
        for (; i < t.size(); ++i)
            if (t[i] < '0' || t[i] > '9') return false;
        return true;
    };
    std::string num = slash == std::string::npos ? s : s.substr(0, slash);
    std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
    if (!digits_ok(num, true) || !digits_ok(den, false))
        throw Error("ParseError", "bad rational '" + s + "'");
    if (num[0] == '+') num = num.substr(1);
    Integer n(num), d(den);
    if (d == 0) throw Error("ParseError", "zero denominator in '" + s + "'");
    Rational q(n, d);
    q.canonicalize();
    return scalar_traits<T>::from_rational(q);
}

} // namespace penrose
