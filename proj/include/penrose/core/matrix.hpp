#pragma once

#include "poly.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

namespace penrose {

template <class T>
using Vec = std::vector<T>;

template <class T>
class Matrix {
public:
    Matrix() = default;
    Matrix(int rows, int cols) : r_(rows), c_(cols), a_(static_cast<std::size_t>(rows) * cols, T(0)) {}

    static Matrix identity(int k)
    {
        Matrix m(k, k);
        for (int i = 0; i < k; ++i) m(i, i) = T(1);
        return m;
    }
    static Matrix from_rows(const std::vector<Vec<T>>& rows)
    {
        Matrix m(static_cast<int>(rows.size()), rows.empty() ? 0 : static_cast<int>(rows[0].size()));
        for (int i = 0; i < m.r_; ++i)
            for (int j = 0; j < m.c_; ++j) m(i, j) = rows[i][j];
        return m;
    }
    static Matrix from_cols(const std::vector<Vec<T>>& cols) { return from_rows(cols).transpose(); }

    int rows() const { return r_; }
    int cols() const { return c_; }
    T& operator()(int i, int j) { return a_[static_cast<std::size_t>(i) * c_ + j]; }
    const T& operator()(int i, int j) const { return a_[static_cast<std::size_t>(i) * c_ + j]; }

    Vec<T> row(int i) const { return Vec<T>(a_.begin() + i * c_, a_.begin() + (i + 1) * c_); }
    Vec<T> col(int j) const
    {
        Vec<T> v(r_);
        for (int i = 0; i < r_; ++i) v[i] = (*this)(i, j);
        return v;
    }

    Matrix transpose() const
    {
        Matrix t(c_, r_);
        for (int i = 0; i < r_; ++i)
            for (int j = 0; j < c_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    friend Matrix operator*(const Matrix& a, const Matrix& b)
    {
        Matrix p(a.r_, b.c_);
        for (int i = 0; i < a.r_; ++i)
            for (int k = 0; k < a.c_; ++k) {
                if (is_zero(a(i, k))) continue;
                for (int j = 0; j < b.c_; ++j) p(i, j) += a(i, k) * b(k, j);
            }
        return p;
    }
    friend Vec<T> operator*(const Matrix& a, const Vec<T>& v)
    {
        Vec<T> out(a.r_, T(0));
        for (int i = 0; i < a.r_; ++i)
            for (int j = 0; j < a.c_; ++j) out[i] += a(i, j) * v[j];
        return out;
    }
    friend Matrix operator+(Matrix a, const Matrix& b)
    {
        for (std::size_t i = 0; i < a.a_.size(); ++i) a.a_[i] += b.a_[i];
        return a;
    }
    friend Matrix operator-(Matrix a, const Matrix& b)
    {
        for (std::size_t i = 0; i < a.a_.size(); ++i) a.a_[i] -= b.a_[i];
        return a;
    }
    friend Matrix operator*(const T& s, Matrix a)
    {
        for (auto& x : a.a_) x *= s;
        return a;
    }
    friend bool operator==(const Matrix& a, const Matrix& b)
    {
        return a.r_ == b.r_ && a.c_ == b.c_ && a.a_ == b.a_;
    }

    const std::vector<T>& data() const { return a_; }

    double max_abs() const
    {
        double s = 0;
        for (const auto& x : a_) s = std::max(s, std::fabs(scalar_traits<T>::to_double(x)));
        return s;
    }

private:
    int r_ = 0, c_ = 0;
    std::vector<T> a_;
};

/// Symmetric matrix of order 3 or 4, upper triangle stored row-major.
template <class T>
class SymMatrix {
public:
    SymMatrix() = default;
    explicit SymMatrix(int k) : k_(k), u_(static_cast<std::size_t>(k) * (k + 1) / 2, T(0)) {}

    static SymMatrix identity(int k)
    {
        SymMatrix s(k);
        for (int i = 0; i < k; ++i) s.set(i, i, T(1));
        return s;
    }
    static SymMatrix diag(const Vec<T>& d)
    {
        SymMatrix s(static_cast<int>(d.size()));
        for (int i = 0; i < s.k_; ++i) s.set(i, i, d[i]);
        return s;
    }
    // Takes the upper triangle of a square matrix; callers check symmetry if they care.
    static SymMatrix from_matrix(const Matrix<T>& m)
    {
        SymMatrix s(m.rows());
        for (int i = 0; i < s.k_; ++i)
            for (int j = i; j < s.k_; ++j) s.set(i, j, m(i, j));
        return s;
    }
    /// v·vᵀ
    static SymMatrix outer(const Vec<T>& v)
    {
        SymMatrix s(static_cast<int>(v.size()));
        for (int i = 0; i < s.k_; ++i)
            for (int j = i; j < s.k_; ++j) s.set(i, j, v[i] * v[j]);
        return s;
    }

    int order() const { return k_; }
    const T& operator()(int i, int j) const { return u_[idx(i, j)]; }
    void set(int i, int j, const T& v) { u_[idx(i, j)] = v; }

    Matrix<T> dense() const
    {
        Matrix<T> m(k_, k_);
        for (int i = 0; i < k_; ++i)
            for (int j = 0; j < k_; ++j) m(i, j) = (*this)(i, j);
        return m;
    }

    friend SymMatrix operator+(SymMatrix a, const SymMatrix& b)
    {
        for (std::size_t i = 0; i < a.u_.size(); ++i) a.u_[i] += b.u_[i];
        return a;
    }
    friend SymMatrix operator-(SymMatrix a, const SymMatrix& b)
    {
        for (std::size_t i = 0; i < a.u_.size(); ++i) a.u_[i] -= b.u_[i];
        return a;
    }
    friend SymMatrix operator*(const T& s, SymMatrix a)
    {
        for (auto& x : a.u_) x *= s;
        return a;
    }
    friend Vec<T> operator*(const SymMatrix& a, const Vec<T>& v) { return a.dense() * v; }
    friend bool operator==(const SymMatrix& a, const SymMatrix& b) { return a.k_ == b.k_ && a.u_ == b.u_; }

    bool is_zero() const
    {
        return std::all_of(u_.begin(), u_.end(), [](const T& x) { return penrose::is_zero(x); });
    }
    const std::vector<T>& upper() const { return u_; }
    double max_abs() const
    {
        double s = 0;
        for (const auto& x : u_) s = std::max(s, std::fabs(scalar_traits<T>::to_double(x)));
        return s;
    }

    /// Bᵀ·A·B for a k×r basis matrix B.
    SymMatrix congruence(const Matrix<T>& b) const
    {
        return SymMatrix::from_matrix(b.transpose() * dense() * b);
    }

    T quad(const Vec<T>& v) const
    {
        T acc(0);
        for (int i = 0; i < k_; ++i)
            for (int j = 0; j < k_; ++j) acc += v[i] * (*this)(i, j) * v[j];
        return acc;
    }
    T bilinear(const Vec<T>& v, const Vec<T>& w) const
    {
        T acc(0);
        for (int i = 0; i < k_; ++i)
            for (int j = 0; j < k_; ++j) acc += v[i] * (*this)(i, j) * w[j];
        return acc;
    }

    template <class U>
    SymMatrix<U> cast() const
    {
        SymMatrix<U> r(k_);
        for (int i = 0; i < k_; ++i)
            for (int j = i; j < k_; ++j)
                r.set(i, j, scalar_traits<U>::from_rational(scalar_traits<T>::to_rational((*this)(i, j))));
        return r;
    }

private:
    std::size_t idx(int i, int j) const
    {
        if (i > j) std::swap(i, j);
        return static_cast<std::size_t>(i) * k_ - static_cast<std::size_t>(i) * (i - 1) / 2 + (j - i);
    }
    int k_ = 0;
    std::vector<T> u_;
};

// ---- quadratic forms <-> symmetric matrices ----

template <class T>
SymMatrix<T> poly_to_sym(const HomogeneousPoly<T>& f)
{
    if (f.degree() != 2 && !f.is_zero()) throw Error("DegreeMismatch", "poly_to_sym needs degree 2");
    int m = f.vars();
    SymMatrix<T> s(m);
    T half = from_frac<T>(1, 2);
    for (const auto& [e, c] : f.terms()) {
        int i = -1, j = -1;
        for (int v = 0; v < m; ++v) {
            if (e[v] == 2) i = j = v;
            else if (e[v] == 1) (i < 0 ? i : j) = v;
        }
        s.set(i, j, i == j ? c : c * half);
    }
    return s;
}

template <class T>
HomogeneousPoly<T> sym_to_poly(const SymMatrix<T>& a)
{
    int m = a.order();
    HomogeneousPoly<T> f(m, 2);
    for (int i = 0; i < m; ++i)
        for (int j = i; j < m; ++j) {
            Monomial e{};
            e[i] += 1;
            e[j] += 1;
            f.set(e, i == j ? a(i, j) : a(i, j) * from_int<T>(2));
        }
    return f;
}

// ---- elimination ----

namespace detail {

inline std::vector<std::vector<Integer>> clear_rows(const Matrix<Rational>& m, Rational* scale = nullptr)
{
    std::vector<std::vector<Integer>> a(m.rows(), std::vector<Integer>(m.cols()));
    Rational s = 1;
    for (int i = 0; i < m.rows(); ++i) {
        Integer l = 1;
        for (int j = 0; j < m.cols(); ++j) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), m(i, j).get_den_mpz_t());
        for (int j = 0; j < m.cols(); ++j) a[i][j] = m(i, j).get_num() * (l / m(i, j).get_den());
        s *= l;
    }
    if (scale) *scale = s;
    return a;
}

// Bareiss elimination; returns rank, and the determinant for square input.
inline int bareiss(std::vector<std::vector<Integer>>& a, Integer* det = nullptr)
{
    int rows = static_cast<int>(a.size());
    int cols = rows ? static_cast<int>(a[0].size()) : 0;
    Integer prev = 1;
    int rank = 0, sign = 1;
    for (int c = 0; c < cols && rank < rows; ++c) {
        int piv = -1;
        for (int i = rank; i < rows; ++i)
            if (a[i][c] != 0) { piv = i; break; }
        if (piv < 0) continue;
        if (piv != rank) {
            std::swap(a[piv], a[rank]);
            sign = -sign;
        }
        for (int i = rank + 1; i < rows; ++i) {
            for (int j = c + 1; j < cols; ++j) {
                a[i][j] = a[rank][c] * a[i][j] - a[i][c] * a[rank][j];
                mpz_divexact(a[i][j].get_mpz_t(), a[i][j].get_mpz_t(), prev.get_mpz_t());
            }
            a[i][c] = 0;
        }
        prev = a[rank][c];
        ++rank;
    }
    if (det) *det = (rank == rows && rows == cols) ? Integer(sign * prev) : Integer(0);
    return rank;
}

} // namespace detail

template <class T>
int rank(const Matrix<T>& m)
{
    if (m.rows() == 0 || m.cols() == 0) return 0;
    if constexpr (scalar_traits<T>::exact) {
        auto a = detail::clear_rows(m);
        return detail::bareiss(a);
    } else {
        Matrix<double> a = m;
        double tau = tolerance() * a.max_abs();
        int r = 0;
        std::vector<bool> used_col(a.cols(), false);
        std::vector<bool> used_row(a.rows(), false);
        while (true) {
            int bi = -1, bj = -1;
            double best = 0;
            for (int i = 0; i < a.rows(); ++i) {
                if (used_row[i]) continue;
                for (int j = 0; j < a.cols(); ++j)
                    if (!used_col[j] && std::fabs(a(i, j)) > best) { best = std::fabs(a(i, j)); bi = i; bj = j; }
            }
            if (bi < 0 || best <= tau) break;
            used_row[bi] = used_col[bj] = true;
            ++r;
            for (int i = 0; i < a.rows(); ++i) {
                if (used_row[i]) continue;
                double f = a(i, bj) / a(bi, bj);
                for (int j = 0; j < a.cols(); ++j) a(i, j) -= f * a(bi, j);
            }
        }
        return r;
    }
}

template <class T>
int rank(const SymMatrix<T>& s) { return rank(s.dense()); }

template <class T>
T det(const Matrix<T>& m)
{
    if (m.rows() != m.cols()) throw Error("SizeMismatch", "det of non-square matrix");
    if (m.rows() == 0) return T(1);
    if constexpr (scalar_traits<T>::exact) {
        Rational scale;
        auto a = detail::clear_rows(m, &scale);
        Integer d;
        detail::bareiss(a, &d);
        Rational r(d);
        return r / scale;
    } else {
        Matrix<double> a = m;
        int k = a.rows();
        double d = 1;
        for (int c = 0; c < k; ++c) {
            int piv = c;
            for (int i = c + 1; i < k; ++i)
                if (std::fabs(a(i, c)) > std::fabs(a(piv, c))) piv = i;
            if (a(piv, c) == 0.0) return 0.0;
            if (piv != c) {
                for (int j = 0; j < k; ++j) std::swap(a(piv, j), a(c, j));
                d = -d;
            }
            d *= a(c, c);
            for (int i = c + 1; i < k; ++i) {
                double f = a(i, c) / a(c, c);
                for (int j = c; j < k; ++j) a(i, j) -= f * a(c, j);
            }
        }
        return d;
    }
}

template <class T>
T det(const SymMatrix<T>& s) { return det(s.dense()); }

template <class T>
Matrix<T> submatrix(const Matrix<T>& m, const std::vector<int>& rows, const std::vector<int>& cols)
{
    Matrix<T> s(static_cast<int>(rows.size()), static_cast<int>(cols.size()));
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < cols.size(); ++j) s(i, j) = m(rows[i], cols[j]);
    return s;
}

template <class T>
Matrix<T> adjugate(const Matrix<T>& m)
{
    int k = m.rows();
    Matrix<T> adj(k, k);
    if (k == 1) {
        adj(0, 0) = T(1);
        return adj;
    }
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) {
            std::vector<int> rs, cs;
            for (int t = 0; t < k; ++t) {
                if (t != j) rs.push_back(t);
                if (t != i) cs.push_back(t);
            }
            T c = det(submatrix(m, rs, cs));
            adj(i, j) = ((i + j) % 2) ? T(-c) : c;
        }
    return adj;
}

template <class T>
SymMatrix<T> adjugate(const SymMatrix<T>& s) { return SymMatrix<T>::from_matrix(adjugate(s.dense())); }

/// Basis of the right null space. Exact in exact mode; pivot threshold in float mode.
template <class T>
std::vector<Vec<T>> nullspace(const Matrix<T>& m)
{
    Matrix<T> a = m;
    int rows = a.rows(), cols = a.cols();
    double tau = scalar_traits<T>::exact ? 0.0 : tolerance() * a.max_abs();
    std::vector<int> pivcol;
    int r = 0;
    for (int c = 0; c < cols && r < rows; ++c) {
        int piv = -1;
        if constexpr (scalar_traits<T>::exact) {
            for (int i = r; i < rows; ++i)
                if (!is_zero(a(i, c))) { piv = i; break; }
        } else {
            double best = tau;
            for (int i = r; i < rows; ++i)
                if (std::fabs(a(i, c)) > best) { best = std::fabs(a(i, c)); piv = i; }
        }
        if (piv < 0) continue;
        for (int j = 0; j < cols; ++j) std::swap(a(piv, j), a(r, j));
        T inv = T(1) / a(r, c);
        for (int j = 0; j < cols; ++j) a(r, j) *= inv;
        for (int i = 0; i < rows; ++i) {
            if (i == r || is_zero(a(i, c))) continue;
            T f = a(i, c);
            for (int j = 0; j < cols; ++j) a(i, j) -= f * a(r, j);
        }
        pivcol.push_back(c);
        ++r;
    }
    std::vector<Vec<T>> basis;
    for (int free = 0; free < cols; ++free) {
        if (std::find(pivcol.begin(), pivcol.end(), free) != pivcol.end()) continue;
        Vec<T> v(cols, T(0));
        v[free] = T(1);
        for (int i = 0; i < r; ++i) v[pivcol[i]] = -a(i, free);
        basis.push_back(v);
    }
    return basis;
}

template <class T>
Matrix<T> inverse(const Matrix<T>& m)
{
    T d = det(m);
    if (is_zero(d)) throw Error("Singular", "matrix not invertible");
    Matrix<T> adj = adjugate(m);
    return (T(1) / d) * adj;
}

} // namespace penrose
