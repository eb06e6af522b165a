#pragma once

#include "poly.hpp"

#include <vector>

namespace penrose {

template <class T>
class PolyMatrix {
public:
    using Poly = HomogeneousPoly<T>;

    PolyMatrix() = default;
    PolyMatrix(int order, int vars) : k_(order), m_(vars), e_(static_cast<std::size_t>(order) * order, Poly(vars, 0))
    {
        if (order < 0 || order > 5) throw Error("SizeMismatch", "PolyMatrix order must be <= 5");
    }

    int order() const { return k_; }
    int vars() const { return m_; }
    const Poly& operator()(int i, int j) const { return e_[static_cast<std::size_t>(i) * k_ + j]; }
    Poly& operator()(int i, int j) { return e_[static_cast<std::size_t>(i) * k_ + j]; }

    void set_sym(int i, int j, const Poly& p)
    {
        (*this)(i, j) = p;
        (*this)(j, i) = p;
    }

    /// Determinant of the submatrix on the given (increasing) row and column indices.
    Poly subdet(const std::vector<int>& rows, const std::vector<int>& cols) const
    {
        if (rows.size() != cols.size()) throw Error("SizeMismatch", "subdet needs |rows| = |cols|");
        for (int r : rows)
            if (r < 0 || r >= k_) throw Error("SizeMismatch", "row index out of range");
        for (int c : cols)
            if (c < 0 || c >= k_) throw Error("SizeMismatch", "column index out of range");
        return cofactor(rows, cols);
    }

    Poly det() const
    {
        std::vector<int> all(k_);
        for (int i = 0; i < k_; ++i) all[i] = i;
        return cofactor(all, all);
    }

private:
    // expansion along the first selected row
    Poly cofactor(const std::vector<int>& rows, const std::vector<int>& cols) const
    {
        if (rows.empty()) return Poly::constant(m_, T(1));
        if (rows.size() == 1) return (*this)(rows[0], cols[0]);
        std::vector<int> rest(rows.begin() + 1, rows.end());
        Poly acc(m_, 0);
        for (std::size_t j = 0; j < cols.size(); ++j) {
            const Poly& a = (*this)(rows[0], cols[j]);
            if (a.is_zero()) continue;
            std::vector<int> sub;
            sub.reserve(cols.size() - 1);
            for (std::size_t t = 0; t < cols.size(); ++t)
                if (t != j) sub.push_back(cols[t]);
            Poly minor = cofactor(rest, sub);
            if (minor.is_zero()) continue;
            Poly term = a * minor;
            if (j % 2) acc -= term;
            else acc += term;
        }
        return acc;
    }

    int k_ = 0, m_ = 3;
    std::vector<Poly> e_;
};

} // namespace penrose
