#pragma once

#include "matrix.hpp"

#include <random>

namespace penrose {

/// Seeded source of small rationals n/d with |n| ≤ 9, 1 ≤ d ≤ max_den.
class RationalGen {
public:
    explicit RationalGen(std::uint64_t seed, int max_den = 1) : rng_(seed), max_den_(max_den) {}

    int integer(int lo = -9, int hi = 9) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

    Rational rational()
    {
        int n = integer();
        int d = std::uniform_int_distribution<int>(1, max_den_)(rng_);
        Rational q(n, d);
        q.canonicalize();
        return q;
    }

    Rational nonzero()
    {
        for (;;) {
            Rational q = rational();
            if (sgn(q) != 0) return q;
        }
    }

    template <class T>
    T scalar() { return scalar_traits<T>::from_rational(rational()); }

    template <class T>
    Vec<T> vec(int n)
    {
        Vec<T> v(n);
        for (auto& x : v) x = scalar<T>();
        return v;
    }

    std::mt19937_64& engine() { return rng_; }

private:
    std::mt19937_64 rng_;
    int max_den_;
};

} // namespace penrose
