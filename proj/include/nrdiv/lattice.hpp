#pragma once
// Fractional weight lattices N' = Z^4 + (1/m)(a1,...,a4)Z, primitivity,
// sublattice indices and the cyclic quotient N'/<w, e1..e4>.

#include "rational.hpp"

#include <array>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace nrdiv {

using i64 = std::int64_t;
using Vec4 = std::array<i64, 4>;

/// Invariant factors of an integer matrix (rows x cols), computed by the
/// classical elimination to Smith normal form. Works for any signed integer
/// type with exact division (i64, BigInt).
template <class Int> std::vector<Int> smith_invariants(std::vector<std::vector<Int>> a) {
    const std::size_t rows = a.size();
    const std::size_t cols = rows ? a[0].size() : 0;
    std::vector<Int> diag;
    auto absval = [](const Int &x) { return x < 0 ? Int(-x) : x; };
    std::size_t t = 0;
    for (; t < rows && t < cols; ++t) {
        // choose the smallest nonzero pivot in the remaining block
        bool found = false;
        std::size_t pr = t, pc = t;
        for (std::size_t i = t; i < rows; ++i)
            for (std::size_t j = t; j < cols; ++j)
                if (a[i][j] != 0 && (!found || absval(a[i][j]) < absval(a[pr][pc]))) {
                    pr = i;
                    pc = j;
                    found = true;
                }
        if (!found)
            break;
        std::swap(a[t], a[pr]);
        for (auto &row : a)
            std::swap(row[t], row[pc]);
        for (;;) {
            bool dirty = false;
            for (std::size_t i = t + 1; i < rows; ++i) {
                if (a[i][t] == 0)
                    continue;
                Int q = a[i][t] / a[t][t];
                for (std::size_t j = t; j < cols; ++j)
                    a[i][j] -= q * a[t][j];
                if (a[i][t] != 0) {
                    std::swap(a[t], a[i]);
                    dirty = true;
                }
            }
            for (std::size_t j = t + 1; j < cols; ++j) {
                if (a[t][j] == 0)
                    continue;
                Int q = a[t][j] / a[t][t];
                for (std::size_t i = t; i < rows; ++i)
                    a[i][j] -= q * a[i][t];
                if (a[t][j] != 0) {
                    for (auto &row : a)
                        std::swap(row[t], row[j]);
                    dirty = true;
                }
            }
            if (dirty)
                continue;
            // enforce divisibility of the remaining block by the pivot
            bool fixed = true;
            for (std::size_t i = t + 1; i < rows && fixed; ++i)
                for (std::size_t j = t + 1; j < cols; ++j)
                    if (a[i][j] % a[t][t] != 0) {
                        for (std::size_t k = t; k < cols; ++k)
                            a[t][k] += a[i][k];
                        fixed = false;
                        break;
                    }
            if (fixed)
                break;
        }
        diag.push_back(absval(a[t][t]));
    }
    return diag;
}

inline i64 gcd_all(const Vec4 &v) {
    i64 g = 0;
    for (i64 x : v)
        g = std::gcd(g, x);
    return g;
}

/// N' = Z^4 + (1/m)(a1..a4)Z. Weight vectors are stored as integer
/// numerators over m.
struct FractionalLattice {
    i64 m = 1;
    Vec4 a{0, 0, 0, 0};

    FractionalLattice() = default;
    FractionalLattice(i64 index, Vec4 residues) : m(index), a(residues) {
        if (m < 1)
            throw std::invalid_argument("lattice index must be positive");
        for (auto &x : a)
            x = mod_floor(x, m);
    }

    /// Order of the generator (1/m)a modulo Z^4.
    i64 generator_order() const {
        i64 g = m;
        for (i64 x : a)
            g = std::gcd(g, x);
        return m / g;
    }

    bool operator==(const FractionalLattice &) const = default;
};

/// A weight vector w = num/m in the home lattice (membership is not
/// enforced here; see is_member).
struct WeightVector {
    Vec4 num{0, 0, 0, 0};
    FractionalLattice lattice;

    WeightVector() = default;
    WeightVector(Vec4 numerators, FractionalLattice home) : num(numerators), lattice(home) {}

    static WeightVector from_rationals(const std::array<Rational, 4> &w, const FractionalLattice &home) {
        Vec4 v{};
        for (int i = 0; i < 4; ++i) {
            Rational s = w[i] * home.m;
            if (!is_integer(s))
                throw std::invalid_argument("component denominator does not divide the lattice index");
            v[i] = static_cast<i64>(numerator_of(s));
        }
        return {v, home};
    }

    Rational component(int i) const { return make_rational(num[i], lattice.m); }
    std::array<Rational, 4> components() const {
        return {component(0), component(1), component(2), component(3)};
    }
    Rational sum() const { return make_rational(num[0] + num[1] + num[2] + num[3], lattice.m); }
    bool strictly_positive() const { return num[0] > 0 && num[1] > 0 && num[2] > 0 && num[3] > 0; }

    /// Primitive integer vector on the same ray; these are the weights of
    /// the ambient weighted projective space P(w).
    Vec4 integral_weights() const {
        i64 g = gcd_all(num);
        Vec4 r = num;
        if (g > 1)
            for (auto &x : r)
                x /= g;
        return r;
    }

    bool operator==(const WeightVector &) const = default;
};

/// Membership of the numerator vector v/m: some k with v = k a (mod m).
inline bool is_member_numerators(const Vec4 &v, const FractionalLattice &L) {
    for (i64 k = 0; k < L.m; ++k) {
        bool ok = true;
        for (int i = 0; i < 4 && ok; ++i)
            ok = mod_floor(v[i] - k * L.a[i], L.m) == 0;
        if (ok)
            return true;
    }
    return false;
}

inline bool is_member(const WeightVector &w, const FractionalLattice &L) {
    if (w.lattice.m == L.m)
        return is_member_numerators(w.num, L);
    // re-express over L.m when the denominators are compatible
    Vec4 v{};
    for (int i = 0; i < 4; ++i) {
        Rational s = w.component(i) * L.m;
        if (!is_integer(s))
            return false;
        v[i] = static_cast<i64>(numerator_of(s));
    }
    return is_member_numerators(v, L);
}

inline bool is_member(const WeightVector &w) { return is_member(w, w.lattice); }

inline std::vector<i64> prime_factors(i64 n) {
    std::vector<i64> ps;
    if (n < 0)
        n = -n;
    for (i64 p = 2; p * p <= n; ++p)
        if (n % p == 0) {
            ps.push_back(p);
            while (n % p == 0)
                n /= p;
        }
    if (n > 1)
        ps.push_back(n);
    return ps;
}

/// True iff no integer d >= 2 has w/d in the lattice. It suffices to test
/// the primes dividing the gcd of the numerators.
inline bool is_primitive(const WeightVector &w) {
    i64 g = gcd_all(w.num);
    if (g == 0)
        throw std::invalid_argument("zero weight vector");
    for (i64 p : prime_factors(g)) {
        Vec4 q = w.num;
        for (auto &x : q)
            x /= p;
        if (is_member_numerators(q, w.lattice))
            return false;
    }
    return true;
}

namespace detail {
inline BigInt lattice_volume(const std::vector<Vec4> &gens) {
    std::vector<std::vector<BigInt>> mat(4, std::vector<BigInt>(gens.size()));
    for (std::size_t j = 0; j < gens.size(); ++j)
        for (int i = 0; i < 4; ++i)
            mat[i][j] = gens[j][i];
    auto d = smith_invariants(mat);
    if (d.size() < 4)
        throw std::logic_error("generators do not span a full-rank lattice");
    BigInt vol = 1;
    for (auto &x : d)
        vol *= x;
    return vol;
}
} // namespace detail

/// [N' : N''] with N'' = <w, e1, ..., e4>, via Smith normal form of the
/// generator matrices scaled by m.
inline i64 sublattice_index(const WeightVector &w) {
    const auto &L = w.lattice;
    std::vector<Vec4> base;
    for (int i = 0; i < 4; ++i) {
        Vec4 e{0, 0, 0, 0};
        e[i] = L.m;
        base.push_back(e);
    }
    auto big = base;
    big.push_back(L.a);
    auto small = base;
    small.push_back(w.num);
    BigInt q = detail::lattice_volume(small) / detail::lattice_volume(big);
    return static_cast<i64>(q);
}

/// Cyclic group N'/N'' and the residues by which its generator scales the
/// quasi-homogeneous coordinates of P(w).
struct CyclicGroup {
    i64 order = 1;
    Vec4 residues{0, 0, 0, 0};
    bool trivial() const { return order == 1; }
    bool operator==(const CyclicGroup &) const = default;
};

/// The generator (1/m)a of N' is written as (s/m)v + z with z integral and
/// s the least non-negative integer making z integral after multiplying by
/// the index g; its residues mod g give the action on degree-0 monomials:
/// for e with <v,e> = 0 one has <z,e> = g<a,e>/m, so <z,e> = 0 (mod g)
/// exactly when x^e is invariant under Z_m.
inline CyclicGroup quotient_group_action(const WeightVector &w) {
    const auto &L = w.lattice;
    i64 g = sublattice_index(w);
    CyclicGroup G;
    G.order = g;
    if (g == 1)
        return G;
    for (i64 s = 0; s < L.m * g + 1; ++s) {
        bool ok = true;
        for (int i = 0; i < 4 && ok; ++i)
            ok = mod_floor(g * L.a[i] - s * w.num[i], L.m) == 0;
        if (!ok)
            continue;
        for (int i = 0; i < 4; ++i)
            G.residues[i] = mod_floor((g * L.a[i] - s * w.num[i]) / L.m, g);
        return G;
    }
    throw std::logic_error("quotient action: no representative found");
}

inline std::string to_string(const WeightVector &w) {
    std::string s = w.lattice.m == 1 ? "(" : "1/" + std::to_string(w.lattice.m) + "(";
    for (int i = 0; i < 4; ++i) {
        if (i)
            s += ",";
        s += std::to_string(w.num[i]);
    }
    return s + ")";
}

/// Reduced display: the common factor of numerators and m is cancelled, so
/// that 1/2(2,4,2,6) prints as (1,2,1,3).
inline std::string to_display(const WeightVector &w) {
    i64 g = std::gcd(gcd_all(w.num), w.lattice.m);
    Vec4 v = w.num;
    for (auto &x : v)
        x /= g;
    i64 m = w.lattice.m / g;
    std::string s = m == 1 ? "(" : "1/" + std::to_string(m) + "(";
    for (int i = 0; i < 4; ++i) {
        if (i)
            s += ",";
        s += std::to_string(v[i]);
    }
    return s + ")";
}

} // namespace nrdiv
