#pragma once
// Dense univariate polynomials over Q: gcd, square-free decomposition and
// the root-multiplicity bookkeeping used by the genus computations.

#include "rational.hpp"

#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

namespace nrdiv {

class UPoly {
  public:
    UPoly() = default;
    explicit UPoly(std::vector<Rational> c) : c_(std::move(c)) { trim(); }
    static UPoly constant(const Rational &x) { return UPoly(std::vector<Rational>{x}); }
    static UPoly monomial(const Rational &x, std::size_t deg) {
        std::vector<Rational> c(deg + 1);
        c[deg] = x;
        return UPoly(std::move(c));
    }

    bool is_zero() const { return c_.empty(); }
    /// Degree; -1 for the zero polynomial.
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    const Rational &coeff(std::size_t i) const {
        static const Rational zero;
        return i < c_.size() ? c_[i] : zero;
    }
    const Rational &lead() const { return c_.back(); }
    const std::vector<Rational> &coeffs() const { return c_; }

    /// Largest e with X^e dividing the polynomial (the order at X = 0).
    int order_at_zero() const {
        for (std::size_t i = 0; i < c_.size(); ++i)
            if (c_[i] != 0)
                return static_cast<int>(i);
        return -1;
    }
    UPoly shifted_down(int e) const {
        return UPoly(std::vector<Rational>(c_.begin() + e, c_.end()));
    }

    UPoly derivative() const {
        if (c_.size() <= 1)
            return {};
        std::vector<Rational> d(c_.size() - 1);
        for (std::size_t i = 1; i < c_.size(); ++i)
            d[i - 1] = c_[i] * static_cast<long long>(i);
        return UPoly(std::move(d));
    }

    UPoly monic() const {
        if (is_zero())
            return {};
        std::vector<Rational> d(c_);
        Rational l = lead();
        for (auto &x : d)
            x /= l;
        return UPoly(std::move(d));
    }

    Rational eval(const Rational &x) const {
        Rational r;
        for (std::size_t i = c_.size(); i-- > 0;)
            r = r * x + c_[i];
        return r;
    }

    friend UPoly operator+(const UPoly &a, const UPoly &b) {
        std::vector<Rational> c(std::max(a.c_.size(), b.c_.size()));
        for (std::size_t i = 0; i < c.size(); ++i)
            c[i] = a.coeff(i) + b.coeff(i);
        return UPoly(std::move(c));
    }
    friend UPoly operator-(const UPoly &a, const UPoly &b) {
        std::vector<Rational> c(std::max(a.c_.size(), b.c_.size()));
        for (std::size_t i = 0; i < c.size(); ++i)
            c[i] = a.coeff(i) - b.coeff(i);
        return UPoly(std::move(c));
    }
    friend UPoly operator*(const UPoly &a, const UPoly &b) {
        if (a.is_zero() || b.is_zero())
            return {};
        std::vector<Rational> c(a.c_.size() + b.c_.size() - 1);
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            for (std::size_t j = 0; j < b.c_.size(); ++j)
                c[i + j] += a.c_[i] * b.c_[j];
        return UPoly(std::move(c));
    }
    friend bool operator==(const UPoly &a, const UPoly &b) { return a.c_ == b.c_; }

    /// Euclidean division: returns (quotient, remainder).
    friend std::pair<UPoly, UPoly> divmod(const UPoly &a, const UPoly &b) {
        if (b.is_zero())
            throw std::domain_error("polynomial division by zero");
        std::vector<Rational> r(a.c_);
        if (a.degree() < b.degree())
            return {UPoly{}, a};
        std::vector<Rational> q(a.c_.size() - b.c_.size() + 1);
        for (std::size_t k = q.size(); k-- > 0;) {
            Rational t = r[k + b.c_.size() - 1] / b.lead();
            q[k] = t;
            if (t == 0)
                continue;
            for (std::size_t j = 0; j < b.c_.size(); ++j)
                r[k + j] -= t * b.c_[j];
        }
        return {UPoly(std::move(q)), UPoly(std::move(r))};
    }

  private:
    void trim() {
        while (!c_.empty() && c_.back() == 0)
            c_.pop_back();
    }
    std::vector<Rational> c_;
};

/// Monic greatest common divisor (zero if both inputs are zero).
inline UPoly gcd(UPoly a, UPoly b) {
    while (!b.is_zero()) {
        auto r = divmod(a, b).second;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

inline UPoly exact_quotient(const UPoly &a, const UPoly &b) {
    auto [q, r] = divmod(a, b);
    if (!r.is_zero())
        throw std::logic_error("inexact polynomial division");
    return q;
}

/// Yun's square-free decomposition of a nonzero polynomial: returns the
/// list (P_1, P_2, ...) of monic square-free pairwise coprime factors with
/// p = lead * prod P_i^i. The roots of P_i over C are exactly the roots of
/// p of multiplicity i.
inline std::vector<UPoly> squarefree_decomposition(const UPoly &p) {
    if (p.is_zero())
        throw std::domain_error("square-free decomposition of zero");
    std::vector<UPoly> out;
    if (p.degree() == 0)
        return out;
    UPoly f = p.monic();
    UPoly d = f.derivative();
    UPoly a = gcd(f, d);
    UPoly b = exact_quotient(f, a);
    UPoly c = exact_quotient(d, a);
    UPoly e = c - b.derivative();
    while (b.degree() > 0) {
        UPoly g = gcd(b, e);
        out.push_back(g);
        b = exact_quotient(b, g);
        c = exact_quotient(e, g);
        e = c - b.derivative();
    }
    while (!out.empty() && out.back().degree() == 0)
        out.pop_back();
    return out;
}

/// Multiset of root multiplicities over C, as (multiplicity, count) pairs:
/// count = number of distinct roots with that multiplicity.
inline std::vector<std::pair<int, int>> root_multiplicities(const UPoly &p) {
    std::vector<std::pair<int, int>> out;
    auto parts = squarefree_decomposition(p);
    for (std::size_t i = 0; i < parts.size(); ++i)
        if (parts[i].degree() > 0)
            out.emplace_back(static_cast<int>(i + 1), parts[i].degree());
    return out;
}

inline bool is_squarefree(const UPoly &p) {
    if (p.degree() <= 0)
        return true;
    return gcd(p, p.derivative()).degree() == 0;
}

} // namespace nrdiv
