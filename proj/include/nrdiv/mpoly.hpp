#pragma once
// Sparse multivariate polynomials over Q with a graded reverse
// lexicographic term order, and a small Buchberger engine used to decide
// whether a polynomial system has a zero on the complex torus.

#include "rational.hpp"
#include "upoly.hpp"

#include <algorithm>
#include <cstdint>
#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace nrdiv {

using Mono = std::vector<int>;

/// Grevlex "greater" comparator: higher total degree first, ties broken by
/// the smaller exponent in the last differing variable.
struct GrevlexGreater {
    bool operator()(const Mono &a, const Mono &b) const {
        int da = 0, db = 0;
        for (int x : a)
            da += x;
        for (int x : b)
            db += x;
        if (da != db)
            return da > db;
        for (std::size_t i = a.size(); i-- > 0;)
            if (a[i] != b[i])
                return a[i] < b[i];
        return false;
    }
};

class MPoly {
  public:
    using Terms = std::map<Mono, Rational, GrevlexGreater>;

    MPoly() = default;
    explicit MPoly(int nvars) : n_(nvars) {}

    static MPoly constant(int nvars, const Rational &c) {
        MPoly p(nvars);
        if (c != 0)
            p.t_[Mono(nvars, 0)] = c;
        return p;
    }
    static MPoly variable(int nvars, int i) {
        MPoly p(nvars);
        Mono m(nvars, 0);
        m[i] = 1;
        p.t_[m] = 1;
        return p;
    }

    int nvars() const { return n_; }
    bool is_zero() const { return t_.empty(); }
    std::size_t size() const { return t_.size(); }
    const Terms &terms() const { return t_; }
    const Mono &lead_mono() const { return t_.begin()->first; }
    const Rational &lead_coeff() const { return t_.begin()->second; }
    bool is_constant() const { return t_.empty() || (t_.size() == 1 && total_degree(t_.begin()->first) == 0); }

    static int total_degree(const Mono &m) {
        int d = 0;
        for (int x : m)
            d += x;
        return d;
    }

    void add_term(const Mono &m, const Rational &c) {
        if (c == 0)
            return;
        auto it = t_.find(m);
        if (it == t_.end()) {
            t_.emplace(m, c);
            return;
        }
        it->second += c;
        if (it->second == 0)
            t_.erase(it);
    }

    Rational coeff(const Mono &m) const {
        auto it = t_.find(m);
        return it == t_.end() ? Rational(0) : it->second;
    }

    friend MPoly operator+(MPoly a, const MPoly &b) {
        for (auto &[m, c] : b.t_)
            a.add_term(m, c);
        return a;
    }
    friend MPoly operator-(MPoly a, const MPoly &b) {
        for (auto &[m, c] : b.t_)
            a.add_term(m, -c);
        return a;
    }
    friend MPoly operator*(const MPoly &a, const MPoly &b) {
        MPoly r(std::max(a.n_, b.n_));
        for (auto &[ma, ca] : a.t_)
            for (auto &[mb, cb] : b.t_) {
                Mono m(ma.size());
                for (std::size_t i = 0; i < m.size(); ++i)
                    m[i] = ma[i] + mb[i];
                r.add_term(m, ca * cb);
            }
        return r;
    }
    MPoly scaled(const Rational &c, const Mono &shift) const {
        MPoly r(n_);
        if (c == 0)
            return r;
        for (auto &[m, x] : t_) {
            Mono mm(m);
            for (std::size_t i = 0; i < mm.size(); ++i)
                mm[i] += shift[i];
            r.t_.emplace(std::move(mm), x * c);
        }
        return r;
    }
    MPoly monic() const {
        if (is_zero())
            return *this;
        return scaled(1 / lead_coeff(), Mono(n_, 0));
    }

    MPoly derivative(int var) const {
        MPoly r(n_);
        for (auto &[m, c] : t_) {
            if (m[var] == 0)
                continue;
            Mono mm(m);
            mm[var] -= 1;
            r.add_term(mm, c * m[var]);
        }
        return r;
    }

    /// Substitutes x_var = value (keeps the variable count).
    MPoly substitute(int var, const Rational &value) const {
        MPoly r(n_);
        for (auto &[m, c] : t_) {
            Mono mm(m);
            Rational f = c;
            for (int k = 0; k < m[var]; ++k)
                f *= value;
            mm[var] = 0;
            r.add_term(mm, f);
        }
        return r;
    }

    /// Variables occurring with positive exponent.
    std::vector<int> support_variables() const {
        std::vector<int> out;
        for (int i = 0; i < n_; ++i)
            for (auto &[m, c] : t_)
                if (m[i] > 0) {
                    out.push_back(i);
                    break;
                }
        return out;
    }

    /// Componentwise minimum exponent over all terms (the monomial gcd).
    Mono monomial_gcd() const {
        Mono g(n_, 0);
        bool first = true;
        for (auto &[m, c] : t_) {
            if (first) {
                g = m;
                first = false;
                continue;
            }
            for (int i = 0; i < n_; ++i)
                g[i] = std::min(g[i], m[i]);
        }
        return g;
    }

    MPoly divided_by_monomial(const Mono &d) const {
        MPoly r(n_);
        for (auto &[m, c] : t_) {
            Mono mm(m);
            for (int i = 0; i < n_; ++i) {
                mm[i] -= d[i];
                if (mm[i] < 0)
                    throw std::logic_error("monomial does not divide polynomial");
            }
            r.t_.emplace(std::move(mm), c);
        }
        return r;
    }

    /// Univariate restriction when only variable `var` occurs.
    UPoly to_univariate(int var) const {
        int deg = 0;
        for (auto &[m, c] : t_)
            deg = std::max(deg, m[var]);
        std::vector<Rational> cs(deg + 1);
        for (auto &[m, c] : t_) {
            for (int i = 0; i < n_; ++i)
                if (i != var && m[i] != 0)
                    throw std::logic_error("polynomial is not univariate");
            cs[m[var]] += c;
        }
        return UPoly(std::move(cs));
    }

    friend bool operator==(const MPoly &a, const MPoly &b) { return a.t_ == b.t_; }

  private:
    int n_ = 0;
    Terms t_;
};

namespace detail {
inline bool divides(const Mono &a, const Mono &b) {
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] > b[i])
            return false;
    return true;
}
inline Mono mono_lcm(const Mono &a, const Mono &b) {
    Mono r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        r[i] = std::max(a[i], b[i]);
    return r;
}
inline Mono mono_sub(const Mono &a, const Mono &b) {
    Mono r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        r[i] = a[i] - b[i];
    return r;
}

/// Full reduction of p modulo the list G (leading terms first).
inline MPoly reduce(MPoly p, const std::vector<MPoly> &G, std::size_t &budget) {
    MPoly rem(p.nvars());
    while (!p.is_zero()) {
        if (budget == 0)
            return rem + p;
        --budget;
        const Mono lm = p.lead_mono();
        const Rational lc = p.lead_coeff();
        bool reduced = false;
        for (const auto &g : G) {
            if (divides(g.lead_mono(), lm)) {
                p = p - g.scaled(lc / g.lead_coeff(), mono_sub(lm, g.lead_mono()));
                reduced = true;
                break;
            }
        }
        if (!reduced) {
            rem.add_term(lm, lc);
            p.add_term(lm, -lc);
        }
    }
    return rem;
}
} // namespace detail

/// Buchberger's algorithm with the product criterion. Returns nullopt when
/// the work budget (number of reduction steps) is exhausted.
inline std::optional<std::vector<MPoly>> groebner_basis(std::vector<MPoly> F, std::size_t budget = 200000) {
    std::vector<MPoly> G;
    for (auto &f : F)
        if (!f.is_zero())
            G.push_back(f.monic());
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t i = 0; i < G.size(); ++i)
        for (std::size_t j = i + 1; j < G.size(); ++j)
            pairs.emplace_back(i, j);
    while (!pairs.empty()) {
        if (budget == 0)
            return std::nullopt;
        auto [i, j] = pairs.back();
        pairs.pop_back();
        const Mono &a = G[i].lead_mono();
        const Mono &b = G[j].lead_mono();
        Mono l = detail::mono_lcm(a, b);
        bool coprime = true;
        for (std::size_t k = 0; k < a.size(); ++k)
            if (a[k] > 0 && b[k] > 0)
                coprime = false;
        if (coprime)
            continue;
        MPoly s = G[i].scaled(1, detail::mono_sub(l, a)) - G[j].scaled(1, detail::mono_sub(l, b));
        MPoly r = detail::reduce(s, G, budget);
        if (budget == 0)
            return std::nullopt;
        if (r.is_zero())
            continue;
        r = r.monic();
        if (r.is_constant())
            return std::vector<MPoly>{r};
        G.push_back(r);
        for (std::size_t k = 0; k + 1 < G.size(); ++k)
            pairs.emplace_back(k, G.size() - 1);
    }
    return G;
}

namespace modp {

/// Arithmetic modulo the Mersenne prime 2^31 - 1.
constexpr std::uint64_t kPrime = 2147483647ULL;
using Poly = std::map<Mono, std::uint64_t, GrevlexGreater>;

inline std::uint64_t power(std::uint64_t a, std::uint64_t e) {
    std::uint64_t r = 1;
    a %= kPrime;
    for (; e; e >>= 1, a = a * a % kPrime)
        if (e & 1)
            r = r * a % kPrime;
    return r;
}
inline std::uint64_t inverse(std::uint64_t a) { return power(a, kPrime - 2); }

/// Reduction of a rational; nullopt when the denominator vanishes mod p.
inline std::optional<std::uint64_t> reduce(const Rational &q) {
    auto residue = [](const BigInt &x) {
        BigInt r = x % BigInt(kPrime);
        if (r < 0)
            r += kPrime;
        return static_cast<std::uint64_t>(r);
    };
    std::uint64_t d = residue(denominator_of(q));
    if (d == 0)
        return std::nullopt;
    return residue(numerator_of(q)) * inverse(d) % kPrime;
}

inline std::optional<Poly> from(const MPoly &f) {
    Poly r;
    for (auto &[m, c] : f.terms()) {
        auto v = reduce(c);
        if (!v)
            return std::nullopt;
        if (*v)
            r[m] = *v;
    }
    return r;
}

/// p -= c * mono(shift) * g
inline void subtract_multiple(Poly &p, std::uint64_t c, const Poly &g, const Mono &shift) {
    for (auto &[m, a] : g) {
        Mono mm(m);
        for (std::size_t i = 0; i < mm.size(); ++i)
            mm[i] += shift[i];
        std::uint64_t t = (kPrime - c * a % kPrime) % kPrime;
        auto it = p.find(mm);
        if (it == p.end()) {
            if (t)
                p.emplace(std::move(mm), t);
        } else if ((it->second = (it->second + t) % kPrime) == 0) {
            p.erase(it);
        }
    }
}

inline void make_monic(Poly &p) {
    std::uint64_t inv = inverse(p.begin()->second);
    for (auto &[m, c] : p)
        c = c * inv % kPrime;
}

inline Poly normal_form(Poly p, const std::vector<Poly> &G, std::size_t &budget) {
    Poly rem;
    while (!p.empty()) {
        if (budget == 0)
            return rem;
        --budget;
        auto lead = *p.begin();
        bool reduced = false;
        for (const auto &g : G) {
            const Mono &lg = g.begin()->first;
            if (detail::divides(lg, lead.first)) {
                subtract_multiple(p, lead.second, g, detail::mono_sub(lead.first, lg));
                reduced = true;
                break;
            }
        }
        if (!reduced) {
            rem.insert(lead);
            p.erase(p.begin());
        }
    }
    return rem;
}

/// Whether the ideal generated by F is the unit ideal over F_p; nullopt
/// when the budget runs out.
inline std::optional<bool> unit_ideal(std::vector<Poly> F, std::size_t budget) {
    std::vector<Poly> G;
    for (auto &f : F)
        if (!f.empty()) {
            make_monic(f);
            if (MPoly::total_degree(f.begin()->first) == 0)
                return true;
            G.push_back(std::move(f));
        }
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t i = 0; i < G.size(); ++i)
        for (std::size_t j = i + 1; j < G.size(); ++j)
            pairs.emplace_back(i, j);
    while (!pairs.empty()) {
        if (budget == 0)
            return std::nullopt;
        auto [i, j] = pairs.back();
        pairs.pop_back();
        const Mono a = G[i].begin()->first, b = G[j].begin()->first;
        bool coprime = true;
        for (std::size_t k = 0; k < a.size(); ++k)
            if (a[k] > 0 && b[k] > 0)
                coprime = false;
        if (coprime)
            continue;
        Mono l = detail::mono_lcm(a, b);
        Poly s;
        subtract_multiple(s, kPrime - 1, G[i], detail::mono_sub(l, a));
        subtract_multiple(s, 1, G[j], detail::mono_sub(l, b));
        Poly r = normal_form(std::move(s), G, budget);
        if (budget == 0)
            return std::nullopt;
        if (r.empty())
            continue;
        make_monic(r);
        if (MPoly::total_degree(r.begin()->first) == 0)
            return true;
        G.push_back(std::move(r));
        for (std::size_t k = 0; k + 1 < G.size(); ++k)
            pairs.emplace_back(k, G.size() - 1);
    }
    return false;
}

/// Torus zeros of the reduction mod p (over the algebraic closure of F_p);
/// nullopt if some coefficient does not reduce or the budget runs out.
inline std::optional<bool> has_torus_zero(const std::vector<MPoly> &system, int n, std::size_t budget = 200000) {
    std::vector<Poly> F;
    for (const auto &p : system) {
        MPoly q(n + 1);
        for (auto &[m, c] : p.terms()) {
            Mono mm(m);
            mm.push_back(0);
            q.add_term(mm, c);
        }
        auto r = from(q);
        if (!r)
            return std::nullopt;
        F.push_back(std::move(*r));
    }
    Poly sat;
    sat[Mono(n + 1, 1)] = 1;
    sat[Mono(n + 1, 0)] = kPrime - 1;
    F.push_back(std::move(sat));
    auto unit = unit_ideal(std::move(F), budget);
    if (!unit)
        return std::nullopt;
    return !*unit;
}

} // namespace modp

/// Decides whether the polynomials in `system` (all in n variables) have a
/// common zero with every coordinate nonzero. Quasi-homogeneous systems
/// should be dehomogenized by the caller first. Returns nullopt when the
/// Groebner computation exceeds its budget.
inline std::optional<bool> has_torus_zero(const std::vector<MPoly> &system, int n, std::size_t budget = 200000) {
    std::vector<MPoly> eqs;
    for (const auto &p : system)
        if (!p.is_zero())
            eqs.push_back(p);
    for (const auto &p : eqs)
        if (p.is_constant())
            return false;
    if (eqs.empty())
        return true;
    if (n == 0)
        return true;
    if (n == 1) {
        UPoly g;
        for (const auto &p : eqs)
            g = gcd(g, p.to_univariate(0));
        int e = g.order_at_zero();
        return g.degree() - e > 0;
    }
    // saturate by the product of the variables with an extra variable T
    std::vector<MPoly> F;
    for (const auto &p : eqs) {
        MPoly q(n + 1);
        for (auto &[m, c] : p.terms()) {
            Mono mm(m);
            mm.push_back(0);
            q.add_term(mm, c);
        }
        F.push_back(q);
    }
    Mono all(n + 1, 1);
    MPoly sat(n + 1);
    sat.add_term(all, 1);
    sat.add_term(Mono(n + 1, 0), -1);
    F.push_back(sat);
    auto G = groebner_basis(F, budget);
    if (!G)
        return std::nullopt;
    for (const auto &g : *G)
        if (g.is_constant())
            return false;
    return true;
}

} // namespace nrdiv
