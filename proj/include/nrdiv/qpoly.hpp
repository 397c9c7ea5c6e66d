#pragma once
// Quasi-homogeneous polynomial truncations in the coordinates (x,y,z,u)
// with exact or generic-marker coefficients, cyclic actions and weights.

#include "lattice.hpp"
#include "mpoly.hpp"
#include "rational.hpp"

#include <array>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace nrdiv {

using Exponent = std::array<int, 4>;

inline int total_degree(const Exponent &e) { return e[0] + e[1] + e[2] + e[3]; }

/// An exact rational or a symbolic generic marker (e.g. lambda0). Markers
/// are treated as nonzero unless explicitly set to zero.
struct Coefficient {
    Rational value{0};
    std::string marker; // empty for explicit values

    Coefficient() = default;
    Coefficient(Rational v) : value(std::move(v)) {}
    static Coefficient generic(std::string name) {
        Coefficient c;
        c.marker = std::move(name);
        return c;
    }
    bool is_generic() const { return !marker.empty(); }
    bool is_zero() const { return !is_generic() && value == 0; }
    std::string str() const { return is_generic() ? "@" + marker : to_string(value); }
    bool operator==(const Coefficient &o) const { return marker == o.marker && (is_generic() || value == o.value); }
};

inline const std::array<std::string, 4> &default_variable_names() {
    static const std::array<std::string, 4> names{"x", "y", "z", "u"};
    return names;
}

class QuasiPolynomial {
  public:
    using Support = std::map<Exponent, Coefficient>;

    QuasiPolynomial() = default;

    void add(const Exponent &e, const Coefficient &c) {
        for (int x : e)
            if (x < 0)
                throw std::invalid_argument("negative exponent");
        if (c.is_generic()) {
            auto it = terms_.find(e);
            if (it != terms_.end())
                throw std::invalid_argument("generic coefficient combined with another term at the same exponent");
            terms_[e] = c;
            return;
        }
        auto it = terms_.find(e);
        if (it == terms_.end()) {
            if (c.value != 0)
                terms_[e] = c;
            return;
        }
        if (it->second.is_generic())
            throw std::invalid_argument("generic coefficient combined with another term at the same exponent");
        it->second.value += c.value;
        if (it->second.value == 0)
            terms_.erase(it);
    }
    void add(const Exponent &e, const Rational &c) { add(e, Coefficient(c)); }

    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }
    const Support &terms() const { return terms_; }
    bool contains(const Exponent &e) const { return terms_.count(e) > 0; }
    const Coefficient &coeff(const Exponent &e) const { return terms_.at(e); }
    bool has_generic() const {
        for (auto &[e, c] : terms_)
            if (c.is_generic())
                return true;
        return false;
    }
    std::optional<int> truncation_degree() const { return truncation_; }
    void set_truncation_degree(std::optional<int> d) { truncation_ = d; }

    std::vector<Exponent> support() const {
        std::vector<Exponent> s;
        for (auto &[e, c] : terms_)
            s.push_back(e);
        return s;
    }

    /// Variables occurring with positive exponent.
    std::vector<int> variables() const {
        std::vector<int> out;
        for (int i = 0; i < 4; ++i)
            for (auto &[e, c] : terms_)
                if (e[i] > 0) {
                    out.push_back(i);
                    break;
                }
        return out;
    }

    /// Numeric view; throws if generic markers are present.
    MPoly to_mpoly() const {
        MPoly p(4);
        for (auto &[e, c] : terms_) {
            if (c.is_generic())
                throw std::logic_error("generic coefficient @" + c.marker + " has no numeric value");
            p.add_term(Mono(e.begin(), e.end()), c.value);
        }
        return p;
    }

    bool operator==(const QuasiPolynomial &o) const { return terms_ == o.terms_ && truncation_ == o.truncation_; }

  private:
    Support terms_;
    std::optional<int> truncation_;
};

inline std::string to_string(const QuasiPolynomial &f,
                             const std::array<std::string, 4> &names = default_variable_names()) {
    if (f.is_zero())
        return "0";
    // print in increasing total degree, then lexicographically descending
    std::vector<std::pair<Exponent, Coefficient>> ts(f.terms().begin(), f.terms().end());
    std::stable_sort(ts.begin(), ts.end(), [](auto &a, auto &b) {
        int da = total_degree(a.first), db = total_degree(b.first);
        if (da != db)
            return da < db;
        return a.first > b.first;
    });
    std::string s;
    for (std::size_t k = 0; k < ts.size(); ++k) {
        const auto &[e, c] = ts[k];
        std::string mono;
        for (int i = 0; i < 4; ++i) {
            if (e[i] == 0)
                continue;
            mono += names[i];
            if (e[i] > 1)
                mono += "^" + std::to_string(e[i]);
        }
        std::string coef;
        bool neg = false;
        if (c.is_generic())
            coef = c.str();
        else {
            Rational v = c.value;
            if (v < 0) {
                neg = true;
                v = -v;
            }
            if (v != 1 || mono.empty())
                coef = to_string(v);
        }
        if (k == 0)
            s += neg ? "-" : "";
        else
            s += neg ? " - " : " + ";
        if (!coef.empty() && !mono.empty())
            s += coef + "*" + mono;
        else
            s += coef + mono;
    }
    return s;
}

/// Z_m acting by x_i -> eps^(a_i r) x_i.
struct CyclicAction {
    i64 m = 1;
    Vec4 a{0, 0, 0, 0};
    FractionalLattice lattice() const { return FractionalLattice(m, a); }
    bool operator==(const CyclicAction &) const = default;
};

inline std::string to_string(const CyclicAction &act) {
    std::string s = "1/" + std::to_string(act.m) + "(";
    for (int i = 0; i < 4; ++i)
        s += (i ? "," : "") + std::to_string(act.a[i]);
    return s + ")";
}

/// <w, v> = sum w_i v_i, returned exactly.
inline Rational monomial_weight(const WeightVector &w, const Exponent &v) {
    i64 s = 0;
    for (int i = 0; i < 4; ++i)
        s += w.num[i] * v[i];
    return make_rational(s, w.lattice.m);
}

/// Numerator of <w,v> over m (fast path for scans).
inline i64 monomial_weight_num(const Vec4 &wnum, const Exponent &v) {
    return wnum[0] * v[0] + wnum[1] * v[1] + wnum[2] * v[2] + wnum[3] * v[3];
}

/// w(f) = min over the support of <w, v>.
inline Rational series_weight(const WeightVector &w, const QuasiPolynomial &f) {
    if (f.is_zero())
        throw std::invalid_argument("weight of the zero series");
    std::optional<i64> best;
    for (auto &[e, c] : f.terms()) {
        i64 s = monomial_weight_num(w.num, e);
        if (!best || s < *best)
            best = s;
    }
    return make_rational(*best, w.lattice.m);
}

/// The common character sum a_i m_i (mod m) of all monomials, or nullopt
/// when the monomials carry mixed characters.
inline std::optional<i64> semi_invariant_character(const QuasiPolynomial &f, const CyclicAction &act) {
    std::optional<i64> chr;
    for (auto &[e, c] : f.terms()) {
        i64 s = 0;
        for (int i = 0; i < 4; ++i)
            s += act.a[i] * e[i];
        s = mod_floor(s, act.m);
        if (chr && *chr != s)
            return std::nullopt;
        chr = s;
    }
    if (!chr)
        return 0;
    return chr;
}

inline QuasiPolynomial restrict_to_support(const QuasiPolynomial &f, const std::function<bool(const Exponent &)> &keep) {
    QuasiPolynomial r;
    for (auto &[e, c] : f.terms())
        if (keep(e))
            r.add(e, c);
    r.set_truncation_degree(f.truncation_degree());
    return r;
}

/// Drops every monomial of total degree above d and records d.
inline QuasiPolynomial truncate(const QuasiPolynomial &f, int d) {
    auto r = restrict_to_support(f, [d](const Exponent &e) { return total_degree(e) <= d; });
    r.set_truncation_degree(d);
    return r;
}

/// Product of two polynomials with explicit coefficients.
inline QuasiPolynomial multiply(const QuasiPolynomial &f, const QuasiPolynomial &g) {
    QuasiPolynomial r;
    for (auto &[e1, c1] : f.terms())
        for (auto &[e2, c2] : g.terms()) {
            if (c1.is_generic() || c2.is_generic())
                throw std::logic_error("multiply: generic coefficients");
            Exponent e{e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2], e1[3] + e2[3]};
            r.add(e, c1.value * c2.value);
        }
    return r;
}

inline QuasiPolynomial from_mpoly(const MPoly &p) {
    QuasiPolynomial q;
    for (auto &[m, c] : p.terms())
        q.add(Exponent{m[0], m[1], m[2], m[3]}, c);
    return q;
}

/// Deterministic nonzero rational in [-bound, bound] with small
/// denominator, used to instantiate generic markers.
inline Rational random_nonzero_rational(std::mt19937_64 &rng, int bound = 9, int maxden = 5) {
    std::uniform_int_distribution<int> num(-bound, bound), den(1, maxden);
    for (;;) {
        int n = num(rng);
        if (n != 0)
            return make_rational(n, den(rng));
    }
}

/// Replaces every generic marker by a random nonzero rational; equal
/// markers receive equal values. Returns the assignment used.
inline std::map<std::string, Rational> instantiate_generic(QuasiPolynomial &f, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::map<std::string, Rational> values;
    QuasiPolynomial r;
    for (auto &[e, c] : f.terms()) {
        if (!c.is_generic()) {
            r.add(e, c);
            continue;
        }
        auto it = values.find(c.marker);
        if (it == values.end())
            it = values.emplace(c.marker, random_nonzero_rational(rng)).first;
        r.add(e, it->second);
    }
    r.set_truncation_degree(f.truncation_degree());
    f = r;
    return values;
}

} // namespace nrdiv
