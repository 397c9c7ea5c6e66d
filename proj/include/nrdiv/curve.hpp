#pragma once
// Curves in weighted projective planes, optionally modulo a diagonal cyclic
// action: reducedness, cyclic-cover structure, and geometric genus by
// Riemann-Hurwitz over the rational base and by adjunction.

#include "lattice.hpp"
#include "mpoly.hpp"
#include "newton.hpp"
#include "qpoly.hpp"
#include "upoly.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace nrdiv {

/// {F = 0} in P(w0,w1,w2) / Z_g, with Z_g acting by x_i -> eps^{r_i} x_i.
struct CurveModel {
    std::array<int, 3> vars{0, 1, 2}; ///< coordinate indices in (x,y,z,u), for display
    std::array<i64, 3> weights{1, 1, 1};
    i64 group_order = 1;
    std::array<i64, 3> residues{0, 0, 0};
    MPoly equation{3};

    i64 degree() const {
        if (equation.is_zero())
            throw std::invalid_argument("curve with zero equation");
        const Mono &m = equation.lead_mono();
        return weights[0] * m[0] + weights[1] * m[1] + weights[2] * m[2];
    }
};

inline std::string to_string(const CurveModel &C) {
    QuasiPolynomial f;
    for (auto &[m, c] : C.equation.terms()) {
        Exponent e{0, 0, 0, 0};
        for (int i = 0; i < 3; ++i)
            e[C.vars[i]] = m[i];
        f.add(e, c);
    }
    std::string s = "{" + to_string(f) + " = 0} in P(";
    for (int i = 0; i < 3; ++i)
        s += (i ? "," : "") + std::to_string(C.weights[i]);
    s += ")";
    if (C.group_order > 1)
        s += "/Z" + std::to_string(C.group_order);
    return s;
}

/// Builds a curve model from a quasi-polynomial in at most three variables,
/// using the ambient weights and residues at the given coordinates.
inline CurveModel make_curve(const QuasiPolynomial &F, const std::array<int, 3> &vars, const Vec4 &ambient,
                             const CyclicGroup &G) {
    if (F.has_generic())
        throw std::invalid_argument("curve equation has generic coefficients");
    CurveModel C;
    C.vars = vars;
    C.group_order = G.order;
    for (int i = 0; i < 3; ++i) {
        C.weights[i] = ambient[vars[i]];
        C.residues[i] = G.order > 1 ? mod_floor(G.residues[vars[i]], G.order) : 0;
    }
    for (auto &[e, c] : F.terms()) {
        Mono m(3, 0);
        int used = 0;
        for (int i = 0; i < 3; ++i) {
            m[i] = e[vars[i]];
            used += e[vars[i]];
        }
        if (used != total_degree(e))
            throw std::invalid_argument("curve equation uses a coordinate outside the chosen plane");
        C.equation.add_term(m, c.value);
    }
    return C;
}

/// v^p + h(s,t) after normalizing the coefficient of v^p to 1.
struct CoverForm {
    int v = 0; ///< index 0..2 of the cover coordinate
    int p = 2;
    MPoly h{3}; ///< v^p = h on the curve
    bool completed_square = false;
    /// Weight and residue added to those of v: completing the square
    /// against a monomial coefficient M replaces v by 2 c M v + B.
    i64 weight_shift = 0;
    i64 residue_shift = 0;
};

namespace detail {

inline i64 gcd3(i64 a, i64 b, i64 c) { return std::gcd(std::gcd(a, b), c); }

inline bool is_pure_power_only(const MPoly &F, int v, int &p, Rational &c) {
    p = 0;
    for (auto &[m, coef] : F.terms()) {
        if (m[v] == 0)
            continue;
        for (int i = 0; i < F.nvars(); ++i)
            if (i != v && m[i] != 0)
                return false;
        if (p != 0)
            return false;
        p = m[v];
        c = coef;
    }
    return p >= 2;
}

} // namespace detail

/// Detects the structural form v^p + h(s,t). Pure powers are preferred in
/// increasing p (p = 2 first); if no coordinate occurs only as a pure power,
/// a coordinate entering as c M v^2 + B v (M a monomial in the other two)
/// is absorbed by completing the square. Returns nullopt for other shapes.
inline std::optional<CoverForm> cover_form(const CurveModel &C) {
    const MPoly &F = C.equation;
    std::optional<CoverForm> best;
    for (int v = 0; v < 3; ++v) {
        int p;
        Rational c;
        if (!detail::is_pure_power_only(F, v, p, c))
            continue;
        if (best && best->p <= p)
            continue;
        CoverForm K;
        K.v = v;
        K.p = p;
        MPoly rest(3);
        for (auto &[m, coef] : F.terms())
            if (m[v] == 0)
                rest.add_term(m, -coef / c);
        K.h = rest;
        best = K;
    }
    if (best)
        return best;
    // c M v^2 + B v + C0 = 0 with M a monomial and B, C0 free of v:
    // (2 c M v + B)^2 = B^2 - 4 c M C0
    for (int v = 0; v < 3; ++v) {
        Rational c = 0;
        Mono M;
        MPoly B(3), C0(3);
        bool ok = true;
        for (auto &[m, coef] : F.terms()) {
            if (m[v] == 0) {
                C0.add_term(m, coef);
            } else if (m[v] == 1) {
                Mono mm = m;
                mm[v] = 0;
                B.add_term(mm, coef);
            } else if (m[v] == 2 && c == 0) {
                c = coef;
                M = m;
                M[v] = 0;
            } else {
                ok = false;
            }
        }
        if (!ok || c == 0)
            continue;
        CoverForm K;
        K.v = v;
        K.p = 2;
        K.completed_square = true;
        MPoly Mc(3);
        Mc.add_term(M, c);
        K.h = B * B - MPoly::constant(3, make_rational(4)) * Mc * C0;
        for (int i = 0; i < 3; ++i) {
            K.weight_shift += C.weights[i] * M[i];
            K.residue_shift += C.residues[i] * M[i];
        }
        return K;
    }
    return std::nullopt;
}

/// Result of the cyclic-cover genus computation. The quotient curve may be
/// reducible (Z^n = R(U) with R a d-th power); each of the `components`
/// components has the stated genus.
struct CoverGenus {
    int genus = 0;
    int components = 1;
    int cover_degree = 1; ///< degree n' of each component over the rational base
    int p = 2;
    bool hyperelliptic = false; ///< a double cover of P^1 (structural form v^2 + h)
    bool completed_square = false;
    bool nonreduced = false; ///< h vanished after completing the square
};

namespace detail {

/// Riemann-Hurwitz for the normalization of Z^n = R(U) over P^1, given
/// the orders of R at all points where it is nonzero/finite-nonzero:
/// (order, how many such points).
inline int riemann_hurwitz(i64 n, const std::vector<std::pair<i64, i64>> &orders) {
    i64 twice = -2 * n;
    for (auto &[o, cnt] : orders)
        twice += cnt * (n - std::gcd(n, o < 0 ? -o : o));
    if ((twice + 2) % 2 != 0)
        throw std::logic_error("Riemann-Hurwitz: odd Euler characteristic");
    return static_cast<int>((twice + 2) / 2);
}

} // namespace detail

/// Geometric genus of the normalization of C / Z_g through its function
/// field: the field of invariant degree-0 rational monomials restricted to
/// the curve is C(U, Z) with Z^n = R(U), a cyclic cover of the line.
inline std::optional<CoverGenus> genus_cover(const CurveModel &C) {
    auto K = cover_form(C);
    if (!K)
        return std::nullopt;
    CoverGenus out;
    out.p = K->p;
    out.completed_square = K->completed_square;
    if (K->h.is_zero()) {
        out.nonreduced = true;
        return out;
    }
    const int v = K->v, s = (v + 1) % 3, t = (v + 2) % 3;
    auto w = C.weights;
    auto r = C.residues;
    w[v] += K->weight_shift;
    r[v] += K->residue_shift;
    const i64 g = C.group_order;
    auto invariant = [&](i64 ev, i64 es, i64 et) {
        return g <= 1 || mod_floor(r[v] * ev + r[s] * es + r[t] * et, g) == 0;
    };
    // U = s^{Us} t^{Ut}: generator of the invariant degree-0 monomials free of v
    const i64 q = std::gcd(w[s], w[t]);
    i64 j = 1;
    while (!invariant(0, j * (w[t] / q), -j * (w[s] / q)))
        ++j;
    const i64 Us = j * (w[t] / q), Ut = -j * (w[s] / q);
    // Z = v^k s^{es} t^{et}: least positive power of v
    i64 k = 0, zs = 0, zt = 0;
    for (i64 kk = 1; kk <= K->p && k == 0; ++kk)
        for (i64 es = 0; es < Us; ++es) {
            i64 num = -(w[v] * kk + w[s] * es);
            if (num % w[t] != 0)
                continue;
            i64 et = num / w[t];
            if (invariant(kk, es, et)) {
                k = kk;
                zs = es;
                zt = et;
                break;
            }
        }
    if (k == 0 || K->p % k != 0)
        throw std::logic_error("cover: v^p is not an invariant power");
    const i64 n = K->p / k;
    // Z^n = v^p s^{n zs} t^{n zt} = h(s,t) s^{n zs} t^{n zt} = R(U)
    std::map<i64, Rational> R;
    for (auto &[m, c] : K->h.terms()) {
        i64 es = m[s] + n * zs, et = m[t] + n * zt;
        if (m[v] != 0 || es % Us != 0 || es / Us * Ut != et)
            throw std::logic_error("cover: h is not quasi-homogeneous of the degree of v^p");
        R[es / Us] += c;
    }
    for (auto it = R.begin(); it != R.end();)
        it = it->second == 0 ? R.erase(it) : std::next(it);
    if (R.empty()) {
        out.nonreduced = true;
        return out;
    }
    const i64 lo = R.begin()->first, hi = R.rbegin()->first;
    std::vector<Rational> coeffs(static_cast<std::size_t>(hi - lo + 1));
    for (auto &[l, c] : R)
        coeffs[static_cast<std::size_t>(l - lo)] = c;
    UPoly P(coeffs);
    auto mult = root_multiplicities(P);
    i64 d = std::gcd(n, lo < 0 ? -lo : lo);
    for (auto &[mu, cnt] : mult)
        d = std::gcd(d, static_cast<i64>(mu));
    const i64 np = n / d;
    std::vector<std::pair<i64, i64>> orders{{lo / d, 1}, {-(hi) / d, 1}};
    for (auto &[mu, cnt] : mult)
        orders.push_back({mu / d, cnt});
    out.components = static_cast<int>(d);
    out.cover_degree = static_cast<int>(np);
    out.genus = detail::riemann_hurwitz(np, orders);
    out.hyperelliptic = np == 2 && K->p == 2 && out.genus >= 1;
    return out;
}

/// Quasi-smoothness: the affine cone {F = 0} is smooth away from the
/// origin (no common zero of the partials on any coordinate stratum).
inline std::optional<bool> is_quasismooth(const CurveModel &C) {
    std::vector<MPoly> grad;
    for (int i = 0; i < 3; ++i)
        grad.push_back(C.equation.derivative(i));
    if (no_nontrivial_zero_modp(grad, 3))
        return true;
    for (int mask = 1; mask < 8; ++mask) {
        std::vector<int> stratum;
        for (int i = 0; i < 3; ++i)
            if (mask & (1 << i))
                stratum.push_back(i);
        auto z = stratum_has_zero(grad, stratum, kQuasismoothFallbackBudget);
        if (!z)
            return std::nullopt;
        if (*z)
            return false;
    }
    return true;
}

/// Rewrites C in a well-formed ambient (pairwise coprime weights) by
/// dividing out common factors and substituting X = x^q where two weights
/// share the factor q. Returns nullopt if the equation does not descend.
inline std::optional<CurveModel> well_formed(const CurveModel &C) {
    CurveModel W = C;
    i64 g0 = detail::gcd3(W.weights[0], W.weights[1], W.weights[2]);
    for (auto &x : W.weights)
        x /= g0;
    for (bool changed = true; changed;) {
        changed = false;
        for (int i = 0; i < 3 && !changed; ++i)
            for (int j = i + 1; j < 3 && !changed; ++j) {
                i64 q = std::gcd(W.weights[i], W.weights[j]);
                if (q == 1)
                    continue;
                int k = 3 - i - j;
                MPoly G(3);
                for (auto &[m, c] : W.equation.terms()) {
                    if (m[k] % q != 0)
                        return std::nullopt;
                    Mono mm = m;
                    mm[k] /= q;
                    G.add_term(mm, c);
                }
                W.equation = G;
                W.weights[i] /= q;
                W.weights[j] /= q;
                if (W.group_order > 1)
                    W.residues[k] = mod_floor(q * W.residues[k], W.group_order);
                changed = true;
            }
    }
    return W;
}

/// Genus by adjunction on a quasi-smooth well-formed model: the number of
/// monomials of degree d - (w0+w1+w2); modulo Z_g only monomials whose
/// 1-forms P * Omega / F are invariant are counted. Returns nullopt when the
/// model is not quasi-smooth (or not decidable).
inline std::optional<int> genus_quasismooth(const CurveModel &C) {
    auto W = well_formed(C);
    if (!W)
        return std::nullopt;
    auto qs = is_quasismooth(*W);
    if (!qs || !*qs)
        return std::nullopt;
    const auto &w = W->weights;
    const i64 target = W->degree() - (w[0] + w[1] + w[2]);
    if (target < 0)
        return 0;
    i64 want = 0;
    if (W->group_order > 1) {
        const Mono &m = W->equation.lead_mono();
        i64 rF = W->residues[0] * m[0] + W->residues[1] * m[1] + W->residues[2] * m[2];
        want = mod_floor(rF - W->residues[0] - W->residues[1] - W->residues[2], W->group_order);
    }
    int count = 0;
    for (i64 a = 0; a * w[0] <= target; ++a)
        for (i64 b = 0; a * w[0] + b * w[1] <= target; ++b) {
            i64 rest = target - a * w[0] - b * w[1];
            if (rest % w[2] != 0)
                continue;
            i64 c = rest / w[2];
            if (W->group_order > 1 &&
                mod_floor(W->residues[0] * a + W->residues[1] * b + W->residues[2] * c - want, W->group_order) != 0)
                continue;
            ++count;
        }
    return count;
}

namespace detail {

/// A binary quasi-homogeneous form with trivial monomial part written as
/// P(U), U = s^alpha / t^beta (up to a monomial factor).
inline UPoly binary_form_polynomial(const std::vector<std::pair<std::array<int, 2>, Rational>> &terms) {
    auto lo = *std::min_element(terms.begin(), terms.end(),
                                [](auto &a, auto &b) { return a.first[0] < b.first[0]; });
    int alpha = 0;
    for (auto &[e, c] : terms)
        alpha = std::gcd(alpha, e[0] - lo.first[0]);
    std::vector<Rational> cs;
    for (auto &[e, c] : terms) {
        std::size_t l = alpha == 0 ? 0 : static_cast<std::size_t>((e[0] - lo.first[0]) / alpha);
        if (cs.size() <= l)
            cs.resize(l + 1);
        cs[l] += c;
    }
    return UPoly(cs);
}

inline std::vector<int> essential_variables(const QuasiPolynomial &f) { return f.variables(); }

} // namespace detail

/// Reducedness of a face polynomial. Exact for monomial factors, binary
/// forms, coordinates entering as a pure power, as c v^2 + B v, or linearly
/// with a monomial coefficient; otherwise decided by univariate
/// specializations (a square-free specialization of degree deg_v f in every
/// coordinate v proves reducedness). Returns nullopt if undecided; generic
/// coefficients are assumed reduced (true).
inline std::optional<bool> is_reduced(const QuasiPolynomial &f) {
    if (f.is_zero())
        throw std::invalid_argument("is_reduced of zero");
    if (f.has_generic())
        return true;
    MPoly p = f.to_mpoly();
    Mono g = p.monomial_gcd();
    for (int x : g)
        if (x >= 2)
            return false;
    MPoly q = p.divided_by_monomial(g);
    if (q.is_constant())
        return true;
    auto vars = q.support_variables();
    if (vars.size() <= 2) {
        int s = vars[0], t = vars.size() > 1 ? vars[1] : vars[0];
        std::vector<std::pair<std::array<int, 2>, Rational>> terms;
        for (auto &[m, c] : q.terms())
            terms.push_back({{m[s], m[t]}, c});
        return is_squarefree(detail::binary_form_polynomial(terms));
    }
    for (int v : vars) {
        int deg = 0, pure = 0;
        bool mixed_top = false;
        Rational top;
        for (auto &[m, c] : q.terms())
            deg = std::max(deg, m[v]);
        for (auto &[m, c] : q.terms())
            if (m[v] == deg) {
                ++pure;
                mixed_top |= MPoly::total_degree(m) != deg;
                top = c;
            }
        bool only_pure = true;
        for (auto &[m, c] : q.terms())
            if (m[v] > 0 && MPoly::total_degree(m) != m[v])
                only_pure = false;
        if (only_pure && pure == 1 && deg >= 1)
            return true; // c v^p + h with h != 0
        if (deg == 2 && pure == 1 && !mixed_top) {
            // c v^2 + B v + C0: a square iff B^2 = 4 c C0
            MPoly B(4), C0(4);
            for (auto &[m, c] : q.terms()) {
                Mono mm = m;
                mm[v] = 0;
                if (m[v] == 1)
                    B.add_term(mm, c);
                else if (m[v] == 0)
                    C0.add_term(mm, c);
            }
            MPoly disc = B * B - MPoly::constant(4, 4 * top) * C0;
            return !disc.is_zero();
        }
        if (deg == 1 && pure == 1) {
            // A v + B with A a monomial: any repeated factor would be a monomial
            return true;
        }
    }
    // specializations s_v(t) = q(..., t at v, ...) at fixed small points
    static const int pts[3][4] = {{2, 3, 5, 7}, {3, -2, 7, 11}, {-5, 4, 2, 13}};
    for (int v : vars) {
        int degv = 0;
        for (auto &[m, c] : q.terms())
            degv = std::max(degv, m[v]);
        bool cleared = false;
        for (auto &pt : pts) {
            MPoly sp = q;
            for (int i : vars)
                if (i != v)
                    sp = sp.substitute(i, make_rational(pt[i]));
            UPoly u = sp.to_univariate(v);
            if (u.degree() == degv && is_squarefree(u)) {
                cleared = true;
                break;
            }
        }
        if (!cleared)
            return std::nullopt;
    }
    return true;
}

} // namespace nrdiv
