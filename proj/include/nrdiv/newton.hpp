#pragma once
// Newton diagrams: weight-minimal faces, the compact faces of the lower
// hull, and the non-degeneracy test for face polynomials.

#include "lattice.hpp"
#include "mpoly.hpp"
#include "qpoly.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace nrdiv {

struct Face {
    WeightVector weight;
    Rational level;
    std::vector<Exponent> support;
    QuasiPolynomial polynomial;
};

/// The face of f cut out by w: the monomials attaining w(f).
inline Face face(const WeightVector &w, const QuasiPolynomial &f) {
    if (f.is_zero())
        throw std::invalid_argument("face of the zero series");
    Face F;
    F.weight = w;
    i64 best = 0;
    bool first = true;
    for (auto &[e, c] : f.terms()) {
        i64 s = monomial_weight_num(w.num, e);
        if (first || s < best) {
            best = s;
            first = false;
        }
    }
    F.level = make_rational(best, w.lattice.m);
    for (auto &[e, c] : f.terms())
        if (monomial_weight_num(w.num, e) == best) {
            F.support.push_back(e);
            F.polynomial.add(e, c);
        }
    return F;
}

struct NewtonDiagram {
    std::vector<Exponent> points;   ///< support of f
    std::vector<Face> compact_faces; ///< canonical order, see diagram()
};

namespace detail {

inline i64 det3(const std::array<std::array<i64, 3>, 3> &m) {
    return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
           m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

/// Generalized cross product of three vectors in Z^4 (a vector orthogonal
/// to all three; zero iff they are dependent).
inline Vec4 cross4(const std::array<Vec4, 3> &r) {
    Vec4 w{};
    for (int k = 0; k < 4; ++k) {
        std::array<std::array<i64, 3>, 3> m{};
        for (int i = 0; i < 3; ++i) {
            int c = 0;
            for (int j = 0; j < 4; ++j)
                if (j != k)
                    m[i][c++] = r[i][j];
        }
        i64 d = det3(m);
        w[k] = (k % 2 == 0) ? d : -d;
    }
    return w;
}

inline i64 dot(const Vec4 &w, const Exponent &e) { return w[0] * e[0] + w[1] * e[1] + w[2] * e[2] + w[3] * e[3]; }

/// Support points not dominated componentwise by another support point.
inline std::vector<Exponent> undominated(const std::vector<Exponent> &pts) {
    std::vector<Exponent> out;
    for (const auto &p : pts) {
        bool dom = false;
        for (const auto &q : pts) {
            if (q == p)
                continue;
            if (q[0] <= p[0] && q[1] <= p[1] && q[2] <= p[2] && q[3] <= p[3]) {
                dom = true;
                break;
            }
        }
        if (!dom)
            out.push_back(p);
    }
    return out;
}

struct Facet {
    Vec4 normal;
    std::set<Exponent> points;
};

inline std::vector<Facet> newton_facets(const std::vector<Exponent> &pts) {
    std::map<Vec4, Facet> facets;
    const std::size_t np = pts.size();
    // generators: points 0..np-1, rays np..np+3
    const std::size_t ng = np + 4;
    auto gen_row = [&](std::size_t g, const Exponent &p0) {
        Vec4 r{};
        if (g < np)
            for (int i = 0; i < 4; ++i)
                r[i] = pts[g][i] - p0[i];
        else
            r[g - np] = 1;
        return r;
    };
    for (std::size_t i0 = 0; i0 < np; ++i0) {
        const Exponent &p0 = pts[i0];
        for (std::size_t a = i0 + 1; a < ng; ++a)
            for (std::size_t b = a + 1; b < ng; ++b)
                for (std::size_t c = b + 1; c < ng; ++c) {
                    Vec4 w = cross4({gen_row(a, p0), gen_row(b, p0), gen_row(c, p0)});
                    bool pos = false, neg = false;
                    for (i64 x : w) {
                        pos |= x > 0;
                        neg |= x < 0;
                    }
                    if (pos == neg)
                        continue; // zero or mixed signs
                    if (neg)
                        for (auto &x : w)
                            x = -x;
                    i64 g = gcd_all(w);
                    for (auto &x : w)
                        x /= g;
                    if (facets.count(w))
                        continue;
                    i64 lvl = dot(w, p0);
                    bool ok = true;
                    for (const auto &q : pts)
                        if (dot(w, q) < lvl) {
                            ok = false;
                            break;
                        }
                    if (!ok)
                        continue;
                    Facet F;
                    F.normal = w;
                    for (const auto &q : pts)
                        if (dot(w, q) == lvl)
                            F.points.insert(q);
                    facets.emplace(w, std::move(F));
                }
    }
    std::vector<Facet> out;
    for (auto &[w, F] : facets)
        out.push_back(std::move(F));
    return out;
}

} // namespace detail

/// All compact faces of the Newton diagram, each with a strictly positive
/// supporting weight (the sum of the normals of the facets containing it,
/// which lies in the relative interior of its normal cone). Faces are
/// ordered by level under the all-ones weight, then lexicographically by
/// their sorted vertex lists.
inline NewtonDiagram diagram(const QuasiPolynomial &f) {
    if (f.is_zero())
        throw std::invalid_argument("diagram of the zero series");
    NewtonDiagram D;
    D.points = f.support();
    if (f.contains(Exponent{0, 0, 0, 0}))
        throw std::invalid_argument("diagram requires f(0) = 0");
    auto pts = detail::undominated(D.points);
    auto facets = detail::newton_facets(pts);

    std::set<std::set<Exponent>> sets;
    std::vector<std::set<Exponent>> frontier;
    for (auto &F : facets)
        if (sets.insert(F.points).second)
            frontier.push_back(F.points);
    while (!frontier.empty()) {
        std::vector<std::set<Exponent>> next;
        for (const auto &s : frontier)
            for (const auto &F : facets) {
                std::set<Exponent> t;
                std::set_intersection(s.begin(), s.end(), F.points.begin(), F.points.end(), std::inserter(t, t.begin()));
                if (!t.empty() && sets.insert(t).second)
                    next.push_back(t);
            }
        frontier = std::move(next);
    }
    const FractionalLattice Z4(1, {0, 0, 0, 0});
    for (const auto &s : sets) {
        Vec4 sigma{0, 0, 0, 0};
        for (const auto &F : facets)
            if (std::includes(F.points.begin(), F.points.end(), s.begin(), s.end()))
                for (int i = 0; i < 4; ++i)
                    sigma[i] += F.normal[i];
        if (sigma[0] <= 0 || sigma[1] <= 0 || sigma[2] <= 0 || sigma[3] <= 0)
            continue;
        Face F = face(WeightVector(sigma, Z4), f);
        std::set<Exponent> got(F.support.begin(), F.support.end());
        if (got != s)
            throw std::logic_error("diagram: supporting weight does not cut out its face");
        D.compact_faces.push_back(std::move(F));
    }
    std::sort(D.compact_faces.begin(), D.compact_faces.end(), [](const Face &a, const Face &b) {
        int la = total_degree(a.support.front()), lb = total_degree(b.support.front());
        // level under the all-ones weight is the minimal total degree on the face
        for (auto &e : a.support)
            la = std::min(la, total_degree(e));
        for (auto &e : b.support)
            lb = std::min(lb, total_degree(e));
        if (la != lb)
            return la < lb;
        auto sa = a.support, sb = b.support;
        std::sort(sa.begin(), sa.end());
        std::sort(sb.begin(), sb.end());
        return sa < sb;
    });
    return D;
}

/// Restricts a polynomial in n variables to the torus of `keep` with every
/// other variable set to 0, and additionally sets keep[0] = 1 (valid for
/// quasi-homogeneous systems with positive weights). The result lives in
/// keep.size() - 1 variables.
inline MPoly dehomogenize_on_stratum(const MPoly &p, const std::vector<int> &keep) {
    const int n = static_cast<int>(keep.size()) - 1;
    MPoly r(n);
    for (auto &[m, c] : p.terms()) {
        bool vanishes = false;
        for (int i = 0; i < p.nvars(); ++i)
            if (m[i] > 0 && std::find(keep.begin(), keep.end(), i) == keep.end())
                vanishes = true;
        if (vanishes)
            continue;
        Mono mm(n);
        for (int k = 1; k <= n; ++k)
            mm[k - 1] = m[keep[k]];
        r.add_term(mm, c);
    }
    return r;
}

/// Whether a quasi-homogeneous system (positive weights) has a zero with
/// exactly the coordinates in `stratum` nonzero and all others zero.
inline std::optional<bool> stratum_has_zero(const std::vector<MPoly> &system, const std::vector<int> &stratum,
                                            std::size_t budget = 200000) {
    if (stratum.empty())
        return true;
    std::vector<MPoly> eqs;
    for (auto &p : system)
        eqs.push_back(dehomogenize_on_stratum(p, stratum));
    return has_torus_zero(eqs, static_cast<int>(stratum.size()) - 1, budget);
}

/// Proves that a quasi-homogeneous system (positive weights, coefficients
/// over Q) has no common zero outside the origin, by checking every
/// coordinate stratum modulo a large prime. Weighted projective space is
/// proper over Z, so a zero over the algebraic closure of Q would reduce to
/// a nontrivial zero mod p; the converse does not hold, so `false` only
/// means "not proved".
inline bool no_nontrivial_zero_modp(const std::vector<MPoly> &system, int nvars) {
    for (int mask = 1; mask < (1 << nvars); ++mask) {
        std::vector<int> stratum;
        for (int i = 0; i < nvars; ++i)
            if (mask & (1 << i))
                stratum.push_back(i);
        const int n = static_cast<int>(stratum.size()) - 1;
        std::vector<MPoly> eqs;
        bool constant_nonzero = false;
        for (auto &p : system) {
            MPoly d = dehomogenize_on_stratum(p, stratum);
            auto r = modp::from(d);
            if (!r)
                return false;
            if (r->empty())
                continue;
            if (MPoly::total_degree(r->begin()->first) == 0)
                constant_nonzero = true;
            eqs.push_back(std::move(d));
        }
        if (constant_nonzero)
            continue;
        if (eqs.empty() || n == 0)
            return false;
        auto z = modp::has_torus_zero(eqs, n);
        if (!z || *z)
            return false;
    }
    return true;
}

/// Work budget of the exact fallback once the modular proof of
/// quasi-smoothness has failed (the answer is then almost always "no").
constexpr std::size_t kQuasismoothFallbackBudget = 20000;

enum class Verdict { yes, no, undetermined };

inline std::string to_string(Verdict v) {
    switch (v) {
    case Verdict::yes:
        return "yes";
    case Verdict::no:
        return "no";
    default:
        return "undetermined";
    }
}

struct NondegeneracyResult {
    Verdict verdict = Verdict::yes;
    std::string witness;             ///< face with a torus critical point (for "no")
    std::vector<std::string> flags;  ///< generic faces assumed, budget exhausted
};

/// Whether a single quasi-homogeneous face polynomial has a critical point
/// on the torus (C*)^4.
inline Verdict face_nondegenerate(const QuasiPolynomial &F) {
    if (F.size() <= 1)
        return Verdict::yes;
    auto vars = F.variables();
    // a variable occurring in a single monomial has a nowhere-vanishing
    // partial derivative on the torus
    for (int v : vars) {
        int count = 0;
        for (auto &[e, c] : F.terms())
            count += e[v] > 0;
        if (count == 1)
            return Verdict::yes;
    }
    MPoly p = F.to_mpoly();
    std::vector<MPoly> grad;
    for (int v : vars)
        grad.push_back(p.derivative(v));
    // no zero of the gradient anywhere outside the origin of the face's own
    // coordinates, proved mod p, in particular none on the torus
    std::vector<MPoly> compact;
    for (auto &g : grad) {
        MPoly c(static_cast<int>(vars.size()));
        for (auto &[m, co] : g.terms()) {
            Mono mm(vars.size());
            for (std::size_t i = 0; i < vars.size(); ++i)
                mm[i] = m[vars[i]];
            c.add_term(mm, co);
        }
        compact.push_back(std::move(c));
    }
    if (no_nontrivial_zero_modp(compact, static_cast<int>(vars.size())))
        return Verdict::yes;
    auto r = stratum_has_zero(grad, vars, kQuasismoothFallbackBudget);
    if (!r)
        return Verdict::undetermined;
    return *r ? Verdict::no : Verdict::yes;
}

inline NondegeneracyResult nondegenerate(const QuasiPolynomial &f) {
    NondegeneracyResult R;
    auto D = diagram(f);
    for (const auto &F : D.compact_faces) {
        if (F.polynomial.has_generic()) {
            R.flags.push_back("face " + to_string(F.polynomial) + " has generic coefficients; assumed non-degenerate");
            continue;
        }
        Verdict v = face_nondegenerate(F.polynomial);
        if (v == Verdict::no) {
            R.verdict = Verdict::no;
            R.witness = "face " + to_string(F.polynomial) + " has a critical point on the torus";
            return R;
        }
        if (v == Verdict::undetermined) {
            R.verdict = Verdict::undetermined;
            R.flags.push_back("face " + to_string(F.polynomial) + ": decision budget exhausted");
        }
    }
    return R;
}

} // namespace nrdiv
