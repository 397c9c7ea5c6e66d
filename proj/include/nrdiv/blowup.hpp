#pragma once
// Discrepancy of weighted and pseudo blowups, the bounded region of weights
// with discrepancy <= 1, and the exhaustive lattice scan over it.

#include "classify.hpp"
#include "lattice.hpp"
#include "newton.hpp"
#include "qpoly.hpp"

#include <algorithm>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace nrdiv {

/// a = w1 + w2 + w3 + w4 - 1 - w(phi), for the reduced (multiplicity 1)
/// component.
inline Rational discrepancy(const WeightVector &w, const QuasiPolynomial &phi) {
    if (!w.strictly_positive())
        throw std::invalid_argument("discrepancy requires a strictly positive weight");
    return w.sum() - 1 - series_weight(w, phi);
}

struct BlowupCandidate {
    WeightVector weight;
    i64 quotient_order = 1; ///< [N' : N'']; 1 for a weighted blowup
    CyclicGroup group;
    Rational discrepancy;
    Face face;
    bool pre_rational = false; ///< face forces rationality (tagged, still emitted)

    bool pseudo() const { return quotient_order > 1; }
    std::string kind() const { return pseudo() ? "pseudo" : "weighted"; }
};

/// Exceptional divisor {f_w = 0} in P(w)/G.
struct DivisorModel {
    QuasiPolynomial equation;
    Vec4 ambient{1, 1, 1, 1}; ///< weights of P(w), primitive integers
    CyclicGroup group;
};

inline DivisorModel exceptional_divisor(const BlowupCandidate &c) {
    return {c.face.polynomial, c.weight.integral_weights(), c.group};
}

inline std::string to_string(const DivisorModel &D) {
    std::string s = "{" + to_string(D.equation) + " = 0} in P(";
    for (int i = 0; i < 4; ++i)
        s += (i ? "," : "") + std::to_string(D.ambient[i]);
    s += ")";
    if (!D.group.trivial())
        s += "/Z" + std::to_string(D.group.order);
    return s;
}

/// The polytope {w >= 0 : <w, 1 - v> <= 2 for every v in the support}
/// (equivalently a(w) <= 1) together with its coordinate maxima.
struct WeightRegion {
    std::vector<Exponent> constraints; ///< undominated support points
    std::array<Rational, 4> bound;     ///< max of w_i over the region
    int truncation = 0;                ///< monomials above this degree never lie on a relevant face
};

class UnboundedRegion : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

namespace detail {

using i128 = __int128;

struct LinearRow {
    Vec4 c;
    i64 b; ///< c . w <= b
};

inline i128 det4(const std::array<std::array<i128, 4>, 4> &M) {
    // Laplace expansion along the first row; entries are tiny
    auto det3r = [&](int skip) {
        std::array<std::array<i128, 3>, 3> m{};
        for (int i = 1; i < 4; ++i) {
            int c = 0;
            for (int j = 0; j < 4; ++j)
                if (j != skip)
                    m[i - 1][c++] = M[i][j];
        }
        return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
               m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
    };
    i128 d = 0;
    for (int j = 0; j < 4; ++j) {
        i128 t = M[0][j] * det3r(j);
        d += (j % 2 == 0) ? t : -t;
    }
    return d;
}

/// Vertices of {c.w <= b for all rows, e.w = f for all equalities} in R^4,
/// by choosing 4 - |eq| rows to be tight and solving with Cramer's rule.
/// Each vertex is returned as (numerators, common denominator > 0).
inline std::vector<std::pair<std::array<i128, 4>, i128>> vertices(const std::vector<LinearRow> &rows,
                                                                   const std::vector<LinearRow> &eqs) {
    std::vector<std::pair<std::array<i128, 4>, i128>> out;
    const int need = 4 - static_cast<int>(eqs.size());
    const int nr = static_cast<int>(rows.size());
    std::vector<int> idx(need);
    std::function<void(int, int)> rec = [&](int start, int depth) {
        if (depth == need) {
            std::array<std::array<i128, 4>, 4> A{};
            std::array<i128, 4> rhs{};
            int r = 0;
            for (auto &e : eqs) {
                for (int j = 0; j < 4; ++j)
                    A[r][j] = e.c[j];
                rhs[r++] = e.b;
            }
            for (int k : idx) {
                for (int j = 0; j < 4; ++j)
                    A[r][j] = rows[k].c[j];
                rhs[r++] = rows[k].b;
            }
            i128 d = det4(A);
            if (d == 0)
                return;
            std::array<i128, 4> num{};
            for (int j = 0; j < 4; ++j) {
                auto Aj = A;
                for (int i = 0; i < 4; ++i)
                    Aj[i][j] = rhs[i];
                num[j] = det4(Aj);
            }
            if (d < 0) {
                d = -d;
                for (auto &x : num)
                    x = -x;
            }
            for (auto &row : rows) {
                i128 s = 0;
                for (int j = 0; j < 4; ++j)
                    s += row.c[j] * num[j];
                if (s > static_cast<i128>(row.b) * d)
                    return;
            }
            out.push_back({num, d});
            return;
        }
        for (int k = start; k < nr; ++k) {
            idx[depth] = k;
            rec(k + 1, depth + 1);
        }
    };
    rec(0, 0);
    return out;
}

inline std::vector<LinearRow> region_rows(const std::vector<Exponent> &pts, i64 rhs) {
    std::vector<LinearRow> rows;
    for (int i = 0; i < 4; ++i) {
        Vec4 c{0, 0, 0, 0};
        c[i] = -1;
        rows.push_back({c, 0});
    }
    for (auto &v : pts)
        rows.push_back({{1 - v[0], 1 - v[1], 1 - v[2], 1 - v[3]}, rhs});
    return rows;
}

inline i64 floor_i64(const Rational &q) { return static_cast<i64>(floor_of(q)); }

} // namespace detail

/// Derives the enumeration region from the support of phi. Throws
/// UnboundedRegion when weights with a <= 1 are unbounded (which happens
/// only for non-isolated singularities).
inline WeightRegion weight_region(const QuasiPolynomial &phi, i64 lattice_index) {
    if (phi.is_zero())
        throw std::invalid_argument("weight region of the zero series");
    WeightRegion R;
    R.constraints = detail::undominated(phi.support());
    std::sort(R.constraints.begin(), R.constraints.end());

    // recession directions: d >= 0, <d, 1 - v> <= 0, sum d = 1
    auto rec = detail::vertices(detail::region_rows(R.constraints, 0), {{{1, 1, 1, 1}, 1}});
    if (!rec.empty()) {
        std::string dir;
        auto &[num, d] = rec.front();
        for (int i = 0; i < 4; ++i)
            dir += (i ? "," : "") + to_string(Rational(BigInt(static_cast<i64>(num[i])), BigInt(static_cast<i64>(d))));
        throw UnboundedRegion("weights with discrepancy <= 1 are unbounded along (" + dir +
                              "); the singularity is not isolated");
    }
    for (auto &b : R.bound)
        b = 0;
    for (auto &[num, d] : detail::vertices(detail::region_rows(R.constraints, 2), {})) {
        for (int i = 0; i < 4; ++i) {
            Rational x(BigInt(static_cast<i64>(num[i])), BigInt(static_cast<i64>(d)));
            if (x > R.bound[i])
                R.bound[i] = x;
        }
    }
    // a face monomial e satisfies deg(e)/m <= <w,e> = w(phi) < sum(w) - 1
    Rational total = R.bound[0] + R.bound[1] + R.bound[2] + R.bound[3] - 1;
    R.truncation = total > 0 ? static_cast<int>(detail::floor_i64(total * lattice_index)) : 0;
    return R;
}

/// Which faces the scan keeps, and which of those are tagged as forced
/// rational.
struct FacePredicate {
    std::function<bool(const std::set<Exponent> &)> keep;
    std::function<bool(const std::set<Exponent> &)> pre_rational = [](const std::set<Exponent> &) { return false; };
};

namespace detail {

/// Index [N' : N''] from orders: ord of the generator over ord of w, both
/// modulo Z^4 (N'' contains Z^4).
inline i64 fast_index(const Vec4 &num, const FractionalLattice &L) {
    i64 g = L.m;
    for (i64 x : num)
        g = std::gcd(g, x);
    return L.generator_order() / (L.m / g);
}

} // namespace detail

/// Exhaustive scan of the primitive lattice vectors w in N' with
/// 0 < w_i <= bound_i and a(w, phi) <= 1, where a is measured against
/// `level_poly` (the instance itself, or the extremal diagram of a family)
/// and the face is that of `level_poly`. Sorted lexicographically.
inline std::vector<BlowupCandidate> scan_region(const QuasiPolynomial &level_poly, const FractionalLattice &L,
                                                const std::array<Rational, 4> &bound, const FacePredicate &pred) {
    std::vector<BlowupCandidate> out;
    Vec4 hi{};
    for (int i = 0; i < 4; ++i)
        hi[i] = detail::floor_i64(bound[i] * L.m);
    const auto pts = level_poly.support();
    const i64 m = L.m;
    std::set<Vec4> seen;
    for (i64 k = 0; k < m; ++k) {
        Vec4 r{};
        for (int i = 0; i < 4; ++i)
            r[i] = mod_floor(k * L.a[i], m);
        auto first = [&](int i) { return r[i] == 0 ? m : r[i]; };
        for (i64 v0 = first(0); v0 <= hi[0]; v0 += m)
            for (i64 v1 = first(1); v1 <= hi[1]; v1 += m)
                for (i64 v2 = first(2); v2 <= hi[2]; v2 += m)
                    for (i64 v3 = first(3); v3 <= hi[3]; v3 += m) {
                        Vec4 v{v0, v1, v2, v3};
                        i64 lvl = 0;
                        bool firstpt = true;
                        for (auto &e : pts) {
                            i64 s = monomial_weight_num(v, e);
                            if (firstpt || s < lvl) {
                                lvl = s;
                                firstpt = false;
                            }
                        }
                        // m * a = sum v - m - lvl <= m
                        if (v0 + v1 + v2 + v3 - m - lvl > m)
                            continue;
                        WeightVector w(v, L);
                        if (!is_primitive(w) || !seen.insert(v).second)
                            continue;
                        std::set<Exponent> fs;
                        for (auto &e : pts)
                            if (monomial_weight_num(v, e) == lvl)
                                fs.insert(e);
                        if (!pred.keep(fs))
                            continue;
                        BlowupCandidate c;
                        c.weight = w;
                        c.face = face(w, level_poly);
                        c.discrepancy = make_rational(v0 + v1 + v2 + v3 - m - lvl, m);
                        c.quotient_order = detail::fast_index(v, L);
                        c.group = c.quotient_order > 1 ? quotient_group_action(w) : CyclicGroup{};
                        c.pre_rational = pred.pre_rational(fs);
                        out.push_back(std::move(c));
                    }
    }
    std::sort(out.begin(), out.end(),
              [](const BlowupCandidate &a, const BlowupCandidate &b) { return a.weight.num < b.weight.num; });
    return out;
}

/// Instance-mode predicates: the face must omit at least one of the
/// square/cube terms that otherwise make the divisor rational.
inline FacePredicate instance_predicate(const SingularityInstance &S) {
    using Set = std::set<Exponent>;
    auto count_groups = [](const Set &f, const std::vector<std::vector<Exponent>> &groups) {
        int n = 0;
        for (auto &g : groups) {
            bool hit = false;
            for (auto &e : g)
                hit |= f.count(e) > 0;
            n += hit;
        }
        return n;
    };
    const Exponent x2{2, 0, 0, 0}, y2{0, 2, 0, 0}, u2{0, 0, 0, 2}, x3{3, 0, 0, 0}, y3{0, 3, 0, 0};
    const Exponent y2z{0, 2, 1, 0}, yz2{0, 1, 2, 0}, xyz{1, 1, 1, 0};
    FacePredicate P;
    switch (S.type) {
    case TypeTag::cAx4:
    case TypeTag::cAx2:
        P.keep = [=](const Set &f) { return f.count(x2) || f.count(y2); };
        P.pre_rational = [=](const Set &f) { return f.count(x2) && f.count(y2); };
        break;
    case TypeTag::cD3_1:
        P.keep = [=](const Set &f) { return count_groups(f, {{u2}, {x3}, {y2z, yz2}}) >= 2; };
        break;
    case TypeTag::cD3_2:
        P.keep = [=](const Set &f) { return count_groups(f, {{u2}, {x3}, {yz2}}) >= 2; };
        break;
    case TypeTag::cD3_3:
        P.keep = [=](const Set &f) { return count_groups(f, {{u2}, {x3}, {y3}}) >= 2; };
        break;
    case TypeTag::cD2_1: {
        int a = static_cast<int>(S.params.at("a")), b = static_cast<int>(S.params.at("b")),
            c = static_cast<int>(S.params.at("c"));
        std::vector<std::vector<Exponent>> groups{{u2}, {xyz}, {{2 * a, 0, 0, 0}}, {{0, 2 * b, 0, 0}}, {{0, 0, c, 0}}};
        P.keep = [=](const Set &f) { return count_groups(f, groups) >= 2; };
        break;
    }
    case TypeTag::cD2_2:
        P.keep = [=](const Set &f) { return f.count(u2) || f.count(y2z); };
        break;
    case TypeTag::cE2: {
        std::vector<Exponent> quartic;
        for (int i = 0; i <= 4; ++i)
            quartic.push_back({0, i, 4 - i, 0});
        P.keep = [=](const Set &f) { return count_groups(f, {{u2}, {x3}, quartic}) >= 2; };
        break;
    }
    }
    return P;
}

struct Enumeration {
    WeightRegion region;
    std::vector<BlowupCandidate> candidates;
};

/// Instance mode: every primitive w in N' with a(w, phi) <= 1 whose face is
/// of potentially non-rational shape, found by scanning the region derived
/// from the instance's own Newton diagram.
inline Enumeration enumerate_candidates(const SingularityInstance &S) {
    Enumeration E;
    E.region = weight_region(S.equation, S.action.m);
    E.candidates = scan_region(S.equation, S.action.lattice(), E.region.bound, instance_predicate(S));
    return E;
}

} // namespace nrdiv
