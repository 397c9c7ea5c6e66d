#pragma once
// Geometry of exceptional divisors: components, reducedness, cone
// structure, genus of the base curve, rationality verdicts, family labels
// and the genus bounds attached to them.

#include "blowup.hpp"
#include "classify.hpp"
#include "curve.hpp"
#include "newton.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace nrdiv {

enum class DivisorVerdict { rational, cone_over_curve, nonreduced, undetermined };

inline std::string to_string(DivisorVerdict v) {
    switch (v) {
    case DivisorVerdict::rational:
        return "rational";
    case DivisorVerdict::cone_over_curve:
        return "cone-over-curve";
    case DivisorVerdict::nonreduced:
        return "non-reduced";
    default:
        return "undetermined";
    }
}

struct ComponentReport {
    QuasiPolynomial equation;
    int multiplicity = 1;
    int count = 1; ///< number of components of this shape (reducible covers)
    DivisorVerdict verdict = DivisorVerdict::undetermined;
    std::optional<int> genus;
    bool hyperelliptic = false;
    std::string rule; ///< which rule produced the verdict
    std::optional<CurveModel> curve;
};

struct DivisorReport {
    BlowupCandidate candidate;
    std::vector<ComponentReport> components;
    std::vector<std::string> notes;

    bool non_rational() const {
        for (auto &c : components)
            if (c.verdict == DivisorVerdict::cone_over_curve && c.genus && *c.genus >= 1)
                return true;
        return false;
    }
    bool undetermined() const {
        for (auto &c : components)
            if (c.verdict == DivisorVerdict::undetermined)
                return true;
        return false;
    }
    bool nonreduced() const {
        for (auto &c : components)
            if (c.verdict == DivisorVerdict::nonreduced)
                return true;
        return false;
    }
    /// Largest genus among non-rational components.
    std::optional<int> genus() const {
        std::optional<int> g;
        for (auto &c : components)
            if (c.verdict == DivisorVerdict::cone_over_curve && c.genus)
                g = g ? std::max(*g, *c.genus) : *c.genus;
        return g;
    }
    /// Summary verdict: non-reduced, undetermined, non-rational or rational.
    DivisorVerdict verdict() const {
        if (nonreduced())
            return DivisorVerdict::nonreduced;
        if (undetermined())
            return DivisorVerdict::undetermined;
        if (non_rational())
            return DivisorVerdict::cone_over_curve;
        return DivisorVerdict::rational;
    }
};

/// Base curve of a cone: the face with the omitted coordinates removed.
/// Requires the face to use exactly three coordinates.
struct ConeBase {
    CurveModel curve;
    int vertex = 0; ///< omitted coordinate; the vertex is its coordinate point
};

inline std::optional<ConeBase> cone_base(const QuasiPolynomial &F, const Vec4 &ambient, const CyclicGroup &G) {
    auto vars = F.variables();
    if (vars.size() != 3)
        return std::nullopt;
    ConeBase B;
    for (int i = 0; i < 4; ++i)
        if (std::find(vars.begin(), vars.end(), i) == vars.end())
            B.vertex = i;
    B.curve = make_curve(F, {vars[0], vars[1], vars[2]}, ambient, G);
    return B;
}

namespace detail {

inline bool four_variable_quasismooth(const QuasiPolynomial &F, std::optional<bool> &undecided) {
    MPoly p = F.to_mpoly();
    std::vector<MPoly> grad;
    for (int i = 0; i < 4; ++i)
        grad.push_back(p.derivative(i));
    if (no_nontrivial_zero_modp(grad, 4))
        return true;
    for (int mask = 1; mask < 16; ++mask) {
        std::vector<int> stratum;
        for (int i = 0; i < 4; ++i)
            if (mask & (1 << i))
                stratum.push_back(i);
        auto z = stratum_has_zero(grad, stratum, kQuasismoothFallbackBudget);
        if (!z) {
            undecided = true;
            return false;
        }
        if (*z)
            return false;
    }
    return true;
}

/// F = A v + B with A a monomial and B free of v and coprime to A.
inline std::optional<int> linear_coordinate(const QuasiPolynomial &F) {
    for (int v : F.variables()) {
        int linear = 0;
        bool ok = true;
        Exponent A{};
        for (auto &[e, c] : F.terms()) {
            if (e[v] >= 2)
                ok = false;
            if (e[v] == 1) {
                ++linear;
                A = e;
            }
        }
        if (!ok || linear != 1)
            continue;
        // B must not be divisible by any coordinate occurring in A
        bool coprime = true;
        for (int i = 0; i < 4; ++i) {
            if (i == v || A[i] == 0)
                continue;
            bool all = true;
            for (auto &[e, c] : F.terms())
                if (e[v] == 0 && e[i] == 0)
                    all = false;
            coprime &= !all;
        }
        if (coprime)
            return v;
    }
    return std::nullopt;
}

/// A pair of coordinates (v1, v2) in which F has total degree exactly 2
/// and whose conic over the function field of the remaining weighted line
/// is smooth: 4 c20 c02 c00 + c11 c10 c01 - c20 c01^2 - c02 c10^2 - c00 c11^2
/// does not vanish, c_ij being the coefficient of v1^i v2^j.
inline std::optional<std::pair<int, int>> smooth_conic_pair(const QuasiPolynomial &F) {
    for (int p = 0; p < 4; ++p)
        for (int q = p + 1; q < 4; ++q) {
            bool ok = true, quadratic = false;
            std::map<std::pair<int, int>, MPoly> c;
            for (auto &[e, k] : F.terms()) {
                int d = e[p] + e[q];
                if (d > 2) {
                    ok = false;
                    break;
                }
                quadratic |= d == 2;
                Mono m(e.begin(), e.end());
                m[p] = m[q] = 0;
                auto [it, fresh] = c.try_emplace({e[p], e[q]}, MPoly(4));
                it->second.add_term(m, k.value);
            }
            if (!ok || !quadratic)
                continue;
            auto at = [&](int i, int j) {
                auto it = c.find({i, j});
                return it == c.end() ? MPoly(4) : it->second;
            };
            MPoly c20 = at(2, 0), c02 = at(0, 2), c00 = at(0, 0), c11 = at(1, 1), c10 = at(1, 0), c01 = at(0, 1);
            MPoly det = MPoly::constant(4, 4) * c20 * c02 * c00 + c11 * c10 * c01 - c20 * c01 * c01 -
                        c02 * c10 * c10 - c00 * c11 * c11;
            if (!det.is_zero())
                return std::make_pair(p, q);
        }
    return std::nullopt;
}

inline QuasiPolynomial coordinate_hyperplane(int i) {
    QuasiPolynomial h;
    Exponent e{0, 0, 0, 0};
    e[i] = 1;
    h.add(e, make_rational(1));
    return h;
}

} // namespace detail

/// Verdict for the reduced, monomial-free part F of a face.
inline std::vector<ComponentReport> classify_face_part(const QuasiPolynomial &F, const Vec4 &ambient,
                                                       const CyclicGroup &G) {
    ComponentReport R;
    R.equation = F;
    auto reduced = is_reduced(F);
    if (!reduced) {
        R.verdict = DivisorVerdict::undetermined;
        R.rule = "reducedness undecided";
        return {R};
    }
    if (!*reduced) {
        R.verdict = DivisorVerdict::nonreduced;
        R.rule = "R2: repeated factor, discrepancy claim withdrawn";
        return {R};
    }
    auto vars = F.variables();
    if (vars.size() <= 2) {
        R.verdict = DivisorVerdict::rational;
        R.rule = "R3: cone over points (two coordinates)";
        return {R};
    }
    if (vars.size() == 3) {
        auto B = cone_base(F, ambient, G);
        R.curve = B->curve;
        if (auto cv = genus_cover(B->curve)) {
            if (cv->nonreduced) {
                R.verdict = DivisorVerdict::nonreduced;
                R.rule = "R2: square after completing the square";
                return {R};
            }
            R.genus = cv->genus;
            R.count = cv->components;
            R.hyperelliptic = cv->hyperelliptic;
            R.rule = "R3: cone over curve, genus via " + std::string(cv->completed_square ? "completed square, " : "") +
                     "cyclic cover of degree " + std::to_string(cv->cover_degree) + " over P^1";
            if (cv->components > 1)
                R.rule += ", " + std::to_string(cv->components) + " components";
        } else if (auto gq = genus_quasismooth(B->curve)) {
            R.genus = *gq;
            R.rule = "R3: cone over quasi-smooth curve, genus by adjunction";
        } else if (auto v = detail::linear_coordinate(F)) {
            // A v + B = 0 with A, B coprime: the graph of -B/A over a weighted line
            R.genus = 0;
            R.rule = "R3: cone over a curve linear in " + default_variable_names()[*v] + ", genus 0";
        } else {
            R.verdict = DivisorVerdict::undetermined;
            R.rule = "cone over a curve outside the cover and quasi-smooth forms";
            return {R};
        }
        R.verdict = *R.genus >= 1 ? DivisorVerdict::cone_over_curve : DivisorVerdict::rational;
        return {R};
    }
    if (auto v = detail::linear_coordinate(F)) {
        R.verdict = DivisorVerdict::rational;
        R.rule = "R4: linear in " + default_variable_names()[*v] + ", birational to a weighted plane";
        return {R};
    }
    if (auto pq = detail::smooth_conic_pair(F)) {
        const auto &n = default_variable_names();
        R.verdict = DivisorVerdict::rational;
        R.rule = "R4: conic bundle in " + n[pq->first] + "," + n[pq->second] +
                 " over a weighted line with smooth generic fibre (Tsen)";
        return {R};
    }
    std::optional<bool> undecided;
    if (detail::four_variable_quasismooth(F, undecided)) {
        R.verdict = DivisorVerdict::rational;
        R.rule = "R4: quasi-smooth with anti-ample canonical class (a > 0), quotient singularities only";
        return {R};
    }
    R.verdict = DivisorVerdict::undetermined;
    R.rule = undecided ? "R4: quasi-smoothness undecided" : "four-coordinate face with non-quotient singularities";
    return {R};
}

/// Applies the rationality rules in order: R1 (both squares on the face),
/// monomial factors (coordinate planes, multiplicities), R2 (non-reduced),
/// R3 (cones: genus of the base curve), R4 (four-coordinate faces).
inline DivisorReport classify_rationality(const BlowupCandidate &c) {
    DivisorReport D;
    D.candidate = c;
    const QuasiPolynomial &F = c.face.polynomial;
    const Vec4 ambient = c.weight.integral_weights();
    if (c.pre_rational) {
        ComponentReport R;
        R.equation = F;
        R.verdict = DivisorVerdict::rational;
        R.rule = "R1: face contains x^2 and y^2, rational singularities";
        D.components.push_back(R);
        return D;
    }
    if (F.has_generic()) {
        ComponentReport R;
        R.equation = F;
        R.verdict = DivisorVerdict::undetermined;
        R.rule = "generic coefficients must be instantiated";
        D.components.push_back(R);
        return D;
    }
    MPoly p = F.to_mpoly();
    Mono g = p.monomial_gcd();
    for (int i = 0; i < 4; ++i) {
        if (g[i] == 0)
            continue;
        ComponentReport R;
        R.equation = detail::coordinate_hyperplane(i);
        R.multiplicity = g[i];
        if (g[i] >= 2) {
            R.verdict = DivisorVerdict::nonreduced;
            R.rule = "R2: coordinate plane with multiplicity " + std::to_string(g[i]) + ", discrepancy claim withdrawn";
        } else {
            R.verdict = DivisorVerdict::rational;
            R.rule = "coordinate plane: weighted projective plane";
        }
        D.components.push_back(R);
    }
    MPoly q = p.divided_by_monomial(g);
    if (!q.is_constant()) {
        auto parts = classify_face_part(from_mpoly(q), ambient, c.group);
        D.components.insert(D.components.end(), parts.begin(), parts.end());
    }
    if (D.nonreduced())
        D.notes.push_back("non-reduced component: the multiplicity-1 discrepancy does not apply");
    return D;
}

/// The paper's name for a candidate weight within its type, with the
/// family parameter k where the list is infinite.
struct FamilyLabel {
    std::string name;
    i64 k = -1;
    /// genus bound; nullopt when the bound formula is negative (read as
    /// "no non-rational divisor possible")
    std::optional<int> bound;
    bool bound_exact = false; ///< the paper states the genus exactly
    std::string note;
};

/// Genus bound for (type, family, k).
inline std::optional<int> genus_bound(TypeTag t, const std::string &name, i64 k) {
    auto nonneg = [](i64 b) { return b < 0 ? std::nullopt : std::optional<int>(static_cast<int>(b)); };
    switch (t) {
    case TypeTag::cAx4:
        if (name == "nu1")
            return nonneg(2 * k);
        if (name == "nu2") {
            i64 m = k / 3;
            return nonneg(k % 3 == 0 ? 2 * m - 1 : k % 3 == 1 ? 2 * m + 1 : 2 * m + 2);
        }
        if (name == "nu3")
            return nonneg(2 * k + 1);
        if (name == "nu4")
            return nonneg(k % 3 == 0 ? 2 * (k / 3) : 2 * (k / 3) + 1);
        break;
    case TypeTag::cAx2:
        if (name == "nu0" || name == "nu1")
            return nonneg(k - 1);
        break;
    case TypeTag::cD3_2:
        if (name == "nu")
            return 1;
        break;
    case TypeTag::cD3_3:
        if (name == "nu1" || name == "nu2" || name == "nu3")
            return 1;
        if (name == "nu4")
            return 0;
        break;
    case TypeTag::cD2_2:
        if (name == "nu1")
            return nonneg(k - 1);
        if (name == "nu3")
            return nonneg(k);
        if (name == "nu4")
            return nonneg(k % 2 == 0 ? k / 2 : (k - 1) / 2);
        if (name == "nu6")
            return nonneg(k % 2 == 1 ? (k - 1) / 2 : (k - 2) / 2);
        if (name == "nu2" || name == "nu5")
            return 0;
        break;
    case TypeTag::cE2:
        if (name == "nu4")
            return 3;
        if (name.size() == 3 && name[0] == 'n' && name[2] >= '1' && name[2] <= '7')
            return 1;
        break;
    case TypeTag::cD3_1:
    case TypeTag::cD2_1:
        return 0;
    }
    throw std::invalid_argument("no genus bound for family " + name + " of type " + to_string(t));
}

/// Recognizes the paper's named blowups among candidate weights.
inline std::optional<FamilyLabel> identify_family(TypeTag t, const WeightVector &w) {
    i64 g = std::gcd(gcd_all(w.num), w.lattice.m);
    Vec4 v = w.num;
    for (auto &x : v)
        x /= g;
    const i64 m = w.lattice.m / g;
    auto label = [&](std::string name, i64 k) -> std::optional<FamilyLabel> {
        FamilyLabel L;
        L.name = std::move(name);
        L.k = k;
        L.bound = genus_bound(t, L.name, k);
        return L;
    };
    auto is = [&](i64 mm, Vec4 x) { return m == mm && v == x; };
    switch (t) {
    case TypeTag::cAx4:
        if (m != 4)
            return std::nullopt;
        if (v[2] == 1 && v[3] == 2 && (v[0] - 1) % 4 == 0 && v[1] == v[0] + 2)
            return label("nu1", (v[0] - 1) / 4);
        if (v[2] == 3 && v[3] == 2 && (v[0] - 3) % 4 == 0 && v[1] == v[0] + 2)
            return label("nu2", (v[0] - 3) / 4);
        if (v[2] == 1 && v[3] == 2 && v[0] >= 5 && (v[0] - 5) % 4 == 0 && v[1] == v[0] - 2)
            return label("nu3", (v[0] - 5) / 4);
        if (v[2] == 3 && v[3] == 2 && (v[0] - 3) % 4 == 0 && v[1] == v[0] - 2)
            return label("nu4", (v[0] - 3) / 4);
        return std::nullopt;
    case TypeTag::cAx2:
        if (m != 2 || v[2] != 1 || v[3] != 1)
            return std::nullopt;
        if (v[1] == v[0] + 1 && v[0] % 2 == 0)
            return label("nu0", v[0]);
        if (v[1] == v[0] - 1 && v[1] % 2 == 1)
            return label("nu1", v[1]);
        return std::nullopt;
    case TypeTag::cD3_2:
        if (is(3, {2, 1, 4, 3}))
            return label("nu", -1);
        return std::nullopt;
    case TypeTag::cD3_3:
        if (is(3, {5, 4, 1, 6}))
            return label("nu1", -1);
        if (is(3, {2, 4, 1, 3}))
            return label("nu2", -1);
        if (is(3, {4, 5, 2, 6}))
            return label("nu3", -1);
        if (is(1, {2, 2, 1, 3}))
            return label("nu4", -1);
        return std::nullopt;
    case TypeTag::cD2_2:
        if (m == 2 && v[0] == 1 && v[2] == 2 && v[1] == v[3] && v[1] % 2 == 1)
            return label("nu1", (v[1] + 1) / 2);
        if (m == 2 && v[0] == 1 && v[2] == 4 && v[1] == v[3] - 2 && v[3] % 2 == 1)
            return label("nu2", (v[3] + 1) / 2);
        if (m == 2 && v[0] == 1 && v[2] == 2 && v[1] == v[3] - 2 && v[1] % 2 == 1)
            return label("nu3", (v[1] + 1) / 2);
        if (m == 1 && v[0] == 1 && v[2] == 1 && v[1] == v[3]) {
            auto L = label("nu4", v[1]);
            L->note = "printed as (1,k,2,k); the enumerated weight is (1,k,1,k)";
            return L;
        }
        if (m == 1 && v[0] == 1 && v[2] == 2 && v[1] == v[3] - 1)
            return label("nu5", v[3]);
        if (m == 1 && v[0] == 1 && v[2] == 1 && v[1] == v[3] - 1)
            return label("nu6", v[3]);
        return std::nullopt;
    case TypeTag::cE2: {
        static const std::vector<std::pair<i64, Vec4>> table{{2, {2, 3, 1, 3}}, {2, {2, 1, 3, 3}}, {2, {4, 3, 1, 5}},
                                                             {2, {4, 3, 1, 7}}, {2, {6, 5, 1, 9}}, {1, {2, 2, 1, 3}},
                                                             {1, {3, 2, 1, 4}}};
        for (std::size_t i = 0; i < table.size(); ++i)
            if (is(table[i].first, table[i].second)) {
                auto L = label("nu" + std::to_string(i + 1), -1);
                L->bound_exact = i != 3;
                if (i == 3)
                    L->note = "curve not necessarily hyperelliptic";
                return L;
            }
        return std::nullopt;
    }
    case TypeTag::cD3_1:
    case TypeTag::cD2_1:
        return std::nullopt;
    }
    return std::nullopt;
}

} // namespace nrdiv
