#pragma once
// Syntactic recognition and validation of the standard forms of 3-fold
// non-Gorenstein terminal singularities (coordinates x, y, z, u in this
// fixed order) and extraction of the type parameters.

#include "qpoly.hpp"

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace nrdiv {

enum class TypeTag { cAx4, cAx2, cD3_1, cD3_2, cD3_3, cD2_1, cD2_2, cE2 };

inline const std::vector<TypeTag> &all_types() {
    static const std::vector<TypeTag> t{TypeTag::cAx4,  TypeTag::cAx2,  TypeTag::cD3_1, TypeTag::cD3_2,
                                        TypeTag::cD3_3, TypeTag::cD2_1, TypeTag::cD2_2, TypeTag::cE2};
    return t;
}

inline std::string to_string(TypeTag t) {
    switch (t) {
    case TypeTag::cAx4:
        return "cAx/4";
    case TypeTag::cAx2:
        return "cAx/2";
    case TypeTag::cD3_1:
        return "cD/3-1";
    case TypeTag::cD3_2:
        return "cD/3-2";
    case TypeTag::cD3_3:
        return "cD/3-3";
    case TypeTag::cD2_1:
        return "cD/2-1";
    case TypeTag::cD2_2:
        return "cD/2-2";
    case TypeTag::cE2:
        return "cE/2";
    }
    return "?";
}

inline std::optional<TypeTag> parse_type_tag(const std::string &s) {
    for (auto t : all_types())
        if (to_string(t) == s)
            return t;
    return std::nullopt;
}

/// The cyclic action attached to each standard form.
inline CyclicAction standard_action(TypeTag t) {
    switch (t) {
    case TypeTag::cAx4:
        return {4, {1, 3, 1, 2}};
    case TypeTag::cAx2:
    case TypeTag::cE2:
        return {2, {0, 1, 1, 1}};
    case TypeTag::cD3_1:
    case TypeTag::cD3_2:
    case TypeTag::cD3_3:
        return {3, {1, 2, 2, 0}};
    case TypeTag::cD2_1:
    case TypeTag::cD2_2:
        return {2, {1, 1, 0, 1}};
    }
    return {};
}

/// Upper bound on non-rational divisors with discrepancy <= 1 asserted for
/// each type.
inline int theorem_limit(TypeTag t) {
    switch (t) {
    case TypeTag::cAx2:
    case TypeTag::cD3_2:
        return 1;
    case TypeTag::cD3_1:
    case TypeTag::cD2_1:
        return 0;
    default:
        return 2;
    }
}

class ClassificationError : public std::runtime_error {
  public:
    ClassificationError(std::string clause, const std::string &what)
        : std::runtime_error(what), clause_(std::move(clause)) {}
    const std::string &clause() const { return clause_; }

  private:
    std::string clause_;
};

class UnsupportedType : public ClassificationError {
  public:
    using ClassificationError::ClassificationError;
};

struct SingularityInstance {
    QuasiPolynomial equation;
    CyclicAction action;
    TypeTag type = TypeTag::cAx4;
    /// n, k, a, b, c as applicable; for cE/2 the subfamily index q
    /// (0: y^4, 1: y^3z, 2: y^2z^2).
    std::map<std::string, i64> params;
    /// named coefficient data (lambda0, mu0, alpha0, ...).
    std::map<std::string, Coefficient> coefficients;
    std::vector<std::string> flags;

    bool operator==(const SingularityInstance &o) const {
        return equation == o.equation && action == o.action && type == o.type && params == o.params &&
               coefficients == o.coefficients && flags == o.flags;
    }
};

namespace detail {

inline bool only_in(const Exponent &e, std::initializer_list<int> vars) {
    for (int i = 0; i < 4; ++i) {
        bool allowed = false;
        for (int v : vars)
            allowed |= v == i;
        if (!allowed && e[i] != 0)
            return false;
    }
    return true;
}

inline Coefficient coeff_or_zero(const QuasiPolynomial &f, const Exponent &e) {
    return f.contains(e) ? f.coeff(e) : Coefficient(Rational(0));
}

inline void require(bool ok, const std::string &clause, const std::string &what) {
    if (!ok)
        throw ClassificationError(clause, what);
}

inline QuasiPolynomial swap_yz(const QuasiPolynomial &f) {
    QuasiPolynomial g;
    for (auto &[e, c] : f.terms())
        g.add(Exponent{e[0], e[2], e[1], e[3]}, c);
    g.set_truncation_degree(f.truncation_degree());
    return g;
}

inline SingularityInstance classify_cax4(const QuasiPolynomial &phi) {
    SingularityInstance S;
    S.type = TypeTag::cAx4;
    require(phi.contains({2, 0, 0, 0}) && phi.contains({0, 2, 0, 0}), "cAx/4 shape", "cAx/4 requires x^2 and y^2");
    for (auto &[e, c] : phi.terms()) {
        if (e == Exponent{2, 0, 0, 0} || e == Exponent{0, 2, 0, 0})
            continue;
        require(only_in(e, {2, 3}), "cAx/4 shape", "cAx/4 requires phi = x^2 + y^2 + f(z,u)");
    }
    require(!phi.contains({0, 0, 0, 1}), "u not in f", "cAx/4 requires the coefficient of u in f to vanish");
    std::optional<int> n;
    for (int j = 1; j < 1000 && !n; j += 2)
        if (phi.contains({0, 0, 0, j}))
            n = (j - 1) / 2;
    require(n.has_value(), "u^(2n+1) in f", "cAx/4 requires some odd power u^(2n+1) in f (isolatedness)");
    S.params["n"] = *n;
    return S;
}

inline SingularityInstance classify_cax2(const QuasiPolynomial &phi) {
    SingularityInstance S;
    S.type = TypeTag::cAx2;
    int k = 0;
    bool any = false;
    for (auto &[e, c] : phi.terms()) {
        if (e == Exponent{2, 0, 0, 0} || e == Exponent{0, 2, 0, 0})
            continue;
        require(only_in(e, {2, 3}), "cAx/2 shape", "cAx/2 requires phi = x^2 + y^2 + f(z,u)");
        require(total_degree(e) >= 4, "f in (z,u)^4", "cAx/2 requires f(z,u) in (z,u)^4");
        k = any ? std::min(k, total_degree(e)) : total_degree(e);
        any = true;
    }
    require(any, "cAx/2 shape", "cAx/2 requires a nonzero f(z,u)");
    S.params["k"] = k;
    return S;
}

inline SingularityInstance classify_ce2(QuasiPolynomial phi) {
    SingularityInstance S;
    S.type = TypeTag::cE2;
    auto in_h = [](const Exponent &e) { return e[0] == 0 && e[3] == 0; };
    auto has_any = [&](const QuasiPolynomial &f, std::initializer_list<Exponent> es) {
        for (auto &e : es)
            if (f.contains(e))
                return true;
        return false;
    };
    if (!has_any(phi, {{0, 4, 0, 0}, {0, 3, 1, 0}, {0, 2, 2, 0}}) && has_any(phi, {{0, 0, 4, 0}, {0, 1, 3, 0}})) {
        phi = swap_yz(phi);
        S.flags.push_back("coordinates y and z exchanged so that h contains y^4, y^3z or y^2z^2");
    }
    bool quartic = false;
    for (auto &[e, c] : phi.terms()) {
        if (e == Exponent{0, 0, 0, 2} || e == Exponent{3, 0, 0, 0})
            continue;
        bool gx = e[0] == 1 && e[3] == 0;
        require(gx || in_h(e), "cE/2 shape", "cE/2 requires phi = u^2 + x^3 + g(y,z)x + h(y,z)");
        int d = e[1] + e[2];
        require(d >= 4, gx ? "g in (y,z)^4" : "h in (y,z)^4", "cE/2 requires g, h in (y,z)^4");
        if (!gx && d == 4)
            quartic = true;
    }
    require(quartic, "h not in (y,z)^5", "cE/2 requires h to have a monomial of degree 4");
    S.params["q"] = phi.contains({0, 4, 0, 0}) ? 0 : phi.contains({0, 3, 1, 0}) ? 1 : 2;
    S.equation = phi;
    return S;
}

inline SingularityInstance classify_cd3(const QuasiPolynomial &phi) {
    SingularityInstance S;
    require(phi.contains({0, 0, 0, 2}) && phi.contains({3, 0, 0, 0}), "cD/3 shape", "cD/3 requires u^2 and x^3");
    const Exponent y2z{0, 2, 1, 0}, yz2{0, 1, 2, 0}, y3{0, 3, 0, 0};
    auto others = [&](std::initializer_list<Exponent> fixed) {
        std::vector<Exponent> out;
        for (auto &[e, c] : phi.terms()) {
            bool f = e == Exponent{0, 0, 0, 2} || e == Exponent{3, 0, 0, 0};
            for (auto &x : fixed)
                f |= e == x;
            if (!f)
                out.push_back(e);
        }
        return out;
    };
    if (phi.contains(y2z) && phi.contains(yz2) && others({y2z, yz2}).empty()) {
        S.type = TypeTag::cD3_1;
        return S;
    }
    if (phi.contains(y3)) {
        S.type = TypeTag::cD3_3;
        for (auto &e : others({y3})) {
            bool ok = (e[0] == 1 && e[1] == 1 && e[3] == 0 && e[2] >= 3 && e[2] % 3 == 0) ||
                      (e[0] == 1 && e[1] == 0 && e[3] == 0 && e[2] >= 4 && (e[2] - 4) % 3 == 0) ||
                      (e[0] == 0 && e[1] == 1 && e[3] == 0 && e[2] >= 5 && (e[2] - 5) % 3 == 0) ||
                      (e[0] == 0 && e[1] == 0 && e[3] == 0 && e[2] >= 6 && e[2] % 3 == 0);
            require(ok, "cD/3-3 shape",
                    "cD/3-3 requires phi = u^2 + x^3 + y^3 + xyz^3 a(z^3) + xz^4 b(z^3) + yz^5 c(z^3) + z^6 d(z^3)");
        }
        S.coefficients["alpha0"] = coeff_or_zero(phi, {1, 1, 3, 0});
        S.coefficients["beta0"] = coeff_or_zero(phi, {1, 0, 4, 0});
        S.coefficients["gamma0"] = coeff_or_zero(phi, {0, 1, 5, 0});
        S.coefficients["delta0"] = coeff_or_zero(phi, {0, 0, 6, 0});
        return S;
    }
    if (phi.contains(yz2)) {
        S.type = TypeTag::cD3_2;
        for (auto &e : others({yz2})) {
            bool ok = (e[0] == 1 && e[2] == 0 && e[3] == 0 && e[1] >= 4 && (e[1] - 4) % 3 == 0) ||
                      (e[0] == 0 && e[2] == 0 && e[3] == 0 && e[1] >= 6 && e[1] % 3 == 0);
            require(ok, "cD/3-2 shape", "cD/3-2 requires phi = u^2 + x^3 + yz^2 + xy^4 l(y^3) + y^6 m(y^3)");
        }
        Coefficient lam = coeff_or_zero(phi, {1, 4, 0, 0});
        Coefficient mu = coeff_or_zero(phi, {0, 6, 0, 0});
        Coefficient cx = phi.coeff({3, 0, 0, 0});
        S.coefficients["lambda0"] = lam;
        S.coefficients["mu0"] = mu;
        if (lam.is_generic() || mu.is_generic() || cx.is_generic()) {
            S.flags.push_back("4 lambda^3 + 27 mu^2 != 0 assumed for generic coefficients");
        } else {
            // discriminant of x^3 + (lambda/c) x y^4 + (mu/c) y^6 in x
            Rational l = lam.value / cx.value, m = mu.value / cx.value;
            require(4 * l * l * l + 27 * m * m != 0, "4 lambda^3 + 27 mu^2 != 0",
                    "cD/3-2 requires 4 lambda^3 + 27 mu^2 != 0");
        }
        return S;
    }
    throw ClassificationError("cD/3 shape", "equation matches none of the cD/3 standard forms");
}

inline SingularityInstance classify_cd2(const QuasiPolynomial &phi) {
    SingularityInstance S;
    require(phi.contains({0, 0, 0, 2}), "cD/2 shape", "cD/2 requires u^2");
    const Exponent xyz{1, 1, 1, 0}, y2z{0, 2, 1, 0};
    if (phi.contains(xyz)) {
        S.type = TypeTag::cD2_1;
        std::optional<int> a, b, c;
        for (auto &[e, co] : phi.terms()) {
            if (e == Exponent{0, 0, 0, 2} || e == xyz)
                continue;
            if (only_in(e, {0}) && !a)
                a = e[0];
            else if (only_in(e, {1}) && !b)
                b = e[1];
            else if (only_in(e, {2}) && !c)
                c = e[2];
            else
                throw ClassificationError("cD/2-1 shape", "cD/2-1 requires phi = u^2 + xyz + x^2a + y^2b + z^c");
        }
        require(a && b && c, "cD/2-1 shape", "cD/2-1 requires the pure powers x^2a, y^2b and z^c");
        require(*a % 2 == 0 && *b % 2 == 0, "cD/2-1 shape", "cD/2-1 requires even powers of x and y");
        require(*a / 2 >= 2 && *b / 2 >= 2 && *c >= 3, "a, b >= 2, c >= 3", "cD/2-1 requires a, b >= 2 and c >= 3");
        S.params["a"] = *a / 2;
        S.params["b"] = *b / 2;
        S.params["c"] = *c;
        return S;
    }
    require(phi.contains(y2z), "cD/2 shape", "cD/2 requires either xyz or y^2z");
    S.type = TypeTag::cD2_2;
    std::optional<int> lam_a;
    std::optional<int> n;
    for (auto &[e, co] : phi.terms()) {
        if (e == Exponent{0, 0, 0, 2} || e == y2z)
            continue;
        if (e[1] == 1 && e[2] == 0 && e[3] == 0 && e[0] % 2 == 1 && e[0] >= 3) {
            require(!lam_a, "cD/2-2 shape", "cD/2-2 allows a single term lambda y x^(2a+1)");
            lam_a = (e[0] - 1) / 2;
            S.coefficients["lambda"] = co;
            continue;
        }
        require(only_in(e, {0, 2}), "cD/2-2 shape", "cD/2-2 requires phi = u^2 + y^2z + lambda y x^(2a+1) + g(x,z)");
        bool in_ideal = e[0] >= 4 || (e[0] >= 2 && e[2] >= 2) || e[2] >= 3;
        require(in_ideal, "g in (x^4, x^2z^2, z^3)", "cD/2-2 requires g in (x^4, x^2 z^2, z^3)");
        if (e[0] == 0 && (!n || e[2] + 1 < *n))
            n = e[2] + 1;
    }
    require(n.has_value(), "z^(n-1) in g", "cD/2-2 requires a pure power z^(n-1) in g (isolatedness)");
    S.params["n"] = *n;
    if (lam_a)
        S.params["a"] = *lam_a;
    return S;
}

} // namespace detail

/// Recognizes the standard form of (phi, action) and validates every
/// condition of its type. Throws ClassificationError naming the violated
/// clause, or UnsupportedType for the cA/m family.
inline SingularityInstance classify(const QuasiPolynomial &phi, const CyclicAction &act) {
    using detail::require;
    require(!phi.is_zero(), "phi nonzero", "empty equation");
    require(!phi.contains({0, 0, 0, 0}), "phi(0) = 0", "equation has a constant term");
    require(act.m >= 2 && act.m <= 4, "index 2..4", "the quotient order must be 2, 3 or 4");
    auto chr = semi_invariant_character(phi, act);
    require(chr.has_value(), "semi-invariance", "equation is not semi-invariant under the action (mixed characters)");
    if (phi.contains({1, 1, 0, 0}))
        throw UnsupportedType("cA/m", "cA/m shape (xy term) is out of scope");

    Vec4 a = act.a;
    for (auto &x : a)
        x = mod_floor(x, act.m);
    SingularityInstance S;
    if (act.m == 4 && a == Vec4{1, 3, 1, 2}) {
        S = detail::classify_cax4(phi);
    } else if (act.m == 2 && a == Vec4{0, 1, 1, 1}) {
        if (phi.contains({2, 0, 0, 0}) && phi.contains({0, 2, 0, 0}))
            S = detail::classify_cax2(phi);
        else if (phi.contains({0, 0, 0, 2}) && phi.contains({3, 0, 0, 0}))
            S = detail::classify_ce2(phi);
        else
            throw ClassificationError("shape", "equation matches neither cAx/2 nor cE/2");
    } else if (act.m == 3 && a == Vec4{1, 2, 2, 0}) {
        S = detail::classify_cd3(phi);
    } else if (act.m == 2 && a == Vec4{1, 1, 0, 1}) {
        S = detail::classify_cd2(phi);
    } else {
        throw ClassificationError("action", "action " + to_string(act) + " matches no standard form");
    }
    if (S.equation.is_zero())
        S.equation = phi;
    S.action = CyclicAction{act.m, a};
    for (auto &[e, c] : S.equation.terms())
        if (c.is_generic()) {
            S.flags.push_back("generic coefficients are assumed nonzero");
            break;
        }
    return S;
}

/// k for cAx/2: twice the weight of f under w(z) = w(u) = 1/2, i.e. the
/// least total degree of a monomial of f.
inline i64 cax2_k(const SingularityInstance &S) {
    if (S.type != TypeTag::cAx2)
        throw std::invalid_argument("cax2_k requires a cAx/2 instance");
    return S.params.at("k");
}

} // namespace nrdiv
