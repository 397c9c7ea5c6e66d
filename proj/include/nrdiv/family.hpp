#pragma once
// Family mode: a type together with its discrete parameters describes the
// set of all series f = S_ext + (optional monomials). The extremal part
// S_ext is always present; every optional monomial may or may not occur.
// Enumeration lists the weights that can carry a potentially non-rational
// divisor for some member; mutual exclusion decides whether two such
// weights can be non-rational for one and the same member.

#include "divisor.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

namespace nrdiv {

/// How strictly a family candidate is filtered.
///  0: the face of S_ext has the required square/cube shape;
///  1: additionally, the largest possible face spans at least three coordinates;
///  2: some member realizes a cone over a curve of genus >= 1.
enum class FamilyLevel { shape = 0, span = 1, genus = 2 };

struct FamilyDefinition {
    TypeTag type = TypeTag::cAx4;
    std::map<std::string, i64> params;
    QuasiPolynomial extremal;                         ///< S_ext, unit coefficients
    std::function<bool(const Exponent &)> optional;   ///< membership in the optional set
    FamilyLevel level = FamilyLevel::shape;
    std::function<bool(const std::set<Exponent> &)> shape; ///< level-0 predicate on the S_ext face
};

class NoFamilyDefinition : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

namespace detail {

inline QuasiPolynomial units(std::initializer_list<Exponent> es) {
    QuasiPolynomial f;
    for (auto &e : es)
        f.add(e, make_rational(1));
    return f;
}

inline i64 require_param(const std::map<std::string, i64> &p, const std::string &name, i64 lo) {
    auto it = p.find(name);
    if (it == p.end())
        throw std::invalid_argument("missing parameter " + name);
    if (it->second < lo)
        throw std::invalid_argument("parameter " + name + " must be >= " + std::to_string(lo));
    return it->second;
}

} // namespace detail

/// Family of a type. `q` selects the quartic of S_ext for cE/2
/// (0: y^4, 1: y^3 z, 2: y^2 z^2).
inline FamilyDefinition family_definition(TypeTag t, const std::map<std::string, i64> &params) {
    using detail::units;
    FamilyDefinition D;
    D.type = t;
    D.params = params;
    const Exponent x2{2, 0, 0, 0}, y2{0, 2, 0, 0}, u2{0, 0, 0, 2}, y2z{0, 2, 1, 0};
    switch (t) {
    case TypeTag::cAx4: {
        i64 n = detail::require_param(params, "n", 1);
        int top = static_cast<int>(2 * n + 1);
        D.extremal = units({x2, y2, {0, 0, 0, top}});
        D.optional = [top](const Exponent &e) {
            if (e[0] || e[1])
                return false;
            int i = e[2], j = e[3];
            if ((i + 2 * j) % 4 != 2 || (i == 0 && j == 1))
                return false;
            return !(i == 0 && j <= top);
        };
        D.shape = [=](const std::set<Exponent> &f) { return (f.count(x2) > 0) != (f.count(y2) > 0); };
        return D;
    }
    case TypeTag::cD3_3: {
        D.extremal = units({u2, {3, 0, 0, 0}, {0, 3, 0, 0}});
        D.optional = [](const Exponent &e) {
            if (e[3])
                return false;
            auto tail = [&](int start) { return e[2] >= start && (e[2] - start) % 3 == 0; };
            if (e[0] == 1 && e[1] == 1)
                return tail(3);
            if (e[0] == 1 && e[1] == 0)
                return tail(4);
            if (e[0] == 0 && e[1] == 1)
                return tail(5);
            if (e[0] == 0 && e[1] == 0)
                return tail(6);
            return false;
        };
        D.level = FamilyLevel::span;
        D.shape = [](const std::set<Exponent> &f) { return f.size() >= 2; };
        return D;
    }
    case TypeTag::cD2_2: {
        i64 n = detail::require_param(params, "n", 4);
        int zn = static_cast<int>(n - 1);
        D.extremal = units({u2, y2z, {0, 0, zn, 0}});
        D.optional = [zn](const Exponent &e) {
            if (e[3])
                return false;
            if (e[1] == 1 && e[2] == 0)
                return e[0] >= 3 && e[0] % 2 == 1; // y x^(2a+1), a >= 1
            if (e[1] != 0 || e[0] % 2 != 0)
                return false;
            int i = e[0], j = e[2];
            bool in_ideal = i >= 4 || (i >= 2 && j >= 2) || j >= 3;
            if (!in_ideal)
                return false;
            return i > 0 || j > zn;
        };
        D.shape = [=](const std::set<Exponent> &f) { return f.count(u2) || f.count(y2z); };
        return D;
    }
    case TypeTag::cE2: {
        i64 q = params.count("q") ? params.at("q") : 0;
        if (q < 0 || q > 2)
            throw std::invalid_argument("parameter q must be 0, 1 or 2");
        const int qi = static_cast<int>(q);
        D.extremal = units({u2, {3, 0, 0, 0}, {0, 4 - qi, qi, 0}});
        D.optional = [qi](const Exponent &e) {
            if (e[3] || e[0] > 1)
                return false;
            int d = e[1] + e[2];
            if (d < 4 || d % 2 != 0)
                return false;
            return !(e[0] == 0 && e[1] == 4 - qi && e[2] == qi);
        };
        D.level = FamilyLevel::genus;
        D.shape = [](const std::set<Exponent> &f) { return f.size() >= 2; };
        return D;
    }
    default:
        throw NoFamilyDefinition("no family definition for type " + to_string(t) +
                                 "; analyze an explicit instance instead");
    }
}

/// The family through an instance: its type, its discrete parameters, and
/// for cE/2 the quartic that the classifier normalized to.
inline FamilyDefinition family_of(const SingularityInstance &S) {
    std::map<std::string, i64> p;
    if (S.params.count("n"))
        p["n"] = S.params.at("n");
    if (S.type == TypeTag::cE2)
        p["q"] = S.params.at("q");
    return family_definition(S.type, p);
}

/// Level-split of the optional monomials at a weight w: those below the
/// level of S_ext (which must vanish for w to be a candidate) and those on it.
struct LevelSplit {
    i64 level = 0; ///< numerator of w(S_ext) over m
    std::set<Exponent> face;
    std::vector<Exponent> below, on;
};

/// Optional monomials up to total degree `max_degree`.
inline std::vector<Exponent> optional_monomials(const FamilyDefinition &D, int max_degree) {
    std::vector<Exponent> out;
    for (int a = 0; a <= max_degree; ++a)
        for (int b = 0; a + b <= max_degree; ++b)
            for (int c = 0; a + b + c <= max_degree; ++c)
                for (int d = 0; a + b + c + d <= max_degree; ++d) {
                    Exponent e{a, b, c, d};
                    if (D.optional(e))
                        out.push_back(e);
                }
    return out;
}

inline LevelSplit level_split(const FamilyDefinition &D, const std::vector<Exponent> &O, const WeightVector &w) {
    LevelSplit s;
    bool first = true;
    for (auto &e : D.extremal.support()) {
        i64 x = monomial_weight_num(w.num, e);
        if (first || x < s.level)
            s.level = x;
        first = false;
    }
    for (auto &e : D.extremal.support())
        if (monomial_weight_num(w.num, e) == s.level)
            s.face.insert(e);
    for (auto &e : O) {
        i64 x = monomial_weight_num(w.num, e);
        if (x < s.level)
            s.below.push_back(e);
        else if (x == s.level)
            s.on.push_back(e);
    }
    return s;
}

/// Deterministic generic coefficient of an optional monomial.
inline Rational scenario_coefficient(const Exponent &e, std::uint64_t seed) {
    std::uint64_t h = seed * 0x9E3779B97F4A7C15ULL;
    for (int x : e)
        h = (h ^ static_cast<std::uint64_t>(x + 1)) * 0x100000001B3ULL;
    std::mt19937_64 rng(h);
    return random_nonzero_rational(rng, 9, 1);
}

/// A member realizing a cone at w with the coordinate `omitted` absent from
/// the face: on-level optional monomials containing that coordinate are
/// killed, the rest of the on-level ones are present.
struct Scenario {
    WeightVector weight;
    int omitted = -1;
    std::set<Exponent> absent;  ///< below-level monomials and killers
    std::set<Exponent> present; ///< on-level monomials kept with generic coefficients
};

inline std::vector<Scenario> cone_scenarios(const LevelSplit &s, const WeightVector &w) {
    std::vector<Scenario> out;
    std::array<bool, 4> used{};
    for (auto &e : s.face)
        for (int i = 0; i < 4; ++i)
            used[i] = used[i] || e[i] > 0;
    for (int o = 0; o < 4; ++o) {
        if (used[o])
            continue;
        Scenario sc;
        sc.weight = w;
        sc.omitted = o;
        sc.absent.insert(s.below.begin(), s.below.end());
        for (auto &e : s.on)
            (e[o] > 0 ? sc.absent : sc.present).insert(e);
        out.push_back(std::move(sc));
    }
    return out;
}

/// Face of a member at w: the S_ext face plus the present on-level monomials.
inline QuasiPolynomial scenario_face(const LevelSplit &s, const WeightVector &w, const std::set<Exponent> &present,
                                     std::uint64_t seed) {
    QuasiPolynomial F;
    for (auto &e : s.face)
        F.add(e, make_rational(1));
    for (auto &e : present)
        if (monomial_weight_num(w.num, e) == s.level)
            F.add(e, scenario_coefficient(e, seed));
    return F;
}

/// Genus carried by a face at w; nullopt when undetermined. Rational and
/// non-reduced faces report 0.
inline std::optional<int> face_genus(TypeTag t, const WeightVector &w, const QuasiPolynomial &F) {
    BlowupCandidate c;
    c.weight = w;
    c.quotient_order = detail::fast_index(w.num, w.lattice);
    c.group = c.quotient_order > 1 ? quotient_group_action(w) : CyclicGroup{};
    c.face.polynomial = F;
    if (t == TypeTag::cAx4 || t == TypeTag::cAx2)
        c.pre_rational = F.contains({2, 0, 0, 0}) && F.contains({0, 2, 0, 0});
    auto r = classify_rationality(c);
    if (r.nonreduced())
        return 0;
    if (r.undetermined())
        return std::nullopt;
    return r.non_rational() ? r.genus() : std::optional<int>(0);
}

struct FamilyCandidate {
    BlowupCandidate blowup;
    std::optional<FamilyLabel> label;
    std::optional<int> scenario_genus; ///< largest genus over cone scenarios (level 2)
};

struct FamilyEnumeration {
    FamilyDefinition definition;
    WeightRegion region;
    std::vector<FamilyCandidate> candidates;
    std::vector<std::string> flags;
};

/// Lists the weights w in N' with a(w, S_ext) <= 1 at which some member has
/// a potentially non-rational exceptional divisor, filtered to the
/// family's level.
inline FamilyEnumeration enumerate_family(const FamilyDefinition &D, std::uint64_t seed = 1) {
    FamilyEnumeration E;
    E.definition = D;
    const CyclicAction act = standard_action(D.type);
    E.region = weight_region(D.extremal, act.m);
    const auto O = optional_monomials(D, E.region.truncation);
    FacePredicate keep_all;
    keep_all.keep = D.shape;
    bool undetermined = false;
    for (auto &c : scan_region(D.extremal, act.lattice(), E.region.bound, keep_all)) {
        auto s = level_split(D, O, c.weight);
        FamilyCandidate fc;
        fc.blowup = c;
        if (D.level == FamilyLevel::span) {
            std::set<int> vars;
            for (auto &e : s.face)
                for (int i = 0; i < 4; ++i)
                    if (e[i])
                        vars.insert(i);
            for (auto &e : s.on)
                for (int i = 0; i < 4; ++i)
                    if (e[i])
                        vars.insert(i);
            if (vars.size() < 3)
                continue;
        }
        if (D.level == FamilyLevel::genus) {
            bool possible = false;
            for (auto &sc : cone_scenarios(s, c.weight)) {
                auto g = face_genus(D.type, c.weight, scenario_face(s, c.weight, sc.present, seed));
                if (!g) {
                    undetermined = possible = true;
                    continue;
                }
                if (*g >= 1) {
                    possible = true;
                    fc.scenario_genus = std::max(fc.scenario_genus.value_or(0), *g);
                }
            }
            if (!possible)
                continue;
        }
        fc.label = identify_family(D.type, c.weight);
        E.candidates.push_back(std::move(fc));
    }
    if (undetermined)
        E.flags.push_back("some scenario faces were undetermined and kept conservatively");
    if (D.type == TypeTag::cD2_2)
        E.flags.push_back("the printed weight (1,k,2,k) has discrepancy 2 and is never listed; "
                          "the enumerated weight is (1,k,1,k)");
    return E;
}

struct ExclusionResult {
    bool exclusive = true;
    std::string reason;
    std::optional<std::pair<int, int>> witness; ///< omitted coordinates of a compatible member
    std::set<Exponent> present;                 ///< optional monomials of that member
};

/// Whether no single member of the family makes both weights carry a cone
/// over a curve of positive genus. A compatible member must kill everything
/// below either level and every on-level monomial through either omitted
/// coordinate; the remaining on-level monomials are taken generic.
inline ExclusionResult mutual_exclusion(const FamilyDefinition &D, const WeightVector &w1, const WeightVector &w2,
                                        std::uint64_t seed = 1) {
    ExclusionResult R;
    const CyclicAction act = standard_action(D.type);
    auto region = weight_region(D.extremal, act.m);
    int deg = region.truncation;
    for (auto *w : {&w1, &w2})
        for (int i = 0; i < 4; ++i)
            deg = std::max<int>(deg, static_cast<int>(w->num[i])); // keep every level in range
    const auto O = optional_monomials(D, deg);
    auto s1 = level_split(D, O, w1), s2 = level_split(D, O, w2);
    for (auto *s : {&s1, &s2})
        if (!D.shape(s->face)) {
            R.reason = "the face of S_ext at " + to_display(s == &s1 ? w1 : w2) + " lacks the required shape";
            return R;
        }
    for (auto &a : cone_scenarios(s1, w1))
        for (auto &b : cone_scenarios(s2, w2)) {
            std::set<Exponent> absent = a.absent;
            absent.insert(b.absent.begin(), b.absent.end());
            std::set<Exponent> present;
            for (auto *p : {&a.present, &b.present})
                for (auto &e : *p)
                    if (!absent.count(e))
                        present.insert(e);
            auto g1 = face_genus(D.type, w1, scenario_face(s1, w1, present, seed));
            auto g2 = face_genus(D.type, w2, scenario_face(s2, w2, present, seed));
            bool ok1 = !g1 || *g1 >= 1, ok2 = !g2 || *g2 >= 1;
            if (ok1 && ok2) {
                R.exclusive = false;
                R.witness = std::make_pair(a.omitted, b.omitted);
                R.present = present;
                R.reason = "a member omitting " + default_variable_names()[a.omitted] + " at " + to_display(w1) +
                           " and " + default_variable_names()[b.omitted] + " at " + to_display(w2) +
                           " makes both cones non-rational" + (!g1 || !g2 ? " (undetermined, assumed)" : "");
                return R;
            }
        }
    R.reason = "every member that makes one cone non-rational forces a monomial that spoils the other";
    return R;
}

/// The explicit member behind a compatible pair: S_ext with unit
/// coefficients plus the witness's optional monomials with the same
/// coefficients the scenario faces used.
inline QuasiPolynomial witness_member(const FamilyDefinition &D, const ExclusionResult &R, std::uint64_t seed = 1) {
    if (R.exclusive)
        throw std::invalid_argument("witness_member: the pair is exclusive");
    QuasiPolynomial f = D.extremal;
    for (auto &e : R.present)
        if (!f.contains(e))
            f.add(e, scenario_coefficient(e, seed));
    return f;
}

/// The families making up a type: cE/2 splits by the quartic of S_ext
/// unless `q` is given, every other type has one family.
inline std::vector<FamilyDefinition> type_families(TypeTag t, const std::map<std::string, i64> &params) {
    if (t == TypeTag::cE2 && !params.count("q")) {
        std::vector<FamilyDefinition> out;
        for (i64 q = 0; q < 3; ++q) {
            auto p = params;
            p["q"] = q;
            out.push_back(family_definition(t, p));
        }
        return out;
    }
    return {family_definition(t, params)};
}

/// Enumeration over all families of a type, merged by weight.
inline FamilyEnumeration enumerate_family(TypeTag t, const std::map<std::string, i64> &params,
                                          std::uint64_t seed = 1) {
    auto defs = type_families(t, params);
    FamilyEnumeration E = enumerate_family(defs.front(), seed);
    for (std::size_t i = 1; i < defs.size(); ++i) {
        auto more = enumerate_family(defs[i], seed);
        for (auto &c : more.candidates) {
            auto it = std::find_if(E.candidates.begin(), E.candidates.end(),
                                   [&](const FamilyCandidate &d) { return d.blowup.weight == c.blowup.weight; });
            if (it == E.candidates.end())
                E.candidates.push_back(c);
            else if (c.scenario_genus && (!it->scenario_genus || *c.scenario_genus > *it->scenario_genus))
                it->scenario_genus = c.scenario_genus;
        }
        for (auto &f : more.flags)
            if (std::find(E.flags.begin(), E.flags.end(), f) == E.flags.end())
                E.flags.push_back(f);
    }
    std::sort(E.candidates.begin(), E.candidates.end(), [](const FamilyCandidate &a, const FamilyCandidate &b) {
        return a.blowup.weight.num < b.blowup.weight.num;
    });
    return E;
}

/// A pair is compatible for the type when some family of the type has a
/// member making both divisors non-rational.
inline ExclusionResult mutual_exclusion(TypeTag t, const std::map<std::string, i64> &params, const WeightVector &w1,
                                        const WeightVector &w2, std::uint64_t seed = 1) {
    ExclusionResult last;
    for (auto &D : type_families(t, params)) {
        last = mutual_exclusion(D, w1, w2, seed);
        if (!last.exclusive)
            return last;
    }
    return last;
}

/// Instance form: types whose theorem limit is at most one have no family
/// and every pair is exclusive.
inline ExclusionResult mutual_exclusion(const SingularityInstance &S, const WeightVector &w1, const WeightVector &w2,
                                        std::uint64_t seed = 1) {
    if (theorem_limit(S.type) <= 1) {
        ExclusionResult R;
        R.reason = "type " + to_string(S.type) + " admits at most " + std::to_string(theorem_limit(S.type)) +
                   " non-rational divisor";
        return R;
    }
    return mutual_exclusion(family_of(S), w1, w2, seed);
}

} // namespace nrdiv
