// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails. The oracles below (discrepancy, lattice membership,
// primitivity, face shapes, genus bounds, branch counts) are written
// independently of the library and only share its data types.

#include "nrdiv/report.hpp"

#include <chrono>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

using namespace nrdiv;

namespace {

// ---------------------------------------------------------------- helpers

struct Outcome {
    bool ok = true;
    std::vector<std::string> failures;
    std::string detail;

    void expect(bool cond, const std::string &what) {
        if (!cond) {
            ok = false;
            if (failures.size() < 8)
                failures.push_back(what);
        }
    }
};

std::string sample(const std::string &name) {
    std::ifstream in(std::string(NRDIV_SAMPLES_DIR) + "/" + name);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

QuasiPolynomial units(std::initializer_list<Exponent> es) {
    QuasiPolynomial f;
    for (auto &e : es)
        f.add(e, make_rational(1));
    return f;
}

std::string show(const Vec4 &v, i64 m) {
    std::string s = m > 1 ? "1/" + std::to_string(m) + "(" : "(";
    for (int i = 0; i < 4; ++i)
        s += (i ? "," : "") + std::to_string(v[i]);
    return s + ")";
}

/// Weight v/m in lowest terms.
std::pair<Vec4, i64> lowest_terms(Vec4 v, i64 m) {
    i64 g = m;
    for (auto x : v)
        g = std::gcd(g, x);
    for (auto &x : v)
        x /= g;
    return {v, m / g};
}

std::pair<Vec4, i64> lowest_terms(const WeightVector &w) { return lowest_terms(w.num, w.lattice.m); }

/// Weight v/m in the library's display convention.
std::string reduced(const Vec4 &v, i64 m) {
    auto [r, d] = lowest_terms(v, m);
    return show(r, d);
}

/// a(v/m) = sum v/m - 1 - min_e <v,e>/m over the support of phi.
Rational oracle_discrepancy(const Vec4 &v, i64 m, const QuasiPolynomial &phi) {
    std::optional<i64> lvl;
    for (auto &[e, c] : phi.terms()) {
        i64 s = v[0] * e[0] + v[1] * e[1] + v[2] * e[2] + v[3] * e[3];
        if (!lvl || s < *lvl)
            lvl = s;
    }
    return make_rational(v[0] + v[1] + v[2] + v[3] - *lvl, m) - 1;
}

Rational oracle_discrepancy(const WeightVector &w, const QuasiPolynomial &phi) {
    return oracle_discrepancy(w.num, w.lattice.m, phi);
}

bool member(const Vec4 &v, const CyclicAction &act) {
    for (i64 k = 0; k < act.m; ++k) {
        bool ok = true;
        for (int i = 0; i < 4; ++i)
            ok &= ((v[i] - k * act.a[i]) % act.m + act.m) % act.m == 0;
        if (ok)
            return true;
    }
    return false;
}

std::set<std::string> family_displays(const FamilyEnumeration &E) {
    std::set<std::string> s;
    for (auto &c : E.candidates)
        s.insert(to_display(c.blowup.weight));
    return s;
}

// ------------------------------------------------------- genus bound oracle

/// The paper's genus bound for a weight, recognized from its closed form.
/// nullopt: the weight belongs to no family (no non-rational divisor allowed);
/// a negative value: the bound formula is negative.
std::optional<i64> bound_oracle(const SingularityInstance &S, const WeightVector &w) {
    const auto [v, m] = lowest_terms(w);
    switch (S.type) {
    case TypeTag::cAx4: {
        if (m != 4)
            return std::nullopt;
        auto table2 = [](i64 k) { return k % 3 == 0 ? 2 * (k / 3) - 1 : k % 3 == 1 ? 2 * (k / 3) + 1 : 2 * (k / 3) + 2; };
        auto table4 = [](i64 k) { return k % 3 == 0 ? 2 * (k / 3) : 2 * (k / 3) + 1; };
        for (i64 k = 0; 4 * k <= v[0]; ++k) {
            if (v == Vec4{4 * k + 1, 4 * k + 3, 1, 2})
                return 2 * k;
            if (v == Vec4{4 * k + 3, 4 * k + 5, 3, 2})
                return table2(k);
            if (v == Vec4{4 * k + 5, 4 * k + 3, 1, 2})
                return 2 * k + 1;
            if (v == Vec4{4 * k + 3, 4 * k + 1, 3, 2})
                return table4(k);
        }
        return std::nullopt;
    }
    case TypeTag::cAx2: {
        // g <= k - 1 with 2k the order of f(z,u)
        int d = 1000;
        for (auto &[e, c] : S.equation.terms())
            if (e[0] == 0 && e[1] == 0)
                d = std::min(d, total_degree(e));
        return d / 2 - 1;
    }
    case TypeTag::cD3_2:
        return reduced(v, m) == "1/3(2,1,4,3)" ? std::optional<i64>(1) : std::nullopt;
    case TypeTag::cD3_3: {
        auto d = reduced(v, m);
        if (d == "1/3(5,4,1,6)" || d == "1/3(2,4,1,3)" || d == "1/3(4,5,2,6)")
            return 1;
        return std::nullopt;
    }
    case TypeTag::cD2_2:
        for (i64 k = 1; k <= v[3] + 1; ++k) {
            if (m == 2 && v == Vec4{1, 2 * k - 1, 2, 2 * k - 1})
                return k - 1;
            if (m == 2 && v == Vec4{1, 2 * k - 1, 2, 2 * k + 1})
                return k;
            if (m == 2 && v == Vec4{1, 2 * k - 3, 4, 2 * k - 1})
                return 0;
            if (m == 1 && v == Vec4{1, k, 1, k})
                return k / 2;
            if (m == 1 && v == Vec4{1, k - 1, 2, k})
                return 0;
            if (m == 1 && v == Vec4{1, k - 1, 1, k})
                return (k - 1) / 2;
        }
        return std::nullopt;
    case TypeTag::cE2: {
        auto d = reduced(v, m);
        if (d == "1/2(4,3,1,7)")
            return 3;
        for (auto s : {"1/2(2,3,1,3)", "1/2(2,1,3,3)", "1/2(4,3,1,5)", "1/2(6,5,1,9)", "(2,2,1,3)", "(3,2,1,4)"})
            if (d == s)
                return 1;
        return std::nullopt;
    }
    default:
        return std::nullopt;
    }
}

// ------------------------------------------------------ random instances

using Rng = std::mt19937_64;

Rational coeff(Rng &rng) { return random_nonzero_rational(rng); }

bool chance(Rng &rng, double p) { return std::uniform_real_distribution<double>(0, 1)(rng) < p; }

int pick(Rng &rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

/// Adds c * e, sometimes as a generic marker to be instantiated by the analysis.
void add_random(QuasiPolynomial &f, const Exponent &e, Rng &rng, int &markers) {
    if (f.contains(e))
        return;
    if (chance(rng, 0.2))
        f.add(e, Coefficient::generic("g" + std::to_string(markers++)));
    else
        f.add(e, coeff(rng));
}

QuasiPolynomial random_member(TypeTag t, Rng &rng) {
    QuasiPolynomial f;
    int markers = 0;
    const Exponent x2{2, 0, 0, 0}, y2{0, 2, 0, 0}, u2{0, 0, 0, 2}, x3{3, 0, 0, 0};
    switch (t) {
    case TypeTag::cAx4: {
        int n = pick(rng, 1, 5), top = 2 * n + 1;
        f = units({x2, y2});
        f.add({0, 0, 0, top}, coeff(rng));
        if (chance(rng, 0.5))
            f.add({0, 0, 4 * pick(rng, 1, 3) + 2, 0}, coeff(rng));
        else
            f.add({0, 0, 4 * pick(rng, 1, 3), 1}, coeff(rng));
        for (int i = 0; i <= top + 2; ++i)
            for (int j = 0; i + j <= top + 2; ++j)
                if (i + j >= 3 && (i + 2 * j) % 4 == 2 && !(i == 0 && j <= top) && chance(rng, 0.2))
                    add_random(f, {0, 0, i, j}, rng, markers);
        break;
    }
    case TypeTag::cAx2: {
        f = units({x2, y2});
        f.add({0, 0, 2 * pick(rng, 2, 5), 0}, coeff(rng));
        f.add({0, 0, 0, 2 * pick(rng, 2, 5)}, coeff(rng));
        for (int i = 0; i <= 10; ++i)
            for (int j = 0; i + j <= 10; ++j)
                if (i + j >= 4 && (i + j) % 2 == 0 && chance(rng, 0.15))
                    add_random(f, {0, 0, i, j}, rng, markers);
        break;
    }
    case TypeTag::cD3_1:
        f.add(u2, coeff(rng));
        f.add(x3, coeff(rng));
        f.add({0, 2, 1, 0}, coeff(rng));
        f.add({0, 1, 2, 0}, coeff(rng));
        break;
    case TypeTag::cD3_2:
        f = units({u2, x3, {0, 1, 2, 0}});
        for (int s = 0; s <= 2; ++s) {
            if (chance(rng, 0.6))
                add_random(f, {1, 4 + 3 * s, 0, 0}, rng, markers);
            if (chance(rng, 0.6))
                add_random(f, {0, 6 + 3 * s, 0, 0}, rng, markers);
        }
        break;
    case TypeTag::cD3_3: {
        f = units({u2, x3, {0, 3, 0, 0}});
        const std::vector<Exponent> starts{{1, 1, 3, 0}, {1, 0, 4, 0}, {0, 1, 5, 0}, {0, 0, 6, 0}};
        f.add(starts[pick(rng, 0, 3)], coeff(rng));
        for (auto s : starts)
            for (int r = 0; r <= 2; ++r)
                if (chance(rng, 0.3))
                    add_random(f, {s[0], s[1], s[2] + 3 * r, 0}, rng, markers);
        break;
    }
    case TypeTag::cD2_1:
        f.add(u2, coeff(rng));
        f.add({1, 1, 1, 0}, coeff(rng));
        f.add({2 * pick(rng, 2, 4), 0, 0, 0}, coeff(rng));
        f.add({0, 2 * pick(rng, 2, 4), 0, 0}, coeff(rng));
        f.add({0, 0, pick(rng, 3, 6), 0}, coeff(rng));
        break;
    case TypeTag::cD2_2: {
        int n = pick(rng, 5, 9);
        f = units({u2, {0, 2, 1, 0}});
        f.add({0, 0, n - 1, 0}, coeff(rng));
        f.add({2 * pick(rng, 2, n), 0, 0, 0}, coeff(rng));
        if (chance(rng, 0.3))
            add_random(f, {2 * pick(rng, 1, 3) + 1, 1, 0, 0}, rng, markers);
        for (int i = 2; i <= n + 1; i += 2)
            for (int j = 0; i + j <= n + 1; ++j)
                if ((i >= 4 || j >= 2) && chance(rng, 0.15))
                    add_random(f, {i, 0, j, 0}, rng, markers);
        break;
    }
    case TypeTag::cE2: {
        f = units({u2, x3});
        int q = pick(rng, 0, 2);
        f.add({0, 4 - q, q, 0}, coeff(rng));
        for (int a = 0; a <= 1; ++a)
            for (int i = 0; i <= 10; ++i)
                for (int j = 0; i + j <= 10; ++j)
                    if (i + j >= 4 && (i + j) % 2 == 0 && chance(rng, 0.15))
                        add_random(f, {a, i, j, 0}, rng, markers);
        break;
    }
    }
    return f;
}

/// 200 random non-degenerate instances of a type (fixed seed).
std::vector<AnalysisReport> random_suite(TypeTag t, int count, std::uint64_t seed, int &rejected) {
    Rng rng(seed);
    std::vector<AnalysisReport> out;
    for (int attempt = 0; static_cast<int>(out.size()) < count && attempt < 20 * count; ++attempt) {
        auto f = random_member(t, rng);
        AnalysisOptions opt;
        opt.seed = seed + attempt;
        opt.check_nondegeneracy = true;
        try {
            auto R = analyze(f, standard_action(t), opt);
            if (R.instance.type != t || !R.nondegenerate || *R.nondegenerate != Verdict::yes) {
                ++rejected;
                continue;
            }
            out.push_back(std::move(R));
        } catch (const ClassificationError &) {
            ++rejected;
        } catch (const UnboundedRegion &) {
            ++rejected;
        }
    }
    return out;
}

const std::vector<TypeTag> kTypes{TypeTag::cAx4, TypeTag::cAx2, TypeTag::cD3_1, TypeTag::cD3_2,
                                  TypeTag::cD3_3, TypeTag::cD2_1, TypeTag::cD2_2, TypeTag::cE2};

std::map<TypeTag, std::vector<AnalysisReport>> &suite() {
    static std::map<TypeTag, std::vector<AnalysisReport>> s;
    return s;
}

// ------------------------------------------------------------ criterion 1

Outcome criterion1() {
    Outcome o;
    auto quarter = [](i64 a, i64 b, i64 c, i64 d) { return reduced({a, b, c, d}, 4); };
    for (int n = 1; n <= 7; ++n) {
        std::set<std::string> expect;
        for (int k = 0; 2 * k <= n; ++k) {
            expect.insert(quarter(4 * k + 1, 4 * k + 3, 1, 2));
            expect.insert(quarter(4 * k + 3, 4 * k + 1, 3, 2));
        }
        for (int k = 0; 2 * k <= n - 1; ++k) {
            expect.insert(quarter(4 * k + 3, 4 * k + 5, 3, 2));
            expect.insert(quarter(4 * k + 5, 4 * k + 3, 1, 2));
        }
        o.expect(family_displays(enumerate_family(TypeTag::cAx4, {{"n", n}})) == expect,
                 "cAx/4 n=" + std::to_string(n));
    }
    o.expect(family_displays(enumerate_family(TypeTag::cD3_3, {})) ==
                 std::set<std::string>{"1/3(5,4,1,6)", "1/3(2,4,1,3)", "1/3(4,5,2,6)", "(2,2,1,3)"},
             "cD/3-3 set");

    const std::vector<std::pair<std::string, Rational>> ce2{
        {"1/2(2,3,1,3)", make_rational(1, 2)}, {"1/2(2,1,3,3)", make_rational(1, 2)},
        {"1/2(4,3,1,5)", make_rational(1, 2)}, {"1/2(4,3,1,7)", make_rational(1, 2)},
        {"1/2(6,5,1,9)", make_rational(1, 2)}, {"(2,2,1,3)", make_rational(1)},
        {"(3,2,1,4)", make_rational(1)}};
    auto E = enumerate_family(TypeTag::cE2, {});
    std::map<std::string, Rational> got;
    for (auto &c : E.candidates)
        got[to_display(c.blowup.weight)] = c.blowup.discrepancy;
    o.expect(got == std::map<std::string, Rational>(ce2.begin(), ce2.end()), "cE/2 seven weights with discrepancies");

    int checked = 0;
    for (int n = 5; n <= 13; ++n) {
        std::set<std::string> expect;
        for (int m = 1; m <= n - 1; m += 2)
            expect.insert(reduced({1, m, 2, m}, 2));
        for (int m = 3; m <= 2 * (n - 1); m += 2)
            expect.insert(reduced({1, m - 2, 4, m}, 2));
        for (int m = 2; m <= n - 1; m += 2)
            expect.insert(reduced({1, m - 1, 2, m + 1}, 2));
        for (int k = 1; 2 * k <= n - 1; ++k)
            expect.insert(reduced({1, k, 1, k}, 1)); // item 4, discrepancy-one form
        for (int k = 2; k <= n - 1; ++k)
            expect.insert(reduced({1, k - 1, 2, k}, 1));
        for (int k = 2; 2 * k <= n; ++k)
            expect.insert(reduced({1, k - 1, 1, k}, 1));
        auto got22 = family_displays(enumerate_family(TypeTag::cD2_2, {{"n", n}}));
        o.expect(got22 == expect, "cD/2-2 n=" + std::to_string(n));
        // the printed item 4 violates a <= 1; its corrected form has a = 1
        QuasiPolynomial ext = units({{0, 0, 0, 2}, {0, 2, 1, 0}, {0, 0, n - 1, 0}, {2 * n, 0, 0, 0}});
        FractionalLattice L(2, {1, 1, 0, 1});
        for (int k = 1; 2 * k <= n - 1; ++k) {
            Vec4 printed{2, 2 * k, 4, 2 * k}, corrected{2, 2 * k, 2, 2 * k};
            o.expect(oracle_discrepancy(printed, 2, ext) == 2 && discrepancy(WeightVector(printed, L), ext) == 2,
                     "(1,k,2,k) a=2 at n=" + std::to_string(n));
            o.expect(oracle_discrepancy(corrected, 2, ext) == 1 && discrepancy(WeightVector(corrected, L), ext) == 1,
                     "(1,k,1,k) a=1 at n=" + std::to_string(n));
            o.expect(!got22.count(reduced({1, k, 2, k}, 1)), "printed item 4 not enumerated");
            ++checked;
        }
    }
    o.detail = "cAx/4 n=1..7, cD/3-3, cE/2, cD/2-2 n=5..13; " + std::to_string(checked) +
               " printed (1,k,2,k) shown to have a=2 (flagged)";
    return o;
}

// ------------------------------------------------------------ criterion 2

Outcome criterion2() {
    Outcome o;
    int n = 0;
    auto check = [&](const FamilyEnumeration &E, const std::function<std::optional<Rational>(const FamilyCandidate &)> &want,
                     const std::string &what) {
        for (auto &c : E.candidates) {
            auto a = want(c);
            if (!a)
                continue;
            Rational mine = oracle_discrepancy(c.blowup.weight, E.definition.extremal);
            o.expect(mine == *a && c.blowup.discrepancy == *a, what + " " + to_display(c.blowup.weight));
            ++n;
        }
    };
    for (int k = 1; k <= 7; ++k)
        check(enumerate_family(TypeTag::cAx4, {{"n", k}}), [](const FamilyCandidate &c) -> std::optional<Rational> {
            const auto &v = c.blowup.weight.num;
            return make_rational(v[2] == 1 ? 1 : 3, 4); // nu1/nu3 have w_z = 1/4, nu2/nu4 have w_z = 3/4
        }, "cAx/4");
    for (int k = 5; k <= 13; ++k)
        check(enumerate_family(TypeTag::cD2_2, {{"n", k}}), [](const FamilyCandidate &c) -> std::optional<Rational> {
            auto [v, m] = lowest_terms(c.blowup.weight);
            if (m == 2 && v[0] == 1 && v[2] == 2) // 1/2(1,*,2,*): nu1, nu3
                return make_rational(1, 2);
            if (m == 1 && v[0] == 1 && v[2] == 1) // (1,*,1,*): nu4, nu6
                return make_rational(1);
            return std::nullopt;
        }, "cD/2-2");
    check(enumerate_family(TypeTag::cD3_3, {}), [](const FamilyCandidate &c) -> std::optional<Rational> {
        auto d = to_display(c.blowup.weight);
        if (d == "1/3(2,4,1,3)")
            return make_rational(1, 3);
        if (d == "1/3(4,5,2,6)")
            return make_rational(2, 3);
        return std::nullopt;
    }, "cD/3-3");
    // cE/2 merges the three quartic subfamilies: the oracle value must hold in one of them
    for (auto &c : enumerate_family(TypeTag::cE2, {}).candidates) {
        Rational want = lowest_terms(c.blowup.weight).second == 2 ? make_rational(1, 2) : make_rational(1);
        bool some = false;
        for (int q = 0; q <= 2; ++q)
            some |= oracle_discrepancy(c.blowup.weight, family_definition(TypeTag::cE2, {{"q", q}}).extremal) == want;
        o.expect(some && c.blowup.discrepancy == want, "cE/2 " + to_display(c.blowup.weight));
        ++n;
    }

    // instance values: the cAx/2 blowup and the cD/3-2 blowup
    auto cax2 = parse_request(sample("cax2_example.txt"));
    auto S2 = classify(cax2.polynomial, cax2.action);
    bool seen = false;
    for (auto &c : enumerate_candidates(S2).candidates)
        if (to_display(c.weight) == "1/2(4,3,1,1)") {
            seen = true;
            o.expect(c.discrepancy == make_rational(1, 2) &&
                         oracle_discrepancy(c.weight, S2.equation) == make_rational(1, 2),
                     "cAx/2 1/2(4,3,1,1)");
            ++n;
        }
    o.expect(seen, "cAx/2 blowup 1/2(4,3,1,1) enumerated");
    auto cd32 = parse_request(sample("cd3_2_example.txt"));
    auto R32 = analyze(cd32.polynomial, cd32.action);
    seen = false;
    for (auto &r : R32.rows)
        if (to_display(r.divisor.candidate.weight) == "1/3(2,1,4,3)") {
            seen = true;
            o.expect(r.divisor.candidate.discrepancy == make_rational(1, 3) &&
                         oracle_discrepancy(r.divisor.candidate.weight, R32.instance.equation) == make_rational(1, 3),
                     "cD/3-2 1/3(2,1,4,3)");
            ++n;
        }
    o.expect(seen, "cD/3-2 blowup enumerated");
    o.detail = std::to_string(n) + " discrepancies equal to the oracle and the paper";
    return o;
}

// ------------------------------------------------------------ criterion 3

const CandidateRow *row_at(const AnalysisReport &R, const std::string &w) {
    for (auto &r : R.rows)
        if (to_display(r.divisor.candidate.weight) == w)
            return &r;
    return nullptr;
}

std::optional<int> genus_at(const AnalysisReport &R, const std::string &w) {
    auto *r = row_at(R, w);
    if (!r || !r->divisor.non_rational())
        return std::nullopt;
    return r->divisor.genus();
}

AnalysisReport analyze_sample(const std::string &name) {
    auto req = parse_request(sample(name));
    return analyze(req.polynomial, req.action);
}

Outcome criterion3() {
    Outcome o;
    auto A = analyze_sample("cax4_example.txt");
    o.expect(genus_at(A, "1/4(9,11,1,2)") == 2, "cAx/4 genus 2 at 1/4(9,11,1,2)");
    o.expect(genus_at(A, "1/4(15,17,3,2)") == 1, "cAx/4 genus 1 at 1/4(15,17,3,2)");
    auto B = analyze_sample("cax2_example.txt");
    o.expect(genus_at(B, "1/2(4,3,1,1)") == 2, "cAx/2 genus 2 at 1/2(4,3,1,1)");
    auto C = analyze_sample("cd3_3_fermat.txt");
    o.expect(genus_at(C, "1/3(2,4,1,3)") == 1, "cD/3-3 genus 1 at nu2");
    o.expect(genus_at(C, "1/3(4,5,2,6)") == 1, "cD/3-3 genus 1 at nu3");
    auto *r4 = row_at(C, "(2,2,1,3)");
    o.expect(r4 && !r4->divisor.non_rational() && !r4->divisor.undetermined(), "cD/3-3 (2,2,1,3) rational");
    auto D = analyze_sample("cd2_2_example.txt");
    o.expect(genus_at(D, "1/2(1,9,2,9)") == 2, "cD/2-2 genus 2 at 1/2(1,9,2,9)");
    o.expect(genus_at(D, "(1,6,1,6)") == 1, "cD/2-2 genus 1 at (1,6,1,6)");
    auto *r6 = row_at(D, "(1,6,1,6)");
    o.expect(r6 && r6->divisor.candidate.quotient_order == 2, "(1,6,1,6) quotient order 2");
    auto E = analyze_sample("ce2_genus3.txt");
    o.expect(genus_at(E, "1/2(4,3,1,7)") == 3, "cE/2 genus 3 at 1/2(4,3,1,7)");
    auto *r7 = row_at(E, "1/2(4,3,1,7)");
    bool hyper = false;
    if (r7)
        for (auto &c : r7->divisor.components)
            hyper |= c.hyperelliptic;
    o.expect(r7 && !hyper, "genus 3 curve not hyperelliptic");
    bool flagged = false;
    for (auto &f : E.flags)
        flagged |= f.find("u^2+x^3+y^4+z^12") != std::string::npos;
    o.expect(flagged, "corrected cE/2 example flagged");
    auto F = analyze_sample("ce2_elliptic.txt");
    int elliptic = 0;
    for (auto &r : F.rows)
        elliptic += r.divisor.non_rational() && r.divisor.genus() == 1;
    o.expect(elliptic == 2, "cE/2 two elliptic cones");
    o.detail = "cAx/4, cAx/2, cD/3-3, cD/2-2, cE/2 examples";
    return o;
}

// ------------------------------------------------------------ criterion 4

Outcome criterion4() {
    Outcome o;
    Rng rng(404);
    int n = 0;
    for (int t = 0; t < 20; ++t) {
        auto R = analyze(random_member(TypeTag::cD3_1, rng), standard_action(TypeTag::cD3_1));
        o.expect(R.theorem.non_rational == 0 && R.exit_code() == 0, "cD/3-1 " + to_string(R.instance.equation));
        ++n;
    }
    for (int a = 2; a <= 4; ++a)
        for (int b = 2; b <= 4; ++b)
            for (int c = 3; c <= 6; ++c) {
                QuasiPolynomial f;
                f.add({0, 0, 0, 2}, coeff(rng));
                f.add({1, 1, 1, 0}, coeff(rng));
                f.add({2 * a, 0, 0, 0}, coeff(rng));
                f.add({0, 2 * b, 0, 0}, coeff(rng));
                f.add({0, 0, c, 0}, coeff(rng));
                auto R = analyze(f, standard_action(TypeTag::cD2_1));
                o.expect(R.instance.type == TypeTag::cD2_1 && R.theorem.non_rational == 0 && R.exit_code() == 0,
                         "cD/2-1 " + to_string(f));
                ++n;
            }
    o.detail = std::to_string(n) + " instances with 0 non-rational divisors";
    return o;
}

// ------------------------------------------------------------ criterion 5

Outcome criterion5() {
    Outcome o;
    std::ostringstream d;
    int pairs = 0, total = 0;
    std::uint64_t seed = 5000;
    for (auto t : kTypes) {
        int rejected = 0;
        auto &S = suite()[t] = random_suite(t, 200, seed++, rejected);
        o.expect(S.size() == 200, to_string(t) + ": only " + std::to_string(S.size()) + " non-degenerate instances");
        int worst = 0, unverified = 0;
        for (auto &R : S) {
            int nr = 0;
            std::vector<const CandidateRow *> bad;
            for (auto &r : R.rows)
                if (r.divisor.non_rational()) {
                    ++nr;
                    bad.push_back(&r);
                }
            worst = std::max(worst, nr);
            unverified += R.theorem.status == TheoremStatus::not_verified;
            o.expect(nr <= theorem_limit(t), to_string(t) + ": " + std::to_string(nr) + " non-rational in " +
                                                 to_string(R.instance.equation));
            o.expect(R.theorem.status != TheoremStatus::violated,
                     to_string(t) + ": violated for " + to_string(R.instance.equation));
            for (std::size_t i = 0; i < bad.size(); ++i)
                for (std::size_t j = i + 1; j < bad.size(); ++j) {
                    auto X = mutual_exclusion(R.instance, bad[i]->divisor.candidate.weight,
                                              bad[j]->divisor.candidate.weight);
                    o.expect(!X.exclusive, to_string(t) + ": exclusive pair realized in " +
                                               to_string(R.instance.equation));
                    ++pairs;
                }
            ++total;
        }
        d << to_string(t) << " max " << worst << "/" << theorem_limit(t);
        if (unverified)
            d << " (" << unverified << " not verified)";
        d << "; ";
    }
    o.detail = std::to_string(total) + " instances, " + std::to_string(pairs) + " non-rational pairs; " + d.str();
    return o;
}

// ------------------------------------------------------------ criterion 6

/// Multiplies binary forms given as coefficient vectors in s^i t^(d-i).
std::vector<i64> times(const std::vector<i64> &a, const std::vector<i64> &b) {
    std::vector<i64> r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            r[i + j] += a[i] * b[j];
    return r;
}

Outcome criterion6() {
    Outcome o;
    int cover_cases = 0;
    for (auto &[t, S] : suite())
        for (auto &R : S)
            for (auto &r : R.rows)
                for (auto &c : r.divisor.components) {
                    if (!c.curve || c.verdict != DivisorVerdict::cone_over_curve)
                        continue;
                    auto qs = is_quasismooth(*c.curve);
                    auto cover = genus_cover(*c.curve);
                    if (!qs || !*qs || !cover || cover->components != 1)
                        continue;
                    auto adj = genus_quasismooth(*c.curve);
                    o.expect(adj && *adj == cover->genus, "cover vs adjunction on " + to_string(*c.curve));
                    ++cover_cases;
                }
    o.expect(cover_cases >= 50, "only " + std::to_string(cover_cases) + " quasi-smooth cover curves");

    // w^2 = F(s,t), F of degree 2k+2 with known roots: genus = (#odd-multiplicity roots)/2 - 1
    Rng rng(606);
    int binary = 0;
    for (int k = 1; k <= 6; ++k)
        for (int variant = 0; variant < (k >= 2 ? 4 : 3); ++variant) {
            std::vector<i64> roots;
            while (static_cast<int>(roots.size()) < 2 * k + 2) {
                i64 r = pick(rng, -20, 20);
                if (std::find(roots.begin(), roots.end(), r) == roots.end())
                    roots.push_back(r);
            }
            std::map<i64, int> mult; // root -> multiplicity; 1000 stands for the point t = 0
            std::vector<i64> F{1};
            for (int i = 0; i < 2 * k + 2; ++i) {
                i64 r = roots[i];
                if (variant == 1 && i == 0)
                    r = 1000;
                if (variant >= 2 && i == 1)
                    r = roots[0]; // a double root
                if (variant == 3 && i == 3)
                    r = roots[2]; // a second double root
                ++mult[r];
                // factor s - r t, or t itself for the point at infinity
                F = times(F, r == 1000 ? std::vector<i64>{0, 1} : std::vector<i64>{1, -r});
            }
            int odd = 0;
            for (auto &[r, m] : mult)
                odd += m % 2;
            const int expect = odd / 2 - 1;
            CurveRequest req;
            req.terms.push_back({{0, 0, 2}, make_rational(1)});
            const int d = 2 * k + 2;
            for (int i = 0; i <= d; ++i)
                if (F[i] != 0) // F[i] is the coefficient of s^(d-i) t^i
                    req.terms.push_back({{d - i, i, 0}, make_rational(-F[i])});
            auto C = curve_model(req, {1, 1, k + 1});
            auto G = genus_cover(C);
            o.expect(G && G->genus == expect,
                     "w^2 = F, k=" + std::to_string(k) + " variant " + std::to_string(variant) + ": expected " +
                         std::to_string(expect) + " got " + (G ? std::to_string(G->genus) : "none"));
            if (variant <= 1) {
                auto adj = genus_quasismooth(C);
                o.expect(adj && *adj == k, "adjunction on square-free w^2 = F, k=" + std::to_string(k));
            }
            ++binary;
        }
    o.detail = std::to_string(cover_cases) + " quasi-smooth cover curves agree; " + std::to_string(binary) +
               " binary-form covers match the branch count";
    return o;
}

// ------------------------------------------------------------ criterion 7

/// Shape filter, written from the type conditions: the face omits enough of
/// the square/cube terms to possibly be non-rational.
bool oracle_keep(const SingularityInstance &S, const std::set<Exponent> &f) {
    auto has = [&](const Exponent &e) { return f.count(e) > 0; };
    auto groups = [&](std::initializer_list<std::vector<Exponent>> gs) {
        int n = 0;
        for (auto &g : gs) {
            bool any = false;
            for (auto &e : g)
                any |= has(e);
            n += any;
        }
        return n;
    };
    const Exponent x2{2, 0, 0, 0}, y2{0, 2, 0, 0}, u2{0, 0, 0, 2}, x3{3, 0, 0, 0};
    switch (S.type) {
    case TypeTag::cAx4:
    case TypeTag::cAx2:
        return has(x2) || has(y2);
    case TypeTag::cD3_1:
        return groups({{u2}, {x3}, {{0, 2, 1, 0}, {0, 1, 2, 0}}}) >= 2;
    case TypeTag::cD3_2:
        return groups({{u2}, {x3}, {{0, 1, 2, 0}}}) >= 2;
    case TypeTag::cD3_3:
        return groups({{u2}, {x3}, {{0, 3, 0, 0}}}) >= 2;
    case TypeTag::cD2_1: {
        int a = static_cast<int>(S.params.at("a")), b = static_cast<int>(S.params.at("b")),
            c = static_cast<int>(S.params.at("c"));
        return groups({{u2}, {{1, 1, 1, 0}}, {{2 * a, 0, 0, 0}}, {{0, 2 * b, 0, 0}}, {{0, 0, c, 0}}}) >= 2;
    }
    case TypeTag::cD2_2:
        return has(u2) || has({0, 2, 1, 0});
    case TypeTag::cE2:
        return groups({{u2}, {x3}, {{0, 4, 0, 0}, {0, 3, 1, 0}, {0, 2, 2, 0}, {0, 1, 3, 0}, {0, 0, 4, 0}}}) >= 2;
    }
    return false;
}

std::set<std::pair<std::string, Rational>> naive_candidates(const SingularityInstance &S, const std::array<i64, 4> &hi) {
    const auto &act = S.action;
    const i64 m = act.m;
    std::set<std::pair<std::string, Rational>> out;
    Vec4 v{};
    for (v[0] = 1; v[0] <= hi[0]; ++v[0])
        for (v[1] = 1; v[1] <= hi[1]; ++v[1])
            for (v[2] = 1; v[2] <= hi[2]; ++v[2])
                for (v[3] = 1; v[3] <= hi[3]; ++v[3]) {
                    if (!member(v, act))
                        continue;
                    bool primitive = true;
                    for (i64 d = 2; d <= v[0] && primitive; ++d)
                        if (v[0] % d == 0 && v[1] % d == 0 && v[2] % d == 0 && v[3] % d == 0)
                            primitive = !member({v[0] / d, v[1] / d, v[2] / d, v[3] / d}, act);
                    if (!primitive)
                        continue;
                    i64 lvl = -1;
                    for (auto &[e, c] : S.equation.terms()) {
                        i64 s = v[0] * e[0] + v[1] * e[1] + v[2] * e[2] + v[3] * e[3];
                        lvl = lvl < 0 ? s : std::min(lvl, s);
                    }
                    if (v[0] + v[1] + v[2] + v[3] - m - lvl > m)
                        continue;
                    std::set<Exponent> face;
                    for (auto &[e, c] : S.equation.terms())
                        if (v[0] * e[0] + v[1] * e[1] + v[2] * e[2] + v[3] * e[3] == lvl)
                            face.insert(e);
                    if (!oracle_keep(S, face))
                        continue;
                    out.insert({reduced(v, m), make_rational(v[0] + v[1] + v[2] + v[3] - lvl, m) - 1});
                }
    return out;
}

Outcome criterion7() {
    Outcome o;
    int instances = 0, widened = 0;
    std::size_t total = 0;
    for (auto t : kTypes) {
        auto &S = suite()[t];
        for (std::size_t i = 0; i < 20 && i < S.size(); ++i) {
            const auto &inst = S[i].instance;
            auto E = enumerate_candidates(inst);
            std::set<std::pair<std::string, Rational>> lib;
            for (auto &c : E.candidates)
                lib.insert({to_display(c.weight), c.discrepancy});
            std::array<i64, 4> hi{};
            for (int j = 0; j < 4; ++j) {
                Rational s = E.region.bound[j] * inst.action.m;
                hi[j] = static_cast<i64>(numerator_of(s) / denominator_of(s));
            }
            auto naive = naive_candidates(inst, hi);
            o.expect(naive == lib, to_string(t) + ": scan differs on " + to_string(inst.equation));
            if (i == 0) {
                // the derived bound is not too small: a box twice as large finds nothing new
                auto wide = hi;
                for (auto &h : wide)
                    h *= 2;
                o.expect(naive_candidates(inst, wide) == naive, to_string(t) + ": candidates beyond B");
                ++widened;
            }
            total += lib.size();
            ++instances;
        }
    }
    o.detail = std::to_string(instances) + " instances, " + std::to_string(total) + " candidates; " +
               std::to_string(widened) + " doubled-box checks";
    return o;
}

// ------------------------------------------------------------ criterion 8

Outcome criterion8() {
    Outcome o;
    int checked = 0;
    for (auto &[t, S] : suite())
        for (auto &R : S)
            for (auto &r : R.rows) {
                if (!r.divisor.non_rational())
                    continue;
                auto b = bound_oracle(R.instance, r.divisor.candidate.weight);
                int g = *r.divisor.genus();
                o.expect(b && g <= *b, to_string(t) + ": genus " + std::to_string(g) + " at " +
                                           to_display(r.divisor.candidate.weight) + " exceeds " +
                                           (b ? std::to_string(*b) : std::string("no family")));
                ++checked;
            }
    o.detail = std::to_string(checked) + " non-rational divisors within the bound tables";
    return o;
}

} // namespace

int main(int argc, char **argv) {
    // optional: run only the listed criteria, e.g. "acceptance 1 3"
    // (criteria 6-8 reuse the instances generated by criterion 5)
    std::set<int> only;
    for (int i = 1; i < argc; ++i)
        only.insert(std::atoi(argv[i]));
    struct Criterion {
        int id;
        std::string name;
        std::function<Outcome()> run;
    };
    const std::vector<Criterion> all{
        {1, "family sets", criterion1},
        {2, "exact discrepancies", criterion2},
        {3, "example genera", criterion3},
        {4, "zero-count types", criterion4},
        {5, "main theorem on random instances", criterion5},
        {6, "genus engines agree", criterion6},
        {7, "enumeration completeness", criterion7},
        {8, "genus bounds", criterion8},
    };
    bool all_ok = true;
    for (auto &c : all) {
        if (!only.empty() && !only.count(c.id))
            continue;
        auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception &e) {
            o.ok = false;
            o.failures.push_back(std::string("exception: ") + e.what());
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::cout << (o.ok ? "PASS" : "FAIL") << " criterion " << c.id << " (" << c.name << "): " << o.detail << " ["
                  << std::fixed << std::setprecision(1) << secs << "s]\n";
        for (auto &f : o.failures)
            std::cout << "    " << f << '\n';
        std::cout.flush();
        all_ok &= o.ok;
    }
    return all_ok ? 0 : 1;
}
