#pragma once
// Report rendering: a human-readable table and a versioned JSON document
// for instance analyses and family enumerations. Output depends only on
// the report contents, so equal inputs and seeds give identical bytes.

#include "analysis.hpp"
#include "request.hpp"

#include <json.hpp>

#include <sstream>
#include <string>
#include <vector>

namespace nrdiv {

inline constexpr int kReportVersion = 1;

namespace detail {

inline std::string join(const std::vector<std::string> &v, const std::string &sep) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i)
        s += (i ? sep : "") + v[i];
    return s;
}

inline std::string params_string(const std::map<std::string, i64> &p) {
    std::vector<std::string> parts;
    for (auto &[k, v] : p)
        parts.push_back(k + "=" + std::to_string(v));
    return join(parts, ", ");
}

inline std::string label_string(const std::optional<FamilyLabel> &L) {
    if (!L)
        return "-";
    return L->k >= 0 ? L->name + "(k=" + std::to_string(L->k) + ")" : L->name;
}

inline std::string bound_string(const std::optional<FamilyLabel> &L) {
    if (!L)
        return "-";
    return L->bound ? std::to_string(*L->bound) : "none";
}

inline std::string genus_string(const DivisorReport &D) {
    if (D.undetermined())
        return "?";
    auto g = D.genus();
    return g ? std::to_string(*g) : "-";
}

inline std::string rule_string(const DivisorReport &D) {
    std::vector<std::string> r;
    for (auto &c : D.components)
        if (std::find(r.begin(), r.end(), c.rule) == r.end())
            r.push_back(c.rule);
    return join(r, "; ");
}

inline std::string bound_vector(const WeightRegion &R) {
    std::vector<std::string> b;
    for (auto &x : R.bound)
        b.push_back(to_string(x));
    return "(" + join(b, ",") + ")";
}

/// Left-aligned fixed-width table.
inline std::string table(const std::vector<std::string> &head, const std::vector<std::vector<std::string>> &rows) {
    std::vector<std::size_t> w(head.size());
    for (std::size_t i = 0; i < head.size(); ++i)
        w[i] = head[i].size();
    for (auto &r : rows)
        for (std::size_t i = 0; i < r.size(); ++i)
            w[i] = std::max(w[i], r[i].size());
    std::ostringstream os;
    auto line = [&](const std::vector<std::string> &r) {
        std::string s;
        for (std::size_t i = 0; i < r.size(); ++i) {
            s += r[i];
            if (i + 1 < r.size())
                s += std::string(w[i] - r[i].size() + 2, ' ');
        }
        os << s << '\n';
    };
    line(head);
    std::vector<std::string> rule;
    for (auto x : w)
        rule.push_back(std::string(x, '-'));
    line(rule);
    for (auto &r : rows)
        line(r);
    return os.str();
}

} // namespace detail

inline std::string render_text(const AnalysisReport &R) {
    const auto &S = R.instance;
    std::ostringstream os;
    os << "type: " << to_string(S.type);
    if (!S.params.empty())
        os << " (" << detail::params_string(S.params) << ")";
    os << '\n';
    os << "action: " << to_string(S.action) << '\n';
    os << "equation: " << to_string(S.equation) << '\n';
    os << "bound B: " << detail::bound_vector(R.region) << ", relevant degree <= " << R.region.truncation << '\n';
    if (R.nondegenerate)
        os << "non-degenerate: " << to_string(*R.nondegenerate) << '\n';
    os << '\n';
    std::vector<std::vector<std::string>> rows;
    for (auto &r : R.rows) {
        const auto &c = r.divisor.candidate;
        rows.push_back({to_display(c.weight), c.kind(), std::to_string(c.quotient_order), to_string(c.discrepancy),
                        to_string(c.face.polynomial), to_string(r.divisor.verdict()), detail::genus_string(r.divisor),
                        detail::bound_string(r.label), detail::label_string(r.label), detail::rule_string(r.divisor)});
    }
    os << detail::table({"weight", "kind", "ord", "a", "face", "verdict", "genus", "bound", "family", "rule"}, rows);
    os << '\n' << "theorem: " << R.theorem.summary() << '\n';
    for (auto &s : R.theorem.reasons)
        os << "  - " << s << '\n';
    for (auto &f : R.flags)
        os << "flag: " << f << '\n';
    return os.str();
}

inline nlohmann::ordered_json render_json(const AnalysisReport &R) {
    using json = nlohmann::ordered_json;
    const auto &S = R.instance;
    json J;
    J["schema"] = "nrdiv-report";
    J["version"] = kReportVersion;
    J["mode"] = "instance";
    J["type"] = to_string(S.type);
    json P = json::object();
    for (auto &[k, v] : S.params)
        P[k] = v;
    J["parameters"] = P;
    J["action"] = to_string(S.action);
    J["equation"] = to_string(S.equation);
    json B = json::array();
    for (auto &x : R.region.bound)
        B.push_back(to_string(x));
    J["bound"] = {{"weights", B}, {"degree", R.region.truncation}};
    json C = json::array();
    for (auto &r : R.rows) {
        const auto &c = r.divisor.candidate;
        json row;
        row["weight"] = to_display(c.weight);
        row["kind"] = c.kind();
        row["quotient_order"] = c.quotient_order;
        row["discrepancy"] = to_string(c.discrepancy);
        row["face"] = to_string(c.face.polynomial);
        row["verdict"] = to_string(r.divisor.verdict());
        auto g = r.divisor.genus();
        row["genus"] = g ? json(*g) : json(nullptr);
        row["family"] = r.label ? json(r.label->name) : json(nullptr);
        row["k"] = r.label && r.label->k >= 0 ? json(r.label->k) : json(nullptr);
        row["genus_bound"] = r.label && r.label->bound ? json(*r.label->bound) : json(nullptr);
        row["rule"] = detail::rule_string(r.divisor);
        json comps = json::array();
        for (auto &cp : r.divisor.components) {
            json q;
            q["equation"] = to_string(cp.equation);
            q["multiplicity"] = cp.multiplicity;
            q["count"] = cp.count;
            q["verdict"] = to_string(cp.verdict);
            q["genus"] = cp.genus ? json(*cp.genus) : json(nullptr);
            q["hyperelliptic"] = cp.hyperelliptic;
            q["rule"] = cp.rule;
            comps.push_back(q);
        }
        row["components"] = comps;
        C.push_back(row);
    }
    J["candidates"] = C;
    J["theorem_check"] = {{"non_rational", R.theorem.non_rational},
                          {"limit", R.theorem.limit},
                          {"status", to_string(R.theorem.status)},
                          {"reasons", R.theorem.reasons}};
    J["flags"] = R.flags;
    return J;
}

/// Genus column in family mode: exact when the paper states it, otherwise
/// the largest genus reached over the member scenarios, shown as "<=g".
inline std::string family_genus_string(const FamilyCandidate &c) {
    if (!c.scenario_genus)
        return c.label && c.label->bound ? "<=" + std::to_string(*c.label->bound) : "-";
    bool exact = c.label && c.label->bound_exact;
    return (exact ? "" : "<=") + std::to_string(*c.scenario_genus);
}

inline std::string render_text(const FamilyReport &F) {
    std::ostringstream os;
    os << "type: " << to_string(F.type);
    if (!F.params.empty())
        os << " (" << detail::params_string(F.params) << ")";
    os << " [family mode]\n";
    os << "action: " << to_string(standard_action(F.type)) << '\n';
    os << "bound B: " << detail::bound_vector(F.enumeration.region) << ", relevant degree <= "
       << F.enumeration.region.truncation << '\n'
       << '\n';
    std::vector<std::vector<std::string>> rows;
    for (auto &c : F.enumeration.candidates)
        rows.push_back({to_display(c.blowup.weight), c.blowup.kind(), std::to_string(c.blowup.quotient_order),
                        to_string(c.blowup.discrepancy), to_string(c.blowup.face.polynomial), family_genus_string(c),
                        detail::bound_string(c.label), detail::label_string(c.label)});
    os << detail::table({"weight", "kind", "ord", "a", "extremal face", "genus", "bound", "family"}, rows);
    os << '\n'
       << "theorem: at most " << theorem_limit(F.type)
       << " non-rational divisors per member; checked per instance with 'analyze'\n";
    for (auto &f : F.flags)
        os << "flag: " << f << '\n';
    return os.str();
}

inline nlohmann::ordered_json render_json(const FamilyReport &F) {
    using json = nlohmann::ordered_json;
    json J;
    J["schema"] = "nrdiv-report";
    J["version"] = kReportVersion;
    J["mode"] = "family";
    J["type"] = to_string(F.type);
    json P = json::object();
    for (auto &[k, v] : F.params)
        P[k] = v;
    J["parameters"] = P;
    J["action"] = to_string(standard_action(F.type));
    json B = json::array();
    for (auto &x : F.enumeration.region.bound)
        B.push_back(to_string(x));
    J["bound"] = {{"weights", B}, {"degree", F.enumeration.region.truncation}};
    json C = json::array();
    for (auto &c : F.enumeration.candidates) {
        json row;
        row["weight"] = to_display(c.blowup.weight);
        row["kind"] = c.blowup.kind();
        row["quotient_order"] = c.blowup.quotient_order;
        row["discrepancy"] = to_string(c.blowup.discrepancy);
        row["face"] = to_string(c.blowup.face.polynomial);
        row["genus"] = family_genus_string(c);
        row["family"] = c.label ? json(c.label->name) : json(nullptr);
        row["k"] = c.label && c.label->k >= 0 ? json(c.label->k) : json(nullptr);
        row["genus_bound"] = c.label && c.label->bound ? json(*c.label->bound) : json(nullptr);
        C.push_back(row);
    }
    J["candidates"] = C;
    J["theorem_check"] = {{"limit", theorem_limit(F.type)}, {"status", "per instance"}};
    J["flags"] = F.flags;
    return J;
}

/// Builds the curve model of a genus query; the weights must be positive and
/// the equation quasi-homogeneous for them.
inline CurveModel curve_model(const CurveRequest &req, const std::array<i64, 3> &weights) {
    for (auto w : weights)
        if (w < 1)
            throw std::invalid_argument("curve weights must be positive");
    CurveModel C;
    C.weights = weights;
    C.group_order = req.group_order;
    for (int i = 0; i < 3; ++i)
        C.residues[i] = req.group_order > 1 ? mod_floor(req.residues[i], req.group_order) : 0;
    std::optional<i64> degree;
    for (auto &[e, c] : req.terms) {
        i64 d = weights[0] * e[0] + weights[1] * e[1] + weights[2] * e[2];
        if (degree && d != *degree)
            throw std::invalid_argument("equation is not quasi-homogeneous for the weights (degrees " +
                                        std::to_string(*degree) + " and " + std::to_string(d) + ")");
        degree = d;
        C.equation.add_term(Mono{e[0], e[1], e[2]}, c);
    }
    return C;
}

/// Genus of a plane curve by both engines.
struct GenusReport {
    CurveModel curve;
    std::optional<CoverGenus> cover;
    std::optional<int> adjunction;
    std::optional<bool> quasismooth;
    std::optional<bool> reduced;
};

inline GenusReport genus_report(const CurveModel &C) {
    GenusReport G;
    G.curve = C;
    QuasiPolynomial f;
    for (auto &[m, c] : C.equation.terms())
        f.add(Exponent{m[0], m[1], m[2], 0}, c);
    G.reduced = is_reduced(f);
    G.cover = genus_cover(C);
    G.quasismooth = is_quasismooth(C);
    G.adjunction = genus_quasismooth(C);
    return G;
}

inline std::string render_text(const GenusReport &G) {
    std::ostringstream os;
    os << "curve: " << to_string(G.curve) << '\n';
    os << "reduced: " << (G.reduced ? (*G.reduced ? "yes" : "no") : "undecided") << '\n';
    os << "quasi-smooth: " << (G.quasismooth ? (*G.quasismooth ? "yes" : "no") : "undecided") << '\n';
    if (G.cover) {
        os << "cyclic cover: genus " << G.cover->genus << " (degree " << G.cover->p << ", " << G.cover->components
           << " component" << (G.cover->components == 1 ? "" : "s")
           << (G.cover->hyperelliptic ? ", hyperelliptic" : "") << (G.cover->nonreduced ? ", non-reduced" : "")
           << ")\n";
    } else {
        os << "cyclic cover: not of cover form\n";
    }
    os << "adjunction: " << (G.adjunction ? "genus " + std::to_string(*G.adjunction) : std::string("not applicable"))
       << '\n';
    return os.str();
}

inline nlohmann::ordered_json render_json(const GenusReport &G) {
    using json = nlohmann::ordered_json;
    json J;
    J["schema"] = "nrdiv-genus";
    J["version"] = kReportVersion;
    J["curve"] = to_string(G.curve);
    J["reduced"] = G.reduced ? json(*G.reduced) : json(nullptr);
    J["quasismooth"] = G.quasismooth ? json(*G.quasismooth) : json(nullptr);
    if (G.cover)
        J["cover"] = {{"genus", G.cover->genus},
                      {"degree", G.cover->p},
                      {"components", G.cover->components},
                      {"hyperelliptic", G.cover->hyperelliptic},
                      {"nonreduced", G.cover->nonreduced}};
    else
        J["cover"] = nullptr;
    J["adjunction_genus"] = G.adjunction ? json(*G.adjunction) : json(nullptr);
    return J;
}

} // namespace nrdiv
