#pragma once
// Orchestration: classify an instance, enumerate its blowups with
// discrepancy <= 1, classify every exceptional divisor, and check the
// bound on the number of non-rational divisors together with the genus
// bounds and the pairwise exclusions.

#include "family.hpp"

#include <optional>
#include <string>
#include <vector>

namespace nrdiv {

struct AnalysisOptions {
    std::uint64_t seed = 1;          ///< instantiation of generic markers
    bool check_nondegeneracy = false;
    std::optional<int> truncate;     ///< series known only up to this total degree
};

/// One candidate row of the report.
struct CandidateRow {
    DivisorReport divisor;
    std::optional<FamilyLabel> label;
    /// genus exceeds the paper's bound for the label (a hard inconsistency)
    bool bound_violated = false;
};

enum class TheoremStatus { verified, not_verified, violated };

inline std::string to_string(TheoremStatus s) {
    switch (s) {
    case TheoremStatus::verified:
        return "verified";
    case TheoremStatus::not_verified:
        return "not verified";
    default:
        return "violated";
    }
}

struct TheoremCheck {
    int non_rational = 0;
    int limit = 2;
    TheoremStatus status = TheoremStatus::verified;
    std::vector<std::string> reasons;
    std::vector<std::pair<std::size_t, std::size_t>> pairs; ///< non-rational row pairs

    std::string summary() const {
        std::string s = std::to_string(non_rational) + " non-rational divisor" + (non_rational == 1 ? "" : "s") +
                        " (limit " + std::to_string(limit) + "): " + to_string(status);
        return s;
    }
};

struct AnalysisReport {
    SingularityInstance instance;
    WeightRegion region;
    std::vector<CandidateRow> rows;
    TheoremCheck theorem;
    std::vector<std::string> flags;
    std::map<std::string, Rational> instantiated;
    std::optional<Verdict> nondegenerate;

    int exit_code() const {
        switch (theorem.status) {
        case TheoremStatus::violated:
            return 4;
        case TheoremStatus::not_verified:
            return 3;
        default:
            return 0;
        }
    }
};

namespace detail {

inline void add_flag(std::vector<std::string> &flags, const std::string &f) {
    if (std::find(flags.begin(), flags.end(), f) == flags.end())
        flags.push_back(f);
}

/// Flags for places where the instance meets a known misprint or an
/// interpretation of the paper's statements.
inline void paper_flags(const SingularityInstance &S, const CandidateRow &r, std::vector<std::string> &flags) {
    if (!r.label)
        return;
    const auto &L = *r.label;
    if (S.type == TypeTag::cD2_2 && L.name == "nu4")
        add_flag(flags, "cD/2-2: the printed blowup (1,k,2,k) has discrepancy 2; the enumerated weight is (1,k,1,k) "
                        "with discrepancy 1");
    if (S.type == TypeTag::cAx4 && L.name == "nu2" && L.k == 0)
        add_flag(flags, "cAx/4: the genus bound 2m-1 is negative at k = 0 and is read as "
                        "\"no non-rational divisor possible\"");
    if (S.type == TypeTag::cAx2 && (L.name == "nu0" || L.name == "nu1") && r.divisor.non_rational() &&
        S.params.count("k") && S.params.at("k") != L.k)
        add_flag(flags, "cAx/2: the non-rational blowup " + to_display(r.divisor.candidate.weight) + " is " + L.name +
                            " at k = " + std::to_string(L.k) + " (half the order " + std::to_string(S.params.at("k")) +
                            " of f), not at k = " + std::to_string(S.params.at("k")) +
                            "; the printed example pairs k = 6 with 1/2(4,3,1,1)");
    if (S.type == TypeTag::cE2 && L.name == "nu4")
        add_flag(flags, "cE/2: the printed singularity u^2+x^3+y^3+z^12 is not semi-invariant and does not have "
                        "the printed divisor {x^3+y^4+z^12} at 1/2(4,3,1,7); u^2+x^3+y^4+z^12 does");
}

} // namespace detail

/// Counts and checks one analyzed candidate list.
inline TheoremCheck check_theorem(const SingularityInstance &S, std::vector<CandidateRow> &rows,
                                  std::uint64_t seed) {
    TheoremCheck T;
    T.limit = theorem_limit(S.type);
    std::vector<std::size_t> nonrational;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        auto &r = rows[i];
        const auto &D = r.divisor;
        const std::string w = to_display(D.candidate.weight);
        if (D.undetermined()) {
            T.reasons.push_back(w + ": undetermined (" + D.components.back().rule + ")");
            if (T.status == TheoremStatus::verified)
                T.status = TheoremStatus::not_verified;
        }
        if (!D.non_rational())
            continue;
        nonrational.push_back(i);
        int g = *D.genus();
        if (!r.label) {
            if (theorem_limit(S.type) > 0) {
                T.reasons.push_back(w + ": non-rational divisor outside the paper's list of blowups");
                T.status = TheoremStatus::violated;
            }
        } else if (!r.label->bound || g > *r.label->bound) {
            r.bound_violated = true;
            T.reasons.push_back(w + ": genus " + std::to_string(g) + " exceeds the bound " +
                                (r.label->bound ? std::to_string(*r.label->bound) : std::string("(none possible)")) +
                                " for " + r.label->name);
            T.status = TheoremStatus::violated;
        }
    }
    T.non_rational = static_cast<int>(nonrational.size());
    if (T.non_rational > T.limit) {
        T.reasons.push_back(std::to_string(T.non_rational) + " non-rational divisors exceed the limit " +
                            std::to_string(T.limit));
        T.status = TheoremStatus::violated;
    }
    for (std::size_t a = 0; a < nonrational.size(); ++a)
        for (std::size_t b = a + 1; b < nonrational.size(); ++b) {
            std::size_t i = nonrational[a], j = nonrational[b];
            T.pairs.emplace_back(i, j);
            if (T.non_rational > T.limit)
                continue; // already reported through the count
            auto ex = mutual_exclusion(S, rows[i].divisor.candidate.weight, rows[j].divisor.candidate.weight, seed);
            if (ex.exclusive) {
                T.reasons.push_back(to_display(rows[i].divisor.candidate.weight) + " and " +
                                    to_display(rows[j].divisor.candidate.weight) +
                                    " are both non-rational although mutually exclusive: " + ex.reason);
                T.status = TheoremStatus::violated;
            }
        }
    return T;
}

/// Prepares the series (instantiation, truncation) and classifies it.
inline SingularityInstance prepare_instance(QuasiPolynomial phi, const CyclicAction &act,
                                            const AnalysisOptions &opt, std::map<std::string, Rational> &values,
                                            std::vector<std::string> &flags) {
    if (phi.has_generic()) {
        values = instantiate_generic(phi, opt.seed);
        std::string s = "generic coefficients instantiated with seed " + std::to_string(opt.seed) + ":";
        for (auto &[k, v] : values)
            s += " " + k + " = " + to_string(v);
        flags.push_back(s);
    }
    std::optional<int> cut = opt.truncate;
    if (phi.truncation_degree() && (!cut || *phi.truncation_degree() < *cut))
        cut = phi.truncation_degree();
    if (cut) {
        std::size_t before = phi.size();
        phi = truncate(phi, *cut);
        if (phi.size() < before)
            flags.push_back("dropped " + std::to_string(before - phi.size()) + " monomials above degree " +
                            std::to_string(*cut));
    }
    auto S = classify(phi, act);
    for (auto &f : S.flags)
        if (f != "generic coefficients are assumed nonzero")
            detail::add_flag(flags, f);
    return S;
}

/// Full instance analysis.
inline AnalysisReport analyze(const QuasiPolynomial &phi, const CyclicAction &act, const AnalysisOptions &opt = {}) {
    AnalysisReport R;
    R.instance = prepare_instance(phi, act, opt, R.instantiated, R.flags);
    const auto &S = R.instance;
    auto E = enumerate_candidates(S);
    R.region = E.region;
    for (auto &c : E.candidates) {
        CandidateRow row;
        row.divisor = classify_rationality(c);
        row.label = identify_family(S.type, c.weight);
        detail::paper_flags(S, row, R.flags);
        R.rows.push_back(std::move(row));
    }
    R.theorem = check_theorem(S, R.rows, opt.seed);
    if (auto d = S.equation.truncation_degree(); d && *d < R.region.truncation) {
        R.theorem.reasons.push_back("series known only up to degree " + std::to_string(*d) +
                                    ", but faces may involve monomials up to degree " +
                                    std::to_string(R.region.truncation));
        if (R.theorem.status == TheoremStatus::verified)
            R.theorem.status = TheoremStatus::not_verified;
    }
    if (opt.check_nondegeneracy) {
        auto nd = nondegenerate(S.equation);
        R.nondegenerate = nd.verdict;
        if (nd.verdict != Verdict::yes) {
            R.theorem.reasons.push_back(nd.verdict == Verdict::no
                                            ? "the series is degenerate with respect to its Newton diagram" +
                                                  (nd.witness.empty() ? std::string() : " (" + nd.witness + ")")
                                            : std::string("non-degeneracy could not be decided"));
            if (R.theorem.status == TheoremStatus::verified)
                R.theorem.status = TheoremStatus::not_verified;
        }
    }
    return R;
}

inline AnalysisReport analyze(const SingularityInstance &S, const AnalysisOptions &opt = {}) {
    return analyze(S.equation, S.action, opt);
}

/// Family-mode report: the candidate blowups of a type over all members.
struct FamilyReport {
    TypeTag type = TypeTag::cAx4;
    std::map<std::string, i64> params;
    FamilyEnumeration enumeration;
    std::vector<std::string> flags;
};

inline FamilyReport analyze_family(TypeTag t, const std::map<std::string, i64> &params, std::uint64_t seed = 1) {
    FamilyReport F;
    F.type = t;
    F.params = params;
    F.enumeration = enumerate_family(t, params, seed);
    F.flags = F.enumeration.flags;
    for (auto &c : F.enumeration.candidates) {
        if (!c.label)
            continue;
        if (t == TypeTag::cAx4 && c.label->name == "nu2" && c.label->k == 0)
            detail::add_flag(F.flags, "cAx/4: the genus bound 2m-1 is negative at k = 0 and is read as "
                                      "\"no non-rational divisor possible\"");
        if (t == TypeTag::cE2 && c.label->name == "nu4")
            detail::add_flag(F.flags, "cE/2: nu4 is not necessarily hyperelliptic");
    }
    return F;
}

/// The family parameters carried by an instance (n for cAx/4 and cD/2-2).
inline std::map<std::string, i64> family_parameters(const SingularityInstance &S) {
    std::map<std::string, i64> p;
    if ((S.type == TypeTag::cAx4 || S.type == TypeTag::cD2_2) && S.params.count("n"))
        p["n"] = S.params.at("n");
    return p;
}

} // namespace nrdiv
