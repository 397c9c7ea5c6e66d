// Command-line front end.
//
//   nrdiv analyze <file> [--json] [--family] [--seed N] [--check-nondegeneracy] [--truncate D]
//   nrdiv enumerate --type <tag> --param n=<int> [--json]
//   nrdiv genus --weights a,b,c --poly <file> [--json]
//
// Exit codes: 0 analyzed, 2 invalid input, 3 theorem check not verifiable,
// 4 internal inconsistency.

#include "nrdiv/report.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace {

constexpr int kExitInvalid = 2;
constexpr int kExitInternal = 4;

std::string read_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void emit(const nlohmann::ordered_json &J) { std::cout << J.dump(2) << '\n'; }

struct InvalidInput : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::map<std::string, nrdiv::i64> parse_params(const std::vector<std::string> &items) {
    std::map<std::string, nrdiv::i64> out;
    for (auto &s : items) {
        auto eq = s.find('=');
        if (eq == std::string::npos || eq == 0)
            throw InvalidInput("parameter '" + s + "' is not of the form name=<int>");
        auto v = nrdiv::detail::parse_int(std::string_view(s).substr(eq + 1));
        if (!v)
            throw InvalidInput("parameter '" + s + "' has a non-integer value");
        out[s.substr(0, eq)] = *v;
    }
    return out;
}

int run_analyze(const std::string &file, bool json, bool family, std::uint64_t seed, bool nondeg,
                std::optional<int> truncate) {
    std::string text;
    try {
        text = read_file(file);
    } catch (const std::exception &e) {
        throw InvalidInput(e.what());
    }
    nrdiv::AnalysisRequest req;
    try {
        req = nrdiv::parse_request(text);
    } catch (const nrdiv::RequestError &e) {
        throw InvalidInput(file + ":" + e.what());
    }
    nrdiv::AnalysisOptions opt;
    opt.seed = seed;
    opt.check_nondegeneracy = nondeg;
    opt.truncate = truncate;
    if (family) {
        std::map<std::string, nrdiv::Rational> values;
        std::vector<std::string> flags;
        auto S = nrdiv::prepare_instance(req.polynomial, req.action, opt, values, flags);
        auto F = nrdiv::analyze_family(S.type, nrdiv::family_parameters(S), seed);
        if (json)
            emit(nrdiv::render_json(F));
        else
            std::cout << nrdiv::render_text(F);
        return 0;
    }
    auto R = nrdiv::analyze(req.polynomial, req.action, opt);
    if (json)
        emit(nrdiv::render_json(R));
    else
        std::cout << nrdiv::render_text(R);
    return R.exit_code();
}

int run_enumerate(const std::string &tag, const std::vector<std::string> &params, bool json, std::uint64_t seed) {
    auto t = nrdiv::parse_type_tag(tag);
    if (!t)
        throw InvalidInput("unknown type '" + tag + "'");
    auto F = nrdiv::analyze_family(*t, parse_params(params), seed);
    if (json)
        emit(nrdiv::render_json(F));
    else
        std::cout << nrdiv::render_text(F);
    return 0;
}

int run_genus(const std::vector<nrdiv::i64> &weights, const std::string &file, bool json) {
    if (weights.size() != 3)
        throw InvalidInput("--weights needs exactly three integers");
    nrdiv::CurveModel C;
    try {
        auto req = nrdiv::parse_curve_text(read_file(file));
        C = nrdiv::curve_model(req, {weights[0], weights[1], weights[2]});
    } catch (const nrdiv::RequestError &e) {
        throw InvalidInput(file + ":" + e.what());
    } catch (const std::exception &e) {
        throw InvalidInput(e.what());
    }
    auto G = nrdiv::genus_report(C);
    if (json)
        emit(nrdiv::render_json(G));
    else
        std::cout << nrdiv::render_text(G);
    if (G.cover && G.adjunction && G.cover->genus != *G.adjunction && !G.cover->nonreduced &&
        G.cover->components == 1) {
        std::cerr << "error: the cover and adjunction genera disagree\n";
        return kExitInternal;
    }
    return 0;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Non-rational exceptional divisors of non-Gorenstein terminal 3-fold singularities"};
    app.require_subcommand(1);

    std::string file;
    bool json = false, family = false, nondeg = false;
    std::uint64_t seed = 1;
    std::optional<int> truncate;
    auto *analyze = app.add_subcommand("analyze", "analyze a singularity given as a request file");
    analyze->add_option("file", file, "request file (text or JSON)")->required();
    analyze->add_flag("--json", json, "emit the versioned JSON report");
    analyze->add_flag("--family", family, "enumerate over the whole family of the instance's type");
    analyze->add_option("--seed", seed, "seed for instantiating generic coefficients");
    analyze->add_flag("--check-nondegeneracy", nondeg, "verify non-degeneracy of the series first");
    analyze->add_option("--truncate", truncate, "the series is known only up to this total degree");

    std::string tag;
    std::vector<std::string> params;
    auto *enumerate = app.add_subcommand("enumerate", "family-mode enumeration for a type");
    enumerate->add_option("--type", tag, "type tag, e.g. cAx/4, cD/2-2, cE/2")->required();
    enumerate->add_option("--param", params, "family parameter name=<int>, e.g. n=7");
    enumerate->add_flag("--json", json, "emit the versioned JSON report");
    enumerate->add_option("--seed", seed, "seed for the member scenarios");

    std::vector<nrdiv::i64> weights;
    std::string poly;
    auto *genus = app.add_subcommand("genus", "genus of a curve in a weighted projective plane");
    genus->add_option("--weights", weights, "weights a,b,c")->required()->delimiter(',');
    genus->add_option("--poly", poly, "curve file: 'coeff e1 e2 e3' per line")->required();
    genus->add_flag("--json", json, "emit JSON");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return kExitInvalid;
    }

    try {
        if (*analyze)
            return run_analyze(file, json, family, seed, nondeg, truncate);
        if (*enumerate)
            return run_enumerate(tag, params, json, seed);
        return run_genus(weights, poly, json);
    } catch (const InvalidInput &e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInvalid;
    } catch (const nrdiv::ClassificationError &e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInvalid;
    } catch (const nrdiv::NoFamilyDefinition &e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInvalid;
    } catch (const nrdiv::UnboundedRegion &e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInvalid;
    } catch (const std::invalid_argument &e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInvalid;
    } catch (const std::exception &e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return kExitInternal;
    }
}
