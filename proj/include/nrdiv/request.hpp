#pragma once
// Analysis requests: a line-oriented text format and an equivalent JSON
// encoding, both parsed exactly (no floating point on the input path) with
// line:column diagnostics, and printed canonically so that
// parse(print(request)) == request.
//
// Text grammar (one statement per line, '#' starts a comment):
//
//   document  := { blank } header [ truncate ] monomial { monomial }
//   header    := "quotient" INT INT INT INT INT        order m, then a1..a4
//   truncate  := "truncate" INT                        series known up to this degree
//   monomial  := COEFF INT INT INT INT                 coefficient, exponents of x y z u
//   COEFF     := RATIONAL | "@" NAME                   "@" marks a generic coefficient
//   RATIONAL  := [ "+" | "-" ] DIGITS [ "/" DIGITS ]
//   NAME      := [A-Za-z_][A-Za-z0-9_]*
//
// JSON encoding (keys in any order, "truncate" optional):
//
//   { "format": "nrdiv-request", "version": 1,
//     "quotient": { "order": 4, "weights": [1, 3, 1, 2] },
//     "truncate": 30,
//     "monomials": [ { "coeff": "1", "exponents": [2, 0, 0, 0] }, ... ] }
//
// "coeff" is a string in COEFF syntax or a JSON integer.

#include "qpoly.hpp"

#include <json.hpp>

#include <cctype>
#include <charconv>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

namespace nrdiv {

inline constexpr int kRequestVersion = 1;
inline constexpr int kMaxExponent = 100000;

struct AnalysisRequest {
    CyclicAction action;
    QuasiPolynomial polynomial;

    bool operator==(const AnalysisRequest &o) const {
        return action == o.action && polynomial.terms() == o.polynomial.terms() &&
               polynomial.truncation_degree() == o.polynomial.truncation_degree();
    }
};

/// Input error with a 1-based source position.
class RequestError : public ParseError {
  public:
    RequestError(int line, int column, const std::string &what)
        : ParseError(std::to_string(line) + ":" + std::to_string(column) + ": " + what), line_(line),
          column_(column) {}
    int line() const { return line_; }
    int column() const { return column_; }

  private:
    int line_;
    int column_;
};

namespace detail {

struct Token {
    std::string_view text;
    int column = 1;
};

inline std::vector<Token> tokenize(std::string_view line) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < line.size()) {
        if (line[i] == '#')
            break;
        if (line[i] == ' ' || line[i] == '\t' || line[i] == '\r') {
            ++i;
            continue;
        }
        std::size_t j = i;
        while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r' && line[j] != '#')
            ++j;
        out.push_back({line.substr(i, j - i), static_cast<int>(i) + 1});
        i = j;
    }
    return out;
}

inline std::optional<i64> parse_int(std::string_view s) {
    if (s.empty())
        return std::nullopt;
    if (s[0] == '+')
        s.remove_prefix(1);
    i64 v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size())
        return std::nullopt;
    return v;
}

inline bool valid_marker(std::string_view name) {
    if (name.empty() || std::isdigit(static_cast<unsigned char>(name[0])))
        return false;
    for (char c : name)
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_')
            return false;
    return true;
}

/// Parses COEFF; the error message is returned through `why`.
inline std::optional<Coefficient> parse_coefficient(std::string_view s, std::string &why) {
    if (!s.empty() && s[0] == '@') {
        if (!valid_marker(s.substr(1))) {
            why = "invalid generic coefficient name '" + std::string(s) + "'";
            return std::nullopt;
        }
        return Coefficient::generic(std::string(s.substr(1)));
    }
    try {
        return Coefficient(parse_rational(s));
    } catch (const ParseError &e) {
        why = std::string(e.what()) + " (coefficients must be exact, e.g. 1/2)";
        return std::nullopt;
    }
}

/// Shared validation of a parsed action.
inline std::optional<std::string> action_problem(const CyclicAction &a) {
    if (a.m < 1)
        return "quotient order must be positive";
    return std::nullopt;
}

inline std::optional<std::string> exponent_problem(i64 e) {
    if (e < 0)
        return "exponents must be non-negative";
    if (e > kMaxExponent)
        return "exponent exceeds " + std::to_string(kMaxExponent);
    return std::nullopt;
}

} // namespace detail

inline AnalysisRequest parse_request_text(std::string_view text) {
    AnalysisRequest req;
    bool have_header = false;
    bool have_monomial = false;
    int lineno = 0;
    int last_line = 1;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t nl = text.find('\n', pos);
        std::string_view line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
        pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        ++lineno;
        auto toks = detail::tokenize(line);
        if (toks.empty())
            continue;
        last_line = lineno;
        auto fail = [&](const detail::Token &t, const std::string &what) -> RequestError {
            return RequestError(lineno, t.column, what);
        };
        auto integer = [&](const detail::Token &t, const char *what) {
            auto v = detail::parse_int(t.text);
            if (!v)
                throw fail(t, std::string("expected an integer ") + what + ", found '" + std::string(t.text) + "'");
            return *v;
        };
        if (toks[0].text == "quotient") {
            if (have_header)
                throw fail(toks[0], "duplicate quotient header");
            if (toks.size() != 6)
                throw fail(toks[0], "quotient header needs an order and four weights");
            req.action.m = integer(toks[1], "(quotient order)");
            for (int i = 0; i < 4; ++i)
                req.action.a[i] = integer(toks[2 + i], "(action weight)");
            if (auto p = detail::action_problem(req.action))
                throw fail(toks[1], *p);
            have_header = true;
            continue;
        }
        if (!have_header)
            throw fail(toks[0], "expected 'quotient' header before '" + std::string(toks[0].text) + "'");
        if (toks[0].text == "truncate") {
            if (have_monomial)
                throw fail(toks[0], "'truncate' must precede the monomials");
            if (req.polynomial.truncation_degree())
                throw fail(toks[0], "duplicate truncate line");
            if (toks.size() != 2)
                throw fail(toks[0], "truncate needs one degree");
            i64 d = integer(toks[1], "(truncation degree)");
            if (d < 0 || d > kMaxExponent)
                throw fail(toks[1], "truncation degree out of range");
            req.polynomial.set_truncation_degree(static_cast<int>(d));
            continue;
        }
        if (toks.size() != 5)
            throw fail(toks[0], "a monomial line is 'coeff e1 e2 e3 e4' (found " + std::to_string(toks.size()) +
                                    " fields)");
        std::string why;
        auto c = detail::parse_coefficient(toks[0].text, why);
        if (!c)
            throw fail(toks[0], why);
        if (c->is_zero())
            throw fail(toks[0], "zero coefficient");
        Exponent e{};
        for (int i = 0; i < 4; ++i) {
            i64 v = integer(toks[1 + i], "(exponent)");
            if (auto p = detail::exponent_problem(v))
                throw fail(toks[1 + i], *p);
            e[i] = static_cast<int>(v);
        }
        if (req.polynomial.contains(e))
            throw fail(toks[1], "duplicate monomial");
        req.polynomial.add(e, *c);
        have_monomial = true;
    }
    if (!have_header)
        throw RequestError(1, 1, "missing 'quotient' header");
    if (!have_monomial)
        throw RequestError(last_line, 1, "empty polynomial");
    return req;
}

namespace detail {

/// Iterator over the raw text that records the furthest position the JSON
/// lexer has read, so that callbacks can be mapped back to line:column.
class TrackingIterator {
  public:
    using iterator_category = std::input_iterator_tag;
    using value_type = char;
    using difference_type = std::ptrdiff_t;
    using pointer = const char *;
    using reference = const char &;

    TrackingIterator() = default;
    TrackingIterator(const char *p, const char *base, std::shared_ptr<std::size_t> seen)
        : p_(p), base_(base), seen_(std::move(seen)) {}
    reference operator*() const {
        note();
        return *p_;
    }
    TrackingIterator &operator++() {
        ++p_;
        return *this;
    }
    TrackingIterator operator++(int) {
        auto t = *this;
        ++p_;
        return t;
    }
    bool operator==(const TrackingIterator &o) const { return p_ == o.p_; }
    bool operator!=(const TrackingIterator &o) const { return p_ != o.p_; }

  private:
    void note() const {
        std::size_t at = static_cast<std::size_t>(p_ - base_) + 1;
        if (seen_ && at > *seen_)
            *seen_ = at;
    }
    const char *p_ = nullptr;
    const char *base_ = nullptr;
    std::shared_ptr<std::size_t> seen_;
};

inline std::pair<int, int> line_column(std::string_view text, std::size_t offset) {
    int line = 1, col = 1;
    for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return {line, col};
}

/// Start offset of the JSON token that ends at or before `end`.
inline std::size_t token_start(std::string_view text, std::size_t end) {
    std::size_t p = std::min(end, text.size());
    auto delim = [](char c) {
        return c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == ',' || c == ']' || c == '}' || c == ':';
    };
    while (p > 0 && delim(text[p - 1]))
        --p;
    if (p == 0)
        return 0;
    if (text[p - 1] == '"') {
        --p;
        while (p > 0 && !(text[p - 1] == '"' && (p < 2 || text[p - 2] != '\\')))
            --p;
        return p > 0 ? p - 1 : 0;
    }
    if (text[p - 1] == '{' || text[p - 1] == '[')
        return p - 1;
    while (p > 0 && !delim(text[p - 1]) && text[p - 1] != '[' && text[p - 1] != '{')
        --p;
    return p;
}

/// JSON DOM plus the source offset of every value, keyed by JSON pointer.
struct LocatedJson {
    nlohmann::json value;
    std::map<std::string, std::size_t> offsets;
};

inline LocatedJson parse_located_json(std::string_view text) {
    LocatedJson out;
    auto seen = std::make_shared<std::size_t>(0);
    struct Frame {
        bool array = false;
        std::size_t index = 0;
        std::string key;
        std::string path;
    };
    std::vector<Frame> stack;
    auto child_path = [&]() -> std::string {
        if (stack.empty())
            return "";
        auto &f = stack.back();
        return f.path + "/" + (f.array ? std::to_string(f.index) : f.key);
    };
    auto finish_child = [&]() {
        if (!stack.empty() && stack.back().array)
            ++stack.back().index;
    };
    using json = nlohmann::json;
    json::parser_callback_t cb = [&](int, json::parse_event_t ev, json &parsed) {
        std::size_t here = *seen;
        switch (ev) {
        case json::parse_event_t::object_start:
        case json::parse_event_t::array_start: {
            std::string path = child_path();
            out.offsets[path] = here > 0 ? here - 1 : 0;
            stack.push_back({ev == json::parse_event_t::array_start, 0, "", path});
            break;
        }
        case json::parse_event_t::key:
            if (!stack.empty())
                stack.back().key = parsed.get<std::string>();
            break;
        case json::parse_event_t::value:
            out.offsets[child_path()] = token_start(text, here > 0 ? here - 1 : 0);
            finish_child();
            break;
        case json::parse_event_t::object_end:
        case json::parse_event_t::array_end:
            stack.pop_back();
            finish_child();
            break;
        }
        return true;
    };
    TrackingIterator b(text.data(), text.data(), seen), e(text.data() + text.size(), text.data(), seen);
    try {
        out.value = json::parse(b, e, cb);
    } catch (const json::parse_error &err) {
        auto [l, c] = line_column(text, err.byte > 0 ? err.byte - 1 : 0);
        std::string what = err.what();
        auto col = what.find("column ");
        auto colon = col == std::string::npos ? std::string::npos : what.find(": ", col);
        throw RequestError(l, c, "invalid JSON: " + (colon == std::string::npos ? what : what.substr(colon + 2)));
    }
    return out;
}

} // namespace detail

inline AnalysisRequest parse_request_json(std::string_view text) {
    using json = nlohmann::json;
    auto doc = detail::parse_located_json(text);
    auto fail = [&](const std::string &path, const std::string &what) -> RequestError {
        auto it = doc.offsets.find(path);
        std::size_t off = it == doc.offsets.end() ? 0 : it->second;
        auto [l, c] = detail::line_column(text, off);
        return RequestError(l, c, (path.empty() ? std::string("document") : path) + ": " + what);
    };
    const json &J = doc.value;
    if (!J.is_object())
        throw fail("", "expected a JSON object");
    static const std::set<std::string> known{"format", "version", "quotient", "truncate", "monomials"};
    for (auto &[k, v] : J.items())
        if (!known.count(k))
            throw fail("/" + k, "unknown key '" + k + "'");
    if (!J.contains("format") || J["format"] != "nrdiv-request")
        throw fail(J.contains("format") ? "/format" : "", "\"format\" must be \"nrdiv-request\"");
    if (!J.contains("version") || !J["version"].is_number_integer() || J["version"].get<i64>() != kRequestVersion)
        throw fail(J.contains("version") ? "/version" : "", "\"version\" must be " + std::to_string(kRequestVersion));
    auto integer = [&](const std::string &path, const json &v, const char *what) {
        if (!v.is_number_integer())
            throw fail(path, std::string("expected an integer ") + what);
        return v.get<i64>();
    };
    AnalysisRequest req;
    if (!J.contains("quotient") || !J["quotient"].is_object())
        throw fail(J.contains("quotient") ? "/quotient" : "", "missing \"quotient\" object");
    const json &Q = J["quotient"];
    for (auto &[k, v] : Q.items())
        if (k != "order" && k != "weights")
            throw fail("/quotient/" + k, "unknown key '" + k + "'");
    if (!Q.contains("order"))
        throw fail("/quotient", "missing \"order\"");
    req.action.m = integer("/quotient/order", Q["order"], "(quotient order)");
    if (!Q.contains("weights") || !Q["weights"].is_array() || Q["weights"].size() != 4)
        throw fail(Q.contains("weights") ? "/quotient/weights" : "/quotient", "\"weights\" must be 4 integers");
    for (int i = 0; i < 4; ++i)
        req.action.a[i] = integer("/quotient/weights/" + std::to_string(i), Q["weights"][i], "(action weight)");
    if (auto p = detail::action_problem(req.action))
        throw fail("/quotient/order", *p);
    if (J.contains("truncate")) {
        i64 d = integer("/truncate", J["truncate"], "(truncation degree)");
        if (d < 0 || d > kMaxExponent)
            throw fail("/truncate", "truncation degree out of range");
        req.polynomial.set_truncation_degree(static_cast<int>(d));
    }
    if (!J.contains("monomials") || !J["monomials"].is_array())
        throw fail(J.contains("monomials") ? "/monomials" : "", "missing \"monomials\" array");
    const json &M = J["monomials"];
    if (M.empty())
        throw fail("/monomials", "empty polynomial");
    for (std::size_t t = 0; t < M.size(); ++t) {
        std::string base = "/monomials/" + std::to_string(t);
        const json &m = M[t];
        if (!m.is_object())
            throw fail(base, "expected an object with \"coeff\" and \"exponents\"");
        for (auto &[k, v] : m.items())
            if (k != "coeff" && k != "exponents")
                throw fail(base + "/" + k, "unknown key '" + k + "'");
        if (!m.contains("coeff"))
            throw fail(base, "missing \"coeff\"");
        std::optional<Coefficient> c;
        std::string why;
        if (m["coeff"].is_number_integer())
            c = Coefficient(Rational(BigInt(m["coeff"].get<i64>())));
        else if (m["coeff"].is_string())
            c = detail::parse_coefficient(m["coeff"].get<std::string>(), why);
        else
            why = m["coeff"].is_number() ? "coefficients must be exact: write a string such as \"1/2\""
                                         : "coefficient must be a string or an integer";
        if (!c)
            throw fail(base + "/coeff", why);
        if (c->is_zero())
            throw fail(base + "/coeff", "zero coefficient");
        if (!m.contains("exponents") || !m["exponents"].is_array() || m["exponents"].size() != 4)
            throw fail(m.contains("exponents") ? base + "/exponents" : base, "\"exponents\" must be 4 integers");
        Exponent e{};
        for (int i = 0; i < 4; ++i) {
            std::string p = base + "/exponents/" + std::to_string(i);
            i64 v = integer(p, m["exponents"][i], "(exponent)");
            if (auto why2 = detail::exponent_problem(v))
                throw fail(p, *why2);
            e[i] = static_cast<int>(v);
        }
        if (req.polynomial.contains(e))
            throw fail(base + "/exponents", "duplicate monomial");
        req.polynomial.add(e, *c);
    }
    return req;
}

/// Dispatches on the first non-blank character: '{' selects JSON.
inline AnalysisRequest parse_request(std::string_view text) {
    for (char c : text) {
        if (c == ' ' || c == '\t' || c == '\r' || c == '\n')
            continue;
        return c == '{' ? parse_request_json(text) : parse_request_text(text);
    }
    throw RequestError(1, 1, "empty document");
}

inline std::string print_request_text(const AnalysisRequest &req) {
    std::ostringstream os;
    os << "quotient " << req.action.m;
    for (auto a : req.action.a)
        os << ' ' << a;
    os << '\n';
    if (auto d = req.polynomial.truncation_degree())
        os << "truncate " << *d << '\n';
    for (auto &[e, c] : req.polynomial.terms())
        os << c.str() << ' ' << e[0] << ' ' << e[1] << ' ' << e[2] << ' ' << e[3] << '\n';
    return os.str();
}

inline std::string print_request_json(const AnalysisRequest &req) {
    nlohmann::ordered_json J;
    J["format"] = "nrdiv-request";
    J["version"] = kRequestVersion;
    J["quotient"] = {{"order", req.action.m},
                     {"weights", {req.action.a[0], req.action.a[1], req.action.a[2], req.action.a[3]}}};
    if (auto d = req.polynomial.truncation_degree())
        J["truncate"] = *d;
    auto arr = nlohmann::ordered_json::array();
    for (auto &[e, c] : req.polynomial.terms())
        arr.push_back({{"coeff", c.str()}, {"exponents", {e[0], e[1], e[2], e[3]}}});
    J["monomials"] = arr;
    return J.dump(2) + "\n";
}

/// A plane curve for direct genus queries: "coeff e1 e2 e3" per line, with
/// an optional leading "group g r1 r2 r3" line for a diagonal Z_g action.
struct CurveRequest {
    i64 group_order = 1;
    std::array<i64, 3> residues{0, 0, 0};
    std::vector<std::pair<std::array<int, 3>, Rational>> terms;
};

inline CurveRequest parse_curve_text(std::string_view text) {
    CurveRequest req;
    std::set<std::array<int, 3>> seen;
    int lineno = 0;
    int last_line = 1;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t nl = text.find('\n', pos);
        std::string_view line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
        pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        ++lineno;
        auto toks = detail::tokenize(line);
        if (toks.empty())
            continue;
        last_line = lineno;
        auto integer = [&](const detail::Token &t) {
            auto v = detail::parse_int(t.text);
            if (!v)
                throw RequestError(lineno, t.column, "expected an integer, found '" + std::string(t.text) + "'");
            return *v;
        };
        if (toks[0].text == "group") {
            if (!req.terms.empty() || req.group_order != 1)
                throw RequestError(lineno, toks[0].column, "'group' must be the first statement");
            if (toks.size() != 5)
                throw RequestError(lineno, toks[0].column, "group line is 'group g r1 r2 r3'");
            req.group_order = integer(toks[1]);
            if (req.group_order < 1)
                throw RequestError(lineno, toks[1].column, "group order must be positive");
            for (int i = 0; i < 3; ++i)
                req.residues[i] = integer(toks[2 + i]);
            continue;
        }
        if (toks.size() != 4)
            throw RequestError(lineno, toks[0].column, "a curve monomial line is 'coeff e1 e2 e3'");
        Rational c;
        try {
            c = parse_rational(toks[0].text);
        } catch (const ParseError &e) {
            throw RequestError(lineno, toks[0].column, std::string(e.what()) + " (coefficients must be exact)");
        }
        if (c == 0)
            throw RequestError(lineno, toks[0].column, "zero coefficient");
        std::array<int, 3> e{};
        for (int i = 0; i < 3; ++i) {
            i64 v = integer(toks[1 + i]);
            if (auto p = detail::exponent_problem(v))
                throw RequestError(lineno, toks[1 + i].column, *p);
            e[i] = static_cast<int>(v);
        }
        if (!seen.insert(e).second)
            throw RequestError(lineno, toks[1].column, "duplicate monomial");
        req.terms.emplace_back(e, c);
    }
    if (req.terms.empty())
        throw RequestError(last_line, 1, "empty polynomial");
    return req;
}

} // namespace nrdiv
