#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <string_view>

namespace nrdiv {

using BigInt = boost::multiprecision::cpp_int;
/// Exact rational, always normalized (lowest terms, positive denominator).
using Rational = boost::multiprecision::cpp_rational;

class ParseError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

inline Rational make_rational(std::int64_t num, std::int64_t den = 1) {
    if (den == 0)
        throw std::domain_error("zero denominator");
    return Rational(BigInt(num), BigInt(den));
}

inline BigInt numerator_of(const Rational &q) { return boost::multiprecision::numerator(q); }
inline BigInt denominator_of(const Rational &q) { return boost::multiprecision::denominator(q); }

inline std::string to_string(const Rational &q) {
    if (denominator_of(q) == 1)
        return numerator_of(q).str();
    return numerator_of(q).str() + "/" + denominator_of(q).str();
}

inline bool is_integer(const Rational &q) { return denominator_of(q) == 1; }

/// Parses "a", "-a" or "a/b". Decimal points and exponents are rejected so
/// no floating-point value ever enters the computation.
inline Rational parse_rational(std::string_view text) {
    auto digits_only = [](std::string_view s) {
        if (s.empty())
            return false;
        std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
        if (i == s.size())
            return false;
        for (; i < s.size(); ++i)
            if (s[i] < '0' || s[i] > '9')
                return false;
        return true;
    };
    auto slash = text.find('/');
    std::string_view num = text.substr(0, slash);
    if (!digits_only(num))
        throw ParseError("not an exact rational literal: '" + std::string(text) + "'");
    std::string num_s(num[0] == '+' ? num.substr(1) : num);
    if (slash == std::string_view::npos)
        return Rational(BigInt(num_s));
    std::string_view den = text.substr(slash + 1);
    if (!digits_only(den) || den[0] == '-' || den[0] == '+')
        throw ParseError("not an exact rational literal: '" + std::string(text) + "'");
    BigInt d{std::string(den)};
    if (d == 0)
        throw ParseError("zero denominator in '" + std::string(text) + "'");
    return Rational(BigInt(num_s), d);
}

inline std::int64_t mod_floor(std::int64_t a, std::int64_t m) {
    std::int64_t r = a % m;
    return r < 0 ? r + m : r;
}

inline std::int64_t floor_div(std::int64_t a, std::int64_t b) {
    std::int64_t q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0)))
        --q;
    return q;
}

/// Largest integer <= q.
inline BigInt floor_of(const Rational &q) {
    BigInt n = numerator_of(q), d = denominator_of(q);
    BigInt r = n / d;
    if (n % d != 0 && n < 0)
        --r;
    return r;
}

} // namespace nrdiv
