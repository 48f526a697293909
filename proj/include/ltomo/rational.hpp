#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <sstream>
#include <string>
#include <vector>

#include "ltomo/errors.hpp"

namespace ltomo {

using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;
using RatVec = std::vector<Rational>;

inline Int floor_int(const Rational& r) {
    Int n = numerator(r), d = denominator(r);
    Int q = n / d;
    if (n < 0 && q * d != n) --q;
    return q;
}

inline Int ceil_int(const Rational& r) {
    Int n = numerator(r), d = denominator(r);
    Int q = n / d;
    if (n > 0 && q * d != n) ++q;
    return q;
}

inline bool is_integer(const Rational& r) { return denominator(r) == 1; }

inline Rational abs(const Rational& r) { return r < 0 ? Rational(-r) : r; }

namespace detail {

/// Strict base-10 integer parsing; cpp_int's string constructor would treat a
/// leading zero as an octal prefix.
inline Int parse_decimal_int(const std::string& text) {
    std::size_t pos = 0;
    bool neg = false;
    if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) neg = text[pos++] == '-';
    if (pos == text.size()) throw ParseError("bad integer literal '" + text + "'");
    Int v = 0;
    for (; pos < text.size(); ++pos) {
        if (text[pos] < '0' || text[pos] > '9')
            throw ParseError("bad integer literal '" + text + "'");
        v = v * 10 + (text[pos] - '0');
    }
    return neg ? Int(-v) : v;
}

}  // namespace detail

/// Parses "p/q", "p", or a decimal like "-1.25" into an exact rational.
inline Rational parse_rational(const std::string& text) {
    if (text.empty()) throw ParseError("empty rational literal");
    auto slash = text.find('/');
    if (slash != std::string::npos) {
        Int n = detail::parse_decimal_int(text.substr(0, slash));
        Int d = detail::parse_decimal_int(text.substr(slash + 1));
        if (d == 0) throw ParseError("zero denominator in '" + text + "'");
        return Rational(n, d);
    }
    auto dot = text.find('.');
    if (dot == std::string::npos) return Rational(detail::parse_decimal_int(text));
    Int n = detail::parse_decimal_int(text.substr(0, dot) + text.substr(dot + 1));
    Int d = 1;
    for (std::size_t i = dot + 1; i < text.size(); ++i) d *= 10;
    return Rational(n, d);
}

/// Lowest terms, denominator positive; integers render without "/1".
inline std::string format_rational(const Rational& r) {
    std::ostringstream os;
    os << numerator(r);
    if (denominator(r) != 1) os << '/' << denominator(r);
    return os.str();
}

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

}  // namespace ltomo
