#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

#include "loopwalk/errors.hpp"

namespace loopwalk {

namespace mp = boost::multiprecision;

using BigInt = mp::number<mp::cpp_int_backend<>, mp::et_off>;

// Exact rational scalar. boost::multiprecision keeps the canonical form
// gcd(|numerator|, denominator) = 1 with denominator > 0 on every operation.
using Rational = mp::number<mp::rational_adaptor<mp::cpp_int_backend<>>, mp::et_off>;

inline Rational make_rational(long num, long den = 1) {
    return Rational(BigInt(num), BigInt(den));
}

// Parses "p/q" or a bare integer "p". The denominator must be a positive
// integer literal.
inline Rational parse_rational(const std::string& text) {
    auto parse_int = [&](const std::string& part) -> BigInt {
        if (part.empty()) throw ParseError("empty integer in rational '" + text + "'");
        std::size_t start = (part[0] == '-' || part[0] == '+') ? 1 : 0;
        if (start == part.size()) throw ParseError("bad integer '" + part + "' in rational '" + text + "'");
        for (std::size_t i = start; i < part.size(); ++i) {
            if (part[i] < '0' || part[i] > '9')
                throw ParseError("bad integer '" + part + "' in rational '" + text + "'");
        }
        return BigInt(part);
    };
    auto slash = text.find('/');
    if (slash == std::string::npos) return Rational(parse_int(text));
    BigInt num = parse_int(text.substr(0, slash));
    BigInt den = parse_int(text.substr(slash + 1));
    if (den <= 0) throw ParseError("denominator must be positive in rational '" + text + "'");
    return Rational(num, den);
}

// Renders "p" when the denominator is one, "p/q" otherwise; inverse of
// parse_rational on canonical values.
inline std::string rational_str(const Rational& q) {
    if (denominator(q) == 1) return numerator(q).str();
    return numerator(q).str() + "/" + denominator(q).str();
}

} // namespace loopwalk
