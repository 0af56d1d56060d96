#pragma once

#include <boost/rational.hpp>

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace treepack {

// Exact rational arithmetic for graph statistics (average degree, t-values,
// densities). boost::rational normalizes eagerly and compares via continued
// fractions, so int64 components are safe at every scale this library accepts.
using Rational = boost::rational<long long>;

inline double to_double(const Rational& r) {
    return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
}

inline long long ceil_div(long long a, long long b) {
    if (b <= 0) throw std::invalid_argument("ceil_div: denominator must be positive");
    return a / b + (a % b > 0 ? 1 : 0);
}

inline long long floor_div(long long a, long long b) {
    if (b <= 0) throw std::invalid_argument("floor_div: denominator must be positive");
    return a / b - (a % b < 0 ? 1 : 0);
}

inline long long ceil_of(const Rational& r) { return ceil_div(r.numerator(), r.denominator()); }
inline long long floor_of(const Rational& r) { return floor_div(r.numerator(), r.denominator()); }

/// Parses a decimal literal ("3", "-0.25", "1e-3" is NOT accepted) into an
/// exact rational p / 10^k. Used for CLI parameters (eps, zeta, ...) so that
/// threshold comparisons stay exact instead of inheriting float rounding.
inline Rational parse_decimal_rational(const std::string& text) {
    if (text.empty()) throw std::invalid_argument("empty rational literal");
    std::size_t pos = 0;
    bool negative = false;
    if (text[pos] == '+' || text[pos] == '-') {
        negative = text[pos] == '-';
        ++pos;
    }
    long long num = 0;
    long long den = 1;
    bool seen_digit = false;
    bool seen_dot = false;
    for (; pos < text.size(); ++pos) {
        char c = text[pos];
        if (c == '.') {
            if (seen_dot) throw std::invalid_argument("bad rational literal: " + text);
            seen_dot = true;
            continue;
        }
        if (c == '/') {
            // Also accept plain fraction syntax "a/b".
            if (seen_dot || !seen_digit) throw std::invalid_argument("bad rational literal: " + text);
            const std::string rest = text.substr(pos + 1);
            if (rest.empty() || rest.find_first_not_of("0123456789") != std::string::npos)
                throw std::invalid_argument("bad rational literal: " + text);
            long long d = std::stoll(rest);
            if (d == 0) throw std::invalid_argument("zero denominator: " + text);
            return Rational(negative ? -num : num, d);
        }
        if (c < '0' || c > '9') throw std::invalid_argument("bad rational literal: " + text);
        seen_digit = true;
        if (num > (std::numeric_limits<long long>::max() - 9) / 10)
            throw std::invalid_argument("rational literal out of range: " + text);
        num = num * 10 + (c - '0');
        if (seen_dot) {
            if (den > std::numeric_limits<long long>::max() / 10)
                throw std::invalid_argument("rational literal out of range: " + text);
            den *= 10;
        }
    }
    if (!seen_digit) throw std::invalid_argument("bad rational literal: " + text);
    return Rational(negative ? -num : num, den);
}

/// Renders r as an exact decimal when the denominator is a product of 2s and
/// 5s, otherwise as "num/den". Round-trips through parse_decimal_rational.
inline std::string format_rational(const Rational& r) {
    long long den = r.denominator();
    long long pow10 = 1;
    long long d = den;
    while (d % 2 == 0) d /= 2;
    while (d % 5 == 0) d /= 5;
    if (d == 1) {
        // Scale to a power of ten without overflowing.
        long long num = r.numerator();
        while (pow10 % den != 0) {
            if (pow10 > std::numeric_limits<long long>::max() / 10 ||
                std::abs(num) > std::numeric_limits<long long>::max() / 10)
                return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
            pow10 *= 10;
            num *= 10;
        }
        num /= den;  // exact: den | pow10 and num was scaled by pow10
        // Value is num / pow10 with pow10 a power of 10.
        // Re-derive the digit count of the scale factor.
        int digits = 0;
        for (long long p = pow10; p > 1; p /= 10) ++digits;
        if (digits == 0) return std::to_string(num);
        const bool neg = num < 0;
        std::string body = std::to_string(neg ? -num : num);
        if (static_cast<int>(body.size()) <= digits) body.insert(0, digits + 1 - body.size(), '0');
        body.insert(body.size() - digits, ".");
        return (neg ? "-" : "") + body;
    }
    return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

}  // namespace treepack
