#pragma once

#include <gmpxx.h>

#include <compare>
#include <stdexcept>
#include <string>
#include <string_view>

namespace cq {

using Rational = mpq_class;
using BigInt = mpz_class;

class DomainError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Point {
    Rational x;
    Rational y;

    friend bool operator==(const Point& a, const Point& b) { return a.x == b.x && a.y == b.y; }
    friend bool operator<(const Point& a, const Point& b) {
        if (a.x != b.x) return a.x < b.x;
        return a.y < b.y;
    }
};

Rational squared_distance(const Point& a, const Point& b);

// 3^-k and 2^-k as exact rationals.
Rational inv_pow3(unsigned long k);
Rational inv_pow2(unsigned long k);
BigInt pow_int(unsigned long base, unsigned long exp);

// "p/q" canonical form; integers print without a denominator.
std::string to_string(const Rational& q);
std::string to_string(const Point& p);

// Accepts "p/q", integers, and plain decimals or scientific notation
// ("0.3", "-1.5e-12"); decimals are converted exactly.
Rational parse_rational(std::string_view text);

// Rounded decimal rendering with `digits` significant digits.
// Scientific form is used below 1e-6.
std::string to_decimal(const Rational& q, int digits = 10);

}  // namespace cq
