#pragma once

#include <gmpxx.h>

#include <cctype>
#include <cstdint>
#include <limits>
#include <string>
#include <string_view>
#include <vector>

#include "ellkit/errors.hpp"

namespace ellkit {

using Int = std::int64_t;
using Integer = mpz_class;
using Rational = mpq_class;

using IntVector = std::vector<Int>;
using IntMatrix = std::vector<IntVector>;
using RationalVector = std::vector<Rational>;
using RationalMatrix = std::vector<RationalVector>;

// Lattice coordinates live in int64; every operation is overflow-checked so
// arithmetic stays exact or fails loudly.
namespace checked {

inline Int add(Int a, Int b) {
    Int r;
    if (__builtin_add_overflow(a, b, &r)) fail(ErrorKind::overflow, "integer overflow in addition");
    return r;
}

inline Int sub(Int a, Int b) {
    Int r;
    if (__builtin_sub_overflow(a, b, &r)) fail(ErrorKind::overflow, "integer overflow in subtraction");
    return r;
}

inline Int mul(Int a, Int b) {
    Int r;
    if (__builtin_mul_overflow(a, b, &r)) fail(ErrorKind::overflow, "integer overflow in multiplication");
    return r;
}

} // namespace checked

/// Floor division for signed integers (rounds toward negative infinity).
inline Int floor_div(Int a, Int b) {
    require(b != 0, ErrorKind::domain, "division by zero");
    Int q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

inline Int floor_mod(Int a, Int b) { return checked::sub(a, checked::mul(floor_div(a, b), b)); }

inline Rational make_rational(Int num, Int den = 1) {
    require(den != 0, ErrorKind::domain, "zero denominator");
    Rational r(Integer(static_cast<long>(num)), Integer(static_cast<long>(den)));
    r.canonicalize();
    return r;
}

inline Rational to_rational(Int value) { return Rational(Integer(static_cast<long>(value))); }

inline bool is_integer(const Rational& r) { return r.get_den() == 1; }

inline Integer floor(const Rational& r) {
    Integer q;
    mpz_fdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
    return q;
}

inline Integer ceil(const Rational& r) {
    Integer q;
    mpz_cdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
    return q;
}

inline Int to_int(const Integer& z) {
    require(z.fits_slong_p(), ErrorKind::overflow, "integer does not fit in 64 bits");
    return static_cast<Int>(z.get_si());
}

inline Int to_int(const Rational& r) {
    require(is_integer(r), ErrorKind::consistency, "expected an integral rational, got " + r.get_str());
    return to_int(Integer(r.get_num()));
}

inline std::string to_string(const Rational& r) { return r.get_str(); }

inline std::string to_string(const Integer& z) { return z.get_str(); }

namespace detail {

inline std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

inline bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

inline Integer parse_integer(std::string_view s) {
    s = trim(s);
    bool negative = false;
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
        negative = s.front() == '-';
        s.remove_prefix(1);
    }
    if (!all_digits(s)) fail(ErrorKind::parse, "malformed integer '" + std::string(s) + "'");
    Integer z(std::string(s), 10);
    return negative ? Integer(-z) : z;
}

} // namespace detail

/// Parses "p", "p/q" or a finite decimal such as "-0.75" into an exact rational.
inline Rational parse_rational(std::string_view text) {
    std::string_view s = detail::trim(text);
    if (s.empty()) fail(ErrorKind::parse, "empty rational literal");
    if (auto slash = s.find('/'); slash != std::string_view::npos) {
        Integer num = detail::parse_integer(s.substr(0, slash));
        Integer den = detail::parse_integer(s.substr(slash + 1));
        if (den == 0) fail(ErrorKind::parse, "zero denominator in '" + std::string(s) + "'");
        Rational r(num, den);
        r.canonicalize();
        return r;
    }
    if (auto dot = s.find('.'); dot != std::string_view::npos) {
        std::string_view whole = s.substr(0, dot);
        std::string_view frac = s.substr(dot + 1);
        bool negative = !whole.empty() && whole.front() == '-';
        if (!whole.empty() && (whole.front() == '-' || whole.front() == '+')) whole.remove_prefix(1);
        if ((!whole.empty() && !detail::all_digits(whole)) || (!frac.empty() && !detail::all_digits(frac)) ||
            (whole.empty() && frac.empty()))
            fail(ErrorKind::parse, "malformed decimal '" + std::string(s) + "'");
        Integer scale = 1;
        for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
        Integer num(std::string(whole.empty() ? "0" : whole) + std::string(frac), 10);
        Rational r(negative ? Integer(-num) : num, scale);
        r.canonicalize();
        return r;
    }
    return Rational(detail::parse_integer(s));
}

} // namespace ellkit
