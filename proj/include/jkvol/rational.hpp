#pragma once

#include <gmpxx.h>

#include <cctype>
#include <string>
#include <string_view>

#include "errors.hpp"

namespace jkvol {

// Exact rational number. Backed by GMP; every value passing through the helpers below is
// canonical (lowest terms, positive denominator, zero as 0/1). GMP keeps arithmetic results
// canonical on its own; only raw construction needs an explicit canonicalize().
using Rational = mpq_class;
using Integer = mpz_class;

inline Rational rational(long num, long den = 1) {
    if (den == 0) throw ArgumentError("rational: zero denominator");
    Rational q(num, den);
    q.canonicalize();
    return q;
}

inline Rational rational(const Integer& num, const Integer& den = 1) {
    if (den == 0) throw ArgumentError("rational: zero denominator");
    Rational q(num, den);
    q.canonicalize();
    return q;
}

// Serializes as "p/q" in lowest terms, or just "p" for integers. This is the wire format used
// everywhere (CLI output, JSON, CSV); parse_rational below accepts it back.
inline std::string to_string(const Rational& q) {
    return q.get_str();
}

// Accepts "p", "p/q", and exact decimal strings ("0.3" -> 3/10). Decimals are parsed digit by
// digit, never through floating point, so the result is exactly the printed value.
inline Rational parse_rational(std::string_view text) {
    auto fail = [&]() -> Rational {
        throw ArgumentError("parse_rational: cannot parse '" + std::string(text) + "'");
    };

    std::string s(text);
    // trim surrounding whitespace
    size_t b = s.find_first_not_of(" \t");
    size_t e = s.find_last_not_of(" \t");
    if (b == std::string::npos) return fail();
    s = s.substr(b, e - b + 1);
    if (s.empty()) return fail();

    bool neg = false;
    size_t pos = 0;
    if (s[pos] == '+' || s[pos] == '-') {
        neg = (s[pos] == '-');
        ++pos;
    }
    std::string digits_int, digits_frac;
    bool saw_dot = false, saw_slash = false;
    std::string den_digits;
    for (; pos < s.size(); ++pos) {
        char c = s[pos];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            if (saw_slash)
                den_digits += c;
            else if (saw_dot)
                digits_frac += c;
            else
                digits_int += c;
        } else if (c == '.' && !saw_dot && !saw_slash) {
            saw_dot = true;
        } else if (c == '/' && !saw_slash && !saw_dot) {
            saw_slash = true;
        } else {
            return fail();
        }
    }

    if (saw_slash) {
        if (digits_int.empty() || den_digits.empty()) return fail();
        Integer num(digits_int, 10), den(den_digits, 10);
        if (den == 0) return fail();
        Rational q(num, den);
        q.canonicalize();
        return neg ? Rational(-q) : q;
    }
    if (digits_int.empty() && digits_frac.empty()) return fail();
    Integer num((digits_int.empty() ? "0" : digits_int) + digits_frac, 10);
    Integer den(1);
    for (size_t i = 0; i < digits_frac.size(); ++i) den *= 10;
    Rational q(num, den);
    q.canonicalize();
    return neg ? Rational(-q) : q;
}

// Decimal rendering rounded to `sig` significant digits, for the human-convenience fields.
// All authoritative output stays exact; this is explicitly approximate.
inline std::string approx_string(const Rational& q, int sig = 12) {
    if (q == 0) return "0";
    mpf_class f(q, 256);
    mp_exp_t exp10 = 0;
    std::string mant = f.get_str(exp10, 10, static_cast<size_t>(sig));
    bool neg = !mant.empty() && mant[0] == '-';
    if (neg) mant = mant.substr(1);
    while (mant.size() < static_cast<size_t>(sig)) mant += '0';
    std::string out = neg ? "-" : "";
    out += mant.substr(0, 1);
    out += '.';
    out += mant.substr(1);
    out += 'e';
    long e = static_cast<long>(exp10) - 1;
    out += (e < 0 ? "-" : "+");
    std::string es = std::to_string(e < 0 ? -e : e);
    if (es.size() < 2) es = "0" + es;
    out += es;
    return out;
}

} // namespace jkvol
