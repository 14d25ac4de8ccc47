#pragma once

#include <gmpxx.h>

#include <cmath>
#include <stdexcept>
#include <string>

namespace haarlin {

// All exact arithmetic in the library is carried by GMP rationals.
using Int = mpz_class;
using Rational = mpq_class;

inline Rational make_rational(Int num, Int den) {
    if (den == 0) throw std::domain_error("make_rational: zero denominator");
    Rational q(std::move(num), std::move(den));
    q.canonicalize();
    return q;
}

inline Int factorial(unsigned long n) {
    Int r;
    mpz_fac_ui(r.get_mpz_t(), n);
    return r;
}

// (n)!! for odd n; double_factorial(2m-1) = (2m-1)!!, with (-1)!! = 1.
inline Int double_factorial(long n) {
    if (n <= 0) return 1;
    Int r;
    mpz_2fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
    return r;
}

inline Int binomial(unsigned long n, unsigned long k) {
    Int r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

inline Rational pow_rational(const Rational& x, long e) {
    if (e == 0) return Rational(1);
    Rational base = e > 0 ? x : Rational(1) / x;
    unsigned long n = static_cast<unsigned long>(e > 0 ? e : -e);
    Rational r(1);
    while (n) {
        if (n & 1) r *= base;
        base *= base;
        n >>= 1;
    }
    return r;
}

inline Int pow_int(long base, unsigned long e) {
    Int r;
    mpz_ui_pow_ui(r.get_mpz_t(), 1, 1);
    Int b(base);
    mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
    return r;
}

inline double to_double(const Rational& x) { return x.get_d(); }

inline std::string to_string(const Rational& x) { return x.get_str(); }

// Doubles are dyadic rationals; the conversion is exact.
inline Rational rational_from_double(double x) {
    if (!std::isfinite(x)) throw std::domain_error("rational_from_double: non-finite");
    Rational q;
    mpq_set_d(q.get_mpq_t(), x);
    return q;
}

// Accepts "p", "p/q" and plain decimals like "1.25".
inline Rational parse_rational(const std::string& s) {
    auto dot = s.find('.');
    if (dot != std::string::npos) {
        std::string digits = s.substr(0, dot) + s.substr(dot + 1);
        size_t frac_len = s.size() - dot - 1;
        Int num(digits, 10);
        Int den = pow_int(10, frac_len);
        return make_rational(num, den);
    }
    Rational q;
    if (q.set_str(s, 10) != 0) throw std::invalid_argument("parse_rational: bad input '" + s + "'");
    q.canonicalize();
    if (q.get_den() == 0) throw std::invalid_argument("parse_rational: zero denominator in '" + s + "'");
    return q;
}

}  // namespace haarlin
